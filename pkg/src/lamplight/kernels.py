"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``LAMPLIGHT_PURE=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""

import os

from lamplight import _fallback

# Keeps every intermediate product of two residues inside a signed 64-bit word.
_C_MODULUS_LIMIT = 2**31

try:
    if os.environ.get("LAMPLIGHT_PURE"):
        raise ImportError("pure backend requested")
    from lamplight import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _pick(modulus):
    if _compiled is not None and modulus < _C_MODULUS_LIMIT:
        return _compiled
    return _fallback


def cauchy_mod(a, b, modulus):
    return _pick(modulus).cauchy_mod(a, b, modulus)


def inverse_mod(a, modulus, a0_inv):
    return _pick(modulus).inverse_mod(a, modulus, a0_inv)


def transduce_flat(transition, output, modulus, state, word):
    return _pick(modulus).transduce_flat(transition, output, modulus, state, word)
