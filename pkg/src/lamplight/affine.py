"""Affine transducers on (Z/nZ)[[X]] and the normal-form algebra of the group they generate.

Throughout, ``f = 1/(1 - X)`` and maps compose left to right: the element
written ``x y`` applies ``x`` first.  The generator ``g_s`` (``q = g_0``,
``p = g_1`` when n = 2) is the map ``g -> f * (s + g)``; the machine state
``s`` of :func:`build_lamplighter_machine` realizes the same map on digit
words.

A :class:`NormalForm` ``(support, kappa)`` denotes
``g -> f**kappa * (sum_m support[m] * f**m + g)``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from lamplight.errors import (
    AlphabetMismatchError,
    NotInvertibleError,
    ParseError,
    UnsupportedSeriesError,
)
from lamplight.mealy import MealyMachine, invert, transduce_chain
from lamplight.series import (
    TruncatedSeries,
    add,
    geometric,
    geometric_power,
    inverse,
    is_unit,
    mul,
    shift,
)
from lamplight.words import DigitWord

ALPHA, MU, MU_INVERSE = "alpha", "mu", "mu_inverse"


@dataclass(frozen=True)
class AffineAtom:
    kind: str
    parameter: TruncatedSeries

    def __post_init__(self) -> None:
        if self.kind not in (ALPHA, MU, MU_INVERSE):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind != ALPHA and not is_unit(self.parameter):
            raise NotInvertibleError("not invertible: a0 not a unit")

    @classmethod
    def alpha(cls, h: TruncatedSeries) -> AffineAtom:
        return cls(ALPHA, h)

    @classmethod
    def mu(cls, f: TruncatedSeries) -> AffineAtom:
        return cls(MU, f)

    @classmethod
    def mu_inverse(cls, f: TruncatedSeries) -> AffineAtom:
        return cls(MU_INVERSE, f)


def apply_atom(atom: AffineAtom, g: TruncatedSeries) -> TruncatedSeries:
    if atom.kind == ALPHA:
        return add(atom.parameter, g)
    if atom.kind == MU:
        return mul(atom.parameter, g)
    return mul(inverse(atom.parameter), g)


def apply_atoms(atoms: Iterable[AffineAtom], g: TruncatedSeries) -> TruncatedSeries:
    """Apply a product of atoms, leftmost first."""
    for atom in atoms:
        g = apply_atom(atom, g)
    return g


@lru_cache(maxsize=None)
def build_lamplighter_machine(n: int) -> MealyMachine:
    """The n-state machine with state s reading r: emit s + r, move to s + r."""
    rows = tuple(tuple((s + r) % n for r in range(n)) for s in range(n))
    return MealyMachine(n, rows, rows)


@lru_cache(maxsize=None)
def _inverse_lamplighter_machine(n: int) -> MealyMachine:
    return invert(build_lamplighter_machine(n))


@dataclass(frozen=True)
class RemainderClosure:
    """States of ``mu[f]`` found by reading letters, each as ``g -> f * (offset + g)``."""

    offsets: tuple[TruncatedSeries, ...]
    machine: MealyMachine
    levels: int

    @property
    def size(self) -> int:
        return len(self.offsets)


def remainder_closure(f: TruncatedSeries, depth: int) -> RemainderClosure:
    """Close ``{mu[f]}`` under single-letter remainders, for ``f = 1/(1 - X)`` only.

    A state ``g -> f*(h + g)`` read on ``r + X v`` emits ``h_0 + r`` and
    continues as ``v -> f*(h' + v)`` with ``h' = f^{-1} * shift(f * (h + r))``.
    Offsets are computed as series and compared on the coefficients that are
    still exact after ``depth`` shifts; ``depth`` must be enough to see the
    search close.
    """
    n, length = f.modulus, len(f)
    if f != geometric(1, length, n):
        raise UnsupportedSeriesError("remainder closure is implemented for f = 1/(1 - X) only")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if length <= depth:
        raise ValueError(f"series length {length} must exceed depth {depth}")
    f_inv = inverse(f)
    exact = length - depth

    def key(h: TruncatedSeries) -> tuple[int, ...]:
        return h.coeffs[:exact]

    offsets = [TruncatedSeries.zero(n, length)]
    index = {key(offsets[0]): 0}
    transition: dict[int, list[int]] = {}
    output: dict[int, list[int]] = {}
    frontier = deque([0])
    levels = 0
    while frontier:
        if levels >= depth:
            raise ValueError(f"remainder closure did not close within depth {depth}")
        levels += 1
        next_frontier: deque[int] = deque()
        for idx in frontier:
            h = offsets[idx]
            t_row, o_row = [0] * n, [0] * n
            for r in range(n):
                shifted = add(h, TruncatedSeries.constant(n, r, length))
                o_row[r] = mul(f, shifted)[0]
                h_next = mul(f_inv, shift(mul(f, shifted)))
                k = key(h_next)
                if k not in index:
                    index[k] = len(offsets)
                    offsets.append(h_next)
                    next_frontier.append(index[k])
                t_row[r] = index[k]
            transition[idx], output[idx] = t_row, o_row
        frontier = next_frontier
    machine = MealyMachine(
        n,
        tuple(tuple(transition[i]) for i in range(len(offsets))),
        tuple(tuple(output[i]) for i in range(len(offsets))),
    )
    return RemainderClosure(tuple(offsets), machine, levels)


@dataclass(frozen=True)
class NormalForm:
    modulus: int
    support: tuple[tuple[int, int], ...]
    kappa: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        merged: dict[int, int] = {}
        for m, s in self.support:
            merged[m] = (merged.get(m, 0) + s) % self.modulus
        canonical = tuple(sorted((m, s) for m, s in merged.items() if s))
        object.__setattr__(self, "support", canonical)

    @classmethod
    def create(cls, modulus: int, support: Union[Mapping[int, int], Iterable[int]] = (), kappa: int = 0) -> NormalForm:
        """Build from a coefficient map, or from a set of exponents (each with coefficient 1)."""
        if isinstance(support, Mapping):
            pairs = tuple(support.items())
        else:
            pairs = tuple((m, 1) for m in support)
        return cls(modulus, pairs, kappa)

    @classmethod
    def identity(cls, modulus: int) -> NormalForm:
        return cls(modulus, (), 0)

    def coeff(self, m: int) -> int:
        for key, s in self.support:
            if key == m:
                return s
        return 0

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.support)

    def __mul__(self, other: NormalForm) -> NormalForm:
        return nf_mul(self, other)

    def __invert__(self) -> NormalForm:
        return nf_inv(self)

    def __str__(self) -> str:
        return format_normalform(self)


@dataclass(frozen=True)
class GeneratorWord:
    """A product of generators ``g_s`` (sign +1) and their inverses (sign -1)."""

    modulus: int
    tokens: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        tokens = tuple((int(s), int(sign)) for s, sign in self.tokens)
        for s, sign in tokens:
            if not 0 <= s < self.modulus:
                raise ValueError(f"generator index {s} out of range for modulus {self.modulus}")
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")
        object.__setattr__(self, "tokens", tokens)

    def __add__(self, other: GeneratorWord) -> GeneratorWord:
        if self.modulus != other.modulus:
            raise AlphabetMismatchError("generator words over different moduli")
        return GeneratorWord(self.modulus, self.tokens + other.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def inverse(self) -> GeneratorWord:
        return GeneratorWord(self.modulus, tuple((s, -sign) for s, sign in reversed(self.tokens)))

    def __str__(self) -> str:
        return format_generator_word(self)


def _check_modulus(x: NormalForm, y: NormalForm) -> None:
    if x.modulus != y.modulus:
        raise AlphabetMismatchError(f"moduli differ: {x.modulus} != {y.modulus}")


def nf_mul(x: NormalForm, y: NormalForm) -> NormalForm:
    """Product "x then y": support m -> x[m] + y[m + x.kappa], kappa adds."""
    _check_modulus(x, y)
    coeffs = dict(x.support)
    for m, s in y.support:
        target = m - x.kappa
        coeffs[target] = coeffs.get(target, 0) + s
    return NormalForm(x.modulus, tuple(coeffs.items()), x.kappa + y.kappa)


def nf_inv(x: NormalForm) -> NormalForm:
    return NormalForm(x.modulus, tuple((m + x.kappa, -s) for m, s in x.support), -x.kappa)


def generator_normalform(modulus: int, s: int, sign: int) -> NormalForm:
    """``g_s`` is (s*f^0, kappa 1); its inverse ``g -> f^{-1} g - s`` is (-s*f^1, kappa -1)."""
    if sign == 1:
        return NormalForm(modulus, ((0, s),), 1)
    return NormalForm(modulus, ((1, -s),), -1)


def word_to_normalform(w: GeneratorWord) -> NormalForm:
    result = NormalForm.identity(w.modulus)
    for s, sign in w.tokens:
        result = nf_mul(result, generator_normalform(w.modulus, s, sign))
    return result


def nf_offset(x: NormalForm, length: int) -> TruncatedSeries:
    """The series ``sum_m support[m] * f**m`` truncated to ``length``."""
    n = x.modulus
    h = TruncatedSeries.zero(n, length)
    for m, s in x.support:
        h = add(h, geometric_power(n, length, m) * s)
    return h


def nf_apply_series(x: NormalForm, g: TruncatedSeries) -> TruncatedSeries:
    if g.modulus != x.modulus:
        raise AlphabetMismatchError(f"series modulus {g.modulus} != element modulus {x.modulus}")
    length = len(g)
    return mul(geometric_power(x.modulus, length, x.kappa), add(nf_offset(x, length), g))


def generator_stages(w: GeneratorWord) -> list[tuple[MealyMachine, int]]:
    forward = build_lamplighter_machine(w.modulus)
    backward = _inverse_lamplighter_machine(w.modulus)
    return [(forward if sign == 1 else backward, s) for s, sign in w.tokens]


def nf_apply_word(x: Union[NormalForm, GeneratorWord], w: DigitWord) -> DigitWord:
    """Act on a finite word: machine chain for generator words, series action for normal forms."""
    if x.modulus != w.modulus:
        raise AlphabetMismatchError(f"word modulus {w.modulus} != element modulus {x.modulus}")
    if isinstance(x, GeneratorWord):
        return transduce_chain(generator_stages(x), w)
    if len(w) == 0:
        return w
    return nf_apply_series(x, TruncatedSeries.from_word(w)).to_word()


def series_map(atoms: Sequence[AffineAtom]):
    """Return ``g -> apply_atoms(atoms, g)`` as a callable, for identity checks between maps."""
    atoms = tuple(atoms)
    return lambda g: apply_atoms(atoms, g)


def format_normalform(x: NormalForm) -> str:
    if x.modulus == 2:
        body = ",".join(str(m) for m, _ in x.support)
    else:
        body = ",".join(f"{m}:{s}" for m, s in x.support)
    return "{" + body + "};" + str(x.kappa)


_NF_TEXT = re.compile(r"^\{([^}]*)\};(-?\d+)$")


def parse_normalform(text: str, modulus: int = 2) -> NormalForm:
    hit = _NF_TEXT.match(text.strip().replace(" ", ""))
    if not hit:
        raise ParseError(f"bad normal form {text!r}")
    body, kappa = hit.group(1), int(hit.group(2))
    pairs: dict[int, int] = {}
    try:
        for item in filter(None, body.split(",")):
            if ":" in item:
                m, s = item.split(":")
                value = int(s)
            else:
                m, value = item, 1
            key = int(m)
            if key in pairs:
                raise ParseError(f"repeated exponent {key} in {text!r}")
            if not 0 <= value < modulus:
                raise ParseError(f"coefficient {value} outside [0, {modulus})")
            pairs[key] = value
    except ValueError as exc:
        raise ParseError(f"bad normal form {text!r}") from exc
    return NormalForm(modulus, tuple(pairs.items()), kappa)


_TOKEN = re.compile(r"^(?:g(\d+)|([qp]))(\^-1)?$")


def parse_generator_word(text: str, modulus: int = 2) -> GeneratorWord:
    """Parse ``g<s>`` / ``g<s>^-1`` tokens; ``q``, ``p`` alias ``g0``, ``g1`` when n = 2."""
    tokens = []
    for tok in text.split():
        hit = _TOKEN.match(tok)
        if not hit:
            raise ParseError(f"bad generator token {tok!r}")
        if hit.group(2):
            if modulus != 2:
                raise ParseError("q/p aliases exist only for modulus 2")
            s = 0 if hit.group(2) == "q" else 1
        else:
            s = int(hit.group(1))
        if not 0 <= s < modulus:
            raise ParseError(f"generator g{s} out of range for modulus {modulus}")
        tokens.append((s, -1 if hit.group(3) else 1))
    return GeneratorWord(modulus, tuple(tokens))


def format_generator_word(w: GeneratorWord) -> str:
    names = {0: "q", 1: "p"} if w.modulus == 2 else {}
    out = []
    for s, sign in w.tokens:
        name = names.get(s, f"g{s}")
        out.append(name if sign == 1 else name + "^-1")
    return " ".join(out)
