"""Pure-Python versions of the hot kernels.

Each function mirrors one in ``_kernels.pyx`` exactly; the two are
cross-checked in the test suite.
"""


def cauchy_mod(a, b, modulus):
    """Truncated Cauchy product of two equal-length coefficient sequences."""
    size = len(a)
    out = [0] * size
    for i in range(size):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(size - i):
            out[i + j] += ai * b[j]
    return [c % modulus for c in out]


def inverse_mod(a, modulus, a0_inv):
    """Reciprocal series via b_k = -a0^{-1} * sum_{i=1..k} a_i b_{k-i}."""
    size = len(a)
    b = [0] * size
    b[0] = a0_inv % modulus
    for k in range(1, size):
        acc = 0
        for i in range(1, k + 1):
            acc += a[i] * b[k - i]
        b[k] = (-a0_inv * acc) % modulus
    return b


def transduce_flat(transition, output, modulus, state, word):
    """Run a Mealy machine given as flat row-major tables over ``word``."""
    out = [0] * len(word)
    for i, letter in enumerate(word):
        idx = state * modulus + letter
        out[i] = output[idx]
        state = transition[idx]
    return state, out
