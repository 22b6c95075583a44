"""Truncated formal power series over Z/nZ.

A :class:`TruncatedSeries` holds the first ``L`` coefficients of an element
of (Z/nZ)[[X]].  The first ``L'`` coefficients of a sum, product, inverse
or power depend only on the first ``L'`` coefficients of the operands, so
prefix comparisons at a fixed length are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from lamplight import kernels
from lamplight.errors import NotInvertibleError, ParseError, ShapeMismatchError
from lamplight.words import DigitWord


@dataclass(frozen=True)
class ModInt:
    modulus: int
    value: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class TruncatedSeries:
    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        coeffs = tuple(int(c) % self.modulus for c in self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, modulus: int, coeffs: Iterable[int]) -> TruncatedSeries:
        return cls(modulus, tuple(coeffs))

    @classmethod
    def zero(cls, modulus: int, length: int) -> TruncatedSeries:
        return cls(modulus, (0,) * length)

    @classmethod
    def one(cls, modulus: int, length: int) -> TruncatedSeries:
        return cls.constant(modulus, 1, length)

    @classmethod
    def constant(cls, modulus: int, value: int, length: int) -> TruncatedSeries:
        return cls(modulus, (value,) + (0,) * (length - 1))

    @classmethod
    def monomial(cls, modulus: int, degree: int, length: int, coeff: int = 1) -> TruncatedSeries:
        coeffs = [0] * length
        if degree < length:
            coeffs[degree] = coeff
        return cls(modulus, tuple(coeffs))

    @classmethod
    def from_word(cls, word: DigitWord) -> TruncatedSeries:
        return cls(word.modulus, word.digits)

    @classmethod
    def parse(cls, text: str, modulus: int, length: int | None = None) -> TruncatedSeries:
        """Parse a digit string (or comma separated integers), zero padding to ``length``."""
        text = text.strip().rstrip(".…")
        try:
            if "," in text:
                coeffs = [int(tok) for tok in text.split(",") if tok.strip()]
            else:
                coeffs = [int(ch) for ch in text]
        except ValueError as exc:
            raise ParseError(f"bad series {text!r}") from exc
        if any(not 0 <= c < modulus for c in coeffs):
            raise ParseError(f"series {text!r} has coefficients outside [0, {modulus})")
        if length is not None:
            if len(coeffs) > length:
                raise ParseError(f"series {text!r} is longer than len={length}")
            coeffs += [0] * (length - len(coeffs))
        if not coeffs:
            raise ParseError("empty series")
        return cls(modulus, tuple(coeffs))

    def to_word(self) -> DigitWord:
        return DigitWord(self.modulus, self.coeffs)

    def __str__(self) -> str:
        return format_series(self)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, neg(other))

    def __neg__(self) -> TruncatedSeries:
        return neg(self)

    def __mul__(self, other: Union[TruncatedSeries, int]) -> TruncatedSeries:
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> TruncatedSeries:
        return power(self, m)

    def truncate(self, length: int) -> TruncatedSeries:
        return TruncatedSeries(self.modulus, self.coeffs[:length])


def format_series(f: TruncatedSeries) -> str:
    """Digit string for modulus 2, comma separated integers otherwise."""
    if f.modulus == 2:
        return "".join(str(c) for c in f.coeffs)
    return ",".join(str(c) for c in f.coeffs)


def _check_shape(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.modulus != g.modulus or len(f.coeffs) != len(g.coeffs):
        raise ShapeMismatchError(
            f"series shapes differ: (mod {f.modulus}, len {len(f)}) vs (mod {g.modulus}, len {len(g)})"
        )


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_shape(f, g)
    n = f.modulus
    return TruncatedSeries(n, tuple((a + b) % n for a, b in zip(f.coeffs, g.coeffs)))


def neg(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(f.modulus, tuple(-a for a in f.coeffs))


def scale(f: TruncatedSeries, c: int) -> TruncatedSeries:
    return TruncatedSeries(f.modulus, tuple(c * a for a in f.coeffs))


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_shape(f, g)
    return TruncatedSeries(f.modulus, tuple(kernels.cauchy_mod(f.coeffs, g.coeffs, f.modulus)))


def is_unit(f: TruncatedSeries) -> bool:
    return gcd(f.coeffs[0], f.modulus) == 1


def inverse(f: TruncatedSeries) -> TruncatedSeries:
    if not is_unit(f):
        raise NotInvertibleError("not invertible: a0 not a unit")
    a0_inv = pow(f.coeffs[0], -1, f.modulus)
    return TruncatedSeries(f.modulus, tuple(kernels.inverse_mod(f.coeffs, f.modulus, a0_inv)))


def shift(f: TruncatedSeries) -> TruncatedSeries:
    """Drop the constant term and reindex; the last slot becomes 0 (unknown past truncation)."""
    return TruncatedSeries(f.modulus, f.coeffs[1:] + (0,))


def geometric(a: Union[ModInt, int], length: int, modulus: int | None = None) -> TruncatedSeries:
    """The series sum a^k X^k, i.e. (1 - aX)^{-1}."""
    if isinstance(a, ModInt):
        n, base = a.modulus, a.value
    else:
        if modulus is None:
            raise ValueError("modulus required when a is a plain int")
        n, base = modulus, a % modulus
    coeffs = []
    term = 1 % n
    for _ in range(length):
        coeffs.append(term)
        term = term * base % n
    return TruncatedSeries(n, tuple(coeffs))


def power(f: TruncatedSeries, m: int) -> TruncatedSeries:
    if m < 0:
        return power(inverse(f), -m)
    result = TruncatedSeries.one(f.modulus, len(f))
    base = f
    while m:
        if m & 1:
            result = mul(result, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return result


@lru_cache(maxsize=4096)
def geometric_power(modulus: int, length: int, m: int) -> TruncatedSeries:
    """``(1/(1 - X)) ** m``, cached; the workhorse of normal-form actions."""
    if m == 0:
        return TruncatedSeries.one(modulus, length)
    if m == -1:
        return TruncatedSeries.of(modulus, [1, -1] + [0] * (length - 2)).truncate(length)
    if m == 1:
        return geometric(1, length, modulus)
    half = geometric_power(modulus, length, m // 2)
    rest = geometric_power(modulus, length, m - 2 * (m // 2))
    return mul(mul(half, half), rest)
