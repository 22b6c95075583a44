"""Finite words over the digit alphabet {0, ..., n-1} and the prefix ultrametric.

Distances are kept as exponents: ``d(x, y) = 2 ** -prefix_distance_exponent(x, y)``,
so comparisons stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from lamplight.errors import AlphabetMismatchError, ParseError

#: Marker returned by :func:`prefix_distance_exponent` for identical words.
EQUAL = "equal"


@dataclass(frozen=True)
class DigitWord:
    modulus: int
    digits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        digits = tuple(self.digits)
        for d in digits:
            if not 0 <= d < self.modulus:
                raise ValueError(f"digit {d} out of range for modulus {self.modulus}")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def of(cls, modulus: int, digits: Iterable[int] = ()) -> DigitWord:
        return cls(modulus, tuple(digits))

    @classmethod
    def empty(cls, modulus: int) -> DigitWord:
        return cls(modulus, ())

    @classmethod
    def parse(cls, text: str, modulus: int = 2) -> DigitWord:
        """Read a word from its text form.

        Position ``i`` of the string is letter ``i``.  Moduli above 10 use
        comma separated integers; the empty string is the empty word.
        """
        text = text.strip()
        if not text:
            return cls(modulus, ())
        try:
            if "," in text or modulus > 10:
                digits = tuple(int(tok) for tok in text.split(","))
            else:
                digits = tuple(int(ch) for ch in text)
        except ValueError as exc:
            raise ParseError(f"bad word {text!r}") from exc
        if any(not 0 <= d < modulus for d in digits):
            raise ParseError(f"word {text!r} has digits outside [0, {modulus})")
        return cls(modulus, digits)

    def __str__(self) -> str:
        if self.modulus > 10:
            return ",".join(str(d) for d in self.digits)
        return "".join(str(d) for d in self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, index: Union[int, slice]):
        if isinstance(index, slice):
            return DigitWord(self.modulus, self.digits[index])
        return self.digits[index]

    def __add__(self, other: DigitWord) -> DigitWord:
        _check_same(self, other)
        return DigitWord(self.modulus, self.digits + other.digits)


def _check_same(x: DigitWord, y: DigitWord) -> None:
    if x.modulus != y.modulus:
        raise AlphabetMismatchError(f"moduli differ: {x.modulus} != {y.modulus}")


def common_prefix_length(x: DigitWord, y: DigitWord) -> int:
    _check_same(x, y)
    k = 0
    for a, b in zip(x.digits, y.digits):
        if a != b:
            break
        k += 1
    return k


def prefix_distance_exponent(x: DigitWord, y: DigitWord) -> Union[int, str]:
    """Exponent ``n`` of the prefix distance ``2 ** -n``, or :data:`EQUAL`."""
    _check_same(x, y)
    if x.digits == y.digits:
        return EQUAL
    return common_prefix_length(x, y)


def is_prefix(u: DigitWord, v: DigitWord) -> bool:
    _check_same(u, v)
    return len(u) <= len(v) and v.digits[: len(u)] == u.digits
