"""Lamplighter groups on (finite lamp set, position) pairs and generic semidirect products.

Four multiplications live here:

* ``l2_mul``       (S, x)(T, y) = (S_y Δ T, x + y)
* ``l2bar_mul``    (S, x)(T, y) = (S_{-y} Δ T, x + y)
* ``l2prime_mul``  the same law on finitely supported bit maps
* the opposite of ``l2_mul``, obtained with :func:`opposite_mul`, which is
  the lamplighter group proper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from lamplight.affine import NormalForm
from lamplight.errors import ParseError, UnsupportedModulusError


@dataclass(frozen=True)
class FinSet:
    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @classmethod
    def of(cls, items: Iterable[int] = ()) -> FinSet:
        return cls(tuple(items))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: int) -> bool:
        return item in set(self.elements)

    def __xor__(self, other: FinSet) -> FinSet:
        return symdiff(self, other)

    def __and__(self, other: FinSet) -> FinSet:
        return intersection(self, other)

    def __sub__(self, other: FinSet) -> FinSet:
        return difference(self, other)

    def __or__(self, other: FinSet) -> FinSet:
        return FinSet(self.elements + other.elements)

    def __neg__(self) -> FinSet:
        return negate_set(self)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


EMPTY = FinSet()


def _merge(a: FinSet, b: FinSet, keep_a: bool, keep_b: bool, keep_both: bool) -> FinSet:
    """Linear merge of two sorted sets, keeping elements by membership pattern."""
    xs, ys = a.elements, b.elements
    i = j = 0
    out = []
    while i < len(xs) and j < len(ys):
        if xs[i] < ys[j]:
            if keep_a:
                out.append(xs[i])
            i += 1
        elif ys[j] < xs[i]:
            if keep_b:
                out.append(ys[j])
            j += 1
        else:
            if keep_both:
                out.append(xs[i])
            i += 1
            j += 1
    if keep_a:
        out.extend(xs[i:])
    if keep_b:
        out.extend(ys[j:])
    return FinSet(tuple(out))


def symdiff(a: FinSet, b: FinSet) -> FinSet:
    return _merge(a, b, keep_a=True, keep_b=True, keep_both=False)


def intersection(a: FinSet, b: FinSet) -> FinSet:
    return _merge(a, b, keep_a=False, keep_b=False, keep_both=True)


def difference(a: FinSet, b: FinSet) -> FinSet:
    return _merge(a, b, keep_a=True, keep_b=False, keep_both=False)


def shift_set(s: FinSet, y: int) -> FinSet:
    return FinSet(tuple(e + y for e in s.elements))


def negate_set(s: FinSet) -> FinSet:
    return FinSet(tuple(-e for e in s.elements))


@dataclass(frozen=True)
class LampElement:
    lamps: FinSet
    position: int

    @classmethod
    def of(cls, lamps: Iterable[int], position: int) -> LampElement:
        return cls(FinSet.of(lamps), position)

    def __str__(self) -> str:
        return format_lamp(self)


LAMP_IDENTITY = LampElement(EMPTY, 0)


def l2_mul(a: LampElement, b: LampElement) -> LampElement:
    return LampElement(symdiff(shift_set(a.lamps, b.position), b.lamps), a.position + b.position)


def l2_inv(a: LampElement) -> LampElement:
    return LampElement(shift_set(a.lamps, -a.position), -a.position)


def l2bar_mul(a: LampElement, b: LampElement) -> LampElement:
    return LampElement(symdiff(shift_set(a.lamps, -b.position), b.lamps), a.position + b.position)


def l2bar_inv(a: LampElement) -> LampElement:
    return LampElement(shift_set(a.lamps, a.position), -a.position)


def opposite_mul(mul: Callable[[Any, Any], Any]) -> Callable[[Any, Any], Any]:
    """The reversed multiplication ``x ∘ y = y x``."""

    def reversed_mul(x, y):
        return mul(y, x)

    return reversed_mul


#: The lamplighter group: L₂ with its multiplication reversed.
lamplighter_mul = opposite_mul(l2_mul)


@dataclass(frozen=True)
class SeqLampElement:
    """A finitely supported map Z -> Z/2 together with a position; only 1-bits are stored."""

    bits: tuple[tuple[int, int], ...]
    position: int

    def __post_init__(self) -> None:
        cleaned = {}
        for i, b in self.bits:
            if b % 2:
                cleaned[i] = 1
        object.__setattr__(self, "bits", tuple(sorted(cleaned.items())))

    @classmethod
    def of(cls, ones: Iterable[int], position: int) -> SeqLampElement:
        return cls(tuple((i, 1) for i in ones), position)

    def bit(self, i: int) -> int:
        return dict(self.bits).get(i, 0)


SEQ_IDENTITY = SeqLampElement((), 0)


def l2prime_mul(a: SeqLampElement, b: SeqLampElement) -> SeqLampElement:
    """Bit i of the product is a(i - b.position) xor b(i)."""
    m = b.position
    a_bits, b_bits = dict(a.bits), dict(b.bits)
    candidates = {i + m for i in a_bits} | set(b_bits)
    out = tuple((i, a_bits.get(i - m, 0) ^ b_bits.get(i, 0)) for i in candidates)
    return SeqLampElement(out, a.position + m)


def l2prime_inv(a: SeqLampElement) -> SeqLampElement:
    """Bits t_i = r_{i+n}, position -n."""
    n = a.position
    return SeqLampElement(tuple((i - n, b) for i, b in a.bits), -n)


def iso_l2prime_to_l2(x: SeqLampElement) -> LampElement:
    return LampElement(FinSet(tuple(i for i, b in x.bits if b)), x.position)


def iso_l2_to_l2prime(x: LampElement) -> SeqLampElement:
    return SeqLampElement.of(x.lamps.elements, x.position)


def iso_l2_to_l2bar(x: LampElement) -> LampElement:
    """(S, x) -> (-S, x); an isomorphism L₂ -> L₂̄ and its own inverse."""
    return LampElement(negate_set(x.lamps), x.position)


@dataclass(frozen=True)
class Semidirect:
    """N ⋊ H described by its two groups and an action h -> (automorphism of N)."""

    n_mul: Callable[[Any, Any], Any]
    n_inv: Callable[[Any], Any]
    n_identity: Any
    h_mul: Callable[[Any, Any], Any]
    h_inv: Callable[[Any], Any]
    h_identity: Any
    action: Callable[[Any], Callable[[Any], Any]]

    def element(self, n_part, h_part) -> SemidirectElement:
        return SemidirectElement(n_part, h_part, self)

    def identity(self) -> SemidirectElement:
        return SemidirectElement(self.n_identity, self.h_identity, self)


@dataclass(frozen=True)
class SemidirectElement:
    n_part: Any
    h_part: Any
    group: Semidirect


def semidirect_mul(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    """(n1, h1)(n2, h2) = (n1 φ^{h1}(n2), h1 h2)."""
    if a.group is not b.group:
        raise ValueError("elements belong to different semidirect products")
    g = a.group
    return SemidirectElement(
        g.n_mul(a.n_part, g.action(a.h_part)(b.n_part)), g.h_mul(a.h_part, b.h_part), g
    )


def semidirect_inv(a: SemidirectElement) -> SemidirectElement:
    g = a.group
    h_inv = g.h_inv(a.h_part)
    return SemidirectElement(g.action(h_inv)(g.n_inv(a.n_part)), h_inv, g)


def action_is_automorphism(group: Semidirect, n_samples: Iterable, h_samples: Iterable) -> bool:
    """Spot check that every sampled φ^h preserves products and the identity of N."""
    ns = list(n_samples)
    for h in h_samples:
        phi = group.action(h)
        if phi(group.n_identity) != group.n_identity:
            return False
        for x in ns:
            for y in ns:
                if phi(group.n_mul(x, y)) != group.n_mul(phi(x), phi(y)):
                    return False
    return True


def _conjugate_by_position(n: int) -> Callable[[SeqLampElement], SeqLampElement]:
    # ((0), n)((b), 0)((0), -n) has bits b_{i+n}
    def phi(x: SeqLampElement) -> SeqLampElement:
        return SeqLampElement(tuple((i - n, b) for i, b in x.bits), 0)

    return phi


def l2prime_semidirect() -> Semidirect:
    """N₂ ⋊ H₂ with N₂ the position-0 bit maps, H₂ = Z, and conjugation as the action."""
    return Semidirect(
        n_mul=l2prime_mul,
        n_inv=l2prime_inv,
        n_identity=SEQ_IDENTITY,
        h_mul=lambda a, b: a + b,
        h_inv=lambda a: -a,
        h_identity=0,
        action=_conjugate_by_position,
    )


def l2prime_factor(x: SeqLampElement) -> tuple[SeqLampElement, SeqLampElement]:
    """Split x = ((h_i), 0) ((0), n) with h_i = r_{i+n}."""
    n = x.position
    n_part = SeqLampElement(tuple((i - n, b) for i, b in x.bits), 0)
    return n_part, SeqLampElement((), n)


def nf_to_lamp(x: NormalForm) -> LampElement:
    """Support exponents and kappa as a pair (S, kappa); multiplies by (S Δ T_{-κ}, κ + ν)."""
    if x.modulus != 2:
        raise UnsupportedModulusError("lamp sets describe normal forms over Z/2 only")
    return LampElement(FinSet(x.exponents), x.kappa)


def nf_to_lamplighter(x: NormalForm) -> LampElement:
    """Isomorphism onto the lamplighter group ``(L₂, lamplighter_mul)``: (S, κ) -> (-S, κ)."""
    return iso_l2_to_l2bar(nf_to_lamp(x))


#: The normal-form product rule written on pairs: (S, κ) ⊛ (T, ν) = (S Δ T_{-κ}, κ + ν).
star_mul = opposite_mul(l2bar_mul)


_LAMP_TEXT = re.compile(r"^\{([^}]*)\};(-?\d+)$")


def format_lamp(x: LampElement) -> str:
    return str(x.lamps) + ";" + str(x.position)


def parse_lamp(text: str) -> LampElement:
    hit = _LAMP_TEXT.match(text.strip().replace(" ", ""))
    if not hit:
        raise ParseError(f"bad lamp element {text!r}")
    try:
        lamps = [int(tok) for tok in hit.group(1).split(",") if tok]
    except ValueError as exc:
        raise ParseError(f"bad lamp element {text!r}") from exc
    return LampElement.of(lamps, int(hit.group(2)))
