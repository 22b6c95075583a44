"""Mealy machines over digit alphabets.

States and letters are dense integers.  ``transition[q][a]`` is the next
state and ``output[q][a]`` the emitted letter.  Products of state functions
are read left to right: ``transduce_chain([(m, q), (m, p)], w)`` feeds ``w``
through ``q`` first.
"""

from __future__ import annotations

import itertools
import random
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence, Union

from lamplight import kernels
from lamplight.errors import (
    AlphabetMismatchError,
    InversionError,
    NotSequentialError,
    ParseError,
)
from lamplight.words import DigitWord

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MealyMachine:
    modulus: int
    transition: Table
    output: Table

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        transition = tuple(tuple(row) for row in self.transition)
        output = tuple(tuple(row) for row in self.output)
        k = len(transition)
        if k < 1 or len(output) != k:
            raise ValueError("transition and output tables need the same, positive number of rows")
        for q in range(k):
            if len(transition[q]) != self.modulus or len(output[q]) != self.modulus:
                raise ValueError(f"row {q} is not total over the alphabet")
            if any(not 0 <= j < k for j in transition[q]):
                raise ValueError(f"row {q} has a transition out of range")
            if any(not 0 <= b < self.modulus for b in output[q]):
                raise ValueError(f"row {q} has an output letter out of range")
        object.__setattr__(self, "transition", transition)
        object.__setattr__(self, "output", output)

    @property
    def state_count(self) -> int:
        return len(self.transition)

    @cached_property
    def _flat(self) -> tuple[list[int], list[int]]:
        return (
            [j for row in self.transition for j in row],
            [b for row in self.output for b in row],
        )

    def __str__(self) -> str:
        return format_machine(self)


@dataclass(frozen=True)
class InitialMachine:
    machine: MealyMachine
    start: int

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.machine.state_count:
            raise ValueError(f"start state {self.start} out of range")

    def __call__(self, word: DigitWord) -> DigitWord:
        return transduce(self.machine, self.start, word)[1]


def _check_state(m: MealyMachine, q: int) -> None:
    if not 0 <= q < m.state_count:
        raise ValueError(f"state {q} out of range [0, {m.state_count})")


def _check_word(m: MealyMachine, w: DigitWord) -> None:
    if w.modulus != m.modulus:
        raise AlphabetMismatchError(f"word modulus {w.modulus} != machine modulus {m.modulus}")


def step(m: MealyMachine, q: int, a: int) -> tuple[int, int]:
    _check_state(m, q)
    if not 0 <= a < m.modulus:
        raise ValueError(f"letter {a} out of range [0, {m.modulus})")
    return m.transition[q][a], m.output[q][a]


def transduce(m: MealyMachine, q: int, w: DigitWord) -> tuple[int, DigitWord]:
    """Final state ``q∘w`` and output word ``q*w``."""
    _check_state(m, q)
    _check_word(m, w)
    transition, output = m._flat
    state, out = kernels.transduce_flat(transition, output, m.modulus, q, w.digits)
    return state, DigitWord(m.modulus, tuple(out))


def remainder_state(m: MealyMachine, q: int, u: DigitWord) -> int:
    return transduce(m, q, u)[0]


def transduce_chain(stages: Sequence[tuple[MealyMachine, int]], w: DigitWord) -> DigitWord:
    for m, q in stages:
        w = transduce(m, q, w)[1]
    return w


def is_invertible(m: MealyMachine) -> bool:
    letters = set(range(m.modulus))
    return all(set(row) == letters for row in m.output)


def invert(m: MealyMachine) -> MealyMachine:
    """Swap input and output labels on every arrow."""
    if not is_invertible(m):
        raise InversionError("machine has a state whose output row is not a permutation")
    transition = []
    output = []
    for q in range(m.state_count):
        t_row = [0] * m.modulus
        o_row = [0] * m.modulus
        for a, b in enumerate(m.output[q]):
            t_row[b] = m.transition[q][a]
            o_row[b] = a
        transition.append(tuple(t_row))
        output.append(tuple(o_row))
    return MealyMachine(m.modulus, tuple(transition), tuple(output))


def machines_isomorphic(m1: MealyMachine, q1: int, m2: MealyMachine, q2: int) -> bool:
    """True when the parts reachable from ``q1`` and ``q2`` agree up to relabeling states."""
    if m1.modulus != m2.modulus:
        return False
    forward: dict[int, int] = {q1: q2}
    backward: dict[int, int] = {q2: q1}
    queue = deque([q1])
    while queue:
        a_state = queue.popleft()
        b_state = forward[a_state]
        for letter in range(m1.modulus):
            if m1.output[a_state][letter] != m2.output[b_state][letter]:
                return False
            na, nb = m1.transition[a_state][letter], m2.transition[b_state][letter]
            if na in forward:
                if forward[na] != nb:
                    return False
            elif nb in backward:
                return False
            else:
                forward[na] = nb
                backward[nb] = na
                queue.append(na)
    return True


class _CheckedOracle:
    """Memoizes a word function and enforces length preservation and prefix monotonicity."""

    def __init__(self, oracle: Callable[[DigitWord], DigitWord], modulus: int) -> None:
        self._oracle = oracle
        self._modulus = modulus
        self._cache: dict[tuple[int, ...], tuple[int, ...]] = {}

    def __call__(self, digits: tuple[int, ...]) -> tuple[int, ...]:
        hit = self._cache.get(digits)
        if hit is not None:
            return hit
        result = self._oracle(DigitWord(self._modulus, digits))
        out = tuple(result.digits if isinstance(result, DigitWord) else result)
        if len(out) != len(digits):
            raise NotSequentialError(f"oracle changed length on {digits}: got {out}")
        if any(not 0 <= b < self._modulus for b in out):
            raise NotSequentialError(f"oracle emitted letters outside the alphabet on {digits}")
        self._cache[digits] = out
        if digits and self(digits[:-1]) != out[:-1]:
            raise NotSequentialError(f"oracle is not prefix monotone at {digits}")
        return out


def synthesize_machine(
    oracle: Callable[[DigitWord], DigitWord],
    modulus: int,
    depth: int,
    *,
    samples: int = 256,
    seed: int = 0,
) -> InitialMachine:
    """Build an initial machine from a sequential word function by remainder closure.

    States are remainders ``f_u`` discovered breadth first.  A candidate
    ``f_{ua}`` is merged with an existing state ``f_v`` when they agree on
    every word of length ``depth - |ua|``; the result reproduces ``oracle``
    on all words of length at most ``depth``, and nothing beyond that is
    promised.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    f = _CheckedOracle(oracle, modulus)
    rng = random.Random(seed)
    for _ in range(samples):
        f(tuple(rng.randrange(modulus) for _ in range(rng.randint(1, depth))))

    def remainder_on(u: tuple[int, ...], k: int) -> tuple[tuple[int, ...], ...]:
        return tuple(f(u + v)[len(u):] for v in itertools.product(range(modulus), repeat=k))

    reps: list[tuple[int, ...]] = [()]
    transition: list[list[int]] = []
    output: list[list[int]] = []
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        u = reps[idx]
        t_row, o_row = [0] * modulus, [0] * modulus
        for a in range(modulus):
            ua = u + (a,)
            o_row[a] = f(ua)[-1]
            budget = max(depth - len(ua), 0)
            signature = remainder_on(ua, budget)
            target = next(
                (j for j, v in enumerate(reps) if remainder_on(v, budget) == signature),
                None,
            )
            if target is None:
                target = len(reps)
                reps.append(ua)
                queue.append(target)
            t_row[a] = target
        transition.append(t_row)
        output.append(o_row)
    machine = MealyMachine(modulus, tuple(map(tuple, transition)), tuple(map(tuple, output)))
    return InitialMachine(machine, 0)


_HEADER = re.compile(r"^mealy\s+n=(\d+)\s+states=(\d+)(?:\s+start=(\d+))?\s*$")
_ARROW = re.compile(r"^(\d+)/(\d+)->(\d+)$")


def format_machine(m: MealyMachine, start: Optional[int] = None) -> str:
    header = f"mealy n={m.modulus} states={m.state_count}"
    if start is not None:
        header += f" start={start}"
    lines = [header]
    for q in range(m.state_count):
        arrows = " ".join(
            f"{a}/{m.output[q][a]}->{m.transition[q][a]}" for a in range(m.modulus)
        )
        lines.append(f"state {q}: {arrows}")
    return "\n".join(lines)


def parse_machine(text: str) -> Union[MealyMachine, InitialMachine]:
    """Parse the line format written by :func:`format_machine`.

    Returns an :class:`InitialMachine` when the header names a start state.
    """
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty machine text")
    header = _HEADER.match(lines[0])
    if not header:
        raise ParseError(f"bad machine header {lines[0]!r}")
    n, k = int(header.group(1)), int(header.group(2))
    start = header.group(3)
    if len(lines) != k + 1:
        raise ParseError(f"expected {k} state lines, found {len(lines) - 1}")
    transition: list[tuple[int, ...]] = []
    output: list[tuple[int, ...]] = []
    for q, line in enumerate(lines[1:]):
        prefix = f"state {q}:"
        if not line.startswith(prefix):
            raise ParseError(f"expected line for state {q}, got {line!r}")
        arrows = line[len(prefix):].split()
        if len(arrows) != n:
            raise ParseError(f"state {q} lists {len(arrows)} arrows, expected {n}")
        t_row, o_row = [], []
        for a, arrow in enumerate(arrows):
            hit = _ARROW.match(arrow)
            if not hit or int(hit.group(1)) != a:
                raise ParseError(f"state {q}: bad or out-of-order arrow {arrow!r}")
            o_row.append(int(hit.group(2)))
            t_row.append(int(hit.group(3)))
        transition.append(tuple(t_row))
        output.append(tuple(o_row))
    try:
        machine = MealyMachine(n, tuple(transition), tuple(output))
        if start is not None:
            return InitialMachine(machine, int(start))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return machine
