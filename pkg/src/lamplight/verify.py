"""Seeded property suites comparing the three realizations of each group element.

Each suite returns a :class:`Report`; the CLI prints it and the test suite
asserts on it.  Every random choice flows from one ``random.Random(seed)``
so reports are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from lamplight import affine, lamplighter as lamp, mealy, series as ser, words

SUITES = ("axioms", "iso", "faithful")


@dataclass(frozen=True)
class VerifyConfig:
    modulus: int = 2
    series_length: int = 64
    seed: int = 0
    depth: int = 20
    trials: int = 200

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if self.series_length < 1:
            raise ValueError("series length must be >= 1")


@dataclass
class PropertyResult:
    name: str
    trials: int
    failures: int = 0
    reproducer: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{self.name}: {status} {self.trials - self.failures}/{self.trials}"


@dataclass
class Report:
    suite: str
    seed: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        out = [r.line() for r in self.results]
        for r in self.results:
            if r.reproducer:
                out.append(f"reproduce {r.name}: seed={self.seed} {r.reproducer}")
        return out


def check(
    name: str,
    trials: int,
    rng: random.Random,
    generate: Callable[[random.Random], Any],
    predicate: Callable[[Any], bool],
) -> PropertyResult:
    result = PropertyResult(name, trials)
    for _ in range(trials):
        case = generate(rng)
        if not predicate(case):
            result.failures += 1
            if result.reproducer is None:
                result.reproducer = f"case={case!r}"
    return result


def check_all(name: str, cases, predicate: Callable[[Any], bool]) -> PropertyResult:
    """Exhaustive variant of :func:`check` over a finite iterable."""
    cases = list(cases)
    result = PropertyResult(name, len(cases))
    for case in cases:
        if not predicate(case):
            result.failures += 1
            if result.reproducer is None:
                result.reproducer = f"case={case!r}"
    return result


# --- random generators --------------------------------------------------------


def random_word(rng: random.Random, modulus: int, length: int) -> words.DigitWord:
    return words.DigitWord(modulus, tuple(rng.randrange(modulus) for _ in range(length)))


def random_series(rng: random.Random, modulus: int, length: int) -> ser.TruncatedSeries:
    return ser.TruncatedSeries(modulus, tuple(rng.randrange(modulus) for _ in range(length)))


def random_unit(rng: random.Random, modulus: int, length: int) -> ser.TruncatedSeries:
    units = [a for a in range(1, modulus) if ser.is_unit(ser.TruncatedSeries.constant(modulus, a, 1))]
    coeffs = [rng.choice(units)] + [rng.randrange(modulus) for _ in range(length - 1)]
    return ser.TruncatedSeries(modulus, tuple(coeffs))


def random_generator_word(rng: random.Random, modulus: int, max_length: int) -> affine.GeneratorWord:
    size = rng.randint(0, max_length)
    return affine.GeneratorWord(
        modulus, tuple((rng.randrange(modulus), rng.choice((1, -1))) for _ in range(size))
    )


def random_normalform(rng: random.Random, modulus: int, span: int = 8, kappa: int = 8) -> affine.NormalForm:
    support = {m: rng.randrange(modulus) for m in rng.sample(range(-span, span + 1), rng.randint(0, 5))}
    return affine.NormalForm.create(modulus, support, rng.randint(-kappa, kappa))


def random_finset(rng: random.Random, span: int = 10, size: int = 6) -> lamp.FinSet:
    return lamp.FinSet.of(rng.sample(range(-span, span + 1), rng.randint(0, size)))


def random_lamp(rng: random.Random) -> lamp.LampElement:
    return lamp.LampElement(random_finset(rng), rng.randint(-6, 6))


def random_seqlamp(rng: random.Random) -> lamp.SeqLampElement:
    return lamp.iso_l2_to_l2prime(random_lamp(rng))


# --- group axiom helper --------------------------------------------------------


def group_axioms(
    label: str,
    trials: int,
    rng: random.Random,
    sample: Callable[[random.Random], Any],
    mul: Callable[[Any, Any], Any],
    inv: Callable[[Any], Any],
    identity: Any,
) -> list[PropertyResult]:
    triple = lambda r: (sample(r), sample(r), sample(r))
    return [
        check(f"{label}.associativity", trials, rng, triple,
              lambda t: mul(mul(t[0], t[1]), t[2]) == mul(t[0], mul(t[1], t[2]))),
        check(f"{label}.identity", trials, rng, sample,
              lambda x: mul(identity, x) == x == mul(x, identity)),
        check(f"{label}.inverse", trials, rng, sample,
              lambda x: mul(x, inv(x)) == identity == mul(inv(x), x)),
    ]


# --- suites --------------------------------------------------------------------


def suite_axioms(cfg: VerifyConfig) -> Report:
    rng = random.Random(cfg.seed)
    n, L, t = cfg.modulus, cfg.series_length, cfg.trials
    report = Report("axioms", cfg.seed)
    res = report.results
    rs = lambda r: random_series(r, n, L)
    triple = lambda r: (rs(r), rs(r), rs(r))
    zero, one = ser.TruncatedSeries.zero(n, L), ser.TruncatedSeries.one(n, L)

    res.append(check("series.add_assoc", t, rng, triple, lambda c: (c[0] + c[1]) + c[2] == c[0] + (c[1] + c[2])))
    res.append(check("series.add_comm", t, rng, triple, lambda c: c[0] + c[1] == c[1] + c[0]))
    res.append(check("series.mul_assoc", t, rng, triple, lambda c: (c[0] * c[1]) * c[2] == c[0] * (c[1] * c[2])))
    res.append(check("series.mul_comm", t, rng, triple, lambda c: c[0] * c[1] == c[1] * c[0]))
    res.append(check("series.distributive", t, rng, triple, lambda c: c[0] * (c[1] + c[2]) == c[0] * c[1] + c[0] * c[2]))
    res.append(check("series.identities", t, rng, rs, lambda f: f + zero == f and f * one == f and f + (-f) == zero))
    res.append(check("series.unit_inverse", t, rng, lambda r: random_unit(r, n, L),
                     lambda f: f * ser.inverse(f) == one))
    x_mono = ser.TruncatedSeries.monomial(n, 1, L)
    res.append(check("series.decomposition", t, rng, rs,
                     lambda f: (ser.TruncatedSeries.constant(n, f[0], L) + x_mono * ser.shift(f)).coeffs[:-1] == f.coeffs[:-1]))
    res.append(check("series.geometric_inverse", n, rng, lambda r: r.randrange(n),
                     lambda a: ser.inverse(ser.TruncatedSeries.of(n, [1, -a] + [0] * (L - 2)).truncate(L)) == ser.geometric(a, L, n)))
    res.append(check("series.geometric_shift", n, rng, lambda r: r.randrange(n),
                     lambda a: ser.shift(ser.geometric(a, L, n)).coeffs[:-1] == (ser.geometric(a, L, n) * a).coeffs[:-1]))

    res.append(check("words.ultrametric", t, rng,
                     lambda r: tuple(random_word(r, n, r.randint(0, 12)) for _ in range(3)),
                     lambda c: words.common_prefix_length(c[0], c[2])
                     >= min(words.common_prefix_length(c[0], c[1]), words.common_prefix_length(c[1], c[2]))))

    res.extend(group_axioms("symdiff", t, rng, random_finset, lamp.symdiff, lambda a: a, lamp.EMPTY))
    res.append(check("symdiff.commutative", t, rng, lambda r: (random_finset(r), random_finset(r)),
                     lambda c: lamp.symdiff(*c) == lamp.symdiff(c[1], c[0])))
    res.extend(group_axioms("L2", t, rng, random_lamp, lamp.l2_mul, lamp.l2_inv, lamp.LAMP_IDENTITY))
    res.extend(group_axioms("L2bar", t, rng, random_lamp, lamp.l2bar_mul, lamp.l2bar_inv, lamp.LAMP_IDENTITY))
    res.extend(group_axioms("L2prime", t, rng, random_seqlamp, lamp.l2prime_mul, lamp.l2prime_inv, lamp.SEQ_IDENTITY))
    res.extend(group_axioms("L2circ", t, rng, random_lamp, lamp.lamplighter_mul, lamp.l2_inv, lamp.LAMP_IDENTITY))
    res.extend(group_axioms("normalform", t, rng, lambda r: random_normalform(r, n),
                            affine.nf_mul, affine.nf_inv, affine.NormalForm.identity(n)))
    return report


def _cross_realization(word: affine.GeneratorWord, w: words.DigitWord) -> bool:
    return affine.nf_apply_word(word, w) == affine.nf_apply_word(affine.word_to_normalform(word), w)


def suite_iso(cfg: VerifyConfig) -> Report:
    rng = random.Random(cfg.seed)
    n, L, t = cfg.modulus, cfg.series_length, cfg.trials
    report = Report("iso", cfg.seed)
    res = report.results

    res.append(check("machine.inverse_roundtrip", t, rng,
                     lambda r: (r.randrange(n), random_word(r, n, r.randint(0, L))),
                     lambda c: _roundtrip(n, *c)))
    res.append(check("cross_realization", t, rng,
                     lambda r: (random_generator_word(r, n, cfg.depth), random_word(r, n, L)),
                     lambda c: _cross_realization(*c)))
    res.append(check("normalform.homomorphism", t, rng,
                     lambda r: (random_generator_word(r, n, cfg.depth), random_generator_word(r, n, cfg.depth)),
                     lambda c: affine.word_to_normalform(c[0] + c[1])
                     == affine.nf_mul(affine.word_to_normalform(c[0]), affine.word_to_normalform(c[1]))))
    pair = lambda r: (random_lamp(r), random_lamp(r))
    res.append(check("iso.l2prime_to_l2", t, rng, pair,
                     lambda c: lamp.iso_l2prime_to_l2(lamp.l2prime_mul(lamp.iso_l2_to_l2prime(c[0]), lamp.iso_l2_to_l2prime(c[1])))
                     == lamp.l2_mul(*c)))
    res.append(check("iso.l2_to_l2bar", t, rng, pair,
                     lambda c: lamp.iso_l2_to_l2bar(lamp.l2_mul(*c))
                     == lamp.l2bar_mul(lamp.iso_l2_to_l2bar(c[0]), lamp.iso_l2_to_l2bar(c[1]))))
    res.append(check("iso.anti_l2_l2circ", t, rng, pair,
                     lambda c: lamp.l2_mul(*c) == lamp.lamplighter_mul(c[1], c[0])))
    if n == 2:
        nf_pair = lambda r: (random_normalform(r, 2), random_normalform(r, 2))
        res.append(check("iso.normalform_star", t, rng, nf_pair,
                         lambda c: lamp.nf_to_lamp(affine.nf_mul(*c))
                         == lamp.star_mul(lamp.nf_to_lamp(c[0]), lamp.nf_to_lamp(c[1]))))
        res.append(check("iso.normalform_lamplighter", t, rng, nf_pair,
                         lambda c: lamp.nf_to_lamplighter(affine.nf_mul(*c))
                         == lamp.lamplighter_mul(lamp.nf_to_lamplighter(c[0]), lamp.nf_to_lamplighter(c[1]))))
    return report


def _roundtrip(n: int, q: int, w: words.DigitWord) -> bool:
    m = affine.build_lamplighter_machine(n)
    end, out = mealy.transduce(m, q, w)
    back_end, back = mealy.transduce(mealy.invert(m), q, out)
    return back == w and back_end == end


def normalform_box(modulus: int, bound: int):
    """Every normal form with support in [-bound, bound] and |kappa| <= bound."""
    keys = range(-bound, bound + 1)
    for coeffs in itertools.product(range(modulus), repeat=len(keys)):
        support = tuple(zip(keys, coeffs))
        for kappa in keys:
            yield affine.NormalForm(modulus, support, kappa)


def action_signature(x: affine.NormalForm, length: int) -> tuple:
    """Images of 0 and 1; together they determine f**kappa and the offset."""
    zero = ser.TruncatedSeries.zero(x.modulus, length)
    one = ser.TruncatedSeries.one(x.modulus, length)
    return affine.nf_apply_series(x, zero).coeffs, affine.nf_apply_series(x, one).coeffs


def normalform_uniqueness(modulus: int, bound: int, length: int) -> PropertyResult:
    seen: dict[tuple, affine.NormalForm] = {}
    result = PropertyResult(f"normalform.uniqueness[B={bound},L={length}]", 0)
    for x in normalform_box(modulus, bound):
        result.trials += 1
        sig = action_signature(x, length)
        if sig in seen:
            result.failures += 1
            if result.reproducer is None:
                result.reproducer = f"case=({seen[sig]}, {x})"
        else:
            seen[sig] = x
    return result


def suite_faithful(cfg: VerifyConfig) -> Report:
    rng = random.Random(cfg.seed)
    n, t = cfg.modulus, cfg.trials
    report = Report("faithful", cfg.seed)
    res = report.results
    bound = 3
    while bound > 1 and n ** (2 * bound + 1) > 20000:
        bound -= 1
    res.append(normalform_uniqueness(n, bound, 16))

    res.append(check_all("normalform.infinite_order", range(1, 65),
                         lambda k: _q_power_nontrivial(n, k)))

    closure = affine.remainder_closure(ser.geometric(1, 64, n), 8)
    res.append(check_all("closure.state_count", [closure.size], lambda size: size == n))
    res.append(check_all("closure.matches_machine", [closure.machine],
                         lambda m: m == affine.build_lamplighter_machine(n)))

    synth_depth = min(cfg.depth, 8 if n == 2 else 5)
    synth = mealy.synthesize_machine(lambda w: _prefix_sums(w), n, synth_depth, seed=cfg.seed)
    res.append(check_all("synthesis.matches_oracle",
                         itertools.product(range(n), repeat=synth_depth),
                         lambda d: synth(words.DigitWord(n, d)) == _prefix_sums(words.DigitWord(n, d))))
    res.append(check_all("synthesis.isomorphic", [synth],
                         lambda s: mealy.machines_isomorphic(s.machine, s.start, affine.build_lamplighter_machine(n), 0)))

    if n == 2:
        a = affine.parse_generator_word("p q^-1")
        a_nf = affine.word_to_normalform(a)
        res.append(check_all("group.torsion", [a_nf], lambda x: affine.nf_mul(x, x) == affine.NormalForm.identity(2)))
        res.append(check_all("group.conjugates_commute",
                             [(j, k) for j in range(-5, 6) for k in range(-5, 6) if j != k],
                             lambda jk: _conjugates_commute(a_nf, *jk)))
        res.append(check_all("group.non_normal_witness", [rng.random()],
                             lambda _: _non_normal_witness(rng)))
    return report


def _q_power_nontrivial(n: int, k: int) -> bool:
    qk = affine.word_to_normalform(affine.GeneratorWord(n, ((0, 1),) * k))
    if qk != affine.NormalForm(n, (), k) or qk == affine.NormalForm.identity(n):
        return False
    # truncation must exceed k: over GF(2), f**64 agrees with 1 on the first 64 coefficients
    one = ser.TruncatedSeries.one(n, k + 2)
    return affine.nf_apply_series(qk, one) != one


def _prefix_sums(w: words.DigitWord) -> words.DigitWord:
    total, out = 0, []
    for d in w:
        total = (total + d) % w.modulus
        out.append(total)
    return words.DigitWord(w.modulus, tuple(out))


def conjugate(x: affine.NormalForm, j: int) -> affine.NormalForm:
    """q^{-j} x q^{j}."""
    qj = affine.NormalForm(x.modulus, (), j)
    return affine.nf_mul(affine.nf_mul(affine.nf_inv(qj), x), qj)


def _conjugates_commute(a: affine.NormalForm, j: int, k: int) -> bool:
    x, y = conjugate(a, j), conjugate(a, k)
    return affine.nf_mul(x, y) == affine.nf_mul(y, x)


def _non_normal_witness(rng: random.Random, length: int = 32) -> bool:
    """a = α[f]μ[f]α[f]: g·a·μ[f] differs from g·μ[f^k]·a for k in -4..4."""
    f = ser.geometric(1, length, 2)
    g = random_series(rng, 2, length)
    a = [affine.AffineAtom.alpha(f), affine.AffineAtom.mu(f), affine.AffineAtom.alpha(f)]
    left = affine.apply_atoms(a + [affine.AffineAtom.mu(f)], g)
    for k in range(-4, 5):
        right = affine.apply_atoms([affine.AffineAtom.mu(ser.power(f, k))] + a, g)
        if left == right:
            return False
    return True


def run_suite(name: str, cfg: VerifyConfig) -> list[Report]:
    runners = {"axioms": suite_axioms, "iso": suite_iso, "faithful": suite_faithful}
    if name == "all":
        return [runners[s](cfg) for s in SUITES]
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}")
    return [runners[name](cfg)]
