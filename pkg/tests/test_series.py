import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from lamplight.errors import NotInvertibleError, ParseError, ShapeMismatchError
from lamplight.series import (
    ModInt,
    TruncatedSeries,
    add,
    format_series,
    geometric,
    geometric_power,
    inverse,
    is_unit,
    mul,
    power,
    shift,
)


def S(text, n=2, length=None):
    return TruncatedSeries.parse(text, n, length)


def naive_mul(f, g):
    """Independent Cauchy product: explicit double sum over index pairs."""
    n, L = f.modulus, len(f)
    return tuple(sum(f[i] * g[k - i] for i in range(k + 1)) % n for k in range(L))


def brute_inverse(f):
    """Search all series of the same shape for g with f*g = 1."""
    one = (1,) + (0,) * (len(f) - 1)
    hits = [g for g in itertools.product(range(f.modulus), repeat=len(f))
            if naive_mul(f, TruncatedSeries(f.modulus, g)) == one]
    return hits


def series_st(n, length):
    return st.lists(st.integers(0, n - 1), min_size=length, max_size=length).map(
        lambda c: TruncatedSeries(n, tuple(c))
    )


def unit_st(n, length):
    units = [a for a in range(1, n) if gcd(a, n) == 1]
    return st.tuples(st.sampled_from(units), st.lists(st.integers(0, n - 1), min_size=length - 1, max_size=length - 1)).map(
        lambda t: TruncatedSeries(n, (t[0],) + tuple(t[1]))
    )


class TestConstruction:
    def test_coefficients_reduced(self):
        assert TruncatedSeries(3, (4, -1)).coeffs == (1, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            TruncatedSeries(2, ())

    def test_modint_reduces(self):
        assert ModInt(5, 12).value == 2

    def test_parse_pads_and_strips_ellipsis(self):
        assert S("1100…", 2, 5).coeffs == (1, 1, 0, 0, 0)

    def test_parse_too_long(self):
        with pytest.raises(ParseError):
            S("110011", 2, 3)

    def test_format(self):
        assert format_series(S("1011")) == "1011"
        assert format_series(TruncatedSeries(3, (1, 2, 1, 2))) == "1,2,1,2"
        assert S("1,2,1,2", 3).coeffs == (1, 2, 1, 2)


class TestAdd:
    def test_zero_identity(self):
        f = S("10110")
        assert add(f, TruncatedSeries.zero(2, 5)) == f

    def test_characteristic_two(self):
        f = S("10110")
        assert add(f, f) == TruncatedSeries.zero(2, 5)

    def test_mod_three(self):
        assert add(TruncatedSeries(3, (1, 2, 0)), TruncatedSeries(3, (2, 2, 1))).coeffs == (0, 1, 1)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            add(S("10"), S("100"))
        with pytest.raises(ShapeMismatchError):
            add(S("10"), S("10", 3))


class TestMul:
    def test_one_identity(self):
        f = S("0111001")
        assert mul(f, TruncatedSeries.one(2, 7)) == f

    def test_geometric_squared(self):
        f = S("1111")
        assert mul(f, f).coeffs == naive_mul(f, f) == (1, 0, 1, 0)

    def test_zero(self):
        assert mul(S("1011"), S("0000")) == S("0000")

    @given(series_st(4, 12), series_st(4, 12))
    def test_matches_naive(self, f, g):
        assert mul(f, g).coeffs == naive_mul(f, g)


class TestInverse:
    def test_is_unit(self):
        assert not is_unit(S("0100"))
        assert is_unit(S("1000"))
        assert not is_unit(TruncatedSeries(4, (2, 1)))
        assert is_unit(TruncatedSeries(4, (3, 1)))

    def test_one_plus_x_over_gf2(self):
        assert inverse(S("11000")).coeffs == (1, 1, 1, 1, 1)

    def test_inverse_of_one(self):
        assert inverse(TruncatedSeries.one(3, 4)) == TruncatedSeries.one(3, 4)

    def test_one_plus_x_mod_three(self):
        f = TruncatedSeries(3, (1, 1, 0, 0))
        assert brute_inverse(f) == [(1, 2, 1, 2)]
        assert inverse(f).coeffs == (1, 2, 1, 2)

    @pytest.mark.parametrize("n, length", [(2, 5), (3, 4), (4, 4), (5, 3)])
    def test_matches_brute_force(self, n, length):
        for coeffs in itertools.product(range(n), repeat=length):
            f = TruncatedSeries(n, coeffs)
            if is_unit(f):
                assert [inverse(f).coeffs] == brute_inverse(f)

    def test_non_unit_raises(self):
        with pytest.raises(NotInvertibleError, match="not invertible: a0 not a unit"):
            inverse(S("0100"))


class TestShift:
    def test_geometric(self):
        assert shift(S("11111")).coeffs == (1, 1, 1, 1, 0)

    def test_one(self):
        assert shift(S("1000")) == S("0000")

    def test_index_shift(self):
        assert shift(S("0110")) == S("1100")


class TestGeometric:
    def test_all_ones(self):
        assert geometric(ModInt(2, 1), 5).coeffs == (1, 1, 1, 1, 1)

    def test_zero_ratio(self):
        assert geometric(0, 4, 3).coeffs == (1, 0, 0, 0)

    def test_powers_of_two_mod_three(self):
        assert geometric(ModInt(3, 2), 4).coeffs == (1, 2, 1, 2)

    def test_plain_int_needs_modulus(self):
        with pytest.raises(ValueError):
            geometric(1, 4)


class TestPower:
    def test_first_power(self):
        f = S("1011")
        assert power(f, 1) == f
        assert power(f, 0) == TruncatedSeries.one(2, 4)

    def test_inverse_geometric(self):
        assert power(geometric(1, 6, 2), -1).coeffs == (1, 1, 0, 0, 0, 0)

    def test_geometric_squared(self):
        assert power(geometric(1, 4, 2), 2).coeffs == (1, 0, 1, 0)

    def test_negative_power_of_non_unit(self):
        with pytest.raises(NotInvertibleError):
            power(S("0110"), -2)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_cached_geometric_power_matches_repeated_products(self, n):
        f = geometric(1, 20, n)
        acc = TruncatedSeries.one(n, 20)
        for m in range(0, 9):
            assert geometric_power(n, 20, m) == acc
            assert geometric_power(n, 20, -m) == power(acc, -1)
            acc = mul(acc, f)


MODULI = [2, 3, 4]


@pytest.mark.parametrize("n", MODULI)
class TestRingLaws:
    @settings(max_examples=30)
    @given(data=st.data())
    def test_laws(self, n, data):
        f, g, h = (data.draw(series_st(n, 128)) for _ in range(3))
        assert add(add(f, g), h) == add(f, add(g, h))
        assert add(f, g) == add(g, f)
        assert mul(mul(f, g), h) == mul(f, mul(g, h))
        assert mul(f, g) == mul(g, f)
        assert mul(f, add(g, h)) == add(mul(f, g), mul(f, h))
        assert mul(f, TruncatedSeries.one(n, 128)) == f

    @settings(max_examples=30)
    @given(data=st.data())
    def test_unit_inverse(self, n, data):
        f = data.draw(unit_st(n, 128))
        assert mul(f, inverse(f)) == TruncatedSeries.one(n, 128)

    @settings(max_examples=30)
    @given(data=st.data())
    def test_decomposition(self, n, data):
        f = data.draw(series_st(n, 64))
        x = TruncatedSeries.monomial(n, 1, 64)
        rebuilt = add(TruncatedSeries.constant(n, f[0], 64), mul(x, shift(f)))
        assert rebuilt.coeffs[:-1] == f.coeffs[:-1]

    def test_geometric_shift(self, n):
        for a in range(n):
            g = geometric(a, 64, n)
            assert shift(g).coeffs[:-1] == (g * a).coeffs[:-1]
            assert inverse(TruncatedSeries(n, (1, -a) + (0,) * 62)) == g

    @settings(max_examples=20)
    @given(data=st.data())
    def test_truncation_coherence(self, n, data):
        f, g = data.draw(series_st(n, 40)), data.draw(series_st(n, 40))
        u = data.draw(unit_st(n, 40))
        k = data.draw(st.integers(1, 39))
        m = data.draw(st.integers(-4, 4))
        assert add(f, g).truncate(k) == add(f.truncate(k), g.truncate(k))
        assert mul(f, g).truncate(k) == mul(f.truncate(k), g.truncate(k))
        assert inverse(u).truncate(k) == inverse(u.truncate(k))
        assert power(u, m).truncate(k) == power(u.truncate(k), m)
