import pytest
from hypothesis import given, strategies as st

from lamplight.errors import AlphabetMismatchError, ParseError
from lamplight.words import (
    EQUAL,
    DigitWord,
    common_prefix_length,
    is_prefix,
    prefix_distance_exponent,
)


def W(text, n=2):
    return DigitWord.parse(text, n)


def words_of(n, max_size=16):
    return st.lists(st.integers(0, n - 1), max_size=max_size).map(lambda d: DigitWord(n, tuple(d)))


class TestDigitWord:
    def test_rejects_out_of_range_digit(self):
        with pytest.raises(ValueError):
            DigitWord(2, (0, 2))

    def test_empty_word(self):
        assert len(W("")) == 0
        assert str(W("")) == ""

    def test_text_round_trip(self):
        assert str(W("0110")) == "0110"
        assert str(W("2101", 3)) == "2101"

    def test_large_modulus_uses_commas(self):
        w = DigitWord.parse("11,0,3", 12)
        assert w.digits == (11, 0, 3)
        assert str(w) == "11,0,3"

    def test_parse_rejects_bad_digit(self):
        with pytest.raises(ParseError):
            DigitWord.parse("012", 2)


@pytest.mark.parametrize(
    "x, y, expected",
    [("0110", "0111", 3), ("0110", "0110", 4), ("10", "01", 0), ("", "", 0), ("01", "011", 2)],
)
def test_common_prefix_length(x, y, expected):
    assert common_prefix_length(W(x), W(y)) == expected


@pytest.mark.parametrize("x, y, expected", [("0110", "0111", 3), ("0110", "0110", EQUAL), ("1", "0", 0)])
def test_prefix_distance_exponent(x, y, expected):
    assert prefix_distance_exponent(W(x), W(y)) == expected


@pytest.mark.parametrize("u, v, expected", [("", "0110", True), ("01", "0110", True), ("011", "01", False), ("1", "01", False)])
def test_is_prefix(u, v, expected):
    assert is_prefix(W(u), W(v)) is expected


def test_modulus_mismatch():
    for op in (common_prefix_length, prefix_distance_exponent, is_prefix):
        with pytest.raises(AlphabetMismatchError):
            op(W("01"), W("01", 3))


@given(words_of(3), words_of(3), words_of(3))
def test_ultrametric(x, y, z):
    assert common_prefix_length(x, z) >= min(common_prefix_length(x, y), common_prefix_length(y, z))


@given(words_of(2), words_of(2))
def test_symmetry(x, y):
    assert common_prefix_length(x, y) == common_prefix_length(y, x)


@given(words_of(2), words_of(2))
def test_prefix_of_concatenation(u, v):
    assert is_prefix(u, u + v)
    assert common_prefix_length(u, u + v) == len(u)
