import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isocomm.words import (
    Word,
    WordParseError,
    commutator,
    cyclic_reduce,
    exponent_sum,
    expand_commutators,
    free_reduce,
    parse_term,
    parse_word,
    words_of_length,
)
from oracles import stack_reduce, unit_letters

W = parse_word

letters = st.lists(
    st.tuples(st.sampled_from("abc"), st.integers(-3, 3).filter(bool)), max_size=20
)


def raw(ls):
    return Word.from_letters(ls)


def test_free_reduce_examples():
    assert free_reduce(W("a a^-1 b")) == W("b")
    assert free_reduce(Word()) == Word()
    assert free_reduce(W("a b b^-1 a^-1 a^2")) == W("a^2")


@given(letters)
def test_run_length_reduction_matches_stack(ls):
    units = [(g, 1 if e > 0 else -1) for g, e in ls for _ in range(abs(e))]
    assert unit_letters(raw(ls)) == stack_reduce(units)


@settings(max_examples=300)
@given(letters)
def test_free_reduce_idempotent_and_inverse(ls):
    w = raw(ls)
    assert free_reduce(free_reduce(w)) == free_reduce(w)
    assert (w * w.inverse()).is_identity
    assert ~w == w.inverse()


def test_free_reduce_random_long_words():
    rng = random.Random(0)
    for _ in range(10_000):
        ls = [(rng.choice("ab"), rng.choice((-1, 1))) for _ in range(rng.randint(0, 64))]
        w = raw(ls)
        assert free_reduce(w) == w
        assert unit_letters(w) == stack_reduce(ls)


def test_cyclic_reduce():
    assert cyclic_reduce(W("a b a^-1")) == W("b")
    assert cyclic_reduce(W("b")) == W("b")
    assert cyclic_reduce(W("a^2 b a^-2")) == W("b")
    assert cyclic_reduce(W("a^2 b a^-1")) == W("b a")


@given(letters)
def test_cyclic_reduce_is_conjugate_and_reduced(ls):
    w = raw(ls)
    c = cyclic_reduce(w)
    if len(c.letters) >= 2:
        assert c.letters[0][0] != c.letters[-1][0]
    for g in "abc":
        assert exponent_sum(c, g) == exponent_sum(w, g)


def test_exponent_sum():
    assert exponent_sum(W("a b a^-1 b^-1"), "a") == 0
    assert exponent_sum(Word(), "a") == 0
    assert exponent_sum(W("a^-1 b a b^-2"), "b") == -1


@given(letters, letters)
def test_exponent_sum_is_additive(u, v):
    u, v = raw(u), raw(v)
    for g in "abc":
        assert exponent_sum(u * v, g) == exponent_sum(u, g) + exponent_sum(v, g)


def test_commutator_convention():
    assert W("[a,b]") == W("a^-1 b^-1 a b")
    assert W("[a,a]").is_identity
    ab = W("a^-1 b^-1 a b")
    assert W("[[a,b],a]") == ab.inverse() * W("a^-1") * ab * W("a")
    assert expand_commutators(parse_term("[[a,b],a]")) == W("[[a,b],a]")
    assert commutator(W("a"), W("b")) == ab


def test_powers():
    w = W("a b a^-1")
    assert w ** 3 == W("a b^3 a^-1")
    assert w ** -2 == W("a b^-2 a^-1")
    assert w ** 0 == Word()
    z = W("a b")
    assert z ** 3 == z * z * z


@given(letters, st.integers(-5, 5))
def test_power_matches_repeated_product(ls, k):
    w = raw(ls)
    expected = Word()
    for _ in range(abs(k)):
        expected = expected * (w if k > 0 else w.inverse())
    assert w ** k == expected


def test_parse_and_format_round_trip():
    for text in ["1", "a", "a^-1", "a^3 b^-2 c", "x_1^2 y2"]:
        assert str(W(text)) == text
    assert str(W("[a^-1 b a, b]")) == "a^-1 b^-1 a b^-1 a^-1 b a b"
    assert W("1") == Word()
    assert W("a 1 a^-1") == Word()


@pytest.mark.parametrize("bad", ["", "a^", "[a,b", "a,b", "^2", "a^x", "2a", "[a]"])
def test_parse_errors(bad):
    with pytest.raises(WordParseError):
        W(bad)


def test_words_of_length_counts():
    # freely reduced words over 2 generators: 4 * 3^(n-1)
    for n in range(1, 6):
        ws = list(words_of_length(["a", "b"], n))
        assert len(ws) == 4 * 3 ** (n - 1)
        assert len(set(ws)) == len(ws)
        assert all(len(w) == n for w in ws)
    assert list(words_of_length(["a"], 0)) == [Word()]


def test_substitute_and_rename():
    w = W("a b a^-1")
    assert w.substitute({"a": W("c^2")}) == W("c^2 b c^-2")
    assert w.rename({"b": "y"}) == W("a y a^-1")
