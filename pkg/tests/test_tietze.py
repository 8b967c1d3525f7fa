import pytest

from isocomm.presentation import FinitePresentation, abelian_invariants
from isocomm.tietze import consequences, replay, rotations, tietze_neighbors
from isocomm.words import parse_word

P = FinitePresentation.build


def test_duplicate_relator_removed():
    p = P(["x"], ["x^2", "x^2"])
    assert P(["x"], ["x^2"]) in tietze_neighbors(p, 0)


def test_generator_introduction():
    assert P(["x", "y"], ["y x^-1"]) in tietze_neighbors(P(["x"]), 1)


def test_consequence_added_with_certificate():
    p = P(["x"], ["x^2"])
    assert P(["x"], ["x^2", "x^4"]) in tietze_neighbors(p, 2)
    found = [c for c in consequences(p.relators, 2) if c.word == parse_word("x^4")]
    assert found and replay(p.relators, found[0].factors) == parse_word("x^4")


def test_rotations_are_conjugates():
    w = parse_word("a b^2 a^-1")
    rots = rotations(w)
    assert len(rots) == 4
    assert parse_word("b^2") in rots


def test_generator_elimination():
    p = P(["x", "y"], ["y x^-2", "y^3"])
    assert P(["x"], ["x^6"]) in tietze_neighbors(p, 0)


def test_deterministic_order():
    p = P(["x", "y"], ["x^2", "[x,y]"])
    assert tietze_neighbors(p, 1) == tietze_neighbors(p, 1)


@pytest.mark.parametrize("p", [
    P(["x"], ["x^2"]),
    P(["x", "y"], ["x^2", "y^3", "[x,y]"]),
    P(["x", "y"], ["x^3", "y^2", "y x y^-1 x"]),
])
def test_neighbours_preserve_abelian_invariants(p):
    inv = abelian_invariants(p)
    nbrs = tietze_neighbors(p, 1)
    assert nbrs
    for q in nbrs:
        assert abelian_invariants(q) == inv


def test_negative_budget():
    with pytest.raises(ValueError):
        tietze_neighbors(P(["x"]), -1)
