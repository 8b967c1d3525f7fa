import random

import pytest

from isocomm import classes
from isocomm.freeprod import FPWord
from isocomm.hall import z_word
from isocomm.machines import ComputableF
from isocomm.presentation import abelian_invariants
from isocomm.torus import (
    TorusElement,
    TorusSpec,
    element,
    finite_index_subgroup,
    format_element,
    identity,
    k_presentation,
    parse_element,
    reduce_spec,
    t_equal,
    t_inv,
    t_mul,
    t_wp,
    torus_presentation,
    word_to_element,
)
from isocomm.words import Word, parse_word

F = ComputableF.affine(2, 3)


def spec_for(family="c1", r=3):
    return classes.torus_spec(classes.label(family, r, 6, F))


def random_element(spec, rng, n_letters=8):
    w = Word.from_letters((rng.choice("aby"), rng.choice((1, -1))) for _ in range(n_letters))
    return element(spec, w, rng.randint(-3, 3))


def test_product_formula_example():
    spec = spec_for(r=3)
    z = z_word(3)
    e = t_mul(spec, element(spec, "b", 1), element(spec, "a", 2))
    assert e.n == 3
    assert t_equal(spec, e, element(spec, Word.gen("b") * z.inverse() * Word.gen("a") * z, 3)).is_yes


def test_identity_and_inverse_examples():
    spec = spec_for()
    assert t_inv(spec, identity()) == identity()
    g = element(spec, "a b y")
    assert t_inv(spec, g) == element(spec, "y^-1 b^-1 a^-1")
    assert t_wp(spec, element(spec, "a", 5)).is_no
    assert t_wp(spec, identity()).is_yes
    assert t_wp(spec_for(r=7), element(spec, z_word(7) ** 2)).is_yes


@pytest.mark.parametrize("r", [0, 3, 7])
def test_group_axioms(r):
    spec = spec_for(r=r)
    rng = random.Random(r)
    for _ in range(300):
        x, y, z = (random_element(spec, rng) for _ in range(3))
        assert t_equal(spec, t_mul(spec, t_mul(spec, x, y), z), t_mul(spec, x, t_mul(spec, y, z))).is_yes
        assert t_mul(spec, x, identity()).n == x.n
        assert t_equal(spec, t_mul(spec, x, identity()), x).is_yes
        assert t_equal(spec, t_mul(spec, identity(), x), x).is_yes
        assert t_wp(spec, t_mul(spec, x, t_inv(spec, x))).is_yes
        assert t_mul(spec, x, y).n == x.n + y.n


def test_conjugation_relation():
    spec = spec_for(r=5)
    rng = random.Random(0)
    one = TorusElement(FPWord(), 1)
    for _ in range(100):
        x = random_element(spec, rng)
        x = TorusElement(x.g, 0)
        lhs = t_mul(spec, t_mul(spec, one, x), t_inv(spec, one))
        z = spec.twist.conjugator
        phi_x = element(spec, Word.from_letters(
            l for g, w in x.g.syllables
            for l in ((z.inverse() * w * z).letters if g == "A" else w.letters)
        ))
        assert t_equal(spec, lhs, phi_x).is_yes


def test_presentation_relators_hold_in_the_torus():
    for r in (0, 1, 4):
        lab = classes.label("c2", r, 4, F)
        spec = classes.torus_spec(lab)
        pres = torus_presentation(spec, classes.factor_presentations(lab))
        for rel in pres.relators:
            assert t_wp(spec, word_to_element(spec, rel)).is_yes, rel


def test_torus_presentation_shape():
    lab = classes.label("c2", 0, 4, F)
    spec = classes.torus_spec(lab)
    fps = classes.factor_presentations(lab)
    p = torus_presentation(spec, fps)
    assert p.generators == ("a", "b", "y", "t")
    n_factor = len(fps["A"].relators) + len(fps["B"].relators)
    assert len(p.relators) == n_factor + 3
    assert p.relators[n_factor:] == tuple(parse_word(f"t^-1 {x}^-1 t {x}") for x in "aby")
    q = torus_presentation(classes.torus_spec(classes.label("c2", 1, 4, F)), fps)
    z = z_word(1)
    assert q.relators[n_factor] == parse_word("t^-1 a^-1 t") * z.inverse() * Word.gen("a") * z


def test_k_presentation():
    lab = classes.label("c1", 4, 8, F)
    spec = classes.torus_spec(lab)
    p = k_presentation(spec, 4, classes.factor_presentations(lab))
    assert p.generators[-1] == "u"
    assert parse_word("u^5") == p.relators[-1]
    assert sum(1 for d in abelian_invariants(p).torsion if d % 5 == 0) == 1
    p0 = k_presentation(classes.torus_spec(classes.label("c1", 0, 8, F)), 0, classes.factor_presentations(lab))
    assert p0.relators[-1] == Word.gen("u")
    base = torus_presentation(classes.torus_spec(classes.label("c1", 0, 8, F)), classes.factor_presentations(lab))
    assert abelian_invariants(p0) == abelian_invariants(base)
    with pytest.raises(ValueError):
        k_presentation(spec, -1, classes.factor_presentations(lab))


def test_finite_index_subgroups():
    spec = spec_for(r=7)
    assert finite_index_subgroup(spec, 1) == spec
    assert finite_index_subgroup(spec, 3).twist.conjugator == z_word(7) ** 3
    for j in range(1, 7):
        for k in range(1, 7):
            assert finite_index_subgroup(spec, j * k) == finite_index_subgroup(finite_index_subgroup(spec, j), k)
    with pytest.raises(ValueError):
        finite_index_subgroup(spec, 0)
    v2 = classes.torus_spec(classes.label("c2", 4, 6, F))
    assert reduce_spec(finite_index_subgroup(v2, 2)) == classes.torus_spec(classes.label("c2", 0, 6, F))
    assert reduce_spec(v2) == v2


def test_spec_validation():
    spec = spec_for()
    with pytest.raises(ValueError):
        TorusSpec(spec.base, spec.twist.__class__(Word.gen("y")))
    with pytest.raises(ValueError):
        t_mul(spec, TorusElement(FPWord((("Q", Word.gen("a")),)), 0), identity())


def test_text_form():
    spec = spec_for()
    e = parse_element(spec, "(a b y ; -2)")
    assert e.n == -2 and format_element(e) == "(a b y ; -2)"
    assert parse_element(spec, "( ; 0)") == identity()
    assert format_element(identity()) == "(1 ; 0)"
    with pytest.raises(ValueError):
        parse_element(spec, "a b")
