import random

import pytest

from isocomm.answers import Verdict
from isocomm.freeprod import (
    FiniteFactor,
    FPWord,
    FreeProduct,
    Twist,
    apply_twist,
    fp_conjugate,
    fp_is_trivial,
    fp_normalize,
    twist_is_inner,
    twist_power,
)
from isocomm.hall import HallConfig, HallFactor, Variant, z_word
from isocomm.machines import ComputableF
from isocomm.words import Word, parse_word

W = parse_word
S3 = FiniteFactor.from_permutations("A", {"s": (1, 0, 2), "r": (1, 2, 0)})
C2 = FiniteFactor.cyclic("B", "y", 2)
G = FreeProduct((S3, C2))


def syl(fid, text):
    return (fid, W(text))


def random_word(rng, gens, n):
    return Word.from_letters((rng.choice(gens), rng.choice((1, -1))) for _ in range(n))


def random_fp(rng, n=6):
    return fp_normalize(G.split(random_word(rng, ["s", "r", "y"], n)), G)


def same(u: FPWord, v: FPWord) -> bool:
    return fp_is_trivial(u.concat(v.inverse()), G).is_yes


def test_finite_factor_tables():
    assert S3.order == 6
    words = S3.element_words()
    assert len(words) == 6 and words[0] == Word()
    assert sorted(S3.evaluate(w) for w in words) == list(range(6))
    assert S3.is_trivial(W("s^2")) is Verdict.YES
    assert S3.is_trivial(W("r^3")) is Verdict.YES
    assert S3.is_trivial(W("s r s r")) is Verdict.YES
    assert S3.is_central(W("r")) is Verdict.NO
    assert S3.conjugate_in_factor(W("r"), W("r^-1")) is Verdict.YES
    assert S3.conjugate_in_factor(W("r"), W("s")) is Verdict.NO


def test_normalize_examples():
    raw = [syl("A", "s"), syl("B", "y"), syl("B", "y^-1"), syl("A", "s")]
    assert fp_normalize(raw, G).is_identity  # s^2 = 1 in S3
    assert fp_normalize([], G) == FPWord()
    hall = FreeProduct((HallFactor(HallConfig(Variant.V1, ComputableF.affine(2, 3))), C2))
    nf = fp_normalize([("A", z_word(7) ** 2), syl("B", "y")], hall)
    assert nf == FPWord((syl("B", "y"),))
    with pytest.raises(KeyError):
        fp_normalize([syl("Q", "s")], G)


def test_normalize_merges_to_fixpoint():
    raw = [syl("A", "r"), syl("B", "y"), syl("A", "s"), syl("A", "s"), syl("B", "y"), syl("A", "r")]
    assert fp_normalize(raw, G) == FPWord((syl("A", "r^2"),))


def test_is_trivial_answers():
    assert fp_is_trivial([], G).is_yes
    assert fp_is_trivial([syl("B", "y")], G).is_no
    v2 = FreeProduct((HallFactor(HallConfig(Variant.V2, ComputableF.affine(2, 3))), C2))
    assert fp_is_trivial([("A", z_word(4))], v2, 10**4).is_unknown
    lenient = fp_normalize([("A", z_word(4))], v2, strict=False)
    assert lenient is not None and len(lenient) == 1


def test_normalize_idempotent_order_independent_and_shrinking():
    rng = random.Random(7)
    for _ in range(1000):
        raw = G.split(random_word(rng, ["s", "r", "y"], rng.randint(0, 14)))
        nf = fp_normalize(raw, G)
        assert fp_normalize(nf.syllables, G) == nf
        assert len(nf) <= len(raw)
        k = rng.randint(0, len(raw))
        left, right = fp_normalize(raw[:k], G), fp_normalize(raw[k:], G)
        merged = fp_normalize(left.concat(right), G)
        assert same(merged, nf)


def test_conjugacy_examples():
    u = FPWord((syl("A", "r"), syl("B", "y")))
    v = FPWord((syl("B", "y"), syl("A", "r")))
    assert fp_conjugate(u, v, G).is_yes
    g = FPWord((syl("A", "s"), syl("B", "y")))
    tg = apply_twist(Twist(W("r")), g)
    assert fp_conjugate(g, tg, G).is_no


def test_conjugacy_properties():
    rng = random.Random(8)
    for _ in range(50):
        u, v, x = random_fp(rng), random_fp(rng), random_fp(rng, 4)
        assert fp_conjugate(u, u, G).is_yes
        assert fp_conjugate(u, v, G).verdict is fp_conjugate(v, u, G).verdict
        ux = fp_normalize(x.inverse().concat(u) + list(x.syllables), G)
        vx = fp_normalize(x.inverse().concat(v) + list(x.syllables), G)
        assert fp_conjugate(ux, u, G).is_yes
        assert fp_conjugate(ux, vx, G).verdict is fp_conjugate(u, v, G).verdict


def test_conjugacy_matches_brute_force_over_short_words():
    # conjugate iff some short conjugator works; words of syllable length <= 4
    rng = random.Random(12)
    conjugators = [random_fp(rng, n) for n in range(6) for _ in range(40)]
    for _ in range(60):
        u, v = random_fp(rng, 5), random_fp(rng, 5)
        if fp_conjugate(u, v, G).is_yes:
            continue
        for x in conjugators:
            ux = fp_normalize(x.inverse().concat(u) + list(x.syllables), G)
            assert not same(ux, v)


def test_twist_examples_and_properties():
    rng = random.Random(3)
    t = Twist(W("r"))
    g = FPWord((syl("A", "s"), syl("B", "y")))
    assert apply_twist(Twist(), g) == g
    assert apply_twist(t, g) == FPWord((syl("A", "r^-1 s r"), syl("B", "y")))
    assert twist_power(t, 0).conjugator.is_identity
    assert twist_power(Twist(z_word(7)), 3).conjugator == z_word(7) ** 3
    for _ in range(100):
        u, v = random_fp(rng), random_fp(rng)
        uv = fp_normalize(u.concat(v), G)
        lhs = apply_twist(t, uv)
        rhs = fp_normalize(apply_twist(t, u).concat(apply_twist(t, v)), G)
        assert same(lhs, rhs)
        assert same(apply_twist(t, apply_twist(t.inverse(), u)), u)
        j, k = rng.randint(-3, 3), rng.randint(-3, 3)
        composed = apply_twist(twist_power(t, j), apply_twist(twist_power(t, k), u))
        assert same(apply_twist(twist_power(t, j + k), u), composed)


def test_twist_is_inner():
    assert twist_is_inner(Twist(), G).is_yes
    assert twist_is_inner(Twist(W("r")), G).is_no
    v2 = FreeProduct((HallFactor(HallConfig(Variant.V2, ComputableF.affine(2, 3))), C2))
    assert twist_is_inner(Twist(z_word(4)), v2, 10**4).is_unknown


def test_free_product_validation():
    with pytest.raises(ValueError):
        FreeProduct((S3, FiniteFactor.cyclic("A", "y", 2)))
    with pytest.raises(ValueError):
        FreeProduct((S3, FiniteFactor.cyclic("B", "s", 2)))
