"""Mapping tori ``G_phi = G x| Z`` of a free product under a twist.

Elements are pairs ``(g, n)`` with ``(g, n)(g', m) = (g phi^n(g'), n + m)``;
for a twist ``phi = tau_z`` we use ``phi^n = tau_{z^n}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .answers import OracleAnswer
from .freeprod import FPWord, FreeProduct, Twist, apply_twist, fp_is_trivial, fp_normalize, twist_power
from .presentation import FinitePresentation
from .words import Word, WordParseError, commutator, format_word, parse_word

STABLE_LETTER = "t"
CYCLIC_LETTER = "u"


@dataclass(frozen=True)
class TorusSpec:
    base: FreeProduct
    twist: Twist = Twist()

    def __post_init__(self):
        self.base[self.twist.factor]  # the twisted factor must exist
        stray = self.twist.conjugator.generators() - set(self.base[self.twist.factor].generators)
        if stray:
            raise ValueError(f"twist conjugator uses foreign generators {sorted(stray)}")


@dataclass(frozen=True)
class TorusElement:
    g: FPWord = FPWord()
    n: int = 0


def identity() -> TorusElement:
    return TorusElement()


def element(spec: TorusSpec, word: Word | str, n: int = 0, budget: int = 0) -> TorusElement:
    """Build ``(word, n)`` with the fibre part in normal form."""
    if isinstance(word, str):
        word = parse_word(word)
    g = fp_normalize(spec.base.split(word), spec.base, budget, strict=False)
    assert g is not None
    return TorusElement(g, n)


def _check(spec: TorusSpec, *elements: TorusElement) -> None:
    ids = {f.factor_id for f in spec.base.factors}
    for e in elements:
        for fid, _ in e.g.syllables:
            if fid not in ids:
                raise ValueError(f"element has a syllable from factor {fid!r} not in this spec")


def power_twist(spec: TorusSpec, n: int) -> Twist:
    return twist_power(spec.twist, n)


def t_mul(spec: TorusSpec, e1: TorusElement, e2: TorusElement, budget: int = 0) -> TorusElement:
    _check(spec, e1, e2)
    moved = apply_twist(power_twist(spec, e1.n), e2.g)
    g = fp_normalize(e1.g.concat(moved), spec.base, budget, strict=False)
    assert g is not None
    return TorusElement(g, e1.n + e2.n)


def t_inv(spec: TorusSpec, e: TorusElement) -> TorusElement:
    _check(spec, e)
    return TorusElement(apply_twist(power_twist(spec, -e.n), e.g.inverse()), -e.n)


def t_wp(spec: TorusSpec, e: TorusElement, budget: int = 0) -> OracleAnswer:
    """YES iff ``e`` is the identity."""
    _check(spec, e)
    if e.n != 0:
        return OracleAnswer.no(certificate={"z_projection": e.n})
    return fp_is_trivial(e.g, spec.base, budget)


def t_equal(spec: TorusSpec, e1: TorusElement, e2: TorusElement, budget: int = 0) -> OracleAnswer:
    return t_wp(spec, t_mul(spec, e1, t_inv(spec, e2), budget), budget)


def finite_index_subgroup(spec: TorusSpec, k: int) -> TorusSpec:
    """``pi^-1(kZ)``, which is the mapping torus of ``phi^k``."""
    if k < 1:
        raise ValueError("the index must be positive")
    return TorusSpec(spec.base, twist_power(spec.twist, k))


def reduce_spec(spec: TorusSpec, budget: int = 0) -> TorusSpec:
    """Replace a conjugator certified trivial by the empty word."""
    z = spec.twist.conjugator
    if z.is_identity:
        return spec
    if spec.base[spec.twist.factor].is_trivial(z, budget).value == "yes":
        return TorusSpec(spec.base, Twist(Word(), spec.twist.factor))
    return spec


def word_to_element(spec: TorusSpec, w: Word, budget: int = 0) -> TorusElement:
    """Evaluate a word over the base generators and ``t``.

    The letter ``t`` stands for ``(e, -1)``: the presentation relator
    ``t^-1 x^-1 t z^-1 x z`` says ``t^-1 x t = z^-1 x z``, and
    ``(e, 1)(x, 0)(e, 1)^-1 = (phi(x), 0)``.
    """
    out = identity()
    stable = TorusElement(FPWord(), -1)
    stable_inv = TorusElement(FPWord(), 1)
    for g, e in w.letters:
        if g == STABLE_LETTER:
            piece = stable if e > 0 else stable_inv
            for _ in range(abs(e)):
                out = t_mul(spec, out, piece, budget)
        else:
            fid = spec.base.factor_of(g)
            out = t_mul(spec, out, TorusElement(FPWord(((fid, Word.gen(g, e)),)), 0), budget)
    return out


# --- presentations ----------------------------------------------------------


def torus_presentation(
    spec: TorusSpec, factor_presentations: Mapping[str, FinitePresentation]
) -> FinitePresentation:
    z = spec.twist.conjugator
    gens: list[str] = []
    rels: list[Word] = []
    for f in spec.base.factors:
        p = factor_presentations[f.factor_id]
        if tuple(p.generators) != tuple(f.generators):
            raise ValueError(f"presentation of {f.factor_id} has generators {p.generators}")
        gens.extend(p.generators)
    for f in spec.base.factors:
        rels.extend(factor_presentations[f.factor_id].relators)
    t = Word.gen(STABLE_LETTER)
    for f in spec.base.factors:
        for g in f.generators:
            x = Word.gen(g)
            if f.factor_id == spec.twist.factor:
                rels.append(t.inverse() * x.inverse() * t * z.inverse() * x * z)
            else:
                rels.append(t.inverse() * x.inverse() * t * x)
    return FinitePresentation(tuple(gens) + (STABLE_LETTER,), tuple(rels))


def k_presentation(
    spec: TorusSpec, r: int, factor_presentations: Mapping[str, FinitePresentation]
) -> FinitePresentation:
    """The torus presentation times a cyclic group ``<u | u^{r+1}>``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    base = torus_presentation(spec, factor_presentations)
    u = Word.gen(CYCLIC_LETTER)
    rels = list(base.relators)
    rels.extend(commutator(u, Word.gen(g)) for g in base.generators)
    rels.append(u ** (r + 1))
    return FinitePresentation(base.generators + (CYCLIC_LETTER,), tuple(rels))


# --- text form --------------------------------------------------------------


_ELEMENT = re.compile(r"\s*\((.*);\s*([+-]?\d+)\s*\)\s*\Z", re.S)


def format_element(e: TorusElement) -> str:
    return f"({format_word(e.g.flatten())} ; {e.n})"


def parse_element(spec: TorusSpec, text: str, budget: int = 0) -> TorusElement:
    m = _ELEMENT.match(text)
    if not m:
        raise WordParseError(f"expected '(word ; n)', got {text!r}")
    body = m[1].strip()
    return element(spec, parse_word(body) if body else Word(), int(m[2]), budget)
