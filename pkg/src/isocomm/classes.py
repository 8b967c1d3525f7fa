"""The two presentation families and the deciders built on them.

A label ``(family, r, T, f)`` names one presentation.  Both families live
over ``G = A * B`` with ``A`` a truncated presentation of the Hall quotient
(V1 for ``c1``, V2 for ``c2``) and ``B = <y | y^2>``:

* ``c1``: ``K_r = G_{tau_{z_r}} x C_{r+1}``, generators ``a b y t u``;
* ``c2``: ``G_{tau_{z_r}}``, generators ``a b y t``.

``z_0`` is the empty word, so label 0 is the untwisted torus.  Deciders
reason about the groups themselves (through the word-problem oracles), while
emission produces the truncated presentations, which only stand in for them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .answers import OracleAnswer, Verdict
from .freeprod import FiniteFactor, FreeProduct, Twist
from .hall import HallConfig, HallFactor, PreconditionError, Variant, order_bound_of_d, wp_v2_semi, z_word, z_word_or_empty
from .machines import ComputableF
from .presentation import (
    AbelianInvariants,
    FinitePresentation,
    abelian_invariants,
    direct_product,
    dumps,
    free_product,
)
from .torus import (
    CYCLIC_LETTER,
    STABLE_LETTER,
    TorusSpec,
    finite_index_subgroup,
    k_presentation,
    reduce_spec,
    t_wp,
    torus_presentation,
    word_to_element,
)
from .words import Word, exponent_sum

B_GENERATOR = "y"
DEFAULT_TRUNCATION = 8


class Family(enum.Enum):
    C1 = "c1"
    C2 = "c2"


@dataclass(frozen=True)
class InstanceLabel:
    family: Family
    r: int
    truncation: int | None = None
    f: ComputableF = field(default_factory=ComputableF.halting)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if self.truncation is None:
            object.__setattr__(self, "truncation", max(DEFAULT_TRUNCATION, self.r))
        if self.truncation < 1 or self.truncation < self.r:
            raise ValueError(f"truncation must be positive and at least r, got T={self.truncation}, r={self.r}")

    @property
    def variant(self) -> Variant:
        return Variant.V1 if self.family is Family.C1 else Variant.V2

    @property
    def config(self) -> HallConfig:
        return HallConfig(self.variant, self.f)

    def header(self) -> dict[str, object]:
        return {
            "family": self.family.value,
            "r": self.r,
            "truncation": self.truncation,
            "f-mode": self.f.describe(),
        }


def label(family: Family | str, r: int, truncation: int | None = None, f: ComputableF | None = None) -> InstanceLabel:
    """A label whose truncation is raised to ``r`` when too small."""
    if truncation is not None:
        truncation = max(truncation, r)
    return InstanceLabel(Family(family), r, truncation, f or ComputableF.halting())


# --- instantiation ----------------------------------------------------------


def base_factors(lab: InstanceLabel) -> tuple[HallFactor, FiniteFactor]:
    return HallFactor(lab.config), FiniteFactor.cyclic("B", B_GENERATOR, 2)


def torus_spec(lab: InstanceLabel) -> TorusSpec:
    a, b = base_factors(lab)
    return TorusSpec(FreeProduct((a, b)), Twist(z_word_or_empty(lab.r), "A"))


def factor_presentations(lab: InstanceLabel) -> dict[str, FinitePresentation]:
    a, _ = base_factors(lab)
    y = Word.gen(B_GENERATOR)
    return {
        "A": a.presentation(lab.truncation),
        "B": FinitePresentation((B_GENERATOR,), (y ** 2,)),
    }


@lru_cache(maxsize=256)
def emit(lab: InstanceLabel) -> FinitePresentation:
    spec = torus_spec(lab)
    if lab.family is Family.C1:
        return k_presentation(spec, lab.r, factor_presentations(lab))
    return torus_presentation(spec, factor_presentations(lab))


def emit_c1(lab: InstanceLabel) -> FinitePresentation:
    if lab.family is not Family.C1:
        raise PreconditionError("emit_c1 needs a c1 label")
    return emit(lab)


def emit_c2(lab: InstanceLabel) -> FinitePresentation:
    if lab.family is not Family.C2:
        raise PreconditionError("emit_c2 needs a c2 label")
    return emit(lab)


def emit_text(lab: InstanceLabel) -> str:
    """The presentation in ``.pres`` form with the label recorded in the header."""
    return dumps(emit(lab), lab.header())


def file_name(lab: InstanceLabel) -> str:
    return f"{lab.family.value}_r{lab.r:03d}.pres"


def enumerate_labels(
    family: Family | str, count: int, truncation: int | None = None, f: ComputableF | None = None
) -> Iterator[InstanceLabel]:
    if count < 0:
        raise ValueError("count must be nonnegative")
    for r in range(count):
        yield label(family, r, truncation, f)


def enumerate(
    family: Family | str, count: int, truncation: int | None = None, f: ComputableF | None = None
) -> list[FinitePresentation]:
    return [emit(lab) for lab in enumerate_labels(family, count, truncation, f)]


# --- word problem -----------------------------------------------------------


def class_wp(lab: InstanceLabel, w: Word, budget: int = 0) -> OracleAnswer:
    """Word problem in the group named by ``lab``.

    In ``c1`` the letter ``u`` is central of order ``r + 1``, so it is
    split off as an exponent modulo ``r + 1``.
    """
    allowed = set(emit_generators(lab))
    stray = w.generators() - allowed
    if stray:
        raise ValueError(f"foreign generators {sorted(stray)} for a {lab.family.value} word")
    u_part = 0
    if lab.family is Family.C1:
        u_part = exponent_sum(w, CYCLIC_LETTER) % (lab.r + 1)
        w = Word.from_letters((g, e) for g, e in w.letters if g != CYCLIC_LETTER)
    if u_part:
        return OracleAnswer.no(certificate={"u_exponent": u_part})
    spec = torus_spec(lab)
    return t_wp(spec, word_to_element(spec, w, budget), budget)


def emit_generators(lab: InstanceLabel) -> tuple[str, ...]:
    gens = ("a", "b", B_GENERATOR, STABLE_LETTER)
    return gens + (CYCLIC_LETTER,) if lab.family is Family.C1 else gens


# --- isomorphism within c1 --------------------------------------------------


def _prime_powers(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def elementary_divisors(inv: AbelianInvariants) -> tuple[int, ...]:
    """Torsion as a sorted multiset of prime powers."""
    return tuple(sorted(q for d in inv.torsion for q in _prime_powers(d)))


def _multiset_minus(xs: tuple[int, ...], ys: tuple[int, ...]) -> tuple[int, ...]:
    rest = list(ys)
    out = []
    for x in xs:
        if x in rest:
            rest.remove(x)
        else:
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=256)
def emitted_invariants(lab: InstanceLabel) -> AbelianInvariants:
    return abelian_invariants(emit(lab))


@dataclass(frozen=True)
class IsoReport:
    verdict: Verdict
    invariants: tuple[AbelianInvariants, AbelianInvariants]
    differing: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())

    def lines(self) -> list[str]:
        left, right = self.invariants
        out = [f"invariants-left: {left}", f"invariants-right: {right}"]
        if self.verdict is Verdict.NO:
            a, b = self.differing
            out.append(
                "torsion-differs: "
                + (" ".join(map(str, a)) or "-") + " vs " + (" ".join(map(str, b)) or "-")
            )
        return out


def iso_c1(l1: InstanceLabel, l2: InstanceLabel, strict: bool = False) -> IsoReport:
    """Decide isomorphism of two ``c1`` groups; the rule is ``r1 == r2``.

    The abelian invariants of the emitted presentations certify a No.  With
    ``strict`` a Yes also requires byte-identical emitted presentations.
    """
    if l1.family is not Family.C1 or l2.family is not Family.C1:
        raise PreconditionError("iso_c1 compares two c1 labels")
    inv = (emitted_invariants(l1), emitted_invariants(l2))
    same = l1.r == l2.r
    if same and strict:
        same = dumps(emit(l1)) == dumps(emit(l2))
    if same:
        return IsoReport(Verdict.YES, inv)
    e1, e2 = elementary_divisors(inv[0]), elementary_divisors(inv[1])
    return IsoReport(Verdict.NO, inv, (_multiset_minus(e1, e2), _multiset_minus(e2, e1)))


# --- commensurability -------------------------------------------------------


@dataclass(frozen=True)
class CommCertificate:
    """Finite-index levels on both sides and the common subgroup they reach."""

    k1: int
    k2: int
    witness: TorusSpec

    def __post_init__(self):
        if self.k1 < 1 or self.k2 < 1:
            raise ValueError("finite-index levels are positive")

    def lines(self) -> list[str]:
        z = self.witness.twist.conjugator
        return [f"k1: {self.k1}", f"k2: {self.k2}", f"witness-conjugator: {z}"]


def _torus_level(lab: InstanceLabel, k: int) -> int:
    """Index inside the torus part; ``c1`` first drops the ``C_{r+1}`` factor."""
    if lab.family is Family.C2:
        return k
    if k % (lab.r + 1):
        raise ValueError(f"a c1 level must be a multiple of r+1 = {lab.r + 1}")
    return k // (lab.r + 1)


def subgroup_spec(lab: InstanceLabel, k: int, budget: int = 0) -> TorusSpec:
    return reduce_spec(finite_index_subgroup(torus_spec(lab), _torus_level(lab, k)), budget)


def replay_certificate(l1: InstanceLabel, l2: InstanceLabel, cert: CommCertificate, budget: int = 0) -> bool:
    """Recompute both subgroups from the levels and compare with the witness."""
    try:
        s1 = subgroup_spec(l1, cert.k1, budget)
        s2 = subgroup_spec(l2, cert.k2, budget)
    except ValueError:
        return False
    return s1 == s2 == cert.witness


def _c2_level(r: int) -> int:
    return 1 if z_word_or_empty(r).is_identity else 2


def comm_c2(l1: InstanceLabel, l2: InstanceLabel) -> OracleAnswer:
    """Always Yes: ``d_r^2 = 1``, so the squared twist is trivial on both sides."""
    if l1.family is not Family.C2 or l2.family is not Family.C2:
        raise PreconditionError("comm_c2 compares two c2 labels")
    k1, k2 = _c2_level(l1.r), _c2_level(l2.r)
    witness = subgroup_spec(l1, k1)
    cert = CommCertificate(k1, k2, witness)
    assert replay_certificate(l1, l2, cert), "the index-2 subgroups must agree"
    return OracleAnswer.yes(cert)


def comm_c1_semi(lab: InstanceLabel, budget: int = 0) -> OracleAnswer:
    """Commensurability of ``K_r`` with ``K_0``: Yes once ``d_r`` has finite order."""
    if lab.family is not Family.C1:
        raise PreconditionError("comm_c1_semi needs a c1 label")
    if lab.r == 0:
        m, spent = 1, 0
    else:
        bound = order_bound_of_d(lab.r, lab.config, budget)
        if bound.kind != "finite":
            return OracleAnswer.unknown(bound.budget_spent)
        m, spent = bound.value, bound.budget_spent
    ref = InstanceLabel(Family.C1, 0, lab.truncation, lab.f)
    cert = CommCertificate((lab.r + 1) * m, 1, subgroup_spec(ref, 1))
    if not replay_certificate(lab, ref, cert):
        raise AssertionError("certificate failed to replay")
    return OracleAnswer.yes(cert, spent)


def iso_c2_semi(lab: InstanceLabel, budget: int = 0) -> OracleAnswer:
    """Isomorphism of ``G_{tau_{z_r}}`` with ``G x Z``: Yes once ``z_r = 1``."""
    if lab.family is not Family.C2:
        raise PreconditionError("iso_c2_semi needs a c2 label")
    if lab.r == 0:
        return OracleAnswer.yes()
    ans = wp_v2_semi(z_word(lab.r), lab.config, budget)
    if ans.is_yes:
        return OracleAnswer.yes(budget_spent=ans.budget_spent)
    return OracleAnswer.unknown(ans.budget_spent)


# --- reductions -------------------------------------------------------------

PairOracle = Callable[[InstanceLabel, InstanceLabel, int], OracleAnswer]


def bundled_comm_oracle(l1: InstanceLabel, l2: InstanceLabel, budget: int = 0) -> OracleAnswer:
    """The semi-decider, for pairs ``(K_r, K_0)``."""
    if l2.r != 0:
        l1, l2 = l2, l1
    if l2.r != 0:
        return OracleAnswer.unknown()
    return comm_c1_semi(l1, budget)


def bundled_iso_oracle(l1: InstanceLabel, l2: InstanceLabel, budget: int = 0) -> OracleAnswer:
    if l2.r != 0:
        l1, l2 = l2, l1
    if l2.r != 0:
        return OracleAnswer.unknown()
    return iso_c2_semi(l1, budget)


def _in_range(lab: InstanceLabel) -> bool:
    if not lab.f.is_table:
        raise PreconditionError("a perfect oracle needs an injected table f")
    n = lab.f.preimage(lab.r)
    return lab.r == 0 or (n is not None and n >= 1)


def perfect_comm_oracle(l1: InstanceLabel, l2: InstanceLabel, budget: int = 0) -> OracleAnswer:
    """Exact answers for ``(K_r, K_0)`` when the range of ``f`` is known."""
    if l2.r != 0:
        l1, l2 = l2, l1
    if l2.r != 0:
        raise PreconditionError("the perfect oracle only compares against label 0")
    return OracleAnswer(Verdict.of(_in_range(l1)))


perfect_iso_oracle = perfect_comm_oracle  # same criterion: r = 0 or r in range f


def reduce_torsion_to_comm(
    comm_oracle: PairOracle, r: int, budget: int = 0, f: ComputableF | None = None,
    truncation: int | None = None,
) -> OracleAnswer:
    """Does ``z_r`` have finite order?  Asked as: is ``K_r`` commensurable with ``K_0``?"""
    l_r = label(Family.C1, r, truncation, f)
    l_0 = label(Family.C1, 0, l_r.truncation, f)
    return comm_oracle(l_r, l_0, budget)


def reduce_word_to_iso(
    iso_oracle: PairOracle, r: int, budget: int = 0, f: ComputableF | None = None,
    truncation: int | None = None,
) -> OracleAnswer:
    """Is ``z_r = 1``?  Asked as: is ``G_{tau_{z_r}}`` isomorphic to ``G x Z``?"""
    l_r = label(Family.C2, r, truncation, f)
    l_0 = label(Family.C2, 0, l_r.truncation, f)
    return iso_oracle(l_r, l_0, budget)


# --- triviality from a decidable class --------------------------------------

MemberOracle = Callable[[FinitePresentation, int], OracleAnswer]
RelationOracle = Callable[[FinitePresentation, FinitePresentation, int], OracleAnswer]


def _nontrivial(reason: str) -> OracleAnswer:
    return OracleAnswer.no(certificate={"reason": reason})


def triviality_from_iso(
    member: MemberOracle, iso: RelationOracle, g_ref: FinitePresentation, a: FinitePresentation,
    budget: int = 0,
) -> OracleAnswer:
    """Yes means ``A`` is trivial, No nontrivial.  Uses ``H = G * A``."""
    h = free_product(g_ref, a)
    ans = member(h, budget)
    if ans.is_no:
        return _nontrivial("G*A outside the class")
    if ans.is_unknown:
        return OracleAnswer.unknown(ans.budget_spent)
    ans = iso(h, g_ref, budget)
    if ans.is_no:
        return _nontrivial("G*A not isomorphic to G")
    if ans.is_unknown:
        return OracleAnswer.unknown(ans.budget_spent)
    return OracleAnswer.yes()


def triviality_from_comm(
    member: MemberOracle, comm: RelationOracle, g_ref: FinitePresentation, a: FinitePresentation,
    budget: int = 0,
) -> OracleAnswer:
    """As :func:`triviality_from_iso` with ``H = G * (A * A)`` and ``F = G x (A * A)``."""
    aa = free_product(a, a)
    h, f = free_product(g_ref, aa), direct_product(g_ref, aa)
    pending = False
    for name, p in (("G*(A*A)", h), ("Gx(A*A)", f)):
        ans = member(p, budget)
        if ans.is_no:
            return _nontrivial(f"{name} outside the class")
        pending |= ans.is_unknown
    if pending:
        return OracleAnswer.unknown()
    for name, p in (("G*(A*A)", h), ("Gx(A*A)", f)):
        ans = comm(p, g_ref, budget)
        if ans.is_no:
            return _nontrivial(f"{name} not commensurable with G")
        pending |= ans.is_unknown
    return OracleAnswer.unknown() if pending else OracleAnswer.yes()


# --- toy oracles ------------------------------------------------------------

TOY_G_REF = FinitePresentation.build(["x"])
TOY_INSTANCES = {
    "trivial": FinitePresentation.build([]),
    "Z": FinitePresentation.build(["x"]),
    "C2": FinitePresentation.build(["x"], ["x^2"]),
}

# isomorphism type of every presentation the reductions build from the instances
_TOY_TYPES = {
    "trivial": ("Z", "Z", "Z"),
    "Z": ("F2", "F3", "Z x F2"),
    "C2": ("Z*C2", "Z*C2*C2", "Z x Dinf"),
}

# commensurability class of each type
_TOY_COMM = {"Z": "Z", "Dinf": "Z", "F2": "free", "F3": "free", "Z*C2": "free",
             "Z*C2*C2": "free", "Z x F2": "Z x free", "Z x Dinf": "Z^2"}


def _toy_catalogue() -> dict[str, str]:
    cat = {dumps(TOY_G_REF): "Z"}
    for name, a in TOY_INSTANCES.items():
        ga, gaa, gxaa = _TOY_TYPES[name]
        aa = free_product(a, a)
        cat[dumps(free_product(TOY_G_REF, a))] = ga
        cat[dumps(free_product(TOY_G_REF, aa))] = gaa
        cat[dumps(direct_product(TOY_G_REF, aa))] = gxaa
    return cat


@dataclass(frozen=True)
class ToyOracles:
    """Lookup-table oracles for a class given by the set of its member types.

    Presentations outside the catalogue get Unknown.
    """

    members: frozenset[str]
    catalogue: dict[str, str] = field(default_factory=_toy_catalogue, compare=False)

    def kind(self, p: FinitePresentation) -> str | None:
        return self.catalogue.get(dumps(p))

    def member(self, p: FinitePresentation, budget: int = 0) -> OracleAnswer:
        k = self.kind(p)
        return OracleAnswer.unknown() if k is None else OracleAnswer(Verdict.of(k in self.members))

    def iso(self, p: FinitePresentation, q: FinitePresentation, budget: int = 0) -> OracleAnswer:
        kp, kq = self.kind(p), self.kind(q)
        if kp is None or kq is None:
            return OracleAnswer.unknown()
        return OracleAnswer(Verdict.of(kp == kq))

    def comm(self, p: FinitePresentation, q: FinitePresentation, budget: int = 0) -> OracleAnswer:
        kp, kq = self.kind(p), self.kind(q)
        if kp is None or kq is None:
            return OracleAnswer.unknown()
        return OracleAnswer(Verdict.of(_TOY_COMM[kp] == _TOY_COMM[kq]))


def toy_iso_class() -> ToyOracles:
    """The class consisting of the infinite cyclic group."""
    return ToyOracles(frozenset({"Z"}))


def toy_comm_class() -> ToyOracles:
    """Virtually infinite cyclic groups."""
    return ToyOracles(frozenset({"Z", "Dinf"}))
