"""Hall's centre-by-metabelian group and its two central quotients.

``H0 = <a, b>`` with ``b_i = a^-i b a^i``, central commutators
``c_{i,j} = [b_j, b_i]`` and ``c_{i,j} = c_{i+k,j+k}``.  The centre is free
abelian on ``d_r = c_{0,r} = [b_r, b_0]``.  Two quotients are provided:

* ``V1`` kills ``d_{f(n)}^n`` -- solvable word problem, ``d_r`` has finite
  order exactly when ``r`` is in the range of ``f``;
* ``V2`` kills ``d_n^2`` and ``d_{f(n)}`` -- every ``d_r`` has order at most
  2, and ``d_r = 1`` exactly when ``r`` is in the range of ``f``.

In both, ``n`` runs over the positive integers.  ``f(0)`` is computed like
any other value but is not used by either quotient.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .answers import OracleAnswer, Verdict, conjunction
from .freeprod import FactorOracle
from .machines import ComputableF, FTableError, f_eval, in_range_semi
from .presentation import FinitePresentation
from .words import Word, commutator, exponent_sum

A, B = "a", "b"


class PreconditionError(ValueError):
    pass


class Variant(enum.Enum):
    V1 = "v1"
    V2 = "v2"


@dataclass(frozen=True)
class HallConfig:
    variant: Variant = Variant.V1
    f: ComputableF = field(default_factory=ComputableF.halting)


@dataclass(frozen=True)
class BWord:
    """A word in the ``b_i``, run-length and freely reduced."""

    letters: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> BWord:
        out: list[tuple[int, int]] = []
        for i, e in letters:
            if not e:
                continue
            if out and out[-1][0] == i:
                e += out.pop()[1]
                if e:
                    out.append((i, e))
            else:
                out.append((i, e))
        return cls(tuple(out))

    def __mul__(self, other: BWord) -> BWord:
        return BWord.from_letters(self.letters + other.letters)

    def inverse(self) -> BWord:
        return BWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"b{i}" if e == 1 else f"b{i}^{e}" for i, e in self.letters)


@dataclass(frozen=True)
class CenterVector:
    """``prod d_r^{n_r}`` stored as sorted ``(r, n_r)`` pairs, no zeros."""

    coefficients: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> CenterVector:
        items = []
        for r, n in sorted(coeffs.items()):
            if r < 1:
                raise ValueError(f"d_{r} is not a centre generator")
            if n:
                items.append((r, n))
        return cls(tuple(items))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    def __add__(self, other: CenterVector) -> CenterVector:
        acc = defaultdict(int, self.as_dict())
        for r, n in other.coefficients:
            acc[r] += n
        return CenterVector.from_dict(acc)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "1"
        return " ".join(f"d{r}" if n == 1 else f"d{r}^{n}" for r, n in self.coefficients)


# --- rewriting --------------------------------------------------------------


def _check_alphabet(w: Word) -> None:
    stray = w.generators() - {A, B}
    if stray:
        raise ValueError(f"word uses generators outside {{a, b}}: {sorted(stray)}")


def to_b_word(w: Word) -> BWord:
    """Rewrite a word with zero ``a``-exponent sum in the ``b_i``.

    With running prefix exponent ``p``, an occurrence ``b^e`` becomes
    ``b_{-p}^e`` because ``a^p b a^-p = b_{-p}``.
    """
    _check_alphabet(w)
    if exponent_sum(w, A):
        raise PreconditionError("a-exponent sum is nonzero")
    p = 0
    out = []
    for g, e in w.letters:
        if g == A:
            p += e
        else:
            out.append((-p, e))
    return BWord.from_letters(out)


def b_generator(i: int) -> Word:
    return Word.gen(A, -i) * Word.gen(B) * Word.gen(A, i)


def from_b_word(w1: BWord) -> Word:
    out = Word()
    for i, e in w1.letters:
        out = out * Word.gen(A, -i) * Word.gen(B, e) * Word.gen(A, i)
    return out


def b_exponent_sums(w1: BWord) -> dict[int, int]:
    acc: dict[int, int] = defaultdict(int)
    for i, e in w1.letters:
        acc[i] += e
    return {i: e for i, e in sorted(acc.items()) if e}


def collect_center(w1: BWord) -> CenterVector:
    """Sort ``w1`` into ascending index order, collecting central factors.

    Each letter is bubbled left by adjacent swaps.  Moving ``y = b_i^f`` left
    past ``x = b_j^e`` (``j > i``) uses ``x y = y x [x, y]`` with
    ``[b_j^e, b_i^f] = c_{i,j}^{ef} = d_{j-i}^{ef}``; equal neighbours merge.
    """
    if b_exponent_sums(w1):
        raise PreconditionError("some b_i exponent sum is nonzero")
    center: dict[int, int] = defaultdict(int)
    sorted_part: list[list[int]] = []  # ascending indices, merged runs
    for i, f in w1.letters:
        pos = len(sorted_part)
        while pos > 0 and sorted_part[pos - 1][0] > i:
            j, e = sorted_part[pos - 1]
            center[j - i] += e * f
            pos -= 1
        if pos > 0 and sorted_part[pos - 1][0] == i:
            sorted_part[pos - 1][1] += f
            if sorted_part[pos - 1][1] == 0:
                del sorted_part[pos - 1]
        else:
            sorted_part.insert(pos, [i, f])
    assert not sorted_part
    return CenterVector.from_dict(center)


def z_word(r: int) -> Word:
    """The word ``[a^-r b a^r, b]`` representing ``d_r``."""
    if r < 1:
        raise ValueError("z_r is defined for r >= 1")
    return commutator(b_generator(r), Word.gen(B))


def z_word_or_empty(r: int) -> Word:
    return Word() if r == 0 else z_word(r)


# --- deciding triviality ----------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _killed_in_v2(r: int, f: ComputableF, budget: int) -> tuple[Verdict, int]:
    """YES if ``f(n) = r`` for some ``n >= 1`` is found, else UNKNOWN."""
    hit = in_range_semi(f, r, budget)
    if hit is not None and hit.n >= 1:
        return Verdict.YES, hit.budget_spent
    return Verdict.UNKNOWN, 0 if f.is_table else budget


def center_is_trivial(v: CenterVector, cfg: HallConfig, budget: int = 0) -> OracleAnswer:
    if cfg.variant is Variant.V1:
        for r, n in v.coefficients:
            # d_r has order m exactly when f(m) = r, and f is injective
            if cfg.f.is_table:
                m = cfg.f.preimage(r)
                killed = m is not None and m >= 1 and n % m == 0
            else:
                killed = any(f_eval(cfg.f, m) == r for m in _divisors(n))
            if not killed:
                return OracleAnswer.no(certificate={"r": r, "n": n})
        return OracleAnswer.yes()
    verdicts = []
    spent = 0
    for r, n in v.coefficients:
        if n % 2 == 0:
            continue
        verdict, cost = _killed_in_v2(r, cfg.f, budget)
        spent = max(spent, cost)
        verdicts.append(verdict)
    result = conjunction(verdicts)
    if result is Verdict.YES:
        return OracleAnswer.yes(budget_spent=spent)
    return OracleAnswer.unknown(budget_spent=spent)


def reduce_to_center(w: Word) -> CenterVector | None:
    """Stages 1-3: ``None`` when ``w`` survives in ``H0`` modulo its centre."""
    _check_alphabet(w)
    if exponent_sum(w, A):
        return None
    w1 = to_b_word(w)
    if b_exponent_sums(w1):
        return None
    return collect_center(w1)


def wp_v1(w: Word, cfg: HallConfig) -> bool:
    """True iff ``w`` is trivial in the V1 quotient."""
    if cfg.variant is not Variant.V1:
        raise ValueError("wp_v1 needs a V1 configuration")
    v = reduce_to_center(w)
    if v is None:
        return False
    if not v:
        return True
    return center_is_trivial(v, cfg).is_yes


def wp_v2_semi(w: Word, cfg: HallConfig, budget: int = 0) -> OracleAnswer:
    """YES = trivial, NO = nontrivial, UNKNOWN = undecided within budget."""
    if cfg.variant is not Variant.V2:
        raise ValueError("wp_v2_semi needs a V2 configuration")
    v = reduce_to_center(w)
    if v is None:
        return OracleAnswer.no()
    if not v:
        return OracleAnswer.yes()
    return center_is_trivial(v, cfg, budget)


def word_problem(w: Word, cfg: HallConfig, budget: int = 0) -> OracleAnswer:
    """As :func:`wp_v1` or :func:`wp_v2_semi`, keeping the certificate."""
    if cfg.variant is Variant.V2:
        return wp_v2_semi(w, cfg, budget)
    v = reduce_to_center(w)
    if v is None:
        return OracleAnswer.no(certificate={"survives": "modulo the centre"})
    return center_is_trivial(v, cfg) if v else OracleAnswer.yes()


@dataclass(frozen=True)
class OrderBound:
    kind: str  # "finite", "upper" or "unknown"
    value: int | None = None
    budget_spent: int = 0

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"finite {self.value}"
        if self.kind == "upper":
            return f"divides {self.value}"
        return "unknown"


def order_bound_of_d(r: int, cfg: HallConfig, budget: int = 0) -> OrderBound:
    if r < 1:
        raise ValueError("d_r is defined for r >= 1")
    hit = in_range_semi(cfg.f, r, budget)
    found = hit is not None and hit.n >= 1
    spent = hit.budget_spent if hit is not None else (0 if cfg.f.is_table else budget)
    if cfg.variant is Variant.V1:
        return OrderBound("finite", hit.n, spent) if found else OrderBound("unknown", None, spent)
    return OrderBound("finite", 1, spent) if found else OrderBound("upper", 2, spent)


# --- truncated presentations ------------------------------------------------


def h0_relators(truncation: int) -> list[Word]:
    """Hall relators normalised by ``a``-conjugation, indices within ``[-T, T]``.

    ``[[b_0, b_j], b_k]`` for ``1 <= j <= T``, ``|k| <= T`` and
    ``c_{0,r} c_{1,r+1}^-1`` for ``1 <= r < T``.  Every other instance of the
    defining relations is an ``a``-conjugate of these when indices are not
    bounded.
    """
    T = truncation
    rels = []
    for j in range(1, T + 1):
        inner = commutator(b_generator(0), b_generator(j))
        for k in range(-T, T + 1):
            rels.append(commutator(inner, b_generator(k)))
    for r in range(1, T):
        c0 = commutator(b_generator(r), b_generator(0))
        c1 = commutator(b_generator(r + 1), b_generator(1))
        rels.append(c0 * c1.inverse())
    return rels


def _f_values(f: ComputableF, truncation: int) -> list[tuple[int, int]]:
    """``(n, f(n))`` for ``1 <= n <= T``, cut short by a finite table."""
    out = []
    for n in range(1, truncation + 1):
        try:
            out.append((n, f_eval(f, n)))
        except FTableError:
            break
    return out


def hall_presentation(cfg: HallConfig, truncation: int) -> FinitePresentation:
    if truncation < 1:
        raise ValueError("truncation must be positive")
    rels = h0_relators(truncation)
    values = _f_values(cfg.f, truncation)
    if cfg.variant is Variant.V1:
        rels.extend(z_word(r) ** n for n, r in values if r >= 1)
    else:
        rels.extend(z_word(n) ** 2 for n in range(1, truncation + 1))
        rels.extend(z_word(r) for _, r in values if r >= 1)
    return FinitePresentation((A, B), tuple(rels))


# --- as a free-product factor -----------------------------------------------


@dataclass(frozen=True)
class HallFactor(FactorOracle):
    """``H1`` as a factor oracle.

    ``center_model="ambient"`` (default) answers centrality as in the
    centreless groups that ``H1`` stands in for: an element is central iff it
    is trivial.  ``"intrinsic"`` tests commutation with ``a`` and ``b``
    inside ``H1`` itself.
    """

    cfg: HallConfig = field(default_factory=HallConfig)
    factor_id: str = "A"
    generators: tuple[str, ...] = (A, B)
    center_model: str = "ambient"

    def is_trivial(self, word: Word, budget: int = 0) -> Verdict:
        return word_problem(word, self.cfg, budget).verdict

    def is_central(self, word: Word, budget: int = 0) -> Verdict:
        if self.center_model == "ambient":
            return self.is_trivial(word, budget)
        return conjunction(
            self.is_trivial(commutator(word, Word.gen(g)), budget) for g in self.generators
        )

    def presentation(self, truncation: int) -> FinitePresentation:
        return hall_presentation(self.cfg, truncation)
