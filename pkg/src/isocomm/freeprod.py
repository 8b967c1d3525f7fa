"""Free products ``A * B`` over pluggable factor oracles, and twists.

A factor only has to answer triviality of words in its own generators;
every free-product algorithm here propagates UNKNOWN rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .answers import OracleAnswer, Verdict
from .words import Word

Syllable = tuple[str, Word]


class FactorOracle:
    """Word-problem oracle for one free factor.

    Subclasses set ``factor_id`` and ``generators`` and implement
    :meth:`is_trivial`.  The optional capabilities default to UNKNOWN.
    """

    factor_id: str
    generators: tuple[str, ...]

    def is_trivial(self, word: Word, budget: int = 0) -> Verdict:
        raise NotImplementedError

    def is_central(self, word: Word, budget: int = 0) -> Verdict:
        return Verdict.UNKNOWN

    def conjugate_in_factor(self, u: Word, v: Word, budget: int = 0) -> Verdict:
        return Verdict.UNKNOWN


@dataclass(frozen=True)
class FiniteFactor(FactorOracle):
    """A finite group given by its multiplication table (identity is 0)."""

    factor_id: str
    generators: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    images: tuple[int, ...]

    @classmethod
    def from_permutations(cls, factor_id: str, gens: Mapping[str, Sequence[int]]) -> FiniteFactor:
        names = tuple(gens)
        degree = len(next(iter(gens.values())))
        identity = tuple(range(degree))
        perms = [tuple(p) for p in gens.values()]
        elements = [identity]
        index = {identity: 0}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for p in perms:
                    y = tuple(p[x[i]] for i in range(degree))  # apply x, then p
                    if y not in index:
                        index[y] = len(elements)
                        elements.append(y)
                        nxt.append(y)
            frontier = nxt

        def compose(x, y):  # x first, then y
            return tuple(y[x[i]] for i in range(degree))

        table = tuple(
            tuple(index[compose(x, y)] for y in elements) for x in elements
        )
        return cls(factor_id, names, table, tuple(index[p] for p in perms))

    @classmethod
    def cyclic(cls, factor_id: str, name: str, order: int) -> FiniteFactor:
        table = tuple(tuple((i + j) % order for j in range(order)) for i in range(order))
        return cls(factor_id, (name,), table, (1 % order,))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.table[x].index(0)

    def evaluate(self, word: Word) -> int:
        lookup = dict(zip(self.generators, self.images))
        x = 0
        for g, e in word.letters:
            y = lookup[g] if e > 0 else self.inv(lookup[g])
            for _ in range(abs(e) % self.order):
                x = self.mul(x, y)
        return x

    def element_words(self) -> list[Word]:
        """A shortest word for every element, by breadth-first search."""
        words: list[Word | None] = [None] * self.order
        words[0] = Word()
        frontier = [0]
        steps = [(g, s) for g in self.generators for s in (1, -1)]
        while frontier:
            nxt = []
            for x in frontier:
                for g, s in steps:
                    y = self.mul(x, self.evaluate(Word.gen(g, s)))
                    if words[y] is None:
                        words[y] = words[x] * Word.gen(g, s)
                        nxt.append(y)
            frontier = nxt
        return words  # type: ignore[return-value]

    def is_trivial(self, word: Word, budget: int = 0) -> Verdict:
        return Verdict.of(self.evaluate(word) == 0)

    def is_central(self, word: Word, budget: int = 0) -> Verdict:
        x = self.evaluate(word)
        return Verdict.of(all(self.mul(x, y) == self.mul(y, x) for y in range(self.order)))

    def conjugate_in_factor(self, u: Word, v: Word, budget: int = 0) -> Verdict:
        x, y = self.evaluate(u), self.evaluate(v)
        return Verdict.of(any(
            self.mul(self.mul(self.inv(g), x), g) == y for g in range(self.order)
        ))


@dataclass(frozen=True)
class FreeProduct:
    factors: tuple[FactorOracle, ...]

    def __post_init__(self):
        ids = [f.factor_id for f in self.factors]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate factor ids")
        gens = [g for f in self.factors for g in f.generators]
        if len(set(gens)) != len(gens):
            raise ValueError("factors must have disjoint generator names")

    def __getitem__(self, factor_id: str) -> FactorOracle:
        for f in self.factors:
            if f.factor_id == factor_id:
                return f
        raise KeyError(f"unknown factor id {factor_id!r}")

    def factor_of(self, generator: str) -> str:
        for f in self.factors:
            if generator in f.generators:
                return f.factor_id
        raise KeyError(f"generator {generator!r} belongs to no factor")

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(g for f in self.factors for g in f.generators)

    def split(self, word: Word) -> list[Syllable]:
        """Cut a word over all generators into maximal one-factor syllables."""
        out: list[Syllable] = []
        for g, e in word.letters:
            fid = self.factor_of(g)
            if out and out[-1][0] == fid:
                out[-1] = (fid, out[-1][1] * Word.gen(g, e))
            else:
                out.append((fid, Word.gen(g, e)))
        return out


@dataclass(frozen=True)
class FPWord:
    syllables: tuple[Syllable, ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def inverse(self) -> FPWord:
        return FPWord(tuple((fid, w.inverse()) for fid, w in reversed(self.syllables)))

    def concat(self, other: FPWord) -> list[Syllable]:
        """Raw (unnormalized) concatenation."""
        return list(self.syllables) + list(other.syllables)

    def flatten(self) -> Word:
        out = Word()
        for _, w in self.syllables:
            out = out * w
        return out

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"({fid}: {w})" for fid, w in self.syllables)


def fp_normalize(
    raw: Iterable[Syllable], group: FreeProduct, budget: int = 0, strict: bool = True
) -> FPWord | None:
    """Merge adjacent same-factor syllables and drop certified-trivial ones.

    With ``strict`` an UNKNOWN triviality query makes the result ``None``
    (Unknown).  Otherwise undecided syllables are kept, which still yields a
    word in which no syllable is certified trivial.
    """
    stack: list[Syllable] = []
    for fid, w in raw:
        oracle = group[fid]
        w = Word.from_letters(w.letters)
        if stack and stack[-1][0] == fid:
            w = stack.pop()[1] * w
        if w.is_identity:
            continue
        verdict = oracle.is_trivial(w, budget)
        if verdict is Verdict.YES:
            continue
        if verdict is Verdict.UNKNOWN and strict:
            return None
        stack.append((fid, w))
    return FPWord(tuple(stack))


def fp_multiply(u: FPWord, v: FPWord, group: FreeProduct, budget: int = 0, strict: bool = False) -> FPWord | None:
    return fp_normalize(u.concat(v), group, budget, strict)


def fp_is_trivial(raw: Iterable[Syllable] | FPWord, group: FreeProduct, budget: int = 0) -> OracleAnswer:
    if isinstance(raw, FPWord):
        raw = raw.syllables
    nf = fp_normalize(raw, group, budget, strict=True)
    if nf is None:
        return OracleAnswer.unknown(budget)
    return OracleAnswer.yes() if nf.is_identity else OracleAnswer.no(certificate=nf)


def _cyclic_syllables(w: FPWord, group: FreeProduct, budget: int) -> list[Syllable] | None:
    syl = list(w.syllables)
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        fid = syl[0][0]
        merged = syl[-1][1] * syl[0][1]
        rest = syl[1:-1]
        verdict = group[fid].is_trivial(merged, budget)
        if verdict is Verdict.UNKNOWN:
            return None
        syl = rest if verdict is Verdict.YES else [(fid, merged)] + rest
    return syl


def _same_element(s: Syllable, t: Syllable, group: FreeProduct, budget: int) -> Verdict:
    if s[0] != t[0]:
        return Verdict.NO
    return group[s[0]].is_trivial(s[1] * t[1].inverse(), budget)


def fp_conjugate(u: FPWord, v: FPWord, group: FreeProduct, budget: int = 0) -> OracleAnswer:
    """Conjugacy of two normal forms by the free-product criterion."""
    cu = _cyclic_syllables(u, group, budget)
    cv = _cyclic_syllables(v, group, budget)
    if cu is None or cv is None:
        return OracleAnswer.unknown(budget)
    if len(cu) != len(cv):
        return OracleAnswer.no()
    if not cu:
        return OracleAnswer.yes()
    if len(cu) == 1:
        (fu, wu), (fv, wv) = cu[0], cv[0]
        if fu != fv:
            return OracleAnswer.no()
        return OracleAnswer(group[fu].conjugate_in_factor(wu, wv, budget))
    # cyclically reduced of length >= 2: conjugate iff a cyclic permutation
    undecided = False
    n = len(cu)
    for k in range(n):
        rotated = cv[k:] + cv[:k]
        verdicts = [_same_element(s, t, group, budget) for s, t in zip(cu, rotated)]
        if all(x is Verdict.YES for x in verdicts):
            return OracleAnswer.yes(certificate={"rotation": k})
        if not any(x is Verdict.NO for x in verdicts):
            undecided = True
    return OracleAnswer.unknown(budget) if undecided else OracleAnswer.no()


# --- twists -----------------------------------------------------------------


@dataclass(frozen=True)
class Twist:
    """``tau_a``: conjugation by ``a`` on factor ``factor``, identity elsewhere."""

    conjugator: Word = Word()
    factor: str = "A"

    def inverse(self) -> Twist:
        return Twist(self.conjugator.inverse(), self.factor)


def apply_twist(t: Twist, w: FPWord) -> FPWord:
    a = t.conjugator
    if a.is_identity:
        return w
    return FPWord(tuple(
        (fid, a.inverse() * s * a) if fid == t.factor else (fid, s)
        for fid, s in w.syllables
    ))


def twist_power(t: Twist, k: int) -> Twist:
    return Twist(t.conjugator ** k, t.factor)


def twist_is_inner(t: Twist, group: FreeProduct, budget: int = 0) -> OracleAnswer:
    """Inner iff the conjugator is central in its factor (other factor nontrivial)."""
    if t.conjugator.is_identity:
        return OracleAnswer.yes()
    return OracleAnswer(group[t.factor].is_central(t.conjugator, budget))
