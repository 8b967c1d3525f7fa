"""Finite presentations, the ``.pres`` file format, and abelian invariants.

File format (UTF-8, line based)::

    # key: value            header comments (any comment is allowed)
    generators: a b y t
    relator: a^-1 b a b^-1
    relator: [a, b]^2

``generators:`` appears exactly once, before any ``relator:`` line.
:func:`dumps` writes the canonical form: generators in declared order, one
freely reduced relator per line, ``g^-1``/``g^3`` exponents, single spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .snf import IntegerMatrix, smith_diagonal
from .words import Word, WordParseError, check_generator, exponent_sum, format_word, parse_word


class PresentationParseError(ValueError):
    pass


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(check_generator(g) for g in self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generators in {gens}")
        known = set(gens)
        rels = []
        for r in self.relators:
            r = Word.from_letters(r.letters)
            stray = r.generators() - known
            if stray:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(stray)}")
            rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def build(cls, generators: Iterable[str], relators: Iterable[Word | str] = ()) -> FinitePresentation:
        return cls(
            tuple(generators),
            tuple(parse_word(r) if isinstance(r, str) else r for r in relators),
        )

    def with_relators(self, relators: Iterable[Word]) -> FinitePresentation:
        return FinitePresentation(self.generators, tuple(relators))

    def rename(self, mapping: Mapping[str, str]) -> FinitePresentation:
        return FinitePresentation(
            tuple(mapping.get(g, g) for g in self.generators),
            tuple(r.rename(dict(mapping)) for r in self.relators),
        )

    def __str__(self) -> str:
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {' '.join(self.generators)} || {rels} >"


def dumps(p: FinitePresentation, header: Mapping[str, object] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines.append("generators:" + "".join(" " + g for g in p.generators))
    lines.extend("relator: " + format_word(r) for r in p.relators)
    return "\n".join(lines) + "\n"


def loads(text: str) -> FinitePresentation:
    generators: list[str] | None = None
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("generators", "relator"):
            raise PresentationParseError(f"line {lineno}: unrecognized line {raw!r}")
        if key == "generators":
            if generators is not None:
                raise PresentationParseError(f"line {lineno}: second generators line")
            generators = rest.split()
            try:
                for g in generators:
                    check_generator(g)
            except ValueError as exc:
                raise PresentationParseError(f"line {lineno}: {exc}") from None
        else:
            if generators is None:
                raise PresentationParseError(f"line {lineno}: relator before generators")
            try:
                w = parse_word(rest)
            except WordParseError as exc:
                raise PresentationParseError(f"line {lineno}: {exc}") from None
            stray = w.generators() - set(generators)
            if stray:
                raise PresentationParseError(
                    f"line {lineno}: undeclared generators {sorted(stray)}"
                )
            relators.append(w)
    if generators is None:
        raise PresentationParseError("missing generators line")
    try:
        return FinitePresentation(tuple(generators), tuple(relators))
    except ValueError as exc:
        raise PresentationParseError(str(exc)) from None


def load_header(text: str) -> dict[str, str]:
    """Collect leading ``# key: value`` comments."""
    out = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line.startswith("#"):
            if line:
                break
            continue
        key, sep, value = line[1:].partition(":")
        if sep:
            out[key.strip()] = value.strip()
    return out


# --- abelianization ---------------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion entries must be >= 2: {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion is not a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, ngens: int, diagonal: Iterable[int]) -> AbelianInvariants:
        """Invariants of Z^ngens modulo a diagonal relation matrix in any order."""
        diag = [abs(d) for d in diagonal]
        rank = sum(1 for d in diag if d)
        return cls(ngens - rank, tuple(d for d in _chain([d for d in diag if d]) if d > 1))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"C{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"


def _chain(values: Sequence[int]) -> list[int]:
    return smith_diagonal(IntegerMatrix.from_rows(
        [[v if i == j else 0 for j in range(len(values))] for i, v in enumerate(values)],
        len(values),
    )) if values else []


def abelianization_matrix(p: FinitePresentation) -> IntegerMatrix:
    return IntegerMatrix.from_rows(
        [[exponent_sum(r, g) for g in p.generators] for r in p.relators],
        len(p.generators),
    )


def abelian_invariants(p: FinitePresentation) -> AbelianInvariants:
    diag = smith_diagonal(abelianization_matrix(p))
    return AbelianInvariants.from_diagonal(len(p.generators), diag)


# --- constructions ----------------------------------------------------------


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def disjoint_copy(p: FinitePresentation, taken: Iterable[str]) -> FinitePresentation:
    """Rename generators of ``p`` away from ``taken`` (deterministically)."""
    used = set(taken)
    mapping = {}
    for g in p.generators:
        new = fresh_name(g, used)
        mapping[g] = new
        used.add(new)
    return p.rename(mapping)


def free_product(p: FinitePresentation, q: FinitePresentation) -> FinitePresentation:
    q = disjoint_copy(q, p.generators)
    return FinitePresentation(p.generators + q.generators, p.relators + q.relators)


def direct_product(p: FinitePresentation, q: FinitePresentation) -> FinitePresentation:
    q = disjoint_copy(q, p.generators)
    commuting = tuple(
        Word.gen(x, -1) * Word.gen(y, -1) * Word.gen(x) * Word.gen(y)
        for x in p.generators
        for y in q.generators
    )
    return FinitePresentation(
        p.generators + q.generators, p.relators + q.relators + commuting
    )
