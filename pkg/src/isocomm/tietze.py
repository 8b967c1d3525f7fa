"""Bounded one-step Tietze neighbourhoods of a presentation.

The single ``budget`` parameter bounds everything: consequences are products
of at most ``budget`` conjugates of relators (by cyclic rotation) or their
inverses, and introduced generators are defined by words of at most
``budget`` letters.  The enumeration is deterministic; the cost grows
exponentially in ``budget``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .presentation import FinitePresentation, fresh_name
from .words import Word, cyclic_reduce, words_of_length


@dataclass(frozen=True)
class Consequence:
    word: Word
    # (relator index, rotation offset, sign) per factor, left to right
    factors: tuple[tuple[int, int, int], ...]


def _unit_letters(w: Word) -> list[tuple[str, int]]:
    out = []
    for g, e in w.letters:
        s = 1 if e > 0 else -1
        out.extend([(g, s)] * abs(e))
    return out


def rotations(w: Word) -> list[Word]:
    """Cyclic rotations at every unit-letter offset (each is conjugate to w)."""
    units = _unit_letters(w)
    if not units:
        return [Word()]
    return [Word.from_letters(units[k:] + units[:k]) for k in range(len(units))]


def replay(relators: Sequence[Word], factors: Sequence[tuple[int, int, int]]) -> Word:
    """Recompute a consequence word from its certificate."""
    out = Word()
    for i, k, sign in factors:
        out = out * rotations(relators[i])[k] ** sign
    return out


def consequences(relators: Sequence[Word], depth: int) -> Iterator[Consequence]:
    """Products of 1..depth rotated relators or inverses, in a fixed order."""
    pieces = []
    for i, r in enumerate(relators):
        for k, rot in enumerate(rotations(r)):
            for sign in (1, -1):
                pieces.append(((i, k, sign), rot ** sign))
    seen: set[Word] = set()
    for d in range(1, depth + 1):
        for combo in itertools.product(pieces, repeat=d):
            w = Word()
            for _, piece in combo:
                w = w * piece
            if w in seen:
                continue
            seen.add(w)
            yield Consequence(w, tuple(c for c, _ in combo))


def _is_consequence(target: Word, others: Sequence[Word], depth: int) -> bool:
    if depth <= 0 or not others:
        return False
    forms = set(rotations(target)) | {r.inverse() for r in rotations(target)}
    return any(c.word in forms for c in consequences(others, depth))


def _drop(p: FinitePresentation, i: int) -> FinitePresentation:
    return p.with_relators(p.relators[:i] + p.relators[i + 1:])


def _eliminations(p: FinitePresentation) -> Iterator[FinitePresentation]:
    for i, r in enumerate(p.relators):
        for g in p.generators:
            runs = [k for k, (h, _) in enumerate(r.letters) if h == g]
            if len(runs) != 1 or abs(r.letters[runs[0]][1]) != 1:
                continue
            k = runs[0]
            eps = r.letters[k][1]
            before = Word(r.letters[:k])
            after = Word(r.letters[k + 1:])
            # before * g^eps * after = 1
            image = (before.inverse() * after.inverse()) ** eps
            rest = p.relators[:i] + p.relators[i + 1:]
            yield FinitePresentation(
                tuple(h for h in p.generators if h != g),
                tuple(w.substitute({g: image}) for w in rest),
            )


def tietze_neighbors(p: FinitePresentation, budget: int) -> list[FinitePresentation]:
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    out: list[FinitePresentation] = []
    seen = {p}

    def emit(q: FinitePresentation) -> None:
        if q not in seen:
            seen.add(q)
            out.append(q)

    # remove a redundant relator
    for i, r in enumerate(p.relators):
        others = p.relators[:i] + p.relators[i + 1:]
        if (
            r.is_identity
            or r in others
            or cyclic_reduce(r).is_identity
            or _is_consequence(r, others, budget)
        ):
            emit(_drop(p, i))

    # remove a generator together with its defining relator
    for q in _eliminations(p):
        emit(q)

    # add a consequence
    present = set(p.relators)
    for c in consequences(p.relators, budget):
        if not c.word.is_identity and c.word not in present:
            emit(p.with_relators(p.relators + (c.word,)))

    # add a generator with a defining relator
    new = fresh_name("y", p.generators)
    for n in range(budget + 1):
        for w in words_of_length(p.generators, n):
            emit(FinitePresentation(
                p.generators + (new,),
                p.relators + (Word.gen(new) * w.inverse(),),
            ))
    return out
