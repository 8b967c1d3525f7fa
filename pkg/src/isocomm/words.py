"""Words over generator alphabets.

A :class:`Word` is a run-length sequence of ``(generator, exponent)`` pairs.
Products, powers and inverses are always returned freely reduced; a raw
(unreduced) word can still be built directly from a letter tuple, which is
what :func:`free_reduce` is for.

The textual grammar shared by the ``.pres`` format and the CLI::

    word := term+
    term := atom ('^' integer)?
    atom := identifier | '1' | '[' word ',' word ']'

with ``[x, y] = x^-1 y^-1 x y``.  ``1`` denotes the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

Letter = tuple[str, int]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class WordParseError(ValueError):
    """Raised on malformed word text."""


def check_generator(name: str) -> str:
    if not isinstance(name, str) or not _IDENT.match(name):
        raise ValueError(f"invalid generator name {name!r}")
    return name


def _push(out: list[Letter], g: str, e: int) -> None:
    if e == 0:
        return
    if out and out[-1][0] == g:
        e += out[-1][1]
        out.pop()
        if e:
            out.append((g, e))
    else:
        out.append((g, e))


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        _push(out, g, e)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def gen(cls, name: str, exponent: int = 1) -> Word:
        return cls(((name, exponent),) if exponent else ())

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> Word:
        """Build a freely reduced word from arbitrary letters."""
        return cls(_reduce(letters))

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    def __mul__(self, other: Word) -> Word:
        out = list(self.letters)
        for g, e in other.letters:
            _push(out, g, e)
        return Word(tuple(out))

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** (-k)
        w = free_reduce(self)
        if k == 0 or not w.letters:
            return Word()
        if len(w.letters) == 1:
            g, e = w.letters[0]
            return Word(((g, e * k),))
        # w = p c p^-1 with c cyclically reduced, so w^k = p c^k p^-1
        core, prefix = _cyclic_split(w)
        body = list(core.letters)
        if len(body) == 1:
            powered = Word(((body[0][0], body[0][1] * k),))
        else:
            powered = Word(tuple(body) * k)
        return prefix * powered * prefix.inverse()

    def __len__(self) -> int:
        """Number of unit letters."""
        return sum(abs(e) for _, e in self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def syllable_count(self) -> int:
        return len(self.letters)

    def substitute(self, mapping: dict[str, Word]) -> Word:
        """Replace each generator by a word (missing names are kept)."""
        out = Word()
        for g, e in self.letters:
            image = mapping.get(g)
            out = out * (Word.gen(g, e) if image is None else image ** e)
        return out

    def rename(self, mapping: dict[str, str]) -> Word:
        return Word(tuple((mapping.get(g, g), e) for g, e in self.letters))

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.letters)


def free_reduce(w: Word) -> Word:
    return Word(_reduce(w.letters))


def _cyclic_split(w: Word) -> tuple[Word, Word]:
    """Return ``(core, prefix)`` with ``w == prefix * core * prefix^-1``.

    ``w`` must be freely reduced; ``core`` has distinct first and last
    generators (or is a single run).
    """
    letters = list(w.letters)
    prefix: list[Letter] = []
    while len(letters) >= 2 and letters[0][0] == letters[-1][0]:
        g, e1 = letters[0]
        e2 = letters[-1][1]
        middle = letters[1:-1]
        if e1 + e2 == 0:
            prefix.append((g, e1))
            letters = middle
        else:
            # g^e1 m g^e2 = g^e1 (m g^{e1+e2}) g^-e1
            prefix.append((g, e1))
            letters = middle + [(g, e1 + e2)]
    return Word(tuple(letters)), Word(_reduce(prefix))


def cyclic_reduce(w: Word) -> Word:
    """A cyclically reduced conjugate of ``w``."""
    core, _ = _cyclic_split(free_reduce(w))
    return core


def exponent_sum(w: Word, g: str) -> int:
    return sum(e for h, e in w.letters if h == g)


def commutator(x: Word, y: Word) -> Word:
    return x.inverse() * y.inverse() * x * y


# --- term trees -------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Comm:
    left: Term
    right: Term


@dataclass(frozen=True)
class Pow:
    base: Term
    exponent: int


@dataclass(frozen=True)
class Seq:
    items: tuple[Term, ...]


Term = Union[Gen, One, Comm, Pow, Seq]


def expand_commutators(expr: Term) -> Word:
    """Expand a term tree into a freely reduced word."""
    if isinstance(expr, Gen):
        return Word.gen(expr.name)
    if isinstance(expr, One):
        return Word()
    if isinstance(expr, Comm):
        return commutator(expand_commutators(expr.left), expand_commutators(expr.right))
    if isinstance(expr, Pow):
        return expand_commutators(expr.base) ** expr.exponent
    if isinstance(expr, Seq):
        out = Word()
        for item in expr.items:
            out = out * expand_commutators(item)
        return out
    raise TypeError(f"not a term: {expr!r}")


_TOKEN = re.compile(
    r"\s*(?:(?P<id>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[\^\[\],]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        assert kind is not None
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def fail(self, msg: str) -> WordParseError:
        tok = self.peek()
        where = f"position {tok[2]}" if tok else "end of input"
        return WordParseError(f"{msg} at {where} in {self.text!r}")

    def expect(self, sym: str) -> None:
        tok = self.peek()
        if tok is None or tok[0] != "sym" or tok[1] != sym:
            raise self.fail(f"expected {sym!r}")
        self.i += 1

    def word(self) -> Term:
        items = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "sym" and tok[1] in "],"):
                break
            items.append(self.term())
        if not items:
            raise self.fail("expected a word")
        return items[0] if len(items) == 1 else Seq(tuple(items))

    def term(self) -> Term:
        atom = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "sym" and tok[1] == "^":
            self.i += 1
            tok = self.peek()
            if tok is None or tok[0] != "int":
                raise self.fail("expected an integer exponent")
            self.i += 1
            return Pow(atom, int(tok[1]))
        return atom

    def atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a generator or '['")
        kind, value, _ = tok
        if kind == "id":
            self.i += 1
            return Gen(value)
        if kind == "int" and value == "1":
            self.i += 1
            return One()
        if kind == "sym" and value == "[":
            self.i += 1
            left = self.word()
            self.expect(",")
            right = self.word()
            self.expect("]")
            return Comm(left, right)
        raise self.fail(f"unexpected token {value!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    tree = p.word()
    if p.peek() is not None:
        raise p.fail("trailing input")
    return tree


def parse_word(text: str) -> Word:
    return expand_commutators(parse_term(text))


def words_of_length(generators: Sequence[str], n: int) -> Iterator[Word]:
    """All freely reduced words of exactly ``n`` unit letters, in a fixed order."""
    units = [(g, e) for g in generators for e in (1, -1)]

    def rec(prefix: list[Letter], k: int) -> Iterator[Word]:
        if k == 0:
            yield Word(_reduce(prefix))
            return
        for g, e in units:
            if prefix and prefix[-1] == (g, -e):
                continue
            prefix.append((g, e))
            yield from rec(prefix, k - 1)
            prefix.pop()

    yield from rec([], n)
