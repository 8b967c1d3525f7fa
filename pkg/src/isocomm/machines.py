"""Counter machines, dovetailing, and the computable injection ``f``.

Programs use two counters ``c0``, ``c1`` (all zero at start) and three
instruction kinds::

    inc c<k> -> <line>              increment, then go to <line>
    decjz c<k> -> <line> | <line>   if c<k> > 0 decrement and go to the
                                    first line, else go to the second
    halt

Every executed instruction costs one step, ``halt`` included, so a run with
budget 0 never halts.

Godel numbering
---------------
For a program of length ``L`` each instruction is a digit in base
``N_L = 1 + K*L + K*L*L`` (``K`` counters)::

    0                         halt
    1 + c*L + n               inc c -> n
    1 + K*L + (c*L + n)*L + j decjz c -> n | j

A program of length ``L`` is the little-endian number formed by its digits
(instruction 0 is least significant), offset by the count of all shorter
programs.  This is a bijection between the naturals and programs with
in-range targets, so every index decodes.  Index 0 is ``halt``.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

COUNTERS = 2


@dataclass(frozen=True)
class Inc:
    counter: int
    next: int


@dataclass(frozen=True)
class DecJz:
    counter: int
    next: int
    jump: int


@dataclass(frozen=True)
class Halt:
    pass


Instruction = Union[Inc, DecJz, Halt]


def _radix(length: int, counters: int = COUNTERS) -> int:
    return 1 + counters * length + counters * length * length


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...]
    counters: int = COUNTERS

    def __post_init__(self):
        n = len(self.instructions)
        if n == 0:
            raise ValueError("a program has at least one instruction")
        for ins in self.instructions:
            if isinstance(ins, Halt):
                continue
            targets = (ins.next, ins.jump) if isinstance(ins, DecJz) else (ins.next,)
            if not 0 <= ins.counter < self.counters:
                raise ValueError(f"counter out of range in {ins}")
            if any(not 0 <= t < n for t in targets):
                raise ValueError(f"jump target out of range in {ins}")

    @property
    def index(self) -> int:
        return encode_program(self)

    def __str__(self) -> str:
        return format_program(self)


def encode_program(p: Program) -> int:
    L, K = len(p.instructions), p.counters
    base = _radix(L, K)
    offset = sum(_radix(m, K) ** m for m in range(1, L))
    value = 0
    for ins in reversed(p.instructions):
        if isinstance(ins, Halt):
            digit = 0
        elif isinstance(ins, Inc):
            digit = 1 + ins.counter * L + ins.next
        else:
            digit = 1 + K * L + (ins.counter * L + ins.next) * L + ins.jump
        value = value * base + digit
    return offset + value


@lru_cache(maxsize=1 << 16)
def decode_program(index: int, counters: int = COUNTERS) -> Program:
    if index < 0:
        raise ValueError("program indices are nonnegative")
    L = 1
    while index >= _radix(L, counters) ** L:
        index -= _radix(L, counters) ** L
        L += 1
    base = _radix(L, counters)
    out: list[Instruction] = []
    for _ in range(L):
        index, digit = divmod(index, base)
        if digit == 0:
            out.append(Halt())
        elif digit <= counters * L:
            c, n = divmod(digit - 1, L)
            out.append(Inc(c, n))
        else:
            rest = digit - 1 - counters * L
            cn, j = divmod(rest, L)
            c, n = divmod(cn, L)
            out.append(DecJz(c, n, j))
    return Program(tuple(out), counters)


def format_program(p: Program) -> str:
    lines = []
    for ins in p.instructions:
        if isinstance(ins, Halt):
            lines.append("halt")
        elif isinstance(ins, Inc):
            lines.append(f"inc c{ins.counter} -> {ins.next}")
        else:
            lines.append(f"decjz c{ins.counter} -> {ins.next} | {ins.jump}")
    return "\n".join(lines) + "\n"


_INC = re.compile(r"inc\s+c(\d+)\s*->\s*(\d+)\Z")
_DEC = re.compile(r"decjz\s+c(\d+)\s*->\s*(\d+)\s*\|\s*(\d+)\Z")


def parse_program(text: str, counters: int = COUNTERS) -> Program:
    out: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "halt":
            out.append(Halt())
        elif m := _INC.match(line):
            out.append(Inc(int(m[1]), int(m[2])))
        elif m := _DEC.match(line):
            out.append(DecJz(int(m[1]), int(m[2]), int(m[3])))
        else:
            raise ValueError(f"line {lineno}: cannot parse instruction {raw!r}")
    return Program(tuple(out), counters)


# --- execution --------------------------------------------------------------


@dataclass(frozen=True)
class MachineState:
    pc: int = 0
    counters: tuple[int, ...] = (0,) * COUNTERS
    steps: int = 0
    halted: bool = False


def step(p: Program, s: MachineState) -> MachineState:
    if s.halted:
        return s
    ins = p.instructions[s.pc]
    if isinstance(ins, Halt):
        return MachineState(s.pc, s.counters, s.steps + 1, True)
    c = list(s.counters)
    if isinstance(ins, Inc):
        c[ins.counter] += 1
        pc = ins.next
    elif c[ins.counter] > 0:
        c[ins.counter] -= 1
        pc = ins.next
    else:
        pc = ins.jump
    return MachineState(pc, tuple(c), s.steps + 1, False)


@dataclass(frozen=True)
class Halted:
    steps: int


@dataclass(frozen=True)
class Running:
    steps: int


def _advance(p: Program, pc: int, counters: list[int], limit: int) -> tuple[int, int, bool]:
    """Run from ``pc`` for at most ``limit`` steps, mutating ``counters``.

    Returns ``(pc, steps_taken, halted)``.
    """
    ins = p.instructions
    taken = 0
    while taken < limit:
        cur = ins[pc]
        taken += 1
        if isinstance(cur, Halt):
            return pc, taken, True
        if isinstance(cur, Inc):
            counters[cur.counter] += 1
            pc = cur.next
        elif counters[cur.counter]:
            counters[cur.counter] -= 1
            pc = cur.next
        else:
            pc = cur.jump
    return pc, taken, False


def run(p: Program, budget: int) -> Halted | Running:
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    _, taken, halted = _advance(p, 0, [0] * p.counters, budget)
    return Halted(taken) if halted else Running(taken)


class Dovetailer:
    """Canonical interleaving of all programs.

    Round ``k`` (k = 0, 1, ...) visits programs ``0..k`` in order and
    advances each not-yet-halted one until it has run ``k`` steps in total.
    The cost of a visit is the number of steps it simulates; the discovery
    log records each halting index together with the cumulative cost at the
    end of the visit that found it.  ``discovered(B)`` is everything found by
    visits whose cumulative cost stays within ``B``, which makes it a prefix
    of ``discovered(B')`` for all ``B' >= B``.
    """

    def __init__(self, counters: int = COUNTERS):
        self.counters = counters
        self._lock = threading.Lock()
        self._round = 0
        self._slot = 0
        self._cost = 0
        self._states: dict[int, tuple[int, list[int], int]] = {}
        self._halted: set[int] = set()
        self.log: list[tuple[int, int]] = []  # (program index, cumulative cost)

    @property
    def cost(self) -> int:
        return self._cost

    def _visit(self) -> None:
        k, i = self._round, self._slot
        if i not in self._halted:
            pc, regs, steps = self._states.get(i) or (0, [0] * self.counters, 0)
            prog = decode_program(i, self.counters)
            pc, taken, halted = _advance(prog, pc, regs, k - steps)
            self._cost += taken
            if halted:
                self._halted.add(i)
                self._states.pop(i, None)
                self.log.append((i, self._cost))
            else:
                self._states[i] = (pc, regs, steps + taken)
        if i == k:
            self._round, self._slot = k + 1, 0
        else:
            self._slot = i + 1

    def extend_to_count(self, n: int) -> None:
        """Run until at least ``n`` halting programs are known."""
        with self._lock:
            while len(self.log) < n:
                self._visit()

    def extend_to_cost(self, budget: int) -> None:
        """Perform every visit whose cumulative cost stays within ``budget``."""
        with self._lock:
            while self._cost <= budget:
                self._visit()

    def discovered(self, budget: int) -> list[int]:
        self.extend_to_cost(budget)
        return [i for i, c in self.log if c <= budget]


def dovetail(budget: int, dovetailer: Dovetailer | None = None) -> list[int]:
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    return (dovetailer or _shared_dovetailer()).discovered(budget)


@lru_cache(maxsize=None)
def _shared_dovetailer() -> Dovetailer:
    return Dovetailer()


# --- the computable injection f ---------------------------------------------


class FTableError(LookupError):
    """Evaluation of an injected table outside its domain."""


@dataclass(frozen=True)
class InRange:
    """Positive semi-decision result: ``f(n) == r`` was found."""

    n: int
    budget_spent: int = 0


_AFFINE = re.compile(r"\s*(\d*)\s*\*?\s*n\s*(?:\+\s*(\d+))?\s*\Z")


@dataclass(frozen=True, eq=False)
class ComputableF:
    """A total injective ``f: N -> N``.

    The default mode enumerates halting program indices: ``f(n)`` is the
    ``(n+1)``-th index discovered by :class:`Dovetailer`, so its range is the
    halting set.  The table modes (``affine`` and ``from_table``) exist for
    tests and examples and make the range decidable.
    """

    mode: str = "default"
    slope: int = 0
    offset: int = 0
    table: tuple[int, ...] = ()
    _dovetailer: Dovetailer | None = field(default=None, repr=False, compare=False)

    @classmethod
    def halting(cls, dovetailer: Dovetailer | None = None) -> ComputableF:
        return cls("default", _dovetailer=dovetailer)

    @classmethod
    def affine(cls, slope: int, offset: int = 0) -> ComputableF:
        if slope < 1 or offset < 0:
            raise ValueError("affine f needs slope >= 1 and offset >= 0")
        return cls("affine", slope, offset)

    @classmethod
    def from_table(cls, values) -> ComputableF:
        values = tuple(int(v) for v in values)
        if len(set(values)) != len(values) or any(v < 0 for v in values):
            raise ValueError("table values must be distinct naturals")
        return cls("table", table=values)

    @classmethod
    def parse(cls, spec: str) -> ComputableF:
        """Parse ``2n+3``-style affine forms or comma-separated tables."""
        m = _AFFINE.match(spec)
        if m:
            return cls.affine(int(m[1] or 1), int(m[2] or 0))
        if re.fullmatch(r"\s*\d+(\s*,\s*\d+)*\s*", spec):
            return cls.from_table(int(v) for v in spec.split(","))
        raise ValueError(f"cannot parse f spec {spec!r}")

    @property
    def is_table(self) -> bool:
        return self.mode != "default"

    def describe(self) -> str:
        if self.mode == "affine":
            coef = "" if self.slope == 1 else str(self.slope)
            return f"table:{coef}n" + (f"+{self.offset}" if self.offset else "")
        if self.mode == "table":
            return "table:" + ",".join(map(str, self.table))
        return "default"

    def __eq__(self, other):
        return isinstance(other, ComputableF) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())

    @property
    def dovetailer(self) -> Dovetailer:
        return self._dovetailer or _shared_dovetailer()

    def __call__(self, n: int) -> int:
        return f_eval(self, n)

    def preimage(self, r: int) -> int | None:
        """Exact preimage of ``r`` (table modes only)."""
        if self.mode == "affine":
            q, rem = divmod(r - self.offset, self.slope)
            return q if rem == 0 and q >= 0 else None
        if self.mode == "table":
            try:
                return self.table.index(r)
            except ValueError:
                return None
        raise TypeError("the range of the default f is not decidable")


def f_eval(f: ComputableF, n: int) -> int:
    if n < 0:
        raise ValueError("f is defined on naturals")
    if f.mode == "affine":
        return f.slope * n + f.offset
    if f.mode == "table":
        if n >= len(f.table):
            raise FTableError(f"f({n}) is outside the injected table")
        return f.table[n]
    d = f.dovetailer
    d.extend_to_count(n + 1)
    return d.log[n][0]


def in_range_semi(f: ComputableF, r: int, budget: int) -> InRange | None:
    """``InRange(n)`` if ``f(n) == r`` is established within ``budget``.

    ``None`` means Unknown, never "not in range".  Table modes answer
    positively regardless of budget and still return ``None`` for values
    outside the range.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if f.is_table:
        n = f.preimage(r)
        return None if n is None else InRange(n, 0)
    d = f.dovetailer
    d.extend_to_cost(budget)
    for n, (idx, cost) in enumerate(d.log):
        if cost > budget:
            break
        if idx == r:
            return InRange(n, cost)
    return None
