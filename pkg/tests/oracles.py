"""Independent reference implementations used only by the tests.

None of these share code with the package beyond the ``Word`` container.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict


def unit_letters(w) -> list[tuple[str, int]]:
    out = []
    for g, e in w.letters:
        out.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return out


def stack_reduce(units) -> list[tuple[str, int]]:
    """Free reduction of a list of signed unit letters with a stack."""
    st: list[tuple[str, int]] = []
    for g, s in units:
        if st and st[-1] == (g, -s):
            st.pop()
        else:
            st.append((g, s))
    return st


# --- determinantal divisors -------------------------------------------------


def leibniz_det(rows) -> int:
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term *= rows[i][perm[i]]
            if not term:
                break
        total += -term if inversions % 2 else term
    return total


def minors_diagonal(rows) -> list[int]:
    """Smith diagonal from gcds of k x k minors (nonzero part, ascending k)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                g = math.gcd(g, leibniz_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# --- Hall's group as a bilinear model ---------------------------------------


class HallModel:
    """H0 as triples ``(p, u, s)`` meaning ``(prod b_i^{u_i} in ascending i) * c * a^p``.

    ``u`` is an exponent vector, ``s`` a central vector over the ``d_r``.
    Multiplication: moving ``b_i^x`` right past ``b_j^y`` with ``i > j``
    yields ``d_{i-j}^{xy}``, and ``a^p b_i a^-p = b_{i-p}``.
    """

    @staticmethod
    def beta(u: dict, v: dict) -> dict:
        s = defaultdict(int)
        for i, x in u.items():
            for j, y in v.items():
                if i > j:
                    s[i - j] += x * y
        return s

    @classmethod
    def mul(cls, e1, e2):
        p1, u1, s1 = e1
        p2, u2, s2 = e2
        v = {i - p1: x for i, x in u2.items()}
        u = defaultdict(int, u1)
        for i, x in v.items():
            u[i] += x
        s = defaultdict(int, s1)
        for r, x in s2.items():
            s[r] += x
        for r, x in cls.beta(u1, v).items():
            s[r] += x
        return (p1 + p2, {i: x for i, x in u.items() if x}, {r: x for r, x in s.items() if x})

    @classmethod
    def letter(cls, g: str, e: int):
        if g == "a":
            return (e, {}, {})
        # b^e = b_0^e, and b_0^x b_0^y commute
        return (0, {0: e}, {})

    @classmethod
    def evaluate(cls, w):
        out = (0, {}, {})
        for g, e in w.letters:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                out = cls.mul(out, cls.letter(g, s))
        return out


def model_is_trivial_v1(w, preimage) -> bool:
    """Triviality in the V1 quotient; ``preimage(r)`` is n with f(n) = r or None."""
    p, u, s = HallModel.evaluate(w)
    if p or u:
        return False
    for r, x in s.items():
        n = preimage(r)
        if n is None or n < 1 or x % n:
            return False
    return True
