"""Property (Q): the four neighbour-count inequalities that make the
Kleitman-style mid-compression argument go through.

The checker works on *classes* of elements.  Each class is a rank plus a
function ``nbr(r)`` giving |N_r(X)| for any member X.  Posets whose neighbour
counts depend on rank only (Boolean lattice, subspace lattices) have one class
per rank; chain products have one class per coordinate multiset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Hashable, Sequence


@dataclass(frozen=True)
class QCheck:
    condition: str
    b: Hashable
    a: Hashable
    i: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


@dataclass
class PropertyQReport:
    height: int
    checks: list[QCheck] = field(default_factory=list)

    @property
    def violations(self) -> list[QCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def holds(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        per = {}
        for c in self.checks:
            s = per.setdefault(c.condition, [0, 0])
            s[0] += 1
            s[1] += not c.ok
        return {cond: {"checked": v[0], "violations": v[1]} for cond, v in sorted(per.items())}


@dataclass(frozen=True)
class NeighborClass:
    label: Hashable
    rank: int
    nbr: Callable[[int], int]


def check_property_q(height: int, classes: Sequence[NeighborClass]) -> PropertyQReport:
    rep = PropertyQReport(height)
    half = height / 2

    def dist(r):
        return abs(r - half)

    def add(cond, B, A, i, lhs, rhs):
        rep.checks.append(QCheck(cond, B.label, A.label, i, lhs, rhs))

    for B in classes:
        b = B.rank
        for A in classes:
            a = A.rank
            if b < a and dist(b) < dist(a):
                for i in range(1, a - b + 1):
                    add("Q1", B, A, i, B.nbr(b + i), A.nbr(a - i))
            if b > a and dist(b) < dist(a):
                for i in range(1, b - a + 1):
                    add("Q2", B, A, i, B.nbr(b - i), A.nbr(a + i))
            if half <= b < a:
                for i in range(1, b + 1):
                    add("Q3", B, A, i, B.nbr(b - i), A.nbr(a - i))
            if half >= b > a:
                for i in range(1, height - b + 1):
                    add("Q4", B, A, i, B.nbr(b + i), A.nbr(a + i))
    return rep


def rank_classes(height: int, below: Callable[[int, int], int],
                 above: Callable[[int, int], int]) -> list[NeighborClass]:
    """One class per rank m; ``below(m, d)``/``above(m, d)`` count elements
    d ranks below/above a rank-m element."""

    def make(m):
        def nbr(r):
            if r <= m:
                return below(m, m - r) if r >= 0 else 0
            return above(m, r - m) if r <= height else 0

        return nbr

    return [NeighborClass(m, m, make(m)) for m in range(height + 1)]


def boolean_classes(n: int) -> list[NeighborClass]:
    return rank_classes(n, lambda m, d: comb(m, d), lambda m, d: comb(n - m, d))
