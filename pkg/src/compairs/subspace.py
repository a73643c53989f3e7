"""The lattice V(q, n) of subspaces of F_q^n.

Subspaces are stored by their reduced row echelon basis, which is unique per
subspace, so equality and hashing are structural.  Enumeration needs a prime
q (arithmetic mod q); the Gaussian-binomial counts accept any integer q >= 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .errors import CapacityError, DomainError, UnsupportedError
from .graded import GradedPoset
from .propq import PropertyQReport, check_property_q, rank_classes

MAX_SUBSPACES = 10**6


def gaussian(n: int, i: int, q: int) -> int:
    """[n choose i]_q = [n]! / ([i]! [n-i]!) with [m] = q^m - 1."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    return _qfact(n, q) // (_qfact(i, q) * _qfact(n - i, q))


@lru_cache(maxsize=1024)
def _qfact(m: int, q: int) -> int:
    out = 1
    for j in range(1, m + 1):
        out *= q**j - 1
    return out


@dataclass(frozen=True)
class Subspace:
    q: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(c for c, v in enumerate(row) if v) for row in self.basis)


def rref(rows, q: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over F_q (q prime), zero rows dropped."""
    m = [[v % q for v in row] for row in rows]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, q)
        m[r] = [(v * inv) % q for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % q for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


@dataclass(frozen=True)
class SubspaceLattice(GradedPoset):
    q: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.q < 2:
            raise DomainError(f"q must be >= 2, got {self.q}")

    @property
    def height(self) -> int:
        return self.n

    def elements(self) -> list[Subspace]:
        return enumerate_subspaces(self)

    def rank(self, x: Subspace) -> int:
        return x.dim

    def leq(self, x: Subspace, y: Subspace) -> bool:
        return contains(y, x)

    def encode(self, x: Subspace) -> str:
        return "/".join("".join(str(v) for v in row) for row in x.basis)

    def decode(self, s: str) -> Subspace:
        rows = [tuple(int(c) for c in part) for part in s.split("/")] if s else []
        if any(len(r) != self.n or any(v >= self.q for v in r) for r in rows):
            raise DomainError(f"bad subspace encoding {s!r}")
        sub = Subspace(self.q, self.n, tuple(rows))
        if rref(rows, self.q, self.n) != sub.basis:
            raise DomainError(f"{s!r} is not a canonical RREF basis")
        return sub

    def layer_sizes(self) -> list[int]:
        return [gaussian(self.n, i, self.q) for i in range(self.n + 1)]

    def describe(self) -> dict:
        return {"type": "subspace", "n": self.n, "q": self.q}

    def span(self, rows) -> Subspace:
        _require_prime(self.q)
        return Subspace(self.q, self.n, rref(rows, self.q, self.n))


def _require_prime(q: int) -> None:
    if not sympy.isprime(q):
        raise UnsupportedError(f"subspace enumeration needs a prime q, got {q}")


def enumerate_subspaces(lat: SubspaceLattice) -> list[Subspace]:
    return list(_enumerate(lat.q, lat.n))


@lru_cache(maxsize=32)
def _enumerate(q: int, n: int) -> tuple[Subspace, ...]:
    _require_prime(q)
    total = sum(gaussian(n, i, q) for i in range(n + 1))
    if total > MAX_SUBSPACES:
        raise CapacityError(f"V({q},{n}) has {total} subspaces (> {MAX_SUBSPACES})")
    out = []
    for d in range(n + 1):
        for piv in itertools.combinations(range(n), d):
            free = [(r, c) for r, p in enumerate(piv) for c in range(p + 1, n) if c not in piv]
            for vals in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(d)]
                for r, p in enumerate(piv):
                    rows[r][p] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                out.append(Subspace(q, n, tuple(tuple(row) for row in rows)))
    return tuple(out)


def contains(s: Subspace, t: Subspace) -> bool:
    """True iff T is a subspace of S."""
    if (s.q, s.n) != (t.q, t.n):
        raise DomainError("subspaces live in different ambient spaces")
    q = s.q
    pivots = s.pivots()
    for row in t.basis:
        v = list(row)
        for prow, c in zip(s.basis, pivots):
            f = v[c]
            if f:
                v = [(x - f * y) % q for x, y in zip(v, prow)]
        if any(v):
            return False
    return True


def subspace_classes(q: int, n: int):
    return rank_classes(n, lambda m, d: gaussian(m, d, q), lambda m, d: gaussian(n - m, d, q))


def check_property_q_subspace(lat: SubspaceLattice) -> PropertyQReport:
    """Property (Q) for V(q,n), using that neighbour counts depend on dimension only."""
    return check_property_q(lat.n, subspace_classes(lat.q, lat.n))


@dataclass
class RankProfileReport:
    q: int
    n: int
    profile: list[int]
    symmetric: bool
    unimodal: bool
    enumerated: list[int] | None = None

    @property
    def ok(self) -> bool:
        enum_ok = self.enumerated is None or self.enumerated == self.profile
        return self.symmetric and self.unimodal and enum_ok


def is_unimodal(seq) -> bool:
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i == len(seq) - 1


def check_rank_profile(lat: SubspaceLattice, enumerate_limit: int = 5000) -> RankProfileReport:
    prof = lat.layer_sizes()
    rep = RankProfileReport(lat.q, lat.n, prof, prof == prof[::-1], is_unimodal(prof))
    if sympy.isprime(lat.q) and sum(prof) <= enumerate_limit:
        counts = [0] * (lat.n + 1)
        for s in enumerate_subspaces(lat):
            counts[s.dim] += 1
        rep.enumerated = counts
    return rep
