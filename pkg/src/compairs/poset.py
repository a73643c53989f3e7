"""The chain product {0,...,k}^n: ranks, layers, comparability and shadow counts.

Elements are plain tuples of ints.  Every count is an exact Python int,
obtained by integer polynomial convolution; nothing here touches floats.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .graded import GradedPoset

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"

Element = tuple[int, ...]


class Relation(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class LayerWindow:
    """Inclusive range of ranks ``lo..hi`` (empty when hi < lo)."""

    lo: int
    hi: int

    def __contains__(self, r: int) -> bool:
        return self.lo <= r <= self.hi

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def ranks(self) -> range:
        return range(self.lo, self.hi + 1)


@dataclass(frozen=True)
class ChainProduct(GradedPoset):
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise DomainError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if self.k >= len(DIGITS):
            raise DomainError(f"k={self.k} too large for the digit encoding")

    @property
    def height(self) -> int:
        return self.n * self.k

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.k + 1,) * self.n

    def elements(self) -> list[Element]:
        return list(itertools.product(range(self.k + 1), repeat=self.n))

    def rank(self, x) -> int:
        return sum(x)

    def leq(self, x, y) -> bool:
        return all(a <= b for a, b in zip(x, y))

    def encode(self, x) -> str:
        return "".join(DIGITS[v] for v in x)

    def decode(self, s: str) -> Element:
        try:
            x = tuple(DIGITS.index(c) for c in s.lower())
        except ValueError:
            raise DomainError(f"bad element encoding {s!r}") from None
        self.check(x)
        return x

    def layer_sizes(self) -> list[int]:
        return list(layer_profile(self.n, self.k))

    def describe(self) -> dict:
        return {"type": "chain_product", "n": self.n, "k": self.k}

    def layer(self, r: int) -> list[Element]:
        return [x for x in self.elements() if sum(x) == r]

    def check(self, x) -> None:
        if len(x) != self.n or any(not 0 <= v <= self.k for v in x):
            raise DomainError(f"{x!r} is not an element of {{0..{self.k}}}^{self.n}")

    def strict_order_matrix(self, elems: Sequence[Element]) -> np.ndarray:
        c = np.asarray(elems, dtype=np.int16).reshape(len(elems), self.n)
        le = np.all(c[:, None, :] <= c[None, :, :], axis=2)
        np.fill_diagonal(le, False)
        return le

    def rank_grid(self) -> np.ndarray:
        """Array of shape ``(k+1,)*n`` holding the rank of each grid point."""
        return np.indices(self.shape, dtype=np.int32).sum(axis=0)


# -- polynomial helpers ---------------------------------------------------


def poly_mul(a: Sequence[int], b: Sequence[int], limit: int | None = None) -> list[int]:
    """Exact product of integer coefficient lists, optionally truncated."""
    deg = len(a) + len(b) - 2
    if limit is not None:
        deg = min(deg, limit)
    out = [0] * (deg + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > deg:
            continue
        for j, bj in enumerate(b[: deg - i + 1]):
            out[i + j] += ai * bj
    return out


def poly_pow(a: Sequence[int], e: int, limit: int | None = None) -> list[int]:
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = poly_mul(result, base, limit)
        e >>= 1
        if e:
            base = poly_mul(base, base, limit)
    return result


@lru_cache(maxsize=4096)
def box_poly(values: tuple[int, ...], limit: int | None = None) -> tuple[int, ...]:
    """Coefficients of prod_i (1 + x + ... + x^values[i]).

    Coefficient r counts the vectors of rank r below ``values``.
    """
    out = [1]
    for v, m in _multiplicities(values):
        if v:
            out = poly_mul(out, poly_pow([1] * (v + 1), m, limit), limit)
    return tuple(out)


def _multiplicities(values) -> list[tuple[int, int]]:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return sorted(counts.items())


@lru_cache(maxsize=256)
def layer_profile(n: int, k: int) -> tuple[int, ...]:
    return box_poly((k,) * n)


# -- layers and windows ---------------------------------------------------


def layer_size(p: ChainProduct, r: int) -> int:
    if not 0 <= r <= p.height:
        raise DomainError(f"rank {r} outside 0..{p.height}")
    return layer_profile(p.n, p.k)[r]


def middle_window(p: ChainProduct, j: int) -> LayerWindow:
    """The j middle ranks; with an even/odd ambiguity the extra layer sits above."""
    nk = p.height
    if not 0 <= j <= nk + 1:
        raise DomainError(f"window width {j} outside 0..{nk + 1}")
    return LayerWindow((nk - j) // 2 + 1, (nk + j) // 2)


def sigma(p: ChainProduct, j: int) -> int:
    prof = layer_profile(p.n, p.k)
    w = middle_window(p, j)
    return sum(prof[r] for r in w.ranks())


# -- elements -------------------------------------------------------------


def compare(a: Sequence[int], b: Sequence[int]) -> Relation:
    if len(a) != len(b):
        raise DomainError("dimension mismatch")
    if tuple(a) == tuple(b):
        return Relation.EQUAL
    if all(x <= y for x, y in zip(a, b)):
        return Relation.LESS
    if all(x >= y for x, y in zip(a, b)):
        return Relation.GREATER
    return Relation.INCOMPARABLE


def complement(p: ChainProduct, a: Sequence[int]) -> Element:
    return tuple(p.k - v for v in a)


def value_counts(p: ChainProduct, a: Sequence[int]) -> tuple[int, ...]:
    """(number of coordinates equal to v for v in 0..k)."""
    counts = [0] * (p.k + 1)
    for v in a:
        counts[v] += 1
    return tuple(counts)


def neighbor_count(p: ChainProduct, a: Sequence[int], r: int) -> int:
    """|N_r(A)|: elements of rank r that are below or above A (A itself at r=|A|)."""
    if not 0 <= r <= p.height:
        raise DomainError(f"rank {r} outside 0..{p.height}")
    ra = sum(a)
    if r <= ra:
        return box_poly(tuple(sorted(a)))[r]
    up = tuple(sorted(p.k - v for v in a))
    return box_poly(up)[r - ra]


def delta(p: ChainProduct, b: Sequence[int], a: int) -> int:
    """Number of elements of rank ``a`` below B (B itself when a = |B|; 0 above)."""
    if a < 0:
        raise DomainError(f"negative rank {a}")
    rb = sum(b)
    if a > rb:
        return 0
    return box_poly(tuple(sorted(b)))[a]


def rank_multisets(n: int, k: int, r: int) -> Iterator[Element]:
    """Non-increasing coordinate tuples in {0..k}^n with sum r."""

    def rec(i: int, remaining: int, cap: int):
        if i == n:
            if remaining == 0:
                yield ()
            return
        slots = n - i
        lo = max(0, remaining - cap * (slots - 1))
        for v in range(min(cap, remaining), lo - 1, -1):
            for rest in rec(i + 1, remaining - v, v):
                yield (v,) + rest

    if 0 <= r <= n * k:
        yield from rec(0, r, k)


def delta_min(p: ChainProduct, b: int, a: int) -> int:
    """min over |B| = b of delta(B, a), for 0 < a < b <= nk."""
    if not 0 < a < b <= p.height:
        raise DomainError(f"need 0 < a < b <= {p.height}, got a={a}, b={b}")
    return min(delta(p, shape, a) for shape in rank_multisets(p.n, p.k, b))


def bstar_reduce(b: Sequence[int], target: int) -> Element:
    """Decrement coordinates >= 2 (lowest index first) until every coordinate
    is 0/1 or the rank reaches target + 1."""
    cur = list(b)
    if not 0 <= target < sum(cur):
        raise DomainError(f"need 0 <= target < |B|, got target={target}, |B|={sum(cur)}")
    while any(v > 1 for v in cur) and sum(cur) != target + 1:
        i = next(i for i, v in enumerate(cur) if v > 1)
        cur[i] -= 1
    return tuple(cur)
