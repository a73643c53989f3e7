"""Families of elements in a graded poset and their comparable-pair counts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import CapacityError, DomainError
from .graded import GradedPoset, iter_bits, poset_index
from .poset import ChainProduct, LayerWindow, layer_profile


@dataclass(frozen=True)
class Family:
    poset: GradedPoset
    members: frozenset

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.sorted_members())

    def sorted_members(self) -> list:
        enc = self.poset.encode
        return sorted(self.members, key=enc)

    def layers(self) -> dict[int, list]:
        out: dict[int, list] = {}
        for x in self.sorted_members():
            out.setdefault(self.poset.rank(x), []).append(x)
        return out

    def layer_counts(self) -> list[int]:
        counts = [0] * (self.poset.height + 1)
        for x in self.members:
            counts[self.poset.rank(x)] += 1
        return counts

    def replace(self, remove: Iterable = (), add: Iterable = ()) -> "Family":
        return Family(self.poset, (self.members - frozenset(remove)) | frozenset(add))

    def encoded(self) -> list[str]:
        return [self.poset.encode(x) for x in self.sorted_members()]


def make_family(poset: GradedPoset, members: Iterable) -> Family:
    members = frozenset(tuple(x) if isinstance(x, list) else x for x in members)
    if isinstance(poset, ChainProduct):
        for x in members:
            poset.check(x)
    return Family(poset, members)


# -- comp counting --------------------------------------------------------


def comp_count(f: Family, backend: str = "auto") -> int:
    """Number of pairs A < B with both A, B in the family."""
    if backend == "auto":
        backend = "transform" if isinstance(f.poset, ChainProduct) else "pairwise"
    if backend == "pairwise":
        return comp_count_pairwise(f)
    if backend == "transform":
        if not isinstance(f.poset, ChainProduct):
            raise DomainError("the transform backend needs a chain product")
        return comp_count_grid(to_grid(f))
    if backend == "index":
        idx = poset_index(f.poset)
        return idx.comp_of_mask(idx.mask_of(f.members))
    raise DomainError(f"unknown backend {backend!r}")


def comp_count_pairwise(f: Family) -> int:
    P = f.poset
    by_rank = sorted(f.members, key=P.rank)
    ranks = [P.rank(x) for x in by_rank]
    total = 0
    for i, x in enumerate(by_rank):
        for j in range(i + 1, len(by_rank)):
            if ranks[j] > ranks[i] and P.leq(x, by_rank[j]):
                total += 1
    return total


def to_grid(f: Family) -> np.ndarray:
    p = f.poset
    _grid_guard(p)
    g = np.zeros(p.shape, dtype=bool)
    if f.members:
        coords = np.array(list(f.members), dtype=np.intp).T
        g[tuple(coords)] = True
    return g


def _grid_guard(p: ChainProduct) -> None:
    if (p.k + 1) ** p.n > 2**31:
        raise CapacityError(f"grid of {(p.k + 1) ** p.n} points is too large")


def down_counts(grid: np.ndarray) -> np.ndarray:
    """D[B] = number of members A with A <= B (prefix sums along every axis)."""
    d = grid.astype(np.int64)
    for axis in range(d.ndim):
        np.cumsum(d, axis=axis, out=d)
    return d


def up_counts(grid: np.ndarray) -> np.ndarray:
    flip = tuple(slice(None, None, -1) for _ in range(grid.ndim))
    return down_counts(grid[flip])[flip]


def comp_count_grid(grid: np.ndarray) -> int:
    """comp of the family given as a boolean grid over {0..k}^n."""
    d = down_counts(grid)
    return int(d[grid].sum()) - int(grid.sum())


def comp_of_element(a, f: Family) -> int:
    """Members strictly comparable with ``a`` (``a`` itself never counts)."""
    P = f.poset
    if isinstance(P, ChainProduct) and len(f) > 4096:
        return comp_of_element_grid(tuple(a), to_grid(f))
    return sum(1 for b in f.members if P.comparable(a, b))


def comp_of_element_grid(a: tuple, grid: np.ndarray) -> int:
    below = grid[tuple(slice(0, v + 1) for v in a)].sum()
    above = grid[tuple(slice(v, None) for v in a)].sum()
    return int(below + above) - 2 * int(grid[a])


@dataclass
class CompReport:
    total_pairs: int
    per_element_degree: dict = field(default_factory=dict)


def comp_report(f: Family) -> CompReport:
    P = f.poset
    deg = {x: 0 for x in f.members}
    total = 0
    items = f.sorted_members()
    for i, x in enumerate(items):
        for y in items[i + 1:]:
            if P.comparable(x, y):
                deg[x] += 1
                deg[y] += 1
                total += 1
    return CompReport(total, deg)


# -- centered families ----------------------------------------------------


def rank_fill_order(P: GradedPoset) -> list[int]:
    """Ranks by distance from the middle; at equal distance the higher rank first."""
    return sorted(range(P.height + 1), key=lambda r: (P.mid_distance(r), -r))


def centered_split(P: GradedPoset, M: int) -> tuple[list[int], list[int], int]:
    """(inner ranks, boundary ranks, s) such that the centered families of size M
    are exactly: all of the inner ranks plus s elements of the boundary ranks."""
    sizes = P.layer_sizes()
    if not 0 <= M <= sum(sizes):
        raise DomainError(f"M={M} outside 0..{sum(sizes)}")
    dists = sorted({P.mid_distance(r) for r in range(P.height + 1)})
    inner: list[int] = []
    taken = 0
    for d in dists:
        ring = [r for r in range(P.height + 1) if P.mid_distance(r) == d]
        ring_size = sum(sizes[r] for r in ring)
        if taken + ring_size >= M:
            return inner, sorted(ring, reverse=True), M - taken
        inner += ring
        taken += ring_size
    return inner, [], 0


def build_centered(P: GradedPoset, M: int, fill_order: str = "degree") -> Family:
    """A centered family of size M.

    ``fill_order="lex"`` fills the boundary layers one after another (higher
    rank first) in encoding order, giving a canonical centered family.
    ``"degree"`` adds boundary elements greedily by current comp degree, with
    encoding order breaking ties.
    """
    inner, ring, s = centered_split(P, M)
    members = set()
    for r in inner:
        members.update(P.layer(r))
    if s == 0:
        return Family(P, frozenset(members))
    if fill_order == "lex":
        cands = [x for r in ring for x in sorted(P.layer(r), key=P.encode)]
        members.update(cands[:s])
        return Family(P, frozenset(members))
    if fill_order != "degree":
        raise DomainError(f"unknown fill order {fill_order!r}")
    idx = poset_index(P)
    fam = idx.mask_of(members)
    cands = [i for r in ring for i in iter_bits(idx.layer_mask(r))]
    for _ in range(s):
        best = min(cands, key=lambda i: ((idx.comp_mask(i) & fam).bit_count(), i))
        fam |= 1 << best
        cands.remove(best)
    return Family(P, frozenset(idx.members_of(fam)))


def _partial_ranks(f: Family) -> tuple[list[int], list[int]]:
    counts = f.layer_counts()
    sizes = f.poset.layer_sizes()
    occupied = [r for r, c in enumerate(counts) if c]
    not_full = [r for r, c in enumerate(counts) if c < sizes[r]]
    return occupied, not_full


def is_centered(f: Family) -> bool:
    """No member is strictly farther from the middle than some non-member."""
    occupied, not_full = _partial_ranks(f)
    if not occupied or not not_full:
        return True
    dist = f.poset.mid_distance
    return max(dist(r) for r in occupied) <= min(dist(r) for r in not_full)


def is_canonical_centered(f: Family) -> bool:
    counts = f.layer_counts()
    sizes = f.poset.layer_sizes()
    partial = sum(1 for c, s in zip(counts, sizes) if 0 < c < s)
    return is_centered(f) and partial <= 1


# -- exact minimisation with one partial layer ---------------------------


def window_grid(p: ChainProduct, window: LayerWindow) -> np.ndarray:
    _grid_guard(p)
    ranks = p.rank_grid()
    return (ranks >= window.lo) & (ranks <= window.hi)


def layer_degrees(p: ChainProduct, base: np.ndarray, rank: int):
    """(elements of the layer in lex order, their comp degree into ``base``)."""
    ranks = p.rank_grid()
    where = np.argwhere(ranks == rank)
    down = down_counts(base)
    up = up_counts(base)
    idx = tuple(where.T)
    deg = down[idx] + up[idx] - 2 * base[idx].astype(np.int64)
    return [tuple(int(v) for v in row) for row in where], deg


def one_partial_layer_min(p: ChainProduct, window: LayerWindow, partial_rank: int, s: int):
    """(min comp, comp of the window, chosen elements) for window + s elements
    of the adjacent layer ``partial_rank``."""
    if partial_rank not in (window.lo - 1, window.hi + 1):
        raise DomainError(f"rank {partial_rank} is not adjacent to {window}")
    if not 0 <= partial_rank <= p.height:
        raise DomainError(f"rank {partial_rank} outside 0..{p.height}")
    size = layer_profile(p.n, p.k)[partial_rank]
    if not 0 <= s <= size:
        raise DomainError(f"s={s} outside 0..{size}")
    base = window_grid(p, window)
    base_comp = comp_count_grid(base)
    elems, deg = layer_degrees(p, base, partial_rank)
    order = sorted(range(len(elems)), key=lambda i: (int(deg[i]), elems[i]))[:s]
    chosen = [elems[i] for i in order]
    return base_comp + sum(int(deg[i]) for i in order), base_comp, chosen


def min_comp_one_partial_layer(p: ChainProduct, window: LayerWindow, partial_rank: int, s: int):
    """Exact min comp over the full window plus s elements of one adjacent layer.

    The layer is an antichain, so the optimum takes the s elements with the
    smallest degree into the window.
    """
    value, _, chosen = one_partial_layer_min(p, window, partial_rank, s)
    ranks = window.ranks()
    members = {x for x in p.elements() if sum(x) in ranks}
    members.update(chosen)
    return value, Family(p, frozenset(members))


def nss_bound(p: ChainProduct, r: int, t: int) -> int:
    """floor((l_{3r-1}/l_{2r-1} - 1) * t) in {0,1,2}^n."""
    if p.k != 2:
        raise DomainError("the bound is stated for k = 2")
    prof = layer_profile(p.n, 2)
    hi, lo = 3 * r - 1, 2 * r - 1
    if not (0 <= lo <= p.height and 0 <= hi <= p.height):
        raise DomainError(f"layer indices {lo}, {hi} outside 0..{p.height}")
    if prof[lo] == 0:
        raise DomainError("degenerate layer")
    value = (Fraction(prof[hi], prof[lo]) - 1) * t
    return value.numerator // value.denominator


# -- file format ----------------------------------------------------------


def poset_from_json(d: dict) -> GradedPoset:
    from .subspace import SubspaceLattice

    kind = d.get("type")
    if kind == "chain_product":
        return ChainProduct(int(d["n"]), int(d["k"]))
    if kind == "subspace":
        return SubspaceLattice(int(d["q"]), int(d["n"]))
    raise DomainError(f"unknown poset type {kind!r}")


def family_to_json(f: Family) -> dict:
    return {"poset": f.poset.describe(), "members": f.encoded()}


def family_from_json(d: dict) -> Family:
    P = poset_from_json(d["poset"])
    return Family(P, frozenset(P.decode(s) for s in d["members"]))


def dump_family(f: Family) -> str:
    return json.dumps(family_to_json(f), sort_keys=True)


def load_family(text: str) -> Family:
    return family_from_json(json.loads(text))
