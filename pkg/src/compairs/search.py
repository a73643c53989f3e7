"""Ground-truth optimizers over tiny posets and a local search for larger ones.

The exhaustive scan walks all 2^N subsets in Gray-code order, toggling one
element per step and updating the pair count from a precomputed
comparability bitmask, and keeps the best count for every cardinality.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import comb

import numba

numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .errors import CapacityError, DomainError
from .family import Family, centered_split, comp_count, nss_bound
from .graded import GradedPoset, iter_bits, poset_index
from .poset import ChainProduct, sigma

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE = 32
SHARD_BITS = 6


# -- numba kernels --------------------------------------------------------


@numba.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@numba.njit(cache=True, inline="always")
def _ctz(x):
    c = 0
    while (x & np.uint64(1)) == np.uint64(0):
        x >>= np.uint64(1)
        c += 1
    return c


@numba.njit(cache=True)
def _comp_from_scratch(cm, mask):
    # each pair is seen from both ends
    total = 0
    for i in range(cm.shape[0]):
        if (mask >> np.uint64(i)) & np.uint64(1):
            total += _popcount(cm[i] & mask)
    return total // 2


@numba.njit(cache=True)
def _better(cand, cur):
    # the mask owning the lowest differing bit lists the smaller elements first
    d = cand ^ cur
    low = d & (~d + np.uint64(1))
    return (cand & low) != np.uint64(0)


@numba.njit(cache=True)
def _scan_shard(cm, n, low_bits, prefix, best, wit):
    mask = np.uint64(prefix) << np.uint64(low_bits)
    comp = _comp_from_scratch(cm, mask)
    size = _popcount(mask)
    best[size] = comp
    wit[size] = mask
    for g in range(1, np.int64(1) << low_bits):
        i = _ctz(np.uint64(g))
        bit = np.uint64(1) << np.uint64(i)
        if mask & bit:
            mask ^= bit
            comp -= _popcount(cm[i] & mask)
            size -= 1
        else:
            comp += _popcount(cm[i] & mask)
            mask ^= bit
            size += 1
        b = best[size]
        if comp < b or (comp == b and _better(mask, wit[size])):
            best[size] = comp
            wit[size] = mask


@numba.njit(cache=True, parallel=True)
def _scan_all(cm, n, low_bits):
    shards = np.int64(1) << (n - low_bits)
    big = np.iinfo(np.int64).max
    best = np.full((shards, n + 1), big, dtype=np.int64)
    wit = np.zeros((shards, n + 1), dtype=np.uint64)
    for s in numba.prange(shards):
        _scan_shard(cm, n, low_bits, s, best[s], wit[s])
    return best, wit


@numba.njit(cache=True)
def _gray_trace(cm, start, low_bits, stride):
    """Incremental (mask, comp) pairs every ``stride`` Gray steps from ``start``."""
    mask = np.uint64(start)
    comp = _comp_from_scratch(cm, mask)
    steps = np.int64(1) << low_bits
    count = (steps - 1) // stride
    masks = np.zeros(count, dtype=np.uint64)
    comps = np.zeros(count, dtype=np.int64)
    k = 0
    for g in range(1, steps):
        i = _ctz(np.uint64(g))
        bit = np.uint64(1) << np.uint64(i)
        if mask & bit:
            mask ^= bit
            comp -= _popcount(cm[i] & mask)
        else:
            comp += _popcount(cm[i] & mask)
            mask ^= bit
        if g % stride == 0 and k < count:
            masks[k] = mask
            comps[k] = comp
            k += 1
    return masks, comps


def _comp_masks(P: GradedPoset) -> np.ndarray:
    idx = poset_index(P)
    return np.array([idx.comp_mask(i) for i in range(idx.n_elements)], dtype=np.uint64)


def _guard(P: GradedPoset) -> int:
    N = P.size()
    if N > MAX_EXHAUSTIVE:
        raise CapacityError(f"exhaustive search needs |P| <= {MAX_EXHAUSTIVE}, got {N}")
    return N


def _merge(best: np.ndarray, wit: np.ndarray) -> tuple[list[int], list[int]]:
    """Associative min-reduction over shards with the lowest-bit tie-break."""
    out_best, out_wit = [], []
    for size in range(best.shape[1]):
        b, w = None, None
        for s in range(best.shape[0]):
            c = int(best[s, size])
            if c == np.iinfo(np.int64).max:
                continue
            m = int(wit[s, size])
            if b is None or c < b or (c == b and _lower_first(m, w)):
                b, w = c, m
        out_best.append(b)
        out_wit.append(w)
    return out_best, out_wit


def _lower_first(cand: int, cur: int) -> bool:
    d = cand ^ cur
    return bool(cand & d & -d)


def min_comp_by_size(P: GradedPoset, workers: int = 1, shard_bits: int = SHARD_BITS):
    """(min comp, witness mask) for every size 0..|P|, scanning all subsets.

    The shard layout depends only on |P|, so values and witnesses are the
    same for any worker count.
    """
    N = _guard(P)
    cm = _comp_masks(P)
    top = min(shard_bits, N)
    prev = numba.get_num_threads()
    numba.set_num_threads(max(1, min(workers, numba.config.NUMBA_NUM_THREADS)))
    try:
        best, wit = _scan_all(cm, N, N - top)
    finally:
        numba.set_num_threads(prev)
    return _merge(best, wit)


def gray_checkpoints(P: GradedPoset, start_mask: int, low_bits: int, stride: int):
    """Incremental comps along a Gray walk from ``start_mask`` (for cross-checks)."""
    N = _guard(P)
    if low_bits > N:
        raise DomainError("walk longer than the poset")
    masks, comps = _gray_trace(_comp_masks(P), np.uint64(start_mask), low_bits, stride)
    return [int(m) for m in masks], [int(c) for c in comps]


# -- the centered class ---------------------------------------------------


def _degrees_into(idx, mask: int, cands: list[int]) -> list[int]:
    return [(idx.comp_mask(i) & mask).bit_count() for i in cands]


def centered_min_comp(P: GradedPoset, M: int, brute_limit: int = 200_000):
    """Exact min comp over all centered families of size M, with a minimizer.

    A centered family is the inner ranks plus s elements of the boundary
    ranks.  With one boundary rank the choice is an antichain and sorting by
    degree is exact; with two the cross pairs are handled by enumeration
    when small and by a 0/1 program otherwise.
    """
    inner, ring, s = centered_split(P, M)
    idx = poset_index(P)
    base = 0
    for r in inner:
        base |= idx.layer_mask(r)
    base_comp = idx.comp_of_mask(base)
    if s == 0:
        return base_comp, Family(P, frozenset(idx.members_of(base)))
    cands = [i for r in ring for i in iter_bits(idx.layer_mask(r))]
    deg = _degrees_into(idx, base, cands)
    if len(ring) == 1:
        order = sorted(range(len(cands)), key=lambda t: (deg[t], cands[t]))[:s]
        chosen = [cands[t] for t in order]
        value = base_comp + sum(deg[t] for t in order)
    elif comb(len(cands), s) <= brute_limit:
        value, chosen = _brute_ring(idx, cands, deg, s)
        value += base_comp
    else:
        value, chosen = _milp_ring(idx, cands, deg, s)
        value += base_comp
    mask = base
    for i in chosen:
        mask |= 1 << i
    fam = Family(P, frozenset(idx.members_of(mask)))
    return value, fam


def _brute_ring(idx, cands, deg, s):
    best = None
    pos = {c: t for t, c in enumerate(cands)}
    cross = [[pos[j] for j in iter_bits(idx.comp_mask(c)) if j in pos] for c in cands]
    for combo in itertools.combinations(range(len(cands)), s):
        chosen = set(combo)
        v = sum(deg[t] for t in combo)
        v += sum(1 for t in combo for u in cross[t] if u in chosen and u > t)
        if best is None or v < best[0]:
            best = (v, [cands[t] for t in combo])
    return best


def _milp_ring(idx, cands, deg, s):
    """min sum deg_i x_i + sum y_ij, y_ij >= x_i + x_j - 1, sum x = s."""
    pos = {c: t for t, c in enumerate(cands)}
    pairs = sorted({(min(t, pos[j]), max(t, pos[j]))
                    for t, c in enumerate(cands)
                    for j in iter_bits(idx.comp_mask(c)) if j in pos})
    nx, ny = len(cands), len(pairs)
    cost = np.concatenate([np.array(deg, dtype=float), np.ones(ny)])
    rows = [np.concatenate([np.ones(nx), np.zeros(ny)])]
    lo, hi = [s], [s]
    for e, (t, u) in enumerate(pairs):
        row = np.zeros(nx + ny)
        row[t] = row[u] = 1.0
        row[nx + e] = -1.0
        rows.append(row)
        lo.append(-np.inf)
        hi.append(1.0)
    res = milp(cost, constraints=LinearConstraint(np.array(rows), lo, hi),
               integrality=np.concatenate([np.ones(nx), np.zeros(ny)]),
               bounds=Bounds(0, 1))
    if not res.success:
        raise RuntimeError(f"0/1 program failed: {res.message}")
    x = np.round(res.x[:nx]).astype(int)
    chosen = [cands[t] for t in range(nx) if x[t]]
    value = sum(deg[t] for t in range(nx) if x[t])
    value += sum(1 for t, u in pairs if x[t] and x[u])
    return value, chosen


# -- reports --------------------------------------------------------------


@dataclass
class OptimalityReport:
    M: int
    min_comp: int
    witness: Family
    centered_min_comp: int
    centered_witness: Family | None = None

    @property
    def centered_achieves(self) -> bool:
        return self.min_comp == self.centered_min_comp

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "min_comp": self.min_comp,
            "witness": self.witness.encoded(),
            "centered_min_comp": self.centered_min_comp,
            "centered_achieves": self.centered_achieves,
        }


def exhaustive_min_comp(P: GradedPoset, M: int, workers: int = 1) -> OptimalityReport:
    return exhaustive_reports(P, [M], workers)[0]


def exhaustive_reports(P: GradedPoset, ms=None, workers: int = 1) -> list[OptimalityReport]:
    N = _guard(P)
    ms = range(N + 1) if ms is None else list(ms)
    for M in ms:
        if not 0 <= M <= N:
            raise DomainError(f"M={M} outside 0..{N}")
    best, wit = min_comp_by_size(P, workers)
    idx = poset_index(P)
    out = []
    for M in ms:
        cval, cfam = centered_min_comp(P, M)
        out.append(OptimalityReport(M, best[M], Family(P, frozenset(idx.members_of(wit[M]))),
                                    cval, cfam))
    return out


@dataclass
class CenterednessReport:
    poset: dict
    reports: list[OptimalityReport] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.centered_achieves for r in self.reports)

    def gaps(self) -> dict[int, int]:
        return {r.M: r.centered_min_comp - r.min_comp for r in self.reports if not r.centered_achieves}


def verify_centeredness_property(P: GradedPoset, workers: int = 1) -> CenterednessReport:
    return CenterednessReport(P.describe(), exhaustive_reports(P, None, workers))


# -- lower bounds ---------------------------------------------------------


@dataclass
class BoundCheck:
    name: str
    M: int
    expected: object
    actual: int
    status: str


def check_lower_bounds(P: ChainProduct, workers: int = 1) -> list[BoundCheck]:
    """Exact comp(M) against the per-extra-element bound, the continuity
    step bound (k = 2) and the NSS bound (k = 2, informational)."""
    N = _guard(P)
    best, _ = min_comp_by_size(P, workers)
    s1 = sigma(P, 1)
    per = P.n // 2 + 1
    out = []
    for t in range(0, N - s1 + 1):
        need = t * per
        got = best[s1 + t]
        out.append(BoundCheck("extra_elements", s1 + t, need, got, "pass" if got >= need else "fail"))
    if P.k == 2:
        s3 = sigma(P, 3)
        for M in range(s1 + 1, s3 + 1):
            ok = 4 * best[M] <= 4 * best[M - 1] + P.n ** 2
            out.append(BoundCheck("continuity_step", M, f"<= {best[M - 1]} + n^2/4", best[M],
                                  "pass" if ok else "info"))
        for r in range(1, (2 * P.n + 1) // 3 + 1):
            for t in range(0, N - s1 + 1):
                out.append(BoundCheck(f"nss_r{r}", s1 + t, nss_bound(P, r, t), best[s1 + t], "info"))
    return out


# -- local search ---------------------------------------------------------


@numba.njit(cache=True)
def _anneal(C, member, budget, t_hi, t_lo, seed):
    np.random.seed(seed)
    N = C.shape[0]
    deg = np.zeros(N, dtype=np.int64)
    for i in range(N):
        if member[i]:
            for j in range(N):
                if C[i, j]:
                    deg[j] += 1
    comp = 0
    for i in range(N):
        if member[i]:
            comp += deg[i]
    comp //= 2
    ins = np.nonzero(member)[0]
    outs = np.nonzero(~member)[0]
    best = comp
    best_member = member.copy()
    if ins.size == 0 or outs.size == 0:
        return best_member, best
    for step in range(budget):
        t = t_hi * (t_lo / t_hi) ** (step / max(budget - 1, 1))
        a = np.random.randint(ins.size)
        b = np.random.randint(outs.size)
        u = ins[a]
        v = outs[b]
        d = deg[v] - deg[u] - (1 if C[u, v] else 0)
        if d <= 0 or np.random.random() < np.exp(-d / t):
            for j in range(N):
                if C[u, j]:
                    deg[j] -= 1
                if C[v, j]:
                    deg[j] += 1
            member[u] = False
            member[v] = True
            ins[a] = v
            outs[b] = u
            comp += d
            if comp < best:
                best = comp
                best_member[:] = member
    return best_member, best


@dataclass
class SearchResult:
    M: int
    found: Family
    found_comp: int
    centered_min: int

    @property
    def beats_centered(self) -> bool:
        return self.found_comp < self.centered_min


def local_search_counterexample(P: GradedPoset, M: int, budget: int = 200_000, seed: int = 0,
                                restarts: int = 1, t_hi: float = 2.0, t_lo: float = 0.05
                                ) -> SearchResult:
    """Seeded annealing over size-preserving swaps, started from the best
    centered family; returns the best family seen and the exact centered
    minimum for comparison."""
    idx = poset_index(P)
    N = idx.n_elements
    centered, start = centered_min_comp(P, M)
    C = np.zeros((N, N), dtype=np.bool_)
    for i in range(N):
        for j in iter_bits(idx.comp_mask(i)):
            C[i, j] = True
    init = np.zeros(N, dtype=np.bool_)
    for x in start.members:
        init[idx.position[x]] = True
    best_mask, best = init, centered
    rng = np.random.default_rng(seed)
    for _ in range(max(1, restarts) if budget > 0 else 0):
        m, c = _anneal(C, init.copy(), budget, t_hi, t_lo, int(rng.integers(2**31)))
        if c < best:
            best_mask, best = m, int(c)
    fam = Family(P, frozenset(idx.elements[i] for i in np.nonzero(best_mask)[0]))
    return SearchResult(M, fam, int(best), centered)


def scan_counterexample(P: GradedPoset, ms, budget: int, seed: int, restarts: int = 1
                        ) -> list[SearchResult]:
    return [local_search_counterexample(P, M, budget, seed + M, restarts) for M in ms]


def witness_is_consistent(rep: OptimalityReport) -> bool:
    return comp_count(rep.witness, "pairwise") == rep.min_comp and len(rep.witness) == rep.M
