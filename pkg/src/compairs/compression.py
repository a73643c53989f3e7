"""Size-preserving family transforms that move mass toward the middle layers.

All transforms share one exchange step: given a level ``a`` of the family and
a level ``b`` closer to the middle, build the bipartite graph between the
members at level ``a`` and the non-members at level ``b`` and swap a matched
set of vertices chosen by the Hall-type case analysis (full cover, case 1,
case 2 with a cover of Y, case 2a after shrinking Y0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import DomainError, UnsupportedError
from .family import Family
from .graded import GradedPoset, PosetIndex, iter_bits, poset_index
from .matching import BipartiteGraph, hall_violator, max_matching
from .poset import ChainProduct

log = logging.getLogger(__name__)


@dataclass
class StepResult:
    """Outcome of one exchange.  ``a``/``b`` are the ranks involved."""

    kind: str
    family: Family
    a: int
    b: int
    case: str
    removed: list
    added: list
    comp_before: int
    comp_after: int
    potential_before: float
    potential_after: float
    shrink_iterations: int = 0

    def trace_record(self, step: int) -> dict:
        return {
            "step": step,
            "kind": self.kind,
            "a": self.a,
            "b": self.b,
            "case": self.case,
            "swapped": len(self.added),
            "comp_before": self.comp_before,
            "comp_after": self.comp_after,
            "potential": self.potential_after,
        }


def potential(f: Family) -> float:
    """Sum over members of |rank - height/2| (an int when the height is even)."""
    h = f.poset.height
    twice = sum(abs(2 * f.poset.rank(x) - h) for x in f.members)
    return twice // 2 if twice % 2 == 0 else twice / 2


def _mask_potential(idx: PosetIndex, mask: int) -> float:
    h = idx.poset.height
    twice = sum(abs(2 * idx.ranks[i] - h) for i in iter_bits(mask))
    return twice // 2 if twice % 2 == 0 else twice / 2


# -- the exchange ---------------------------------------------------------


@dataclass
class Exchange:
    case: str
    pairs: list = field(default_factory=list)
    shrink_iterations: int = 0


def exchange(graph: BipartiteGraph) -> Exchange:
    """Choose matched pairs (left vertex out, right vertex in) per the case analysis.

    Left vertices are the members at the far level, right vertices the
    non-members at the near level, edges join comparable elements.
    """
    m = max_matching(graph)
    X = list(graph.left)
    if len(m) == len(X):
        return Exchange("cover", sorted(m.items()))
    Y = sorted(graph.neighbors(X))
    H = graph.induced(X, Y)
    if len(X) <= len(Y):
        X0 = hall_violator(H, "left", maximal=True, matching=m)
        NX0 = H.neighbors(X0)
        rest = [x for x in X if x not in X0]
        sub = H.induced(rest, [y for y in Y if y not in NX0])
        f = max_matching(sub)
        if len(f) != len(rest):
            raise AssertionError("case 1: complement of a maximal violator is not coverable")
        return Exchange("1", sorted(f.items()))
    if len(m) == len(Y):
        return Exchange("2-cover", sorted(m.items()))
    Y0 = hall_violator(H, "right", maximal=False, matching=m)
    rev = H.reversed()
    shrinks = 0
    while True:
        NX = sorted(rev.neighbors(Y0))
        sub = H.induced(NX, sorted(Y0))
        f = max_matching(sub)
        if len(f) == len(NX):
            return Exchange("2a", sorted(f.items()), shrinks)
        Z = hall_violator(sub, "left", maximal=True, matching=f)
        Y0 = Y0 - sub.neighbors(Z)
        shrinks += 1
        if not Y0:
            raise AssertionError("case 2b: shrinking emptied Y0")


def _graph(idx: PosetIndex, left: list[int], right_mask: int, rel: tuple[int, ...],
           keep: Callable[[int, int], bool] | None = None) -> BipartiteGraph:
    adj = {}
    for i in left:
        nb = [j for j in iter_bits(rel[i] & right_mask)]
        if keep is not None:
            nb = [j for j in nb if keep(i, j)]
        adj[i] = nb
    return BipartiteGraph(list(left), list(iter_bits(right_mask)), adj)


def _apply(kind: str, f: Family, idx: PosetIndex, mask: int, a: int, b: int,
           graph: BipartiteGraph) -> StepResult:
    ex = exchange(graph)
    out_mask = 0
    in_mask = 0
    for u, v in ex.pairs:
        out_mask |= 1 << u
        in_mask |= 1 << v
    new_mask = (mask & ~out_mask) | in_mask
    res = StepResult(
        kind=kind,
        family=Family(f.poset, frozenset(idx.members_of(new_mask))),
        a=a,
        b=b,
        case=ex.case,
        removed=idx.members_of(out_mask),
        added=idx.members_of(in_mask),
        comp_before=idx.comp_of_mask(mask),
        comp_after=idx.comp_of_mask(new_mask),
        potential_before=_mask_potential(idx, mask),
        potential_after=_mask_potential(idx, new_mask),
        shrink_iterations=ex.shrink_iterations,
    )
    log.debug("%s step a=%d b=%d case=%s swapped=%d", kind, a, b, ex.case, len(ex.pairs))
    return res


def _ranks_mask(idx: PosetIndex, pred: Callable[[int], bool]) -> int:
    m = 0
    for i, r in enumerate(idx.ranks):
        if pred(r):
            m |= 1 << i
    return m


# -- top / bottom compression on {0,1,2}^n --------------------------------


def _require_k2(P: GradedPoset) -> ChainProduct:
    if not isinstance(P, ChainProduct) or P.k != 2:
        raise UnsupportedError("this compression is defined on {0,1,2}^n only")
    return P


def top_violations(f: Family) -> list[tuple]:
    """Pairs (A, B) violating (T): A in F, |A| > n, B <= A, |B| >= n, B not in F."""
    P = _require_k2(f.poset)
    idx = poset_index(P)
    mask = idx.mask_of(f.members)
    low = _ranks_mask(idx, lambda r: r >= P.n)
    out = []
    for i in iter_bits(mask):
        if idx.ranks[i] > P.n:
            for j in iter_bits(idx.down[i] & low & ~mask):
                out.append((idx.elements[i], idx.elements[j]))
    return out


def is_top_compressed(f: Family) -> bool:
    return not top_violations(f)


def is_bottom_compressed(f: Family) -> bool:
    return not top_violations(complement_family(f))


def complement_family(f: Family) -> Family:
    P = f.poset
    return Family(P, frozenset(tuple(P.k - v for v in x) for x in f.members))


def top_compress_step(f: Family) -> StepResult | None:
    """One top-compression exchange, or None when (T) already holds."""
    P = _require_k2(f.poset)
    idx = poset_index(P)
    mask = idx.mask_of(f.members)
    low = _ranks_mask(idx, lambda r: r >= P.n)
    a = None
    b = -1
    for i in sorted(iter_bits(mask), key=lambda i: -idx.ranks[i]):
        r = idx.ranks[i]
        if r <= P.n or (a is not None and r < a):
            continue
        missing = idx.down[i] & low & ~mask
        if missing:
            a = r
            b = max(b, max(idx.ranks[j] for j in iter_bits(missing)))
    if a is None:
        return None
    left = [i for i in iter_bits(mask) if idx.ranks[i] == a]
    right = idx.layer_mask(b) & ~mask
    return _apply("top", f, idx, mask, a, b, _graph(idx, left, right, idx.down))


def bottom_compress_step(f: Family) -> StepResult | None:
    """Top-compression applied to the complemented family, mapped back."""
    P = _require_k2(f.poset)
    res = top_compress_step(complement_family(f))
    if res is None:
        return None
    return _complement_result(res, "bottom", P)


def _complement_result(res: StepResult, kind: str, P: ChainProduct) -> StepResult:
    def c(x):
        return tuple(P.k - v for v in x)

    res.kind = kind
    res.family = complement_family(res.family)
    res.a = P.height - res.a
    res.b = P.height - res.b
    res.removed = [c(x) for x in res.removed]
    res.added = [c(x) for x in res.added]
    return res


# -- 3-compression --------------------------------------------------------


def _zeros(x) -> int:
    return sum(1 for v in x if v == 0)


def three_violations(f: Family) -> list[tuple]:
    """(condition, A, B) for every violation of (C1) and (C2)."""
    _require_k2(f.poset)
    out = [("C1", A, B) for A, B in _c1_violations(f)]
    for A, B in _c1_violations(complement_family(f)):
        out.append(("C2", tuple(2 - v for v in A), tuple(2 - v for v in B)))
    return out


def _c1_violations(f: Family) -> list[tuple]:
    P = f.poset
    idx = poset_index(P)
    mask = idx.mask_of(f.members)
    target = idx.layer_mask(P.n - 1) & ~mask
    out = []
    for i in iter_bits(mask & idx.layer_mask(P.n + 2)):
        if idx.up[i] & mask:
            continue
        A = idx.elements[i]
        for j in iter_bits(idx.down[i] & target):
            if _zeros(idx.elements[j]) > _zeros(A):
                out.append((A, idx.elements[j]))
    return out


def three_compress_check(f: Family) -> dict:
    v = three_violations(f)
    return {
        "top_compressed": is_top_compressed(f),
        "bottom_compressed": is_bottom_compressed(f),
        "violations": v,
        "three_compressed": not v,
    }


def three_compress_step(f: Family) -> StepResult | None:
    """One exchange repairing (C1) (or (C2) via complements), or None.

    Left side: maximal members at rank n+2; right side: non-members at rank
    n-1; only pairs with a different number of 0-coordinates are edges.
    """
    P = _require_k2(f.poset)
    if not (is_top_compressed(f) and is_bottom_compressed(f)):
        raise DomainError("3-compression needs a top- and bottom-compressed family")
    if _c1_violations(f):
        return _three_step(f, "three")
    fc = complement_family(f)
    if _c1_violations(fc):
        return _complement_result(_three_step(fc, "three"), "three", P)
    return None


def _three_step(f: Family, kind: str) -> StepResult:
    P = f.poset
    idx = poset_index(P)
    mask = idx.mask_of(f.members)
    a, b = P.n + 2, P.n - 1
    left = [i for i in iter_bits(mask & idx.layer_mask(a)) if not idx.up[i] & mask]
    right = idx.layer_mask(b) & ~mask
    zeros = [_zeros(x) for x in idx.elements]
    graph = _graph(idx, left, right, idx.down, keep=lambda i, j: zeros[i] != zeros[j])
    return _apply(kind, f, idx, mask, a, b, graph)


# -- iteration ------------------------------------------------------------

STEPS = {
    "top": top_compress_step,
    "bottom": bottom_compress_step,
    "three": three_compress_step,
}


def iterate_compression(f: Family, kinds=("top", "bottom"), max_steps: int | None = None
                        ) -> Iterator[StepResult]:
    """Apply the listed transforms (first applicable one each round) to a fixpoint."""
    steps = 0
    bound = potential(f)
    while True:
        for kind in kinds:
            if kind == "three" and not (is_top_compressed(f) and is_bottom_compressed(f)):
                continue
            res = STEPS[kind](f)
            if res is not None:
                break
        else:
            return
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise RuntimeError("compression did not reach a fixpoint")
        if res.potential_after >= res.potential_before or steps > bound:
            raise AssertionError("potential failed to decrease")
        yield res
        f = res.family


def compress_fixpoint(f: Family, kinds=("top", "bottom")) -> tuple[Family, list[StepResult]]:
    trace = list(iterate_compression(f, kinds))
    return (trace[-1].family if trace else f), trace


# -- pi-compression -------------------------------------------------------


def is_involution(pi) -> bool:
    return sorted(pi) == list(range(len(pi))) and all(pi[pi[i]] == i for i in range(len(pi)))


def apply_permutation(pi, a) -> tuple:
    """pi(A) = (A_pi(1), ..., A_pi(n))."""
    return tuple(a[pi[i]] for i in range(len(pi)))


def pi_compress(g: Family, pi, low_rank: int) -> Family:
    """Replace each A of rank ``low_rank`` by pi(A^c) unless that is already present.

    Requires the family to lie within ranks low_rank..height-low_rank and to
    contain every element strictly between them.
    """
    P = g.poset
    if not isinstance(P, ChainProduct):
        raise UnsupportedError("pi-compression is defined on chain products")
    if len(pi) != P.n or not is_involution(pi):
        raise DomainError(f"{pi!r} is not an involution of [n]")
    high = P.height - low_rank
    if not 0 <= low_rank < P.height / 2:
        raise DomainError(f"low_rank must be below the middle, got {low_rank}")
    counts = g.layer_counts()
    sizes = P.layer_sizes()
    if any(counts[r] for r in range(P.height + 1) if not low_rank <= r <= high):
        raise DomainError("family has members outside the low..high window")
    if any(counts[r] != sizes[r] for r in range(low_rank + 1, high)):
        raise DomainError("family must contain every element strictly inside the window")
    removed = []
    added = []
    for A in g.members:
        if sum(A) == low_rank:
            img = apply_permutation(pi, tuple(P.k - v for v in A))
            if img not in g.members:
                removed.append(A)
                added.append(img)
    return g.replace(removed, added)


# -- mid-compression on posets with Property (Q) --------------------------


def mid_violation_levels(f: Family) -> tuple[str, int, int] | None:
    """('down', a, b) for the violating pair with |A| above the middle, |A|
    maximal then |B| maximal; else ('up', a, b) mirrored; None if mid-compressed."""
    P = f.poset
    idx = poset_index(P)
    mask = idx.mask_of(f.members)
    h = P.height
    twice = [abs(2 * r - h) for r in range(h + 1)]
    above = [i for i in iter_bits(mask) if 2 * idx.ranks[i] > h]
    best = None
    for i in sorted(above, key=lambda i: -idx.ranks[i]):
        a = idx.ranks[i]
        if best is not None and a < best[0]:
            break
        cand = [j for j in iter_bits(idx.down[i] & ~mask) if twice[idx.ranks[j]] < twice[a]]
        if cand:
            b = max(idx.ranks[j] for j in cand)
            if best is None or b > best[1]:
                best = (a, b)
    if best is not None:
        return ("down",) + best
    below = [i for i in iter_bits(mask) if 2 * idx.ranks[i] < h]
    for i in sorted(below, key=lambda i: idx.ranks[i]):
        a = idx.ranks[i]
        if best is not None and a > best[0]:
            break
        cand = [j for j in iter_bits(idx.up[i] & ~mask) if twice[idx.ranks[j]] < twice[a]]
        if cand:
            b = min(idx.ranks[j] for j in cand)
            if best is None or b < best[1]:
                best = (a, b)
    if best is not None:
        return ("up",) + best
    return None


def is_mid_compressed(f: Family) -> bool:
    return mid_violation_levels(f) is None


def mid_compress_step(f: Family) -> StepResult | None:
    lv = mid_violation_levels(f)
    if lv is None:
        return None
    direction, a, b = lv
    idx = poset_index(f.poset)
    mask = idx.mask_of(f.members)
    left = [i for i in iter_bits(mask) if idx.ranks[i] == a]
    right = idx.layer_mask(b) & ~mask
    rel = idx.down if direction == "down" else idx.up
    return _apply("mid", f, idx, mask, a, b, _graph(idx, left, right, rel))


def mid_compress(f: Family, property_q: bool = False, trace: list | None = None) -> Family:
    """Iterate mid-compression steps until no member has a comparable
    non-member closer to the middle.

    The comp guarantee rests on Property (Q); callers must assert it with
    ``property_q=True`` (see :func:`compairs.propq.check_property_q`).
    """
    if not property_q:
        raise UnsupportedError("mid-compression requires Property (Q); pass property_q=True")
    steps = 0
    bound = potential(f)
    while True:
        res = mid_compress_step(f)
        if res is None:
            return f
        steps += 1
        if res.potential_after >= res.potential_before or steps > bound:
            raise AssertionError("potential failed to decrease")
        if res.comp_after > res.comp_before:
            raise AssertionError(f"comp increased {res.comp_before} -> {res.comp_after}")
        if trace is not None:
            trace.append(res)
        f = res.family
