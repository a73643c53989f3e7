"""Exhaustive small-n verifiers for the neighbour-count and shadow claims on
chain products.  Each returns a list of report checks."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import comb

from .errors import DomainError
from .graded import iter_bits, poset_index
from .poset import (ChainProduct, bstar_reduce, delta, delta_min, layer_profile,
                    neighbor_count, value_counts)
from .report import Check, check, info


def _pairs_below(p: ChainProduct):
    """(A, B) with B strictly below A, via the bitset index."""
    idx = poset_index(p)
    for i, A in enumerate(idx.elements):
        for j in iter_bits(idx.down[i]):
            yield A, idx.elements[j]


# -- neighbour counts above the middle -----------------------------------


def verify_claimfuncond(n: int) -> list[Check]:
    """For B < A in {0,1,2}^n with |A|, |B| >= n: |N_{|B|+i}(B)| <= |N_{|A|-i}(A)|."""
    p = ChainProduct(n, 2)
    checked = 0
    bad = []
    for A, B in _pairs_below(p):
        a, b = sum(A), sum(B)
        if b < n:
            continue
        for i in range(1, a - b + 1):
            checked += 1
            if neighbor_count(p, B, b + i) > neighbor_count(p, A, a - i):
                bad.append((A, B, i))
    return [check("claimfuncond", {"n": n}, 0, len(bad), not bad),
            info("claimfuncond.count", {"n": n}, None, checked)]


def _alpha(a1: int, a2: int) -> tuple[int, int, int]:
    s = a1 + a2
    return s, comb(s, 2) + a2, comb(s, 3) + a2 * (s - 1)


def verify_3compressclaim(n: int) -> list[Check]:
    """B < A with |A| = n+2, |B| = n-1, differing zero counts: the neighbour
    inequality for i = 1, 2, 3; in the equal-twos case also the closed forms
    of both counts and of their differences."""
    p = ChainProduct(n, 2)
    bad, forms_bad, diff_bad = [], [], []
    checked = case1 = 0
    for A, B in _pairs_below(p):
        if sum(A) != n + 2 or sum(B) != n - 1:
            continue
        a0, a1, a2 = value_counts(p, A)
        b0, b1, b2 = value_counts(p, B)
        if a0 == b0:
            continue
        for i in (1, 2, 3):
            checked += 1
            if neighbor_count(p, B, n - 1 + i) > neighbor_count(p, A, n + 2 - i):
                bad.append((A, B, i))
        if b2 != a2:
            continue
        case1 += 1
        alpha = _alpha(a1, a2)
        beta = _alpha(b1, b0)  # the complement of B has b0 twos and b1 ones
        enum_a = tuple(neighbor_count(p, A, n + 2 - i) for i in (1, 2, 3))
        enum_b = tuple(neighbor_count(p, B, n - 1 + i) for i in (1, 2, 3))
        if alpha != enum_a or beta != enum_b:
            forms_bad.append((A, B))
        closed = (2, 2 * (b0 + b1), b0 * b0 + 2 * b0 * b1 + b1 * b1 + b0 - b1 - 1)
        if tuple(x - y for x, y in zip(alpha, beta)) != closed or a1 != b1 + 3 or a2 != b0 - 1:
            diff_bad.append((A, B))
    par = {"n": n}
    return [
        check("3compressclaim.inequality", par, 0, len(bad), not bad),
        check("3compressclaim.alpha_beta_forms", par, 0, len(forms_bad), not forms_bad),
        check("3compressclaim.differences", par, 0, len(diff_bad), not diff_bad),
        info("3compressclaim.count", par, None, {"inequalities": checked, "equal_twos_pairs": case1}),
    ]


def verify_number_nbrs(n: int) -> list[Check]:
    """For |A| >= n+2: comparable elements 1, 2, 3 levels down, and those
    three levels down keeping the zero count."""
    p = ChainProduct(n, 2)
    idx = poset_index(p)
    bad = []
    count = 0
    for i, A in enumerate(idx.elements):
        a = sum(A)
        if a < n + 2:
            continue
        count += 1
        a0, a1, a2 = value_counts(p, A)
        s = a1 + a2
        levels = Counter()
        same_zeros = 0
        for j in iter_bits(idx.down[i]):
            B = idx.elements[j]
            d = a - sum(B)
            if d <= 3:
                levels[d] += 1
                if d == 3 and B.count(0) == a0:
                    same_zeros += 1
        want = (s, comb(s, 2) + a2, comb(s, 3) + a2 * (s - 1), comb(a2, 3))
        got = (levels[1], levels[2], levels[3], same_zeros)
        if want != got:
            bad.append((A, want, got))
    return [check("number_nbrs", {"n": n}, 0, len(bad), not bad),
            info("number_nbrs.count", {"n": n}, None, count)]


def f_count(n: int, c: int) -> int:
    """Elements of rank n+1 in {0,1,2}^n with exactly c zeros."""
    return comb(n, c) * comb(n - c, c + 1)


def verify_averagethird(n: int, enumerate_limit: int = 10) -> list[Check]:
    par = {"n": n}
    fs = [f_count(n, c) for c in range(n + 1)]
    ell = layer_profile(n, 2)[n + 1] if n + 1 <= 2 * n else 0
    out = [check("averagethird.sum", par, ell, sum(fs), sum(fs) == ell)]
    ratio_bad, boundary = [], []
    for c in range(n):
        den = (n - 2 * c - 2) * (n - 2 * c - 1)
        if n - 2 * c - 2 <= 0:
            boundary.append(c)
            continue
        if fs[c + 1] == 0 or Fraction(fs[c], fs[c + 1]) != Fraction((c + 1) * (c + 2), den):
            ratio_bad.append(c)
    out.append(check("averagethird.ratio", par, 0, len(ratio_bad), not ratio_bad))
    out.append(info("averagethird.boundary", par, None, boundary))
    if n <= enumerate_limit:
        p = ChainProduct(n, 2)
        cnt = Counter(x.count(0) for x in p.layer(n + 1))
        enum = [cnt.get(c, 0) for c in range(n + 1)]
        out.append(check("averagethird.enumeration", par, fs, enum, enum == fs))
    return out


# -- shadows and the per-pair bound --------------------------------------


def _twice_dist(nk: int, r: int) -> int:
    return abs(2 * r - nk)


def governing_delta(p: ChainProduct, A, B) -> int:
    """delta(B, |A|) when A is at least as central as B, else delta(A^c, nk - |B|)."""
    nk = p.height
    a, b = sum(A), sum(B)
    if _twice_dist(nk, a) <= _twice_dist(nk, b):
        return delta(p, B, a)
    Ac = tuple(p.k - v for v in A)
    return delta(p, Ac, nk - b)


def verify_shadowsn2(n: int, k: int) -> list[Check]:
    """Every comparable pair A < B other than (0..0, k..k): the governing
    shadow count and the rank-level minimum are at least floor(n/2 + 1); the
    reduction B* stays below B with delta(B*, |A|) at least the bound."""
    p = ChainProduct(n, k)
    nk = p.height
    bound = n // 2 + 1
    bottom, top = (0,) * n, (k,) * n
    elem_bad, rank_bad, star_bad = [], [], []
    checked = 0
    rank_pairs = set()
    for B, A in _pairs_below(p):  # A strictly below B
        if A == bottom and B == top:
            continue
        checked += 1
        if governing_delta(p, A, B) < bound:
            elem_bad.append((A, B))
        a, b = sum(A), sum(B)
        rank_pairs.add((a, b))
        if _twice_dist(nk, a) <= _twice_dist(nk, b) and a > 0:
            s = bstar_reduce(B, a)
            if not (p.leq(s, B) and delta(p, s, a) >= bound):
                star_bad.append((A, B, s))
    for a, b in sorted(rank_pairs):
        if _twice_dist(nk, a) <= _twice_dist(nk, b):
            lo, hi = a, b
        else:
            lo, hi = nk - b, nk - a
        if lo == 0:
            continue
        v = delta_min(p, hi, lo)
        if v < bound:
            rank_bad.append((a, b, v))
    par = {"n": n, "k": k}
    return [
        check("shadowsn2.elementwise", par, f">= {bound}", len(elem_bad), not elem_bad),
        check("shadowsn2.rank_minimum", par, f">= {bound}", len(rank_bad), not rank_bad),
        check("shadowsn2.bstar", par, f">= {bound}", len(star_bad), not star_bad),
        info("shadowsn2.count", par, None, checked),
    ]


def brute_delta(p: ChainProduct, B, a: int) -> int:
    return sum(1 for x in itertools.product(*(range(v + 1) for v in B)) if sum(x) == a)


def brute_delta_min(p: ChainProduct, b: int, a: int) -> int:
    if not 0 < a < b <= p.height:
        raise DomainError("need 0 < a < b <= nk")
    return min(brute_delta(p, B, a) for B in p.layer(b))
