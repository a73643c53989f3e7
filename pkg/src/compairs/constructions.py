"""Explicit objects: symmetric chain decompositions of chain products, the
non-centered family built from six middle layers of {0,1,2}^n, and the
window family with one element swapped one layer up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .errors import CapacityError, DomainError
from .family import Family, comp_count_grid, comp_of_element_grid, one_partial_layer_min, window_grid
from .poset import (ChainProduct, LayerWindow, box_poly, compare, layer_profile,
                    middle_window, Relation, sigma)
from .report import Check, check, info

# -- symmetric chain decompositions --------------------------------------


@dataclass
class SCD:
    poset: ChainProduct
    chains: list[list[tuple]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.chains)


def _extend(chains: list[list[tuple]], k: int) -> list[list[tuple]]:
    """SCD of P x {0..k} from an SCD of P: each chain x_0 < ... < x_{p-1}
    times the chain splits into min(p, k+1) hooks; hook i runs up the new
    coordinate from (x_i, 0) to (x_i, k-i) and then along x_{i+1}, ..."""
    q = k + 1
    out = []
    for ch in chains:
        p = len(ch)
        for i in range(min(p, q)):
            hook = [ch[i] + (y,) for y in range(q - i)]
            hook += [ch[a] + (q - 1 - i,) for a in range(i + 1, p)]
            out.append(hook)
    return out


def build_scd(p: ChainProduct) -> SCD:
    if (p.k + 1) ** p.n > 10**6:
        raise CapacityError(f"{(p.k + 1) ** p.n} elements exceed the SCD guard")
    chains = [[(v,) for v in range(p.k + 1)]]
    for _ in range(p.n - 1):
        chains = _extend(chains, p.k)
    chains.sort(key=lambda c: (len(c), c[0]), reverse=True)
    return SCD(p, chains)


def verify_scd(scd: SCD) -> list[Check]:
    p = scd.poset
    nk = p.height
    params = {"n": p.n, "k": p.k}
    seen = [x for ch in scd.chains for x in ch]
    everything = set(p.elements())
    partition = len(seen) == len(everything) and set(seen) == everything
    steps = all(sum(ch[i + 1]) == sum(ch[i]) + 1 and p.leq(ch[i], ch[i + 1])
                for ch in scd.chains for i in range(len(ch) - 1))
    symmetric = all(sum(ch[0]) + sum(ch[-1]) == nk for ch in scd.chains)
    width = layer_profile(p.n, p.k)[nk // 2]
    return [
        check("scd.partition", params, len(everything), len(seen), partition),
        check("scd.saturated", params, True, steps, steps),
        check("scd.symmetric", params, True, symmetric, symmetric),
        check("scd.chain_count", params, width, len(scd.chains), len(scd.chains) == width),
    ]


def pairs_in_chains(scd: SCD, members) -> int:
    """Comparable pairs of the family lying in a common chain."""
    members = set(members)
    total = 0
    for ch in scd.chains:
        c = sum(1 for x in ch if x in members)
        total += c * (c - 1) // 2
    return total


def verify_pigeonhole(p: ChainProduct, trials: int = 100, seed: int = 0) -> list[Check]:
    scd = build_scd(p)
    rng = random.Random(seed)
    elems = p.elements()
    worst = None
    for _ in range(trials):
        fam = rng.sample(elems, rng.randint(0, len(elems)))
        slack = pairs_in_chains(scd, fam) - (len(fam) - len(scd))
        worst = slack if worst is None else min(worst, slack)
    return [check("scd.pigeonhole", {"n": p.n, "k": p.k, "trials": trials, "seed": seed},
                  ">= 0", worst, worst >= 0)]


# -- six middle layers minus a corner ------------------------------------


def _sec3_parts(n: int):
    if n < 6:
        raise DomainError(f"the construction needs n >= 6, got {n}")
    p = ChainProduct(n, 2)
    X = (0, 0) + (1,) * (n - 2)
    B = (0, 2, 2, 2, 2) + (1,) * (n - 5)
    return p, X, B


def build_family_sec3(n: int) -> Family:
    """Ranks n-2..n+3 of {0,1,2}^n without the zero-free elements of rank
    n+3 and without X = (0,0,1,...,1)."""
    p, X, _ = _sec3_parts(n)
    members = {x for x in p.elements()
               if n - 2 <= sum(x) <= n + 3 and not (sum(x) == n + 3 and 0 not in x)}
    members.discard(X)
    return Family(p, frozenset(members))


def sec3_grid(n: int):
    """Boolean grid of the family (the materialized Family is slow for n > 10)."""
    p, X, _ = _sec3_parts(n)
    ranks = p.rank_grid()
    g = window_grid(p, LayerWindow(n - 2, n + 3))
    zero_free = (ranks == n + 3)
    for axis in range(n):
        idx = [slice(None)] * n
        idx[axis] = 0
        zero_free[tuple(idx)] = False
    g &= ~zero_free
    g[X] = False
    return g


def compare_sec3(n: int) -> dict:
    p, X, B = _sec3_parts(n)
    g = sec3_grid(n)
    size = int(g.sum())
    M = sigma(p, 6) - comb(n, 3) - 1
    removed = int(((p.rank_grid() == n + 3) & ~g).sum())
    comp_F = comp_count_grid(g)
    deg_X = comp_of_element_grid(X, g)
    deg_B = comp_of_element_grid(B, g)
    inner = LayerWindow(n - 2, n + 2)
    s_hi = layer_profile(n, 2)[n + 3] - comb(n, 3) - 1
    s_lo = layer_profile(n, 2)[n - 3] - comb(n, 3) - 1
    hi_val, _, _ = one_partial_layer_min(p, inner, n + 3, s_hi)
    lo_val, _, _ = one_partial_layer_min(p, inner, n - 3, s_lo)
    return {
        "n": n,
        "size": size,
        "M": M,
        "zero_free_removed": removed,
        "comp_F": comp_F,
        "comp_X": deg_X,
        "comp_B": deg_B,
        "comp_X_bound": comb(n, 5) + comb(n, 4),
        "canonical_min_upper": hi_val,
        "canonical_min_lower": lo_val,
        "canonical_min": min(hi_val, lo_val),
        "beats_canonical": comp_F < min(hi_val, lo_val),
        "X_in_F": bool(g[X]),
        "B_in_F": bool(g[B]),
    }


def sec3_checks(ns=range(8, 13)) -> list[Check]:
    out = []
    threshold = None
    for n in ns:
        r = compare_sec3(n)
        par = {"n": n}
        out.append(check("sec3.size", par, r["M"], r["size"], r["size"] == r["M"]))
        out.append(check("sec3.removed_count", par, comb(n, 3), r["zero_free_removed"],
                         r["zero_free_removed"] == comb(n, 3)))
        out.append(check("sec3.X_excluded", par, False, r["X_in_F"], not r["X_in_F"]))
        out.append(check("sec3.compX_bound", par, f">= {r['comp_X_bound']}", r["comp_X"],
                         r["comp_X"] >= r["comp_X_bound"]))
        out.append(check("sec3.compB_lt_compX", par, f"< {r['comp_X']}", r["comp_B"],
                         r["comp_B"] < r["comp_X"]))
        out.append(info("sec3.comp_vs_canonical", par, r["canonical_min"], r["comp_F"]))
        if r["beats_canonical"] and threshold is None:
            threshold = n
    out.append(info("sec3.threshold", {"n_range": [min(ns), max(ns)]}, None, threshold))
    return out


# -- the window family with B swapped for C -----------------------------


def _sec5_window(n: int, k: int, j: int) -> LayerWindow:
    if (n * k + j) % 2:
        raise DomainError(f"need nk + j even, got n={n}, k={k}, j={j}")
    if not 1 <= j < n * k:
        raise DomainError(f"need 1 <= j < nk, got j={j}")
    return middle_window(ChainProduct(n, k), j)


def build_family_sec5(n: int, k: int, j: int):
    """(window, B, C): B sits on the top rank of the window with coordinates
    k//2 or k//2 + 1 (ascending); C sits one rank higher with coordinates k
    or 0 except one residual (k's first, then the residual, then zeros)."""
    w = _sec5_window(n, k, j)
    top = w.hi
    base = k // 2
    extra = top - n * base
    if not 0 <= extra <= n:
        raise DomainError(f"no element of rank {top} with coordinates {base}/{base + 1}")
    B = (base,) * (n - extra) + (base + 1,) * extra
    rc = top + 1
    full, rest = divmod(rc, k)
    if full + (rest > 0) > n:
        raise DomainError(f"rank {rc} too large")
    C = (k,) * full + ((rest,) if rest else ()) + (0,) * (n - full - (rest > 0))
    return w, B, C


def _below_at(d, r: int) -> int:
    if r < 0 or r > sum(d):
        return 0
    return box_poly(tuple(sorted(d)))[r]


def delta_sums_sec5(n: int, k: int, j: int) -> dict:
    """Exact shadow sums of B and C inside the window and the sign of the
    comp change when B is swapped for C."""
    w, B, C = build_family_sec5(n, k, j)
    rb, rc = sum(B), sum(C)
    dB = sum(_below_at(B, rb - l) for l in range(1, j) if rb - l in w)
    dC = sum(_below_at(C, rc - l) for l in range(1, j + 1) if rc - l in w)
    rel = compare(B, C)
    b_in_c = rel == Relation.LESS
    diff = dC - int(b_in_c) - dB
    zeros = C.count(0)
    return {
        "n": n, "k": k, "j": j,
        "window": [w.lo, w.hi],
        "B": list(B), "C": list(C),
        "deltaB": dB, "deltaC": dC,
        "B_below_C": b_in_c,
        "incomparable": rel == Relation.INCOMPARABLE,
        "comp_diff": diff,
        "comp_diff_sign": (diff > 0) - (diff < 0),
        "C_zeros": zeros,
        "C_zeros_ok": 2 * zeros >= n - j,
        "binom_bound": comb(n, j - 1),
    }


def delta_sums_enumerated(n: int, k: int, j: int) -> tuple[int, int, int]:
    """(deltaB, deltaC, comp(F') - comp(F)) by materializing the window."""
    w, B, C = build_family_sec5(n, k, j)
    p = ChainProduct(n, k)
    g = window_grid(p, w)

    def shadow(d):
        sub = tuple(slice(0, v + 1) for v in d)
        return int(g[sub].sum()) - int(g[tuple(d)])

    before = comp_count_grid(g)
    g2 = g.copy()
    g2[B] = False
    g2[C] = True
    after = comp_count_grid(g2)
    return shadow(B), shadow(C), after - before


def sec5_j(n: int, k: int) -> int:
    """2 * ceil(log2 n), bumped by one when nk + j is odd."""
    j = 2 * (n - 1).bit_length()
    if (n * k + j) % 2:
        j += 1
    return j


def sec5_checks(ns=(20, 50, 100), ks=(2, 3, 4)) -> list[Check]:
    out = []
    for n in ns:
        for k in ks:
            j = sec5_j(n, k)
            r = delta_sums_sec5(n, k, j)
            par = {"n": n, "k": k, "j": j}
            out.append(check("sec5.deltaB_gt_binom", par, f"> {r['binom_bound']}", r["deltaB"],
                             r["deltaB"] > r["binom_bound"]))
            out.append(check("sec5.C_zeros", par, f">= {(n - j) / 2}", r["C_zeros"], r["C_zeros_ok"]))
            out.append(info("sec5.comp_diff_sign", par, -1, r["comp_diff_sign"]))
    return out
