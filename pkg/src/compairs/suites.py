"""Named verification suites.  Each suite maps a parameter dict to checks."""

from __future__ import annotations

import random
from typing import Callable

from . import claims, compression, constructions, search
from .errors import DomainError
from .family import Family, comp_count
from .poset import ChainProduct
from .report import Check, check, info
from .subspace import SubspaceLattice, check_property_q_subspace, check_rank_profile


def _centeredness(P, workers: int) -> list[Check]:
    rep = search.verify_centeredness_property(P, workers)
    out = []
    for r in rep.reports:
        par = {"poset": P.describe(), "M": r.M}
        out.append(check("centeredness", par, r.centered_min_comp, r.min_comp, r.centered_achieves))
        out.append(check("witness_comp", par, r.min_comp, comp_count(r.witness, "pairwise"),
                         search.witness_is_consistent(r)))
    return out


def kleitman_small(params: dict) -> list[Check]:
    ns = params.get("ns") or ([params["n"]] if params.get("n") else [1, 2, 3, 4])
    out = []
    for n in ns:
        out += _centeredness(ChainProduct(n, 1), params.get("workers", 1))
    return out


def subspace_small(params: dict) -> list[Check]:
    out = []
    for q, n in params.get("lattices") or [(2, 2), (3, 2), (2, 3)]:
        out += _centeredness(SubspaceLattice(q, n), params.get("workers", 1))
    return out


def property_q(params: dict) -> list[Check]:
    out = []
    for q in params.get("qs") or [2, 3, 5]:
        for n in range(1, params.get("max_n", 6) + 1):
            lat = SubspaceLattice(q, n)
            rep = check_property_q_subspace(lat)
            par = {"q": q, "n": n}
            out.append(check("property_q", par, 0, len(rep.violations), rep.holds))
            out.append(info("property_q.count", par, None, rep.summary()))
            prof = check_rank_profile(lat)
            out.append(check("rank_profile", par, True, prof.profile, prof.ok))
    return out


def scd(params: dict) -> list[Check]:
    if params.get("n") and params.get("k"):
        grid = [(params["n"], params["k"])]
    else:
        cap = params.get("cap", 3**7)
        grid = [(n, k) for k in range(1, 9) for n in range(1, 12) if (k + 1) ** n <= cap]
    out = []
    for n, k in grid:
        p = ChainProduct(n, k)
        out += constructions.verify_scd(constructions.build_scd(p))
        if (k + 1) ** n <= 3**5:
            out += constructions.verify_pigeonhole(p, trials=20, seed=params.get("seed", 0))
    return out


def shadows(params: dict) -> list[Check]:
    out = []
    for n in range(1, params.get("max_n", 4) + 1):
        for k in range(1, params.get("max_k", 4) + 1):
            out += claims.verify_shadowsn2(n, k)
    return out


def claims_sec2(params: dict) -> list[Check]:
    out = []
    for n in range(1, 6):
        out += claims.verify_claimfuncond(n)
    for n in range(2, params.get("max_n_3compress", 5) + 1):
        out += claims.verify_3compressclaim(n)
    for n in range(1, 11):
        out += claims.verify_averagethird(n)
    for n in range(2, 8):
        out += claims.verify_number_nbrs(n)
    return out


def sec3(params: dict) -> list[Check]:
    ns = [params["n"]] if params.get("n") else range(8, 13)
    return constructions.sec3_checks(ns)


def sec5(params: dict) -> list[Check]:
    ns = [params["n"]] if params.get("n") else (20, 50, 100)
    ks = [params["k"]] if params.get("k") else (2, 3, 4)
    return constructions.sec5_checks(ns, ks)


def lower_bounds(params: dict) -> list[Check]:
    out = []
    for n, k in params.get("posets") or [(2, 2), (3, 2), (2, 3)]:
        P = ChainProduct(n, k)
        for b in search.check_lower_bounds(P, params.get("workers", 1)):
            par = {"n": n, "k": k, "M": b.M}
            claim = f"lower_bound.{b.name}"
            if b.status == "info":
                out.append(info(claim, par, b.expected, b.actual))
            else:
                out.append(Check(claim, par, b.expected, b.actual, b.status))
    return out


# -- compression properties ---------------------------------------------


def random_family(P, rng: random.Random, centered_bias: bool = False) -> Family:
    elems = P.elements()
    if not centered_bias:
        return Family(P, frozenset(rng.sample(elems, rng.randint(0, len(elems)))))
    h = P.height
    spread = rng.uniform(0.5, 3.0)
    keep = [x for x in elems if rng.random() < 1.0 / (1.0 + abs(P.rank(x) - h / 2) / spread) ** 2]
    return Family(P, frozenset(keep))


def _step_ok(res) -> bool:
    return (len(res.removed) == len(res.added)
            and res.comp_after <= res.comp_before
            and res.potential_after < res.potential_before)


def _topbottom_case(rng: random.Random, ns) -> tuple[bool, bool, int]:
    P = ChainProduct(rng.choice(ns), 2)
    f = random_family(P, rng, rng.random() < 0.5)
    g, trace = compression.compress_fixpoint(f, ("top", "bottom"))
    steps = all(_step_ok(r) for r in trace) and len(g) == len(f)
    fix = compression.is_top_compressed(g) and compression.is_bottom_compressed(g)
    return steps, fix, len(trace)


def _three_case(rng: random.Random, ns) -> tuple[bool, bool, int]:
    P = ChainProduct(rng.choice(ns), 2)
    f = random_family(P, rng, True)
    g, _ = compression.compress_fixpoint(f, ("top", "bottom"))
    h, trace = compression.compress_fixpoint(g, ("top", "bottom", "three"))
    steps = all(_step_ok(r) for r in trace) and len(h) == len(f)
    fix = (compression.is_top_compressed(h) and compression.is_bottom_compressed(h)
           and not compression.three_violations(h))
    return steps, fix, sum(1 for r in trace if r.kind == "three")


def random_involution(n: int, rng: random.Random) -> list[int]:
    pi = list(range(n))
    order = list(range(n))
    rng.shuffle(order)
    swaps = rng.randint(0, n // 2)
    for t in range(swaps):
        a, b = order[2 * t], order[2 * t + 1]
        pi[a], pi[b] = b, a
    return pi


def _pi_case(rng: random.Random, n: int = 5) -> tuple[bool, bool, int]:
    P = ChainProduct(n, 2)
    low = n - 3
    elems = P.elements()
    inner = [x for x in elems if low < sum(x) < 2 * n - low]
    edge = [x for x in elems if sum(x) in (low, 2 * n - low)]
    f = Family(P, frozenset(inner + rng.sample(edge, rng.randint(0, len(edge)))))
    pi = random_involution(n, rng)
    g = compression.pi_compress(f, pi, low)
    ok = len(g) == len(f) and comp_count(g) <= comp_count(f)
    return ok, compression.pi_compress(g, pi, low) == g, int(g != f)


MID_POSETS = [SubspaceLattice(2, 3), SubspaceLattice(3, 2), SubspaceLattice(2, 4),
              ChainProduct(3, 1), ChainProduct(4, 1), ChainProduct(5, 1)]


def _mid_case(rng: random.Random) -> tuple[bool, bool, int]:
    P = rng.choice(MID_POSETS)
    f = random_family(P, rng, rng.random() < 0.5)
    trace = []
    g = compression.mid_compress(f, property_q=True, trace=trace)
    steps = all(_step_ok(r) for r in trace) and len(g) == len(f)
    return steps, compression.is_mid_compressed(g), len(trace)


def compression_props(params: dict) -> list[Check]:
    cases = params.get("cases", 1000)
    seed = params.get("seed", 0)
    ns = params.get("ns", (2, 3, 4, 5, 6))
    runs = {
        "top_bottom": lambda r: _topbottom_case(r, ns),
        "three": lambda r: _three_case(r, ns),
        "pi": _pi_case,
        "mid": _mid_case,
    }
    out = []
    for name, fn in runs.items():
        rng = random.Random(f"{seed}:{name}")
        step_bad = fix_bad = moved = 0
        for _ in range(cases):
            a, b, m = fn(rng)
            step_bad += not a
            fix_bad += not b
            moved += m
        par = {"cases": cases, "seed": seed}
        what = "idempotent" if name == "pi" else "fixpoint"
        out.append(check(f"compression.{name}.steps", par, 0, step_bad, step_bad == 0))
        out.append(check(f"compression.{name}.{what}", par, 0, fix_bad, fix_bad == 0))
        out.append(info(f"compression.{name}.nontrivial_steps", par, None, moved))
    return out


SUITES: dict[str, Callable[[dict], list[Check]]] = {
    "kleitman-small": kleitman_small,
    "subspace-small": subspace_small,
    "property-q": property_q,
    "scd": scd,
    "shadows": shadows,
    "claims-sec2": claims_sec2,
    "sec3": sec3,
    "sec5": sec5,
    "lower-bounds": lower_bounds,
    "compression-props": compression_props,
}


def run_verify_suite(names, params: dict | None = None) -> list[Check]:
    params = params or {}
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite(s): {', '.join(unknown)}")
    out = []
    for name in names:
        out += SUITES[name](params)
    return out
