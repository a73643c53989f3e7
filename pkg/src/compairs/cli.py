"""Command-line entry point: ``compairs <subcommand> ...``.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import compression, constructions, search, suites
from .errors import CapacityError, DomainError, UnsupportedError
from .family import (build_centered, comp_count, comp_report, dump_family, family_to_json,
                     is_canonical_centered, is_centered, load_family)
from .poset import ChainProduct
from .report import Report, check, emit, info
from .subspace import SubspaceLattice

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

log = logging.getLogger("compairs")


class UsageError(Exception):
    pass


def parse_poset(text: str):
    """``chain:N,K`` or ``subspace:Q,N``."""
    try:
        kind, args = text.split(":", 1)
        a, b = (int(v) for v in args.split(","))
    except ValueError:
        raise UsageError(f"bad poset {text!r}; use chain:N,K or subspace:Q,N") from None
    if kind == "chain":
        return ChainProduct(a, b)
    if kind == "subspace":
        return SubspaceLattice(a, b)
    raise UsageError(f"unknown poset kind {kind!r}")


def parse_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use A..B") from None


def _config(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(args, report: Report) -> int:
    report.config = _config(args)
    report.stamp(args.deterministic)
    _write(args, emit(report, args.format))
    log.info("checks: %s", report.counts())
    return EXIT_OK if report.ok else EXIT_FAIL


# -- subcommands ----------------------------------------------------------


def cmd_verify(args) -> int:
    params = {"seed": args.seed, "workers": args.workers}
    for key in ("n", "k", "cases"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    unknown = [s for s in args.suites if s not in suites.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; known: {sorted(suites.SUITES)}")
    rep = Report()
    for name in args.suites:
        log.info("running suite %s", name)
        rep.extend(suites.SUITES[name](params))
    return _finish(args, rep)


def cmd_search(args) -> int:
    if args.mode == "exhaustive":
        P = parse_poset(args.poset)
        ms = None if args.all_m or args.m is None else list(parse_range(args.m))
        reps = search.exhaustive_reports(P, ms, args.workers)
        out = [dict(r.to_dict(), poset=P.describe()) for r in reps]
    else:
        P = ChainProduct(args.n, args.k)
        ms = parse_range(args.m_range) if args.m_range else range(P.size() + 1)
        out = []
        for res in search.scan_counterexample(P, ms, args.budget, args.seed, args.restarts):
            out.append({
                "M": res.M,
                "found_comp": res.found_comp,
                "centered_min": res.centered_min,
                "beats_centered": res.beats_centered,
                "family": res.found.encoded() if res.beats_centered else None,
            })
    _write(args, json.dumps(out, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_construct(args) -> int:
    rep = Report()
    if args.which == "sec3":
        if args.n is None:
            raise UsageError("construct sec3 needs --n")
        r = constructions.compare_sec3(args.n)
        rep.extend(constructions.sec3_checks([args.n]))
        rep.checks.append(info("sec3.details", {"n": args.n}, None, r))
    else:
        if None in (args.n, args.k, args.j):
            raise UsageError("construct sec5 needs --n, --k and --j")
        r = constructions.delta_sums_sec5(args.n, args.k, args.j)
        par = {"n": args.n, "k": args.k, "j": args.j}
        rep.checks.append(check("sec5.deltaB_gt_binom", par, f"> {r['binom_bound']}", r["deltaB"],
                                r["deltaB"] > r["binom_bound"]))
        rep.checks.append(check("sec5.C_zeros", par, f">= {(args.n - args.j) / 2}", r["C_zeros"],
                                r["C_zeros_ok"]))
        rep.checks.append(info("sec5.details", par, None, r))
    return _finish(args, rep)


def cmd_scd(args) -> int:
    p = ChainProduct(args.n, args.k)
    s = constructions.build_scd(p)
    rep = Report()
    if args.verify:
        rep.extend(constructions.verify_scd(s))
    rep.checks.append(info("scd.chains", {"n": args.n, "k": args.k}, None,
                           [[p.encode(x) for x in ch] for ch in s.chains] if args.show else len(s)))
    return _finish(args, rep)


def _read_family(path: str):
    with open(path) as fh:
        return load_family(fh.read())


def cmd_compress(args) -> int:
    f = _read_family(args.family)
    trace = []
    if args.kind == "mid":
        f2 = compression.mid_compress(f, property_q=args.property_q, trace=trace)
    elif args.kind == "pi":
        if args.pi is None or args.low_rank is None:
            raise UsageError("pi-compression needs --pi and --low-rank")
        pi = [int(v) for v in args.pi.split(",")]
        f2 = compression.pi_compress(f, pi, args.low_rank)
    else:
        kinds = {"top": ("top",), "bottom": ("bottom",), "topbottom": ("top", "bottom"),
                 "three": ("top", "bottom", "three")}[args.kind]
        f2, trace = compression.compress_fixpoint(f, kinds)
    if args.trace:
        for i, r in enumerate(trace, 1):
            sys.stderr.write(json.dumps(r.trace_record(i), sort_keys=True) + "\n")
    _write(args, dump_family(f2) + "\n")
    return EXIT_OK


def cmd_comp(args) -> int:
    f = _read_family(args.family)
    total = comp_count(f, args.backend)
    out = {"size": len(f), "comp": total, "centered": is_centered(f),
           "canonical_centered": is_canonical_centered(f)}
    if args.degrees:
        rep = comp_report(f)
        out["degrees"] = {f.poset.encode(x): d for x, d in sorted(rep.per_element_degree.items(),
                                                                   key=lambda t: f.poset.encode(t[0]))}
    _write(args, json.dumps(out, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_centered(args) -> int:
    P = parse_poset(args.poset)
    if args.exact:
        value, f = search.centered_min_comp(P, args.m)
    else:
        f = build_centered(P, args.m, args.fill)
        value = comp_count(f)
    d = family_to_json(f)
    d["comp"] = value
    _write(args, json.dumps(d, sort_keys=True) + "\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--deterministic", action="store_true",
                        help="omit the timestamp so reruns are byte-identical")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-v", "--verbose", action="count", default=0)

    ap = argparse.ArgumentParser(prog="compairs", parents=[common],
                                 description="Comparable-pair minimization toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run named verification suites")
    v.add_argument("suites", nargs="+", metavar="SUITE",
                   help="one or more of: " + ", ".join(suites.SUITES))
    v.add_argument("--n", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--cases", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="exhaustive or annealing search")
    s.add_argument("mode", choices=("exhaustive", "anneal"))
    s.add_argument("--poset", default="chain:3,1")
    s.add_argument("--m", help="size or A..B (exhaustive)")
    s.add_argument("--all-m", action="store_true")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--k", type=int, default=16)
    s.add_argument("--m-range")
    s.add_argument("--budget", type=int, default=100_000)
    s.add_argument("--restarts", type=int, default=1)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("construct", parents=[common], help="explicit constructions")
    c.add_argument("which", choices=("sec3", "sec5"))
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--j", type=int)
    c.set_defaults(func=cmd_construct)

    d = sub.add_parser("scd", parents=[common], help="symmetric chain decomposition")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--verify", action="store_true")
    d.add_argument("--show", action="store_true", help="list the chains")
    d.set_defaults(func=cmd_scd)

    m = sub.add_parser("compress", parents=[common], help="compress a family file")
    m.add_argument("family")
    m.add_argument("--kind", choices=("top", "bottom", "topbottom", "three", "pi", "mid"),
                   default="topbottom")
    m.add_argument("--trace", action="store_true", help="one JSON line per step on stderr")
    m.add_argument("--pi", help="involution as comma-separated 0-based images")
    m.add_argument("--low-rank", type=int)
    m.add_argument("--property-q", action="store_true",
                   help="assert the poset has Property (Q) (required for --kind mid)")
    m.set_defaults(func=cmd_compress)

    q = sub.add_parser("comp", parents=[common], help="count comparable pairs of a family file")
    q.add_argument("family")
    q.add_argument("--backend", choices=("auto", "pairwise", "transform", "index"), default="auto")
    q.add_argument("--degrees", action="store_true")
    q.set_defaults(func=cmd_comp)

    e = sub.add_parser("centered", parents=[common], help="build a centered family")
    e.add_argument("--poset", required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--fill", choices=("degree", "lex"), default="degree")
    e.add_argument("--exact", action="store_true", help="minimum over the whole centered class")
    e.set_defaults(func=cmd_centered)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"compairs: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"compairs: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, UnsupportedError) as e:
        print(f"compairs: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"compairs: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
