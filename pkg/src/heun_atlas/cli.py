"""Command line interface: ``heun-atlas <command> [options]``.

Every command prints an aligned text summary by default.  ``--json [FILE]``
writes machine-readable output instead (to stdout when FILE is omitted).
The exit status is 0 exactly when the run produced no FAIL entry.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from time import perf_counter
from typing import Any, Sequence

from . import __version__
from .belyi import BelyiError, catalog_by_id, verify_catalog, verify_covering, verify_record
from .charcount import CharacterCache, CharacterError, connected_count, format_partition, frobenius_count, parse_partition
from .exactalg import format_coeffs
from .fixtures import format_type, parse_type
from .lemmas import nonexistence_search
from .monodromy import DegreeTooLarge, count_triples, dessin, emit_dot
from .patterns import PatternError, enumerate_patterns, enumerate_types, parse_pattern
from .reports import PASS, RunReport, check_mp24, reproduce_tables, run_all


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, text: str, payload: Any) -> None:
    if args.json is None:
        print(text)
        return
    body = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.json == "-":
        sys.stdout.write(body)
    else:
        with open(args.json, "w") as fh:
            fh.write(body)


def _finish(args: argparse.Namespace, report: RunReport) -> int:
    timings = not args.no_timings
    _emit(args, report.format_text(timings), report.as_dict(timings))
    return report.exit_code


def _pattern(text: str):
    try:
        return parse_pattern(text)
    except PatternError as exc:
        raise UsageError(str(exc)) from exc


# --------------------------------------------------------------- commands

def cmd_types(args: argparse.Namespace) -> int:
    report = RunReport("restriction types")
    for ks, dmax in enumerate_types():
        by_degree = {D: len(enumerate_patterns(ks, D)) for D in range(dmax, 1, -1)}
        counts = ", ".join(f"D={D}: {n}" for D, n in by_degree.items() if n)
        report.add(f"type {format_type(ks)}", PASS, f"max degree {dmax}; {counts}",
                   type=list(ks), max_degree=dmax, patterns={str(D): n for D, n in by_degree.items()})
    return _finish(args, report)


def cmd_patterns(args: argparse.Namespace) -> int:
    from .patterns import derive_heun_exponents, table_base

    ks = parse_type(args.type)
    try:
        pats = enumerate_patterns(ks, args.degree)
    except PatternError as exc:
        raise UsageError(str(exc)) from exc
    report = RunReport(f"patterns of type {format_type(ks)}, degree {args.degree}")
    for p in pats:
        forms, _ = derive_heun_exponents(table_base(ks, p), p)
        exps = ",".join(map(str, forms))
        report.add(str(p), PASS, exps, pattern=str(p), exponents=[str(f) for f in forms])
    return _finish(args, report)


def cmd_verify(args: argparse.Namespace) -> int:
    catalog = catalog_by_id()
    report = RunReport("covering verification")
    if args.all:
        results = verify_catalog(list(catalog.values()))
    else:
        if not args.id:
            raise UsageError("give --id Hn (repeatable) or --all")
        missing = [i for i in args.id if i not in catalog]
        if missing:
            raise UsageError(f"unknown covering id(s): {', '.join(missing)}")
        results = [verify_record(catalog[i]) for i in args.id]
    for r in results:
        rec = catalog[r.id]
        data: dict[str, Any] = {"id": r.id, "pattern": str(rec.pattern), "field": rec.moduli_field}
        if r.assignment:
            data["fibers"] = r.assignment.as_dict()
        report.add(r.id, r.ok, f"{rec.pattern} over {rec.moduli_field}: {r.detail}", **data)
    return _finish(args, report)


def cmd_solve(args: argparse.Namespace) -> int:
    from .solver import NoSolution, solve_belyi

    p = _pattern(args.pattern)
    report = RunReport(f"Belyi maps for {p}")
    try:
        maps = solve_belyi(p)
    except DegreeTooLarge as exc:
        raise UsageError(str(exc)) from exc
    except NoSolution:
        maps = []
    expected = count_triples(p.partitions, threads=args.threads).orbit_count
    for k, f in enumerate(maps, 1):
        a = verify_covering(f, p)
        report.add(f"solution {k}", PASS, f"({f.num}) / ({f.den})",
                   numerator=format_coeffs(f.num), denominator=format_coeffs(f.den),
                   fibers=a.as_dict())
    report.add("solution count", len(maps) == expected, f"{len(maps)} found, {expected} expected")
    return _finish(args, report)


def cmd_count(args: argparse.Namespace) -> int:
    p = _pattern(args.pattern)
    try:
        c = count_triples(p.partitions, threads=args.threads)
    except DegreeTooLarge as exc:
        raise UsageError(str(exc)) from exc
    report = RunReport(f"permutation triples for {p}")
    report.add("raw count", PASS, str(c.raw_count), raw_count=c.raw_count)
    report.add("orbit count", PASS, str(c.orbit_count), orbit_count=c.orbit_count,
               representatives=[t.to_cycles() for t in c.representatives])
    if args.frobenius:
        f = frobenius_count(*p.partitions)
        report.add("Frobenius count", f == c.raw_count, str(f), frobenius_count=f)
    return _finish(args, report)


def cmd_dessin(args: argparse.Namespace) -> int:
    if args.id:
        catalog = catalog_by_id()
        if args.id not in catalog:
            raise UsageError(f"unknown covering id {args.id}")
        p, name = catalog[args.id].pattern, args.id
    elif args.pattern:
        p, name = _pattern(args.pattern), "dessin"
    else:
        raise UsageError("give --pattern or --id")
    reps = count_triples(p.partitions, threads=args.threads).representatives
    if not reps:
        print(f"no permutation triple realizes {p}", file=sys.stderr)
        return 1
    if not 0 <= args.index < len(reps):
        raise UsageError(f"--index must lie in 0..{len(reps) - 1}")
    d = dessin(reps[args.index])
    dot = emit_dot(d, name)
    if args.json is None:
        sys.stdout.write(dot)
        return 0
    report = RunReport(f"dessin for {p}")
    report.add("genus", d.genus == 0, str(d.genus), black=[list(c) for c in d.black],
               white=[list(c) for c in d.white], faces=[list(c) for c in d.faces], dot=dot)
    return _finish(args, report)


def cmd_nonexist(args: argparse.Namespace) -> int:
    ks = parse_type(args.type)
    p = _pattern(args.pattern)
    v = nonexistence_search(ks, p, exhaustive=args.exhaustive)
    lines = [f"{p}: {v.status.value}"]
    for c in v.chain:
        prof = c.profile.as_dict()
        lines.append(f"  {c.rule:<20} at {c.specialization or '-'}; differences "
                     f"{', '.join(prof['relevant'] + [str(m) for m in prof['apparent']])}")
    _emit(args, "\n".join(lines), v.as_dict())
    return 0


def cmd_sigma(args: argparse.Namespace) -> int:
    try:
        parts = [parse_partition(t) for t in args.partitions]
        cache = CharacterCache()
        sigma = frobenius_count(*parts, cache=cache)
        report = RunReport("Frobenius count " + " = ".join(map(format_partition, parts)))
        report.add("all triples", PASS, str(sigma), sigma_raw=sigma)
        if args.connected:
            n = connected_count(*parts, cache=cache)
            report.add("transitive triples", PASS, str(n), transitive=n)
        cache.save()
    except CharacterError as exc:
        raise UsageError(str(exc)) from exc
    return _finish(args, report)


def cmd_mp24(args: argparse.Namespace) -> int:
    from .mp24 import mp_report

    cache = CharacterCache()
    t0 = perf_counter()
    mp = mp_report(cache, args.threads)
    cache.save()
    report = RunReport("degree-24 branch data")
    check_mp24(report, mp=mp)
    report.checks[0] = replace(report.checks[0], seconds=perf_counter() - t0)
    timings = not args.no_timings
    if args.json is None:
        lines = [report.format_text(timings)]
        if args.verbose:
            lines.append("")
            for r in mp.records:
                lines.append(f"{format_partition(r.partition):<18} sigma={r.sigma_raw:<10} "
                             f"transitive={r.transitive:<10} {r.listed_status:<19} {r.route}")
        lines.extend(f"WARN  {w}" for w in mp.warnings)
        print("\n".join(lines))
    else:
        payload = mp.as_dict()
        payload["checks"] = [c.as_dict(timings) for c in report.checks]
        _emit(args, "", payload)
    return report.exit_code


def cmd_tables(args: argparse.Namespace) -> int:
    return _finish(args, reproduce_tables(args.threads))


def cmd_all(args: argparse.Namespace) -> int:
    return _finish(args, run_all(args.profile, args.threads))


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", nargs="?", const="-", metavar="FILE",
                        help="write JSON (to FILE, or stdout when omitted)")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker threads (default 1)")
    common.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")

    parser = argparse.ArgumentParser(
        prog="heun-atlas",
        description="Belyi coverings behind hypergeometric-to-Heun pull-backs. "
                    "The character cache lives in $HEUN_ATLAS_CACHE (default ~/.cache/heun-atlas).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
        return p

    add("types", cmd_types, "list restriction types and pattern counts per degree")
    p = add("patterns", cmd_patterns, "enumerate branching patterns of one type and degree")
    p.add_argument("--type", required=True, help='restricted denominators, e.g. "2,3" ("-" for none)')
    p.add_argument("--degree", type=int, required=True)
    p = add("verify", cmd_verify, "verify catalog coverings exactly")
    p.add_argument("--id", action="append", help="covering id such as H21 (repeatable)")
    p.add_argument("--all", action="store_true", help="verify the whole catalog")
    p = add("solve", cmd_solve, "compute all Belyi maps for a pattern of degree <= 6")
    p.add_argument("--pattern", required=True, help='e.g. "[2]+1+1=[4]=3+1"')
    p = add("count", cmd_count, "count permutation triples for a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--frobenius", action="store_true", help="cross-check with the character formula")
    p = add("dessin", cmd_dessin, "emit the dessin of a pattern as Graphviz DOT")
    p.add_argument("--pattern")
    p.add_argument("--id", help="use the pattern of a catalog covering")
    p.add_argument("--index", type=int, default=0, help="which orbit representative (default 0)")
    p = add("nonexist", cmd_nonexist, "search for a non-existence certificate")
    p.add_argument("--type", required=True, help='restricted denominators, e.g. "2,3"')
    p.add_argument("--pattern", required=True)
    p.add_argument("--exhaustive", action="store_true", help="collect every certificate")
    p = add("sigma", cmd_sigma, "Frobenius count of triples with three cycle types")
    p.add_argument("partitions", nargs=3, metavar="PARTITION", help='e.g. "2^12" "3^8" "10+6+4+2+1+1"')
    p.add_argument("--connected", action="store_true", help="also count transitive triples")
    p = add("mp24", cmd_mp24, "classify the 199 degree-24 branch data 2^12 = 3^8 = P")
    p.add_argument("-v", "--verbose", action="store_true", help="list every partition")
    add("tables", cmd_tables, "regenerate the pattern tables and diff them against the fixture")
    p = add("all", cmd_all, "run the reproduction checks")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except (UsageError, BelyiError) as exc:
        print(f"heun-atlas {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
