"""PASS/FAIL/WARN run reports tying the modules together.

Every check is a thin composition of module operations; nothing here
decides anything about coverings on its own.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from time import perf_counter
from typing import Any, Callable

from . import __version__
from .belyi import catalog_by_id, check_composition_claim, load_catalog, verify_catalog
from .charcount import CharacterCache, frobenius_count
from .fixtures import TableRow, format_type, load_nonexist, load_tables
from .lemmas import nonexistence_search, replay
from .monodromy import TripleCount, count_triples, dessin
from .patterns import enumerate_patterns, enumerate_rows, forms_match

PASS, FAIL, WARN = "PASS", "FAIL", "WARN"
PROFILES = ("quick", "full")


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""
    seconds: float = 0.0
    data: dict[str, Any] = field(default_factory=dict, compare=False)

    def as_dict(self, timings: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        if self.data:
            out["data"] = self.data
        return out


@dataclass
class RunReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool | str, detail: str = "", seconds: float = 0.0, **data: Any) -> Check:
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        check = Check(name, status, detail, seconds, data)
        self.checks.append(check)
        return check

    def extend(self, other: RunReport) -> None:
        self.checks.extend(other.checks)

    def counts(self) -> dict[str, int]:
        c = Counter(ch.status for ch in self.checks)
        return {s: c.get(s, 0) for s in (PASS, FAIL, WARN)}

    @property
    def ok(self) -> bool:
        return self.counts()[FAIL] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def as_dict(self, timings: bool = True) -> dict[str, Any]:
        return {"title": self.title, "version": __version__, "counts": self.counts(),
                "checks": [c.as_dict(timings) for c in self.checks]}

    def format_text(self, timings: bool = True) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [f"== {self.title}"]
        for c in self.checks:
            tail = f"  ({c.seconds:.2f} s)" if timings and c.seconds >= 0.005 else ""
            lines.append(f"{c.status}  {c.name:<{width}}  {c.detail}{tail}".rstrip())
        n = self.counts()
        lines.append(f"-- {n[PASS]} passed, {n[FAIL]} failed, {n[WARN]} warnings")
        return "\n".join(lines)


def _timed(fn: Callable[[], Any]) -> tuple[Any, float]:
    t0 = perf_counter()
    value = fn()
    return value, perf_counter() - t0


def _orbit_counts(rows: list[TableRow], threads: int = 1) -> dict[tuple, TripleCount]:
    out: dict[tuple, TripleCount] = {}
    for row in rows:
        if row.triple not in out:
            out[row.triple] = count_triples(row.pattern.partitions, threads=threads)
    return out


# --------------------------------------------------------------- tables

def reproduce_tables(threads: int = 1, report: RunReport | None = None) -> RunReport:
    """Regenerate the pattern rows and diff them against the fixture."""
    report = report if report is not None else RunReport("tables")
    fixture = load_tables()
    regenerated, secs = _timed(enumerate_rows)
    by_key = {r.key: r for r in fixture}
    seen = {(g.ks, g.pattern) for g in regenerated}
    extra = [f"{format_type(g.ks)} {g.pattern}" for g in regenerated if (g.ks, g.pattern) not in by_key]
    missing = [f"{format_type(r.ks)} {r.pattern}" for r in fixture if r.key not in seen]
    differing = [f"{format_type(g.ks)} {g.pattern}: {','.join(map(str, g.exponents))}"
                 for g in regenerated if (g.ks, g.pattern) in by_key
                 and not forms_match(g.exponents, by_key[(g.ks, g.pattern)].exponents)]
    report.add("pattern rows", not (extra or missing or differing) and len(regenerated) == len(fixture),
               f"{len(regenerated)} regenerated, {len(fixture)} in fixture", secs,
               extra=extra, missing=missing, exponents_differ=differing)
    for r in fixture:
        if r.printed:
            report.add(f"printed row {r.covering}", WARN,
                       f"printed as {r.printed.replace('/', ' with ')}; stored as {r.pattern} "
                       f"with {','.join(map(str, r.exponents))}")

    ids = sum(r.realizable for r in fixture)
    report.add("rows with a covering", ids == 61, f"{ids} of {len(fixture)}")
    comp = sum(r.composite for r in fixture)
    report.add("composite rows", comp == 28, f"{comp} of {ids}")

    catalog = catalog_by_id()
    unknown = sorted({r.covering for r in fixture if r.realizable and r.covering not in catalog})
    crossed = [r.covering for r in fixture if r.covering in catalog
               and tuple(sorted(catalog[r.covering].pattern.partitions)) != r.triple]
    report.add("rows match the catalog", not unknown and not crossed,
               f"{len({r.covering for r in fixture if r.realizable})} covering ids referenced",
               unknown=unknown, pattern_differs=crossed)

    counts, secs = _timed(lambda: _orbit_counts(fixture, threads))
    wrong = []
    for r in fixture:
        expected = catalog[r.covering].conjugate_count if r.covering in catalog else 0
        got = counts[r.triple].orbit_count
        if got != expected:
            wrong.append(f"{r.covering} {r.pattern}: {got} orbits, expected {expected}")
    total = sum(c.orbit_count for c in counts.values())
    report.add("orbit counts", not wrong, f"{len(counts)} distinct triples, {total} coverings in all",
               secs, wrong=wrong)

    def search() -> list[str]:
        bad = []
        for r in fixture:
            v = nonexistence_search(r.ks, r.pattern)
            if v.nonexistent == r.realizable:
                bad.append(f"{r.covering} {r.pattern}: {v.status.value}")
        return bad
    bad, secs = _timed(search)
    report.add("non-existence per row", not bad, "N rows refuted, H rows undecided", secs, wrong=bad)
    return report


# --------------------------------------------------------------- individual checks

def check_patterns(report: RunReport) -> None:
    pats, secs = _timed(lambda: enumerate_patterns((2, 3), 12))
    report.add("type (2,3) degree 12 patterns", len(pats) == 15, f"{len(pats)} patterns", secs)


def check_catalog(report: RunReport) -> None:
    results, secs = _timed(verify_catalog)
    bad = [f"{r.id}: {r.detail}" for r in results if not r.ok]
    report.add("catalog verification", not bad and len(results) == 48,
               f"{len(results) - len(bad)}/{len(results)} maps verify", secs, failures=bad)
    comps, secs = _timed(lambda: [check_composition_claim(r) for r in load_catalog()])
    wrong = [c.id for c in comps if not c.agrees]
    unmatched = [f"{c.id}: {c.unmatched}" for c in comps if c.unmatched]
    report.add("composition flags", not wrong, f"{len(comps) - len(wrong)}/{len(comps)} agree with block systems",
               secs, disagree=wrong)
    if unmatched:
        report.add("composition factors", WARN, f"{len(unmatched)} claimed factorizations not seen",
                   unmatched=unmatched)


def check_cross_oracle(report: RunReport, max_degree: int | None = None, threads: int = 1,
                       cache: CharacterCache | None = None) -> None:
    rows = [r for r in load_tables() if max_degree is None or r.degree <= max_degree]

    def run() -> tuple[int, list[str]]:
        bad, n = [], 0
        for triple, c in _orbit_counts(rows, threads).items():
            n += 1
            f = frobenius_count(*triple, cache=cache)
            if f != c.raw_count:
                bad.append(f"{triple}: enumeration {c.raw_count}, characters {f}")
        return n, bad
    (n, bad), secs = _timed(run)
    scope = "all" if max_degree is None else f"degree <= {max_degree}"
    report.add("Frobenius vs enumeration", not bad, f"{n} triples ({scope})", secs, wrong=bad)


def check_nonexist_rows(report: RunReport) -> None:
    def run() -> list[str]:
        bad = []
        tables = load_tables()
        for row in load_nonexist():
            match = [r for r in tables if r.covering == row.id]
            if not match:
                bad.append(f"{row.id}: not in the pattern table")
                continue
            v = nonexistence_search(match[0].ks, match[0].pattern, exhaustive=True)
            if not v.nonexistent:
                bad.append(f"{row.id}: undecided")
            elif row.rule not in v.rules:
                bad.append(f"{row.id}: {row.rule} not among {sorted(v.rules)}")
            elif not all(replay(c, match[0].pattern) for c in v.chain):
                bad.append(f"{row.id}: a certificate does not replay")
        return bad
    bad, secs = _timed(run)
    report.add("non-existence certificates", not bad, f"{len(load_nonexist())} rows", secs, wrong=bad)


def check_dessins(report: RunReport, threads: int = 1) -> None:
    def run() -> tuple[int, list[str]]:
        bad, n = [], 0
        for triple, c in _orbit_counts(load_tables(), threads).items():
            for t in c.representatives:
                n += 1
                d = dessin(t)
                orders = sorted((d.black_orders, d.white_orders, d.face_orders))
                if d.genus != 0 or orders != sorted(triple):
                    bad.append(f"{triple}: genus {d.genus}, orders {orders}")
        return n, bad
    (n, bad), secs = _timed(run)
    report.add("dessins", not bad and n == 50, f"{n} representatives, genus 0", secs, wrong=bad)


def check_solver(report: RunReport, max_degree: int = 4) -> None:
    from .belyi import verify_covering
    from .solver import NoSolution, solve_belyi

    def run() -> tuple[int, list[str]]:
        bad, done = [], set()
        for r in load_tables():
            if r.degree > max_degree or r.triple in done:
                continue
            done.add(r.triple)
            expected = count_triples(r.pattern.partitions).orbit_count
            try:
                maps = solve_belyi(r.pattern)
            except NoSolution:
                maps = []
            for f in maps:
                verify_covering(f, r.pattern)
            if len(maps) != expected:
                bad.append(f"{r.pattern}: {len(maps)} solutions, {expected} orbits")
        return len(done), bad
    (n, bad), secs = _timed(run)
    report.add("solver", not bad, f"{n} patterns of degree <= {max_degree}", secs, wrong=bad)


def check_mp24(report: RunReport, threads: int = 1, cache: CharacterCache | None = None,
               mp: Any = None) -> None:
    """Checks on an MPReport; computed here unless one is passed in."""
    from .mp24 import mp_report

    secs = 0.0
    if mp is None:
        mp, secs = _timed(lambda: mp_report(cache, threads))
    t = mp.totals()
    recs = mp.records
    report.add("mp24 partitions", t["partitions"] == 199, f"{t['partitions']} partitions", secs)
    report.add("mp24 sigma zero", t["sigma_zero"] == 47, f"{t['sigma_zero']} with sigma 0")
    direct_listed = [r for r in recs if r.listed_status == "nonexistent-direct"]
    missed = [str(r.partition) for r in direct_listed if not r.direct]
    report.add("mp24 direct lists", not missed and len(direct_listed) == 48,
               f"{len(direct_listed) - len(missed)}/{len(direct_listed)} refuted", missed=missed)
    wrong = [str(r.partition) for r in recs if r.listed_status == "exists" and r.nonexistent]
    report.add("mp24 existing set", not wrong, f"{t['fixture_exists']} partitions, none refuted", wrong=wrong)
    disagree = [str(r.partition) for r in recs if (r.listed_status == "exists") != (r.transitive > 0)]
    report.add("mp24 transitive counts", not disagree,
               f"{t['transitive_zero']} partitions without a transitive triple", disagree=disagree)
    gauge_listed = [r for r in recs if r.listed_status == "nonexistent-gauge"]
    certified = sum(r.nonexistent for r in gauge_listed)
    literal = sum(bool(r.gauge_literal) for r in gauge_listed)
    literal_exists = sum(bool(r.gauge_literal) and not r.direct for r in recs if r.listed_status == "exists")
    status = PASS if certified == len(gauge_listed) else WARN
    report.add("mp24 gauge lists", status,
               f"{certified}/{len(gauge_listed)} certified; the parity-only reading covers {literal} "
               f"but also rejects {literal_exists} existing partitions",
               warnings=list(mp.warnings), totals=t)


# --------------------------------------------------------------- whole runs

def run_all(profile: str = "quick", threads: int = 1) -> RunReport:
    """quick: catalog, composition and small cross-oracles; full: everything."""
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {PROFILES}")
    report = RunReport(f"heun-atlas {profile} run")
    check_patterns(report)
    check_catalog(report)
    if profile == "quick":
        check_cross_oracle(report, max_degree=8, threads=threads)
        return report
    cache = CharacterCache()
    check_cross_oracle(report, threads=threads, cache=cache)
    reproduce_tables(threads, report)
    check_nonexist_rows(report)
    check_dessins(report, threads)
    check_solver(report)
    check_mp24(report, threads, cache)
    cache.save()
    return report
