"""Degree-24 branch data [2]^12 = [3]^8 = P with six parts in P.

Each candidate gets its connected-or-not triple count from characters, the
exact number of transitive triples, and a verdict from the lemma engine,
where the source equation is E(1/2, 1/3, 1/k) with 1/k over the fiber P.
The outcome is compared with the shipped fixture of partition groups.

The parity-only reading of the gauge test (``gauge_contiguity_test`` without
``strict``) is recorded separately as ``gauge_literal``; it never decides.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from importlib import resources
from pathlib import Path

from .charcount import CharacterCache, connected_count, format_partition, frobenius_count
from .lemmas import (Certificate, Status, admissible_base, build_profile,
                     gauge_contiguity_test, lemma_finite_pullback, lemma_isogeny, lemma_logpoint)
from .patterns import BranchingPattern, Partition, parse_fiber, partitions_with_length

DEGREE = 24
PARTS = 6
MAX_K = 6
FIBER_2 = (2,) * 12
FIBER_3 = (3,) * 8
STATUSES = ("exists", "nonexistent-direct", "nonexistent-gauge", "nonexistent-other", "open")


def enumerate_mp_partitions() -> list[Partition]:
    return list(partitions_with_length(DEGREE, PARTS))


def mp_pattern(P: Partition) -> BranchingPattern:
    return BranchingPattern.of(FIBER_2, FIBER_3, P)


@dataclass(frozen=True)
class FixtureGroup:
    name: str
    status: str
    sigma: str
    partitions: tuple[Partition, ...]
    marks: tuple[tuple[int, ...], ...]


def default_fixture_path() -> Path:
    return Path(str(resources.files("heun_atlas") / "data" / "mp24.txt"))


def load_fixture(path: str | Path | None = None) -> list[FixtureGroup]:
    groups = []
    for line in Path(path or default_fixture_path()).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, status, sigma, items = (c.strip() for c in line.split("|"))
        if status not in STATUSES:
            raise ValueError(f"unknown status {status!r} in group {name}")
        fibers = [parse_fiber(t) for t in items.split(",")]
        groups.append(FixtureGroup(name, status, sigma, tuple(f.parts for f in fibers),
                                   tuple(tuple(sorted(set(f.marked))) for f in fibers)))
    return groups


def fixture_status(groups: list[FixtureGroup] | None = None) -> dict[Partition, tuple[str, str]]:
    """partition -> (status, group); unlisted partitions exist."""
    groups = groups if groups is not None else load_fixture()
    out = {P: ("exists", "exists") for P in enumerate_mp_partitions()}
    for g in groups:
        for P in g.partitions:
            if P not in out:
                raise ValueError(f"{format_partition(P)} is not a six-part partition of 24")
            if out[P][0] != "exists":
                raise ValueError(f"{format_partition(P)} is listed twice")
            out[P] = (g.status, g.name)
    return out


@dataclass(frozen=True)
class MPRecord:
    partition: Partition
    sigma_raw: int
    direct: tuple[Certificate, ...]
    gauge: tuple[Certificate, ...]
    listed_status: str
    group: str = ""
    transitive: int = -1
    gauge_literal: tuple[Certificate, ...] = ()

    @property
    def nonexistent(self) -> bool:
        return bool(self.direct or self.gauge)

    @property
    def coverings(self) -> Fraction:
        """Coverings weighted by 1/|Aut|: transitive triples over 24!."""
        return Fraction(self.transitive, factorial(DEGREE))

    @property
    def route(self) -> str:
        if self.direct:
            return "direct"
        if self.gauge:
            return "gauge"
        return "none"

    def as_dict(self) -> dict:
        return {
            "partition": list(self.partition),
            "sigma_raw": self.sigma_raw,
            "listed_status": self.listed_status,
            "group": self.group,
            "transitive": self.transitive,
            "coverings": str(self.coverings),
            "route": self.route,
            "certificates": [c.as_dict() for c in self.direct + self.gauge],
            "gauge_literal": [c.as_dict() for c in self.gauge_literal],
        }


def classify_mp(P: Partition, cache: CharacterCache | None = None,
                fixture: dict[Partition, tuple[str, str]] | None = None) -> MPRecord:
    P = tuple(sorted(P, reverse=True))
    pattern = mp_pattern(P)
    sigma = frobenius_count(FIBER_2, FIBER_3, P, cache)
    transitive = connected_count(FIBER_2, FIBER_3, P, cache) if sigma else 0
    direct: list[Certificate] = []
    gauge: list[Certificate] = []
    literal: list[Certificate] = []
    for k in range(1, MAX_K + 1):
        base = (Fraction(1, 2), Fraction(1, 3), Fraction(1, k))
        if not admissible_base(base):
            continue
        prof = build_profile(base, pattern)
        label = f"k={k}"
        for v in (lemma_logpoint(prof), lemma_finite_pullback(prof), lemma_isogeny(prof, DEGREE)):
            if v.nonexistent:
                c = v.chain[0]
                direct.append(Certificate(label, prof, c.rule, c.degree))
        if len(prof.relevant) == 3 and prof.apparent:
            cert = Certificate(label, prof, "gauge-parity", DEGREE)
            if gauge_contiguity_test(prof, strict=True).nonexistent:
                gauge.append(cert)
            if gauge_contiguity_test(prof).nonexistent:
                literal.append(cert)
    status, group = (fixture or {}).get(P, ("exists", "exists"))
    return MPRecord(P, sigma, tuple(direct), tuple(gauge), status, group,
                    transitive, tuple(literal))


@dataclass
class MPReport:
    records: list[MPRecord]
    warnings: list[str]

    def totals(self) -> dict[str, int]:
        recs = self.records
        return {
            "partitions": len(recs),
            "sigma_zero": sum(r.sigma_raw == 0 for r in recs),
            "transitive_zero": sum(r.transitive == 0 for r in recs),
            "direct": sum(bool(r.direct) for r in recs),
            "with_gauge": sum(r.nonexistent for r in recs),
            "gauge_literal": sum(bool(r.gauge_literal) and not r.direct for r in recs),
            "fixture_exists": sum(r.listed_status == "exists" for r in recs),
        }

    def as_dict(self) -> dict:
        return {"totals": self.totals(), "warnings": list(self.warnings),
                "records": [r.as_dict() for r in self.records]}


def mp_report(cache: CharacterCache | None = None, threads: int = 1) -> MPReport:
    """Classify all candidates and diff the verdicts against the fixture groups."""
    fixture = fixture_status()
    parts = enumerate_mp_partitions()
    own_cache = cache is None
    cache = cache if cache is not None else CharacterCache()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda P: classify_mp(P, cache, fixture), parts))
    else:
        records = [classify_mp(P, cache, fixture) for P in parts]
    if own_cache:
        cache.save()

    warnings = []
    for r in records:
        name = format_partition(r.partition)
        if r.listed_status == "exists" and r.nonexistent:
            warnings.append(f"{name}: listed as existing but the engine proves non-existence")
        if (r.listed_status == "exists") != (r.transitive > 0):
            warnings.append(f"{name}: listed as {r.listed_status} but there are {r.transitive} transitive triples")
        if r.gauge_literal and not r.direct and r.listed_status == "exists":
            warnings.append(f"{name}: the parity-only gauge reading rejects an existing covering")
        if r.listed_status == "nonexistent-direct" and not r.direct:
            warnings.append(f"{name}: listed in {r.group} but no direct certificate was found")
        if r.listed_status == "nonexistent-gauge" and not r.nonexistent:
            warnings.append(f"{name}: listed in {r.group} but no certificate was found")
        if r.group.endswith("-zero") and r.sigma_raw != 0 or r.group.endswith("-nonzero") and r.sigma_raw == 0:
            warnings.append(f"{name}: sigma {r.sigma_raw} disagrees with group {r.group}")
    return MPReport(records, warnings)


def status_of(rec: MPRecord) -> Status:
    return Status.NONEXISTENT if rec.nonexistent else Status.UNDECIDED
