"""Explicit Belyi coverings: exact verification, the shipped catalog and
composition checks against block systems."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from pathlib import Path
from typing import Any

from .exactalg import Poly, RatFun, parse_poly, root_multiplicities
from .monodromy import block_systems, count_triples
from .patterns import BranchingPattern, Partition, hurwitz_defect, parse_pattern

FIELD_TAGS = {"Q": None, "Q(w)": -3, "Q(i)": -1}
TARGETS = ("0", "1", "inf")


class BelyiError(ValueError):
    pass


class DegreeMismatch(BelyiError):
    pass


class FiberMismatch(BelyiError):
    def __init__(self, message: str, measured: tuple[Partition, Partition, Partition]):
        super().__init__(message)
        self.measured = measured


class NotBelyi(BelyiError):
    pass


class CatalogError(ValueError):
    pass


def field_tag(d: int | None) -> str:
    return {None: "Q", -3: "Q(w)", -1: "Q(i)"}.get(d, f"Q(sqrt({d}))")


@dataclass(frozen=True)
class FiberAssignment:
    """Which pattern fiber sits over each of 0, 1 and infinity."""

    fiber_of: dict[str, int]
    measured: dict[str, Partition]

    def as_dict(self) -> dict[str, Any]:
        return {v: {"fiber": self.fiber_of[v], "partition": list(self.measured[v])} for v in TARGETS}


def measure_fibers(f: RatFun) -> dict[str, Partition]:
    """Ramification over 0, 1 and infinity, including the point x = infinity."""
    num, den = f.num, f.den
    dn = num.deg() if num else -1
    dd = den.deg()
    D = max(dn, dd)
    over: dict[str, list[int]] = {
        "0": list(root_multiplicities(num)) if num else [],
        "inf": list(root_multiplicities(den)) if dd > 0 else [],
    }
    shifted = num - den
    over["1"] = list(root_multiplicities(shifted)) if shifted and shifted.deg() > 0 else []
    if dn < dd:
        over["0"].append(dd - dn)
    elif dn > dd:
        over["inf"].append(dn - dd)
    elif num.lc == den.lc:  # x = infinity lands on 1
        over["1"].append(D - shifted.deg())
    return {v: tuple(sorted(over[v], reverse=True)) for v in TARGETS}


def verify_covering(f: RatFun, pattern: BranchingPattern) -> FiberAssignment:
    """Check that f realizes the pattern; marks are ignored."""
    if f.degree != pattern.degree:
        raise DegreeMismatch(f"map has degree {f.degree}, pattern has degree {pattern.degree}")
    measured = measure_fibers(f)
    wanted = [fib.parts for fib in pattern.fibers]
    for perm in permutations(range(3)):
        if all(measured[v] == wanted[i] for v, i in zip(TARGETS, perm)):
            assignment = FiberAssignment(dict(zip(TARGETS, perm)), measured)
            break
    else:
        shown = "=".join("+".join(map(str, measured[v])) or "-" for v in TARGETS)
        raise FiberMismatch(f"measured fibers {shown} do not match {pattern.stripped()}",
                            tuple(measured[v] for v in TARGETS))  # type: ignore[arg-type]
    defect = hurwitz_defect(BranchingPattern.of(*(measured[v] for v in TARGETS)))
    if defect:
        raise NotBelyi(f"ramification over 0, 1, infinity falls short by {defect}")
    return assignment


# --------------------------------------------------------------- catalog

@dataclass(frozen=True)
class CoveringRecord:
    id: str
    degree: int
    pattern: BranchingPattern
    map: RatFun
    field: int | None
    metadata: dict[str, Any] = field(default_factory=dict, hash=False, compare=False)

    @property
    def number(self) -> int:
        return int(self.id[1:])

    @property
    def composition(self) -> str:
        return self.metadata.get("composition", "indecomposable")

    @property
    def composite(self) -> bool:
        return bool(self.metadata.get("composite", self.composition != "indecomposable"))

    @property
    def conjugate_count(self) -> int:
        return int(self.metadata.get("conjugate_count", 1))

    @property
    def moduli_field(self) -> str:
        return field_tag(self.field)


def _parse_record(line: str, lineno: int) -> CoveringRecord:
    cols = [c.strip() for c in line.split(" | ")]
    if len(cols) != 7:
        raise CatalogError(f"line {lineno}: expected 7 columns, found {len(cols)}")
    ident, deg, pat, tag, num, den, meta = cols
    try:
        if not re.fullmatch(r"H\d+", ident):
            raise ValueError(f"bad id {ident!r}")
        if tag not in FIELD_TAGS:
            raise ValueError(f"unknown field {tag!r}")
        d = FIELD_TAGS[tag]
        f = RatFun(parse_poly(num, d), parse_poly(den, d))
        rec = CoveringRecord(ident, int(deg), parse_pattern(pat), f, d, json.loads(meta))
    except (ValueError, ZeroDivisionError) as exc:
        raise CatalogError(f"line {lineno} ({ident}): {exc}") from exc
    if rec.pattern.degree != rec.degree:
        raise CatalogError(f"line {lineno} ({ident}): pattern degree differs from column")
    return rec


def default_catalog_path() -> Path:
    return Path(str(resources.files("heun_atlas") / "data" / "catalog.txt"))


def load_catalog(path: str | Path | None = None) -> list[CoveringRecord]:
    path = Path(path) if path else default_catalog_path()
    records = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if line.strip() and not line.startswith("#"):
            records.append(_parse_record(line, lineno))
    return records


def catalog_by_id(path: str | Path | None = None) -> dict[str, CoveringRecord]:
    return {r.id: r for r in load_catalog(path)}


@dataclass(frozen=True)
class VerifyResult:
    id: str
    ok: bool
    detail: str
    assignment: FiberAssignment | None = None


def verify_record(rec: CoveringRecord) -> VerifyResult:
    try:
        a = verify_covering(rec.map, rec.pattern)
    except BelyiError as exc:
        return VerifyResult(rec.id, False, str(exc))
    return VerifyResult(rec.id, True, "ok", a)


def verify_catalog(records: list[CoveringRecord] | None = None) -> list[VerifyResult]:
    return [verify_record(r) for r in (records if records is not None else load_catalog())]


# --------------------------------------------------------------- composition

def composition_factors(text: str) -> list[tuple[int, ...]]:
    """``"4*3;3*2x2"`` -> [(3, 4), (2, 2, 3)]; indecomposable -> []."""
    if text in ("indecomposable", "-", ""):
        return []
    out = []
    for alt in text.split(";"):
        out.append(tuple(sorted(int(f) for f in re.split(r"[*x]", alt))))
    return out


@dataclass(frozen=True)
class CompositionReport:
    id: str
    claimed_composite: bool
    decomposable: bool
    chains: tuple[tuple[int, ...], ...]
    unmatched: tuple[tuple[int, ...], ...]

    @property
    def agrees(self) -> bool:
        return self.claimed_composite == self.decomposable


def check_composition_claim(rec: CoveringRecord) -> CompositionReport:
    """Compare the composition string with block systems of a monodromy triple."""
    counted = count_triples(rec.pattern.partitions)
    if not counted.representatives:
        raise BelyiError(f"{rec.id}: no permutation triple realizes {rec.pattern}")
    blocks = block_systems(counted.representatives[0])
    achievable = blocks.factor_multisets()
    claimed = composition_factors(rec.composition)
    unmatched = tuple(c for c in claimed if c not in achievable)
    return CompositionReport(rec.id, rec.composite, blocks.decomposable, blocks.chains, unmatched)


def solve_belyi(pattern: BranchingPattern, **kwargs: Any) -> list[RatFun]:
    """Low-degree solver; see :mod:`heun_atlas.solver`."""
    from .solver import solve_belyi as _solve

    return _solve(pattern, **kwargs)


__all__ = [
    "BelyiError", "CatalogError", "CompositionReport", "CoveringRecord", "DegreeMismatch",
    "FiberAssignment", "FiberMismatch", "NotBelyi", "Poly", "VerifyResult", "check_composition_claim",
    "composition_factors", "load_catalog", "measure_fibers", "solve_belyi", "verify_catalog",
    "verify_covering",
]
