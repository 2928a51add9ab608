"""Loaders for the shipped classification fixtures (pattern rows and
non-existence rows).  Both are plain ``|``-separated text files."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .patterns import BranchingPattern, ExponentForm, RestrictionType, parse_form, parse_pattern


class FixtureError(ValueError):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("heun_atlas") / "data" / name))


def _rows(path: Path, width: int):
    if not path.exists():
        raise FixtureError(f"fixture file {path} is missing")
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = [c.strip() for c in line.split(" | ")]
        if len(cols) != width:
            raise FixtureError(f"{path.name}:{lineno}: expected {width} columns, found {len(cols)}")
        yield lineno, cols


def parse_type(text: str) -> RestrictionType:
    return () if text == "-" else tuple(sorted(int(k) for k in text.split(",")))


def format_type(ks: RestrictionType) -> str:
    return ",".join(map(str, ks)) or "-"


@dataclass(frozen=True)
class TableRow:
    group: str
    ks: RestrictionType
    degree: int
    pattern: BranchingPattern
    exponents: tuple[ExponentForm, ...]
    covering: str
    composition: str
    note: str = "-"

    @property
    def realizable(self) -> bool:
        return self.covering.startswith("H")

    @property
    def composite(self) -> bool:
        return self.realizable and self.composition not in ("indecomposable", "-")

    @property
    def printed(self) -> str | None:
        """The printed pattern/exponents when the stored row was corrected."""
        return self.note[len("printed="):] if self.note.startswith("printed=") else None

    @property
    def key(self) -> tuple[RestrictionType, BranchingPattern]:
        return (self.ks, self.pattern)

    @property
    def triple(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.pattern.partitions))


def load_tables(path: str | Path | None = None) -> list[TableRow]:
    out = []
    for lineno, (group, ty, deg, pat, heun, cov, comp, note) in _rows(Path(path or data_path("tables.txt")), 8):
        try:
            row = TableRow(group, parse_type(ty), int(deg), parse_pattern(pat),
                           tuple(parse_form(f) for f in heun.split(",")), cov, comp, note)
        except ValueError as exc:
            raise FixtureError(f"tables.txt:{lineno}: {exc}") from exc
        if row.pattern.degree != row.degree:
            raise FixtureError(f"tables.txt:{lineno}: degree column disagrees with the pattern")
        out.append(row)
    return out


@dataclass(frozen=True)
class NonexistRow:
    id: str
    degree: int
    pattern: BranchingPattern
    rule: str
    base: tuple[Fraction, ...]
    pulled_back: tuple[Fraction, ...]


def load_nonexist(path: str | Path | None = None) -> list[NonexistRow]:
    out = []
    for lineno, (ident, deg, pat, rule, base, pulled) in _rows(Path(path or data_path("nonexist.txt")), 6):
        try:
            out.append(NonexistRow(ident, int(deg), parse_pattern(pat), rule,
                                   tuple(Fraction(x) for x in base.split(",")),
                                   tuple(Fraction(x) for x in pulled.split(","))))
        except ValueError as exc:
            raise FixtureError(f"nonexist.txt:{lineno}: {exc}") from exc
    return out
