"""Branching patterns, restriction types and exponent transport.

A pattern is three partitions of a common degree D, one per critical value.
Parts written ``[k]`` are points of ramification k above a singular point whose
exponent difference is the restricted value 1/k; they pull back to ordinary
(or removable) points.  The remaining parts are the genuine singularities.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import permutations
from typing import Iterable, Sequence

Partition = tuple[int, ...]
RestrictionType = tuple[int, ...]


class PatternError(ValueError):
    pass


@cache
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n, parts weakly decreasing, in reverse lexicographic order."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out: list[Partition] = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@cache
def partitions_with_length(n: int, length: int, max_part: int | None = None) -> tuple[Partition, ...]:
    if max_part is None or max_part > n:
        max_part = n
    if length == 0:
        return ((),) if n == 0 else ()
    if n < length:
        return ()
    out: list[Partition] = []
    for first in range(min(max_part, n - length + 1), 0, -1):
        for rest in partitions_with_length(n - first, length - 1, first):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True, order=True)
class Fiber:
    """One fiber: all parts, plus the sub-multiset written in brackets."""

    parts: Partition
    marked: Partition = ()

    def __post_init__(self) -> None:
        parts = tuple(sorted(self.parts, reverse=True))
        marked = tuple(sorted(self.marked, reverse=True))
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "marked", marked)
        if any(p <= 0 for p in parts):
            raise PatternError(f"non-positive part in {parts}")
        rest = list(parts)
        for m in marked:
            if m not in rest:
                raise PatternError(f"bracketed part {m} not among {parts}")
            rest.remove(m)
        if len(set(marked)) > 1:
            raise PatternError("a fiber carries a single restriction")

    @property
    def free(self) -> Partition:
        rest = list(self.parts)
        for m in self.marked:
            rest.remove(m)
        return tuple(rest)

    @property
    def mark(self) -> int | None:
        return self.marked[0] if self.marked else None

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def stripped(self) -> Fiber:
        return Fiber(self.parts)

    def __str__(self) -> str:
        chunks = []
        if self.marked:
            k, n = self.marked[0], len(self.marked)
            chunks.append(f"[{k}]" if n == 1 else f"[{k}]^{n}")
        chunks.extend(str(p) for p in self.free)
        return "+".join(chunks)


_BLOCK = re.compile(r"^(\[(\d+)\]|(\d+))(\^(\d+))?$")


def parse_fiber(text: str) -> Fiber:
    parts: list[int] = []
    marked: list[int] = []
    for tok in text.replace(" ", "").split("+"):
        m = _BLOCK.match(tok)
        if not m:
            raise PatternError(f"bad fiber token {tok!r} in {text!r}")
        value = int(m.group(2) or m.group(3))
        count = int(m.group(5)) if m.group(5) else 1
        parts.extend([value] * count)
        if m.group(2):
            marked.extend([value] * count)
    return Fiber(tuple(parts), tuple(marked))


@dataclass(frozen=True)
class BranchingPattern:
    fibers: tuple[Fiber, Fiber, Fiber]

    def __post_init__(self) -> None:
        if len(self.fibers) != 3:
            raise PatternError("a branching pattern has exactly three fibers")
        degrees = {f.degree for f in self.fibers}
        if len(degrees) != 1:
            raise PatternError(f"fibers have different degrees {sorted(degrees)}")

    @classmethod
    def of(cls, *fibers: Iterable[int] | Fiber) -> BranchingPattern:
        fs = tuple(f if isinstance(f, Fiber) else Fiber(tuple(f)) for f in fibers)
        return cls(fs)  # type: ignore[arg-type]

    @property
    def degree(self) -> int:
        return self.fibers[0].degree

    @property
    def partitions(self) -> tuple[Partition, Partition, Partition]:
        return tuple(f.parts for f in self.fibers)  # type: ignore[return-value]

    @property
    def free_parts(self) -> int:
        return sum(len(f.free) for f in self.fibers)

    def canonical(self) -> BranchingPattern:
        return BranchingPattern(tuple(sorted(self.fibers)))  # type: ignore[arg-type]

    def stripped(self) -> BranchingPattern:
        return BranchingPattern(tuple(sorted(f.stripped() for f in self.fibers)))  # type: ignore[arg-type]

    def key(self) -> tuple:
        c = self.canonical()
        return tuple((f.parts, f.marked) for f in c.fibers)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BranchingPattern):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        return "=".join(str(f) for f in self.fibers)


def parse_pattern(text: str) -> BranchingPattern:
    """Parse ``"[2]^6=[3]^4=9+1+1+1"``; fiber order is preserved."""
    chunks = text.replace(" ", "").split("=")
    if len(chunks) != 3:
        raise PatternError(f"expected three fibers separated by '=': {text!r}")
    return BranchingPattern(tuple(parse_fiber(c) for c in chunks))  # type: ignore[arg-type]


def hurwitz_defect(p: BranchingPattern) -> int:
    """2(D-1) minus the ramification seen over the three fibers."""
    return 2 * (p.degree - 1) - sum(e - 1 for f in p.fibers for e in f.parts)


# --------------------------------------------------------------- exponent forms

_PARAMS = ("a", "b", "g")


@dataclass(frozen=True)
class ExponentForm:
    """c0 + ca*a + cb*b + cg*g, with a, b, g the free hypergeometric parameters."""

    c0: Fraction = Fraction(0)
    ca: Fraction = Fraction(0)
    cb: Fraction = Fraction(0)
    cg: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("c0", "ca", "cb", "cg"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def const(cls, c: Fraction | int) -> ExponentForm:
        return cls(Fraction(c))

    @classmethod
    def param(cls, name: str) -> ExponentForm:
        i = _PARAMS.index(name)
        coeffs = [Fraction(0)] * 3
        coeffs[i] = Fraction(1)
        return cls(Fraction(0), *coeffs)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.ca, self.cb, self.cg)

    def is_free(self) -> bool:
        return any(self.coeffs)

    def is_constant(self) -> bool:
        return not self.is_free()

    def __add__(self, other: ExponentForm) -> ExponentForm:
        return ExponentForm(self.c0 + other.c0, self.ca + other.ca, self.cb + other.cb, self.cg + other.cg)

    def scale(self, k: Fraction | int) -> ExponentForm:
        return ExponentForm(self.c0 * k, self.ca * k, self.cb * k, self.cg * k)

    __rmul__ = scale

    def evaluate(self, a: Fraction | int = 0, b: Fraction | int = 0, g: Fraction | int = 0) -> Fraction:
        return self.c0 + self.ca * a + self.cb * b + self.cg * g

    def rename(self, mapping: dict[str, str]) -> ExponentForm:
        coeffs = dict(zip(_PARAMS, self.coeffs))
        renamed = {name: Fraction(0) for name in _PARAMS}
        for src, c in coeffs.items():
            renamed[mapping.get(src, src)] += c
        return ExponentForm(self.c0, renamed["a"], renamed["b"], renamed["g"])

    def sort_key(self) -> tuple:
        return (self.coeffs, self.c0)

    def __str__(self) -> str:
        terms = []
        for name, c in zip(_PARAMS, self.coeffs):
            if c:
                coeff = "" if c == 1 else ("-" if c == -1 else _fmt(c))
                terms.append(f"{coeff}{name}")
        if self.c0 or not terms:
            terms.append(_fmt(self.c0))
        return "+".join(terms).replace("+-", "-")


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_FORM_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?([abg])?")


def parse_form(text: str) -> ExponentForm:
    """Parse ``"1/3"``, ``"2a"``, ``"a+1/2"``."""
    s = text.replace(" ", "")
    if not s:
        raise PatternError("empty exponent form")
    acc = ExponentForm()
    pos = 0
    while pos < len(s):
        m = _FORM_TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise PatternError(f"cannot parse exponent form {text!r}")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        term = ExponentForm.param(m.group(3)).scale(c) if m.group(3) else ExponentForm.const(c)
        acc = acc + term
        pos = m.end()
    return acc


def derive_heun_exponents(base: Sequence[ExponentForm], p: BranchingPattern
                          ) -> tuple[tuple[ExponentForm, ...], list[tuple[int, int]]]:
    """Transport exponent differences along the pattern.

    ``base[i]`` sits under ``p.fibers[i]``.  Each free part e over a base form f
    yields e*f; bracketed parts are returned in ``dropped`` as (fiber, part).
    """
    if len(base) != 3:
        raise PatternError("need one base form per fiber")
    forms: list[ExponentForm] = []
    dropped: list[tuple[int, int]] = []
    for i, (f, fiber) in enumerate(zip(base, p.fibers)):
        if fiber.marked:
            k = fiber.mark
            if f.is_free() or f.c0 != Fraction(1, k):
                raise PatternError(f"fiber {fiber} is bracketed but its base form is {f}, not 1/{k}")
            dropped.extend((i, k) for _ in fiber.marked)
        forms.extend(f.scale(e) for e in fiber.free)
    if len(forms) != 4:
        raise PatternError(f"pattern {p} leaves {len(forms)} singular points, not 4")
    return tuple(forms), dropped


# --------------------------------------------------------------- enumeration

TYPES: tuple[RestrictionType, ...] = ((), (2,), (3,), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (4, 4))

_SEARCH_LIMIT = 24


def _ordinary_bound(ks: RestrictionType, D: int) -> bool:
    return sum(D // k for k in ks) >= D - 2


def admissible_degrees(ks: RestrictionType) -> list[int]:
    """Degrees D > 2 (or D = 2 for the unrestricted type) with enough ordinary points."""
    if not ks:
        return [D for D in range(2, _SEARCH_LIMIT + 1) if D + 2 <= 4]
    return [D for D in range(3, _SEARCH_LIMIT + 1) if max(ks) <= D and _ordinary_bound(ks, D)]


def enumerate_types() -> list[tuple[RestrictionType, int]]:
    """Restriction types with their maximal degree.

    The search over 2 <= k <= l is finite: 2/D + 1/k + 1/l >= 1 forces D <= 12
    once (k, l) != (2, 2), and a single restriction forces D <= 4.
    """
    found: list[tuple[RestrictionType, int]] = []
    if admissible_degrees(()):
        found.append(((), max(admissible_degrees(()))))
    for k in range(2, _SEARCH_LIMIT + 1):
        ds = admissible_degrees((k,))
        if ds:
            found.append(((k,), max(ds)))
    for k in range(2, _SEARCH_LIMIT + 1):
        for l in range(k, _SEARCH_LIMIT + 1):
            if (k, l) == (2, 2):
                continue  # dihedral family, handled elsewhere
            ds = admissible_degrees((k, l))
            if ds:
                found.append(((k, l), max(ds)))
    return found


def _restricted_fibers(D: int, k: int) -> list[Fiber]:
    return [Fiber(p, tuple(x for x in p if x == k)) for p in partitions(D) if k in p]


def enumerate_patterns(ks: RestrictionType, D: int) -> list[BranchingPattern]:
    """All Belyi branching patterns of the given type and degree with 4 free parts."""
    ks = tuple(sorted(ks))
    if ks not in TYPES:
        raise PatternError(f"type {ks} is not admissible")
    dmax = dict(enumerate_types())[ks]
    if not 2 <= D <= dmax:
        raise PatternError(f"degree {D} outside 2..{dmax} for type {ks}")
    total = D + 2  # Belyi: exactly D + 2 points over the three critical values
    found: set[BranchingPattern] = set()
    restricted_choices = [_restricted_fibers(D, k) for k in ks]

    def fill(prefix: list[Fiber], free_slots: int) -> None:
        used = sum(len(f.parts) for f in prefix)
        unmarked = sum(len(f.free) for f in prefix)
        need_parts = total - used
        need_free = 4 - unmarked
        if need_parts != need_free or need_free < free_slots:
            return
        if free_slots == 0:
            if need_parts == 0:
                found.add(BranchingPattern(tuple(prefix)).canonical())  # type: ignore[arg-type]
            return
        if free_slots == 1:
            for p in partitions_with_length(D, need_parts):
                found.add(BranchingPattern(tuple(prefix + [Fiber(p)])).canonical())  # type: ignore[arg-type]
            return
        for n1 in range(1, need_parts):
            for p1 in partitions_with_length(D, n1):
                fill(prefix + [Fiber(p1)], free_slots - 1)

    def choose(i: int, prefix: list[Fiber]) -> None:
        if i == len(ks):
            fill(prefix, 3 - len(ks))
            return
        for f in restricted_choices[i]:
            choose(i + 1, prefix + [f])

    choose(0, [])
    return sorted(found, key=lambda p: p.key())


def table_base(ks: RestrictionType, p: BranchingPattern) -> list[ExponentForm]:
    """Base forms under each fiber for a pattern of the given type.

    Restricted fibers (bracketed, or matched by value) get 1/k; the remaining
    fibers receive a, b, g in order.
    """
    pending = sorted(ks)
    base: list[ExponentForm | None] = [None] * 3
    for i, f in enumerate(p.fibers):
        if f.mark is not None and f.mark in pending:
            base[i] = ExponentForm.const(Fraction(1, f.mark))
            pending.remove(f.mark)
    if pending:
        raise PatternError(f"pattern {p} lacks brackets for restrictions {pending}")
    names = iter(_PARAMS)
    return [b if b is not None else ExponentForm.param(next(names)) for b in base]


def forms_match(found: Sequence[ExponentForm], expected: Sequence[ExponentForm]) -> bool:
    """Equal as multisets, up to renaming the free parameters."""
    target = sorted(expected, key=ExponentForm.sort_key)
    for perm in permutations(_PARAMS):
        mapping = dict(zip(_PARAMS, perm))
        renamed = sorted((f.rename(mapping) for f in found), key=ExponentForm.sort_key)
        if renamed == target:
            return True
    return False


@dataclass(frozen=True)
class PatternRow:
    """One regenerated table row: type, degree, pattern and Heun exponents."""

    ks: RestrictionType
    pattern: BranchingPattern
    exponents: tuple[ExponentForm, ...] = field(default=())

    @property
    def degree(self) -> int:
        return self.pattern.degree


def enumerate_rows() -> list[PatternRow]:
    rows: list[PatternRow] = []
    for ks, dmax in enumerate_types():
        if ks not in TYPES:
            continue
        for D in range(dmax, 1, -1):
            for p in enumerate_patterns(ks, D):
                forms, _ = derive_heun_exponents(table_base(ks, p), p)
                rows.append(PatternRow(ks, p, forms))
    return rows
