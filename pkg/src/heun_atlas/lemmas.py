"""Non-existence certificates for branching patterns.

Any covering with a given pattern pulls back *every* hypergeometric equation
whose exponent differences sit over its three fibers.  Choosing those
differences cleverly produces a pulled-back Fuchsian equation that cannot
exist, or one with infinite monodromy although the source has finite
monodromy.  The rules below detect such contradictions; they prove
non-existence only, never existence.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .patterns import BranchingPattern, RestrictionType, table_base

Q = Fraction

RULES = ("single-point", "two-point", "thirds-parity", "half-quarter", "integer-triangle",
         "integer-half", "isogeny-gauss", "isogeny-eisenstein", "schwarz", "gauge-parity")


class Monodromy(enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNDECIDED = "Undecided"


class Status(enum.Enum):
    NONEXISTENT = "Nonexistent"
    UNDECIDED = "Undecided"


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _is_half_odd(x: Fraction) -> bool:
    return x.denominator == 2


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------- Schwarz list

SCHWARZ_TYPES: tuple[tuple[Fraction, Fraction, Fraction], ...] = tuple(
    (Q(a), Q(b), Q(c)) for a, b, c in (
        ("1/2", "1/3", "1/3"), ("2/3", "1/3", "1/3"),
        ("1/2", "1/3", "1/4"), ("2/3", "1/4", "1/4"),
        ("1/2", "1/3", "1/5"), ("2/5", "1/3", "1/3"), ("2/3", "1/5", "1/5"),
        ("1/2", "2/5", "1/5"), ("3/5", "1/3", "1/5"), ("2/5", "2/5", "2/5"),
        ("2/3", "1/3", "1/5"), ("4/5", "1/5", "1/5"), ("1/2", "2/5", "1/3"),
        ("3/5", "2/5", "1/3"),
    )
)  # the dihedral family (1/2, 1/2, nu) is handled separately


def schwarz_match(triple: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """A Schwarz type reachable by sign changes and integer shifts of even total."""
    x = [abs(Q(v)) for v in triple]
    for t in SCHWARZ_TYPES:
        for perm in set(permutations(x)):
            for signs in product((1, -1), repeat=3):
                shifts = [p - s * tv for p, s, tv in zip(perm, signs, t)]
                if all(_is_int(d) for d in shifts) and sum(shifts) % 2 == 0:
                    return t
    return None


def reducible(triple: Sequence[Fraction]) -> bool:
    """Some signed sum of the differences is an odd integer."""
    a, b, c = (Q(v) for v in triple)
    return any(_is_int(s) and s.numerator % 2 == 1
               for s in (a + b + c, a + b - c, a - b + c, -a + b + c))


def finite_monodromy(triple: Sequence[Fraction]) -> tuple[Monodromy, str | None]:
    """Decide finiteness of the monodromy of E(a, b, c) where the rules allow."""
    x = [abs(Q(v)) for v in triple]
    if len(x) != 3:
        raise ValueError("a hypergeometric equation has three exponent differences")
    ints = [v for v in x if _is_int(v)]
    others = [v for v in x if not _is_int(v)]

    if all(v.denominator == 3 for v in x):
        even = sum(v.numerator for v in x) % 2 == 0
        return (Monodromy.FINITE if even else Monodromy.INFINITE), "thirds-parity"
    if sorted(v.denominator for v in x) == [2, 4, 4]:
        return Monodromy.INFINITE, "half-quarter"
    if len(ints) == 3:
        a, b, c = sorted(ints)
        ok = (a + b + c) % 2 == 1 and c < a + b
        return (Monodromy.FINITE if ok else Monodromy.INFINITE), "integer-triangle"
    if len(ints) == 1:
        n = ints[0]
        beta, gamma = others
        for k in (abs(beta - gamma), beta + gamma):
            if _is_int(k) and (k + n) % 2 == 1 and k < n:
                return Monodromy.FINITE, "integer-half"
        return Monodromy.INFINITE, "integer-half"
    if len(ints) == 2:
        # two trivial local monodromies force the third to be trivial as well
        return Monodromy.INFINITE, "integer-half"
    if sum(1 for v in x if _is_half_odd(v)) >= 2:
        return Monodromy.FINITE, "schwarz"  # dihedral
    if schwarz_match(x) is not None:
        return Monodromy.FINITE, "schwarz"
    return Monodromy.INFINITE, "schwarz"


# --------------------------------------------------------------- elliptic self-maps

ELLIPTIC_BASES = {
    (Q(1, 2), Q(1, 4), Q(1, 4)): "gaussian",
    (Q(1, 2), Q(1, 3), Q(1, 6)): "eisenstein",
    (Q(1, 3), Q(1, 3), Q(1, 3)): "eisenstein",
}


def isogeny_count(lattice: str, D: int) -> int:
    """Self-pull-backs of degree D of the elliptic hypergeometric equations."""
    if D < 1:
        raise ValueError("degree must be positive")
    count = 0
    bound = int(D ** 0.5) + 2
    if lattice == "gaussian":
        for a in range(bound):
            for b in range(1, bound):
                count += a * a + b * b == D
    elif lattice == "eisenstein":
        for a in range(2 * bound):
            for b in range(a + 1, 2 * bound):
                count += a * a - a * b + b * b == D
    else:
        raise ValueError(f"unknown lattice {lattice!r}")
    return count


# --------------------------------------------------------------- profiles and verdicts

@dataclass(frozen=True)
class SingularityProfile:
    relevant: tuple[Fraction, ...]
    apparent: tuple[int, ...] = ()
    base: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "relevant", tuple(sorted(Q(v) for v in self.relevant)))
        object.__setattr__(self, "apparent", tuple(sorted(int(v) for v in self.apparent)))
        object.__setattr__(self, "base", tuple(Q(v) for v in self.base))

    @property
    def singular(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.relevant + tuple(Q(v) for v in self.apparent)))

    def as_dict(self) -> dict:
        return {"relevant": [_fmt(v) for v in self.relevant],
                "apparent": list(self.apparent),
                "base": [_fmt(v) for v in self.base]}


@dataclass(frozen=True)
class Certificate:
    specialization: str
    profile: SingularityProfile
    rule: str
    degree: int = 0

    def as_dict(self) -> dict:
        return {"alpha": self.specialization, "profile": self.profile.as_dict(),
                "rule": self.rule, "degree": self.degree}


@dataclass(frozen=True)
class Verdict:
    status: Status
    chain: tuple[Certificate, ...] = field(default=())

    @property
    def nonexistent(self) -> bool:
        return self.status is Status.NONEXISTENT

    @property
    def rules(self) -> set[str]:
        return {c.rule for c in self.chain}

    def as_dict(self) -> dict:
        return {"status": self.status.value, "chain": [c.as_dict() for c in self.chain]}


UNDECIDED = Verdict(Status.UNDECIDED)


def _nonexistent(label: str, p: SingularityProfile, rule: str, degree: int = 0) -> Verdict:
    return Verdict(Status.NONEXISTENT, (Certificate(label, p, rule, degree),))


def lemma_logpoint(p: SingularityProfile) -> Verdict:
    """No equation has one relevant point; two points carry equal differences."""
    pts = p.singular
    if len(pts) == 1:
        return _nonexistent("", p, "single-point")
    if len(pts) == 2 and pts[0] != pts[1]:
        return _nonexistent("", p, "two-point")
    return UNDECIDED


def _base_finite(p: SingularityProfile) -> bool:
    return len(p.base) == 3 and finite_monodromy(p.base)[0] is Monodromy.FINITE


def lemma_finite_pullback(p: SingularityProfile) -> Verdict:
    """A finite-monodromy source cannot pull back to an infinite 3-point equation."""
    pts = p.singular
    if len(pts) != 3 or not _base_finite(p):
        return UNDECIDED
    status, rule = finite_monodromy(pts)
    if status is Monodromy.INFINITE:
        return _nonexistent("", p, rule or "schwarz")
    return UNDECIDED


def lemma_isogeny(p: SingularityProfile, degree: int) -> Verdict:
    """Self-maps of the elliptic equations exist only in norm degrees."""
    key = tuple(sorted(p.base, reverse=True))
    lattice = ELLIPTIC_BASES.get(key)  # type: ignore[arg-type]
    if lattice is None or p.apparent or tuple(sorted(p.relevant, reverse=True)) != key:
        return UNDECIDED
    if isogeny_count(lattice, degree) == 0:
        return _nonexistent("", p, "isogeny-gauss" if lattice == "gaussian" else "isogeny-eisenstein", degree)
    return UNDECIDED


GAUGE_WINDOW = 2


def gauge_contiguity_test(p: SingularityProfile, strict: bool = False) -> Verdict:
    """Three relevant points plus apparent ones.

    The equation is gauge-contiguous to a hypergeometric target whose
    differences move by integers, with even total shift counting m - 1 for
    every apparent difference m.  If all admissible targets have infinite
    monodromy over a finite base, the covering cannot exist.  With
    ``strict`` a reducible target (some signed sum of differences odd)
    blocks the conclusion, since local data no longer pin down the monodromy.
    """
    if len(p.relevant) != 3:
        raise ValueError("gauge test needs exactly three relevant points")
    if not p.apparent or not _base_finite(p):
        return UNDECIDED
    extra = sum(m - 1 for m in p.apparent)
    window = range(-GAUGE_WINDOW, GAUGE_WINDOW + 1)
    for ks in product(window, repeat=3):
        if (sum(ks) + extra) % 2:
            continue
        target = [e + k for e, k in zip(p.relevant, ks)]
        if any(t <= 0 for t in target):
            continue
        if strict and reducible(target):
            return UNDECIDED
        if finite_monodromy(target)[0] is not Monodromy.INFINITE:
            return UNDECIDED
    return _nonexistent("", p, "gauge-parity")


# --------------------------------------------------------------- search

def build_profile(base: Sequence[Fraction], p: BranchingPattern) -> SingularityProfile:
    """Pull the base differences back along every part of the (stripped) pattern."""
    relevant: list[Fraction] = []
    apparent: list[int] = []
    for v, fiber in zip(base, p.fibers):
        for e in fiber.parts:
            d = e * Q(v)
            if d == 1:
                continue
            if _is_int(d):
                apparent.append(int(d))
            else:
                relevant.append(d)
    return SingularityProfile(tuple(relevant), tuple(apparent), tuple(Q(v) for v in base))


def admissible_base(base: Sequence[Fraction]) -> bool:
    """Integer differences are only safe over a finite-monodromy base (no logarithms)."""
    if any(_is_int(Q(v)) for v in base):
        return finite_monodromy(base)[0] is Monodromy.FINITE
    return True


def evaluate(base: Sequence[Fraction], p: BranchingPattern, label: str = "",
             exhaustive: bool = False) -> list[Certificate]:
    """All rules that fire for one base triple (the first one unless exhaustive)."""
    if not admissible_base(base):
        return []
    prof = build_profile(base, p)
    found: list[Certificate] = []
    checks = [lemma_logpoint(prof), lemma_finite_pullback(prof), lemma_isogeny(prof, p.degree)]
    for v in checks:
        if v.nonexistent:
            c = v.chain[0]
            found.append(Certificate(label, prof, c.rule, c.degree))
            if not exhaustive:
                return found
    if len(prof.relevant) == 3 and prof.apparent:
        v = gauge_contiguity_test(prof, strict=True)
        if v.nonexistent:
            found.append(Certificate(label, prof, "gauge-parity", p.degree))
    return found


def specialization_values(D: int) -> list[Fraction]:
    return [Q(1, k) for k in range(1, D + 1)]


def _describe(base: Sequence[Fraction], names: Sequence[str]) -> str:
    return ", ".join(f"{n}={_fmt(v)}" for n, v in zip(names, base))


def candidate_bases(ks: RestrictionType, p: BranchingPattern) -> Iterable[tuple[tuple[Fraction, ...], str]]:
    """Type-consistent specializations first, then every base over the fibers."""
    values = specialization_values(p.degree)
    seen: set[tuple[Fraction, ...]] = set()
    forms = table_base(ks, p)
    free = sorted({n for f in forms for n, c in zip("abg", f.coeffs) if c})
    for choice in product(values, repeat=len(free)):
        env = dict(zip(free, choice))
        base = tuple(f.evaluate(env.get("a", 0), env.get("b", 0), env.get("g", 0)) for f in forms)
        if base in seen:
            continue
        seen.add(base)
        yield base, ", ".join(f"{n}={_fmt(v)}" for n, v in env.items())
    for base in product(values, repeat=3):
        if base in seen:
            continue
        seen.add(base)
        yield base, "base " + _describe(base, ("x0", "x1", "x2"))


def nonexistence_search(ks: RestrictionType, p: BranchingPattern, exhaustive: bool = False) -> Verdict:
    """Search specializations for a contradiction; Undecided when none is found."""
    certs: list[Certificate] = []
    for base, label in candidate_bases(ks, p):
        found = evaluate(base, p, label, exhaustive)
        if found and not exhaustive:
            return Verdict(Status.NONEXISTENT, (found[0],))
        certs.extend(found)
    if certs:
        return Verdict(Status.NONEXISTENT, tuple(certs))
    return UNDECIDED


def replay(cert: Certificate, p: BranchingPattern | None = None) -> bool:
    """Re-run the cited rule on the cited profile (and re-derive it from p if given)."""
    prof = cert.profile
    if p is not None and build_profile(prof.base, p) != prof:
        return False
    rule = cert.rule
    if rule in ("single-point", "two-point"):
        v = lemma_logpoint(prof)
    elif rule in ("isogeny-gauss", "isogeny-eisenstein"):
        v = lemma_isogeny(prof, cert.degree)
    elif rule == "gauge-parity":
        v = gauge_contiguity_test(prof, strict=True)
    else:
        v = lemma_finite_pullback(prof)
    return v.nonexistent and v.chain[0].rule == rule

