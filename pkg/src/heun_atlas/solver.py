"""Low-degree Belyi map solver.

The fibers over 0, 1 and infinity are monic polynomials A, C, B with the
prescribed root multiplicities and phi = alpha * A / B.  Because every
critical point of phi lies in one of the three fibers, the Wronskians
A'B - AB' and A'C - AC' are constant multiples of the product of the
multiple-root parts.  After cancelling, these two logarithmic-derivative
identities are low-degree polynomial systems, eliminated with a lex
Groebner basis over Q.  Three points are pinned at x = 0, 1, infinity,
each solution is checked exactly with verify_covering, and solutions that
differ only by moving the pins are merged.
"""
from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy as sp

from .belyi import BelyiError, verify_covering
from .exactalg import FieldElement, Poly, RatFun
from .monodromy import DegreeTooLarge
from .patterns import BranchingPattern, hurwitz_defect

MAX_SOLVER_DEGREE = 6
LOCATIONS = ("0", "1", "inf")
_X = sp.Symbol("x")
_DPS = 50

Pin = tuple[int, int]  # (fiber index, multiplicity)


class NoSolution(BelyiError):
    pass


class FieldTooLarge(BelyiError):
    """A coefficient needs an algebraic extension of degree > 2."""


def default_pins(pattern: BranchingPattern) -> tuple[Pin, Pin, Pin]:
    """Points for x = 0, 1, infinity.

    Points whose multiplicity is unique inside their fiber come first (no
    Moebius ambiguity, rational normalization); larger parts are preferred.
    """
    labels: list[tuple[int, int, Pin]] = []
    for i, fib in enumerate(pattern.fibers):
        for m, k in Counter(fib.parts).items():
            labels.append((k, -m, (i, m)))
    labels.sort()
    chosen: list[Pin] = []
    used: set[int] = set()
    for k, _, pin in labels:
        if len(chosen) < 3 and (k == 1 or pin[0] not in used):
            chosen.append(pin)
            used.add(pin[0])
    for k, _, pin in labels:
        while len(chosen) < 3 and chosen.count(pin) < k:
            chosen.append(pin)
    # the largest pinned part goes to infinity
    chosen.sort(key=lambda p: p[1])
    return chosen[0], chosen[1], chosen[2]


class _FiberAnsatz:
    """Monic polynomial with the fiber's multiplicities; pinned points are explicit."""

    def __init__(self, index: int, parts: Sequence[int], pins: dict[str, int]):
        counts = Counter(parts)
        self.pins = pins  # location -> multiplicity
        for m in pins.values():
            counts[m] -= 1
            if counts[m] < 0:
                raise ValueError(f"fiber {index} has no free part {m} to pin")
        self.factors: dict[int, sp.Expr] = {}
        self.symbols: list[sp.Symbol] = []
        for m, k in sorted(counts.items()):
            if k:
                coeffs = sp.symbols(f"f{index}m{m}_0:{k}")
                self.symbols.extend(coeffs)
                self.factors[m] = _X ** k + sum(s * _X ** i for i, s in enumerate(coeffs))

    def _pieces(self) -> list[tuple[sp.Expr, int]]:
        out = [(_X - int(loc), m) for loc, m in self.pins.items() if loc != "inf"]
        return out + [(f, m) for m, f in self.factors.items()]

    def poly(self) -> sp.Expr:
        return sp.expand(sp.Mul(*(f ** m for f, m in self._pieces())))

    def radical(self) -> sp.Expr:
        return sp.Mul(*(f for f, _ in self._pieces()))

    def log_numerator(self) -> sp.Expr:
        """poly' / poly times the radical."""
        pieces = self._pieces()
        rad = self.radical()
        return sp.Add(*(m * sp.diff(f, _X) * sp.cancel(rad / f) for f, m in pieces))

    def critical(self) -> sp.Expr:
        """The part of poly' coming from multiple roots."""
        return sp.Mul(*(f ** (m - 1) for f, m in self._pieces()))


def _to_element(value: sp.Expr) -> FieldElement:
    value = sp.nsimplify(sp.simplify(value))
    if value.is_Rational:
        return FieldElement(Fraction(int(value.p), int(value.q)))
    t = sp.Symbol("t")
    mp = sp.Poly(sp.minimal_polynomial(value, t), t)
    if mp.degree() != 2:
        raise FieldTooLarge(f"coefficient {value} has degree {mp.degree()} over Q")
    lead, p, q = (Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q)) for c in mp.all_coeffs())
    a = -p / lead / 2
    disc = a * a - q / lead
    # sqrt(disc) = sqrt(num * den) / den
    d, square = _squarefree(disc.numerator * disc.denominator)
    b = Fraction(_isqrt(square), disc.denominator)
    approx = complex(sp.N(value, 30))
    root_d = complex(mpmath.sqrt(d))
    if abs(float(a) + float(b) * root_d - approx) > abs(float(a) - float(b) * root_d - approx):
        b = -b
    return FieldElement(a, b, d)


def _squarefree(n: int) -> tuple[int, int]:
    """n = d * s with d square-free and s a perfect square."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, k = 1, 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            s *= k * k
        k += 1
    return sign * n, s


def _isqrt(s: int) -> int:
    r = int(s ** 0.5)
    while r * r > s:
        r -= 1
    while (r + 1) * (r + 1) <= s:
        r += 1
    return r


def _to_poly(expr: sp.Expr) -> Poly:
    elems = [_to_element(c) for c in sp.Poly(expr, _X).all_coeffs()[::-1]]
    field = next((e.d for e in elems if e.d is not None), None)
    return Poly(elems, field)


def _numeric_roots(expr: sp.Expr) -> list:
    coeffs = [mpmath.mpmathify(sp.N(c, _DPS)) for c in sp.Poly(expr, _X).all_coeffs()]
    if len(coeffs) == 1:
        return []
    return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=400))


def _mobius(p, q, r):
    """The Moebius map sending 0, 1, infinity to p, q, r (None stands for infinity)."""
    if r is None:
        return lambda x: p + (q - p) * x
    if p is None:
        return lambda x: r - (r - q) / x
    if q is None:
        return lambda x: (r * x - p) / (x - 1)
    return lambda x: (r * (q - p) * x + p * (r - q)) / ((q - p) * x + (r - q))


def _same(u, v) -> bool:
    if u is None or v is None:
        return u is v
    return abs(u - v) < mpmath.mpf(10) ** -30


class _Solution:
    def __init__(self, num: sp.Expr, den: sp.Expr, anchors: list[list]):
        self._num = sp.lambdify(_X, num, "mpmath")
        self._den = sp.lambdify(_X, den, "mpmath")
        self.anchors = anchors

    def __call__(self, t):
        return self._num(t) / self._den(t)

    def equivalent(self, other: _Solution, samples: list) -> bool:
        """other = self o mu for some mu moving the pins onto equally labelled points."""
        tol = mpmath.mpf(10) ** -30
        for p in self.anchors[0]:
            for q in self.anchors[1]:
                for r in self.anchors[2]:
                    if _same(p, q) or _same(p, r) or _same(q, r):
                        continue
                    mu = _mobius(p, q, r)
                    try:
                        if all(abs(other(t) - self(mu(t))) < tol * (1 + abs(other(t))) for t in samples):
                            return True
                    except ZeroDivisionError:
                        continue
        return False


def solve_belyi(pattern: BranchingPattern, pins: Sequence[Pin] | None = None,
                order: tuple[int, int, int] = (0, 1, 2)) -> list[RatFun]:
    """All Belyi maps with the given branching, one per Moebius class.

    ``order[j]`` is the pattern fiber lying over 0, 1, infinity.  ``pins`` holds
    three ``(fiber index, multiplicity)`` labels placed at x = 0, 1, infinity.
    """
    D = pattern.degree
    if D > MAX_SOLVER_DEGREE:
        raise DegreeTooLarge(f"solver handles degree <= {MAX_SOLVER_DEGREE}, got {D}")
    if hurwitz_defect(pattern):
        raise NoSolution(f"{pattern} is not a Belyi branching pattern")
    pins = tuple(tuple(p) for p in (pins or default_pins(pattern)))
    if len(pins) != 3:
        raise ValueError("exactly three pins are needed")

    per_fiber: list[dict[str, int]] = [{} for _ in range(3)]
    for loc, (i, m) in zip(LOCATIONS, pins):
        per_fiber[i][loc] = m
    ansatz = [_FiberAnsatz(i, pattern.fibers[i].parts, per_fiber[i]) for i in range(3)]
    fa, fc, fb = (ansatz[order[j]] for j in range(3))
    k1, k2, s = sp.symbols("kappa1 kappa2 s")
    unknowns = [v for a in ansatz for v in a.symbols]

    # Wronskians of (A, B) and (A, C) divided by the multiple-root parts of
    # the two polynomials involved: all critical points lie in the fibers.
    w_ab = fa.log_numerator() * fb.radical() - fa.radical() * fb.log_numerator() - k1 * fc.critical()
    w_ac = fa.log_numerator() * fc.radical() - fa.radical() * fc.log_numerator() - k2 * fb.critical()
    equations = sp.Poly(sp.expand(w_ab), _X).coeffs() + sp.Poly(sp.expand(w_ac), _X).coeffs()
    basis = sp.groebner(equations + [s * k1 * k2 - 1], *unknowns, k1, k2, s,
                        order="lex")
    if list(basis) == [1]:
        raise NoSolution(f"no covering realizes {pattern}")
    raw = sp.solve(list(basis), unknowns + [k1, k2, s], dict=True)

    A, B, C = fa.poly(), fb.poly(), fc.poly()
    alpha, gamma = sp.symbols("alpha gamma")
    solved = []
    for sol in raw:
        if any(v not in sol or sol[v].free_symbols for v in unknowns):
            continue  # positive-dimensional component
        # recover phi = alpha A / B from B = alpha A - gamma C
        a_val, b_val, c_val = (sp.expand(e.subs(sol)) for e in (A, B, C))
        lin = sp.Poly(sp.expand(alpha * a_val - b_val - gamma * c_val), _X).coeffs()
        consts = sp.solve(lin, [alpha, gamma], dict=True)
        if len(consts) != 1 or any(v not in consts[0] for v in (alpha, gamma)):
            continue
        solved.append((sol, sp.expand(consts[0][alpha] * a_val), b_val))

    with mpmath.workdps(_DPS):
        maps = _collect(solved, pattern, pins, ansatz)
    if not maps:
        raise NoSolution(f"no covering realizes {pattern}")
    return maps


def _collect(solved: list[tuple[dict, sp.Expr, sp.Expr]], pattern: BranchingPattern,
             pins: Sequence[Pin], ansatz: list[_FiberAnsatz]) -> list[RatFun]:
    maps: list[RatFun] = []
    found: list[_Solution] = []
    rng = random.Random(pattern.degree)
    samples = [mpmath.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(3)]
    for sol, n_val, d_val in solved:
        try:
            f = RatFun(_to_poly(n_val), _to_poly(d_val))
            verify_covering(f, pattern)
        except FieldTooLarge:
            raise
        except (BelyiError, ZeroDivisionError, ValueError):
            continue
        anchors = []
        for loc, (i, m) in zip(LOCATIONS, pins):
            # every point carrying the same label as this pin
            here = [None if l2 == "inf" else mpmath.mpc(int(l2))
                    for l2, pin2 in zip(LOCATIONS, pins) if pin2 == (i, m)]
            if m in ansatz[i].factors:
                here += _numeric_roots(ansatz[i].factors[m].subs(sol))
            anchors.append(here)
        cand = _Solution(n_val, d_val, anchors)
        if any(prev.equivalent(cand, samples) for prev in found):
            continue
        found.append(cand)
        maps.append(f)
    return maps
