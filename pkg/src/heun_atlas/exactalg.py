"""Exact arithmetic over Q and quadratic fields Q(sqrt d).

Univariate polynomials and rational functions over those fields, with a
squarefree decomposition that yields root multiplicities without ever
locating a root.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

NEG_INF = -math.inf


class MixedFieldError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


def _squarefree_part(d: int) -> bool:
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return d not in (0, 1)


def _join(d1: int | None, d2: int | None) -> int | None:
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise MixedFieldError(f"elements of Q(sqrt {d1}) and Q(sqrt {d2}) do not mix")


class FieldElement:
    """a + b*sqrt(d); ``d is None`` means the element lives in Q (and b == 0)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, d: int | None = None):
        a, b = Fraction(a), Fraction(b)
        if d is None and b:
            raise ValueError("a rational element has no sqrt part")
        if d is not None and not _squarefree_part(d):
            raise ValueError(f"{d} is not a square-free integer != 0, 1")
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def coerce(cls, x: object, d: int | None = None) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.d is None and d is not None:
                return cls(x.a, 0, d)
            _join(x.d, d)
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0, d)
        raise TypeError(f"cannot coerce {x!r} to a field element")

    @property
    def field(self) -> int | None:
        return self.d

    def is_rational(self) -> bool:
        return self.b == 0

    def _other(self, other: object) -> FieldElement | None:
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(other, 0, self.d)
        return None

    def __add__(self, other: object) -> FieldElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.a + o.a, self.b + o.b, _join(self.d, o.d))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.a, -self.b, self.d)

    def __sub__(self, other: object) -> FieldElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.a - o.a, self.b - o.b, _join(self.d, o.d))

    def __rsub__(self, other: object) -> FieldElement:
        return -self + other

    def __mul__(self, other: object) -> FieldElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = _join(self.d, o.d)
        if d is None:
            return FieldElement(self.a * o.a, 0, None)
        return FieldElement(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        if self.d is None:
            return self.a * self.a
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> FieldElement:
        return FieldElement(self.a, -self.b, self.d)

    def inverse(self) -> FieldElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.d is None:
            return FieldElement(1 / self.a)
        return FieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: object) -> FieldElement:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> FieldElement:
        return self.inverse() * other

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, FieldElement):
            return self.a == other.a and self.b == other.b and (
                self.b == 0 or self.d == other.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def __str__(self) -> str:
        return format_element(self)


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_element(x: FieldElement) -> str:
    """Inverse of :func:`parse_element`; omega is printed as ``w``, sqrt(-1) as ``i``."""
    if x.b == 0:
        return _fmt_q(x.a)
    if x.d == -3:
        # a + b*sqrt(-3) = (a + b) + 2b*w
        const, coeff, sym = x.a + x.b, 2 * x.b, "w"
    elif x.d == -1:
        const, coeff, sym = x.a, x.b, "i"
    else:
        const, coeff, sym = x.a, x.b, f"sqrt({x.d})"
    tail = sym if coeff == 1 else ("-" + sym if coeff == -1 else f"{_fmt_q(coeff)}*{sym}")
    if const == 0:
        return tail
    sign = "" if tail.startswith("-") else "+"
    return f"{_fmt_q(const)}{sign}{tail}"


_TERM = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*(\*?\s*(w|i|sqrt\((-?[0-9]+)\)))?\s*")


def parse_element(text: str, d: int | None = None) -> FieldElement:
    """Parse ``"p/q"``, ``"a+b*w"``, ``"1-2*i"``, ``"3*sqrt(5)"``.

    ``w`` is the cube root of unity (-1+sqrt(-3))/2 and ``i`` is sqrt(-1).
    """
    s = text.strip()
    if not s:
        raise ValueError("empty element")
    pos = 0
    const = Fraction(0)
    coeff = Fraction(0)
    sym_d: int | None = None
    omega = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element {text!r}")
        sign, num, has_sym, sym, sq = m.groups()
        if num is None and has_sym is None:
            raise ValueError(f"cannot parse element {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if has_sym is None:
            const += value
        else:
            if sym == "w":
                this_d, omega = -3, True
            elif sym == "i":
                this_d = -1
            else:
                this_d = int(sq)
            if sym_d is not None and sym_d != this_d:
                raise MixedFieldError(f"mixed symbols in {text!r}")
            sym_d = this_d
            coeff += value
        pos = m.end()
    field = _join(sym_d, d) if sym_d is not None else d
    if sym_d is None:
        return FieldElement(const, 0, field)
    if omega:
        # c + e*w = (c - e/2) + (e/2)*sqrt(-3)
        return FieldElement(const - coeff / 2, coeff / 2, field)
    return FieldElement(const, coeff, field)


class Poly:
    """Dense univariate polynomial, coefficients in ascending order."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[object] = (), field: int | None = None):
        raw = list(coeffs)
        for c in raw:
            if isinstance(c, FieldElement) and c.d is not None:
                field = _join(field, c.d)
        cs = [FieldElement.coerce(c, field) for c in raw]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)
        self.field = field

    @classmethod
    def x(cls, field: int | None = None) -> Poly:
        return cls([0, 1], field)

    @classmethod
    def const(cls, c: object, field: int | None = None) -> Poly:
        return cls([c], field)

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def deg(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no integer degree")
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _coerce(self, other: object) -> Poly | None:
        if isinstance(other, Poly):
            _join(self.field, other.field)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return Poly([other], self.field)
        return None

    def __add__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        field = _join(self.field, o.field)
        n = max(len(self.coeffs), len(o.coeffs))
        zero = FieldElement(0, 0, field)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = o.coeffs + (zero,) * (n - len(o.coeffs))
        return Poly([x + y for x, y in zip(a, b)], field)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Poly:
        return (-self) + other

    def __mul__(self, other: object) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        field = _join(self.field, o.field)
        if not self.coeffs or not o.coeffs:
            return Poly([], field)
        out = [FieldElement(0, 0, field)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        field = _join(self.field, o.field)
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly([], field), Poly(rem, field)
        inv = o.lc.inverse()
        quot = [FieldElement(0, 0, field)] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quot, field), Poly(rem[: len(o.coeffs) - 1], field)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x: object) -> FieldElement:
        acc = FieldElement(0, 0, self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return Poly([c * inv for c in self.coeffs], self.field)

    def compose(self, inner: Poly) -> Poly:
        acc = Poly([], _join(self.field, inner.field))
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def over(self, field: int | None) -> Poly:
        return Poly(self.coeffs, _join(self.field, field))

    def __repr__(self) -> str:
        return f"Poly({format_coeffs(self)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = str(c)
            if mono:
                if cs == "1":
                    cs = ""
                elif cs == "-1":
                    cs = "-"
                elif not c.is_rational():
                    cs = f"({cs})*"
                else:
                    cs += "*"
            terms.append(cs + mono)
        return " + ".join(terms).replace("+ -", "- ")


def format_coeffs(p: Poly) -> str:
    return "[" + ", ".join(str(c) for c in p.coeffs) + "]"


def parse_poly(text: str, field: int | None = None) -> Poly:
    """Parse an ascending coefficient list such as ``"[-9/1, 0, 0, 8]"``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"polynomial must be a bracketed coefficient list: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Poly([], field)
    elems = [parse_element(tok, None) for tok in body.split(",")]
    for e in elems:
        if e.d is not None:
            field = _join(field, e.d)
    return Poly(elems, field)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``poly_gcd(p, 0)`` is ``monic(p)``."""
    field = _join(p.field, q.field)
    a, b = p.over(field), q.over(field)
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Poly) -> tuple[FieldElement, list[Poly]]:
    """Yun's algorithm: ``p == c * prod(f[i-1] ** i)`` with monic, squarefree, coprime f."""
    if not p:
        raise ValueError("squarefree decomposition of the zero polynomial")
    c = p.lc
    f = p.monic()
    if f.deg() == 0:
        return c, []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    cpart = df.exact_div(a)
    d = cpart - b.derivative()
    factors: list[Poly] = []
    while b.deg() > 0:
        g = poly_gcd(b, d)
        factors.append(g)
        b = b.exact_div(g)
        cpart = d.exact_div(g)
        d = cpart - b.derivative()
    while factors and factors[-1].deg() == 0:
        factors.pop()
    return c, factors


def multiplicity_profile(p: Poly) -> tuple[tuple[int, int], ...]:
    """Pairs (multiplicity, number of distinct roots with that multiplicity)."""
    _, factors = squarefree_decomposition(p)
    return tuple((i, f.deg()) for i, f in enumerate(factors, start=1) if f.deg() > 0)


def root_multiplicities(p: Poly) -> tuple[int, ...]:
    """The multiset of root multiplicities over the algebraic closure, descending."""
    out: list[int] = []
    for mult, count in multiplicity_profile(p):
        out.extend([mult] * count)
    return tuple(sorted(out, reverse=True))


class RatFun:
    """Reduced quotient num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly([1], num.field)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        field = _join(num.field, den.field)
        num, den = num.over(field), den.over(field)
        g = poly_gcd(num, den) if num else den.monic()
        if g.deg() > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            inv = lc.inverse()
            num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def field(self) -> int | None:
        return self.num.field if self.num.field is not None else self.den.field

    @property
    def degree(self) -> int:
        return max(len(self.num.coeffs), len(self.den.coeffs)) - 1

    def _coerce(self, other: object) -> RatFun | None:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        if isinstance(other, (int, Fraction, FieldElement)):
            return RatFun(Poly([other], self.field))
        return None

    def __add__(self, other: object) -> RatFun:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den)

    def __sub__(self, other: object) -> RatFun:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> RatFun:
        return (-self) + other

    def __mul__(self, other: object) -> RatFun:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> RatFun:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x: object) -> FieldElement:
        d = self.den(x)
        if not d:
            raise PoleError(f"{x} is a pole")
        return self.num(x) / d

    def compose(self, inner: RatFun) -> RatFun:
        """``self(inner(x))``; the inner map must not be constant."""
        if inner.degree < 1:
            raise ValueError("composition with a constant inner function")
        n = self.degree
        p, q = inner.num, inner.den
        qpow = [Poly([1], q.field)]
        ppow = [Poly([1], p.field)]
        for _ in range(n):
            qpow.append(qpow[-1] * q)
            ppow.append(ppow[-1] * p)

        def homog(f: Poly) -> Poly:
            acc = Poly([], _join(f.field, inner.field))
            for i, c in enumerate(f.coeffs):
                if c:
                    acc = acc + ppow[i] * qpow[n - i] * c
            return acc

        return RatFun(homog(self.num), homog(self.den))

    def derivative(self) -> RatFun:
        return RatFun(self.num.derivative() * self.den - self.num * self.den.derivative(),
                      self.den * self.den)

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        if self.den.deg() == 0:
            return f"{self.num}"
        return f"({self.num})/({self.den})"


def ratfun_eval(f: RatFun, x: object) -> FieldElement:
    return f(x)


def ratfun_compose(f: RatFun, g: RatFun) -> RatFun:
    return f.compose(g)


def ratfun_derivative(f: RatFun) -> RatFun:
    return f.derivative()


def linear_factors(roots: Sequence[object], field: int | None = None) -> Poly:
    """prod (x - r), a convenience for tests and fixtures."""
    acc = Poly([1], field)
    for r in roots:
        acc = acc * Poly([-FieldElement.coerce(r, field), 1], field)
    return acc
