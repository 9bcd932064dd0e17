"""Exact arithmetic over Q, Q[t] and Q(t), with places of P^1.

Rationals are :class:`fractions.Fraction`.  Polynomials store their
coefficients in ascending degree; the zero polynomial has no coefficients
and degree -1.  Every object here is immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

from .errors import InputError, NonUniformValuation, ZeroInput

Rat = Fraction
Number = Union[int, Fraction]


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise InputError(f"not a rational number: {value!r}") from exc
    raise InputError(f"cannot interpret {value!r} as an exact rational")


def rat_str(q: Fraction) -> str:
    q = as_rat(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Univariate polynomial with rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # constructors
    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def coerce(cls, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return cls((other,))

    # basic data
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Poly({[rat_str(c) for c in self._c]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mon and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = rat_str(c) + ("*" if mon else "")
            terms.append(coef + mon)
        return " + ".join(terms).replace("+ -", "- ")

    # arithmetic
    def __neg__(self) -> "Poly":
        return Poly(-c for c in self._c)

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        n = max(len(self._c), len(other._c))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, RatFunc):
            return NotImplemented
        other = Poly.coerce(other)
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple:
        other = Poly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        inv = 1 / other.lc
        quo = [Fraction(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(other._c):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, (Poly, RatFunc)) else x * 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # derived operations
    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return Poly(c * inv for c in self._c)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self._c) if k)

    def shift(self, c) -> "Poly":
        """Return f(t + c)."""
        c = as_rat(c)
        acc = Poly()
        lin = Poly((c, 1))
        for coef in reversed(self._c):
            acc = acc * lin + coef
        return acc

    def reversed_in(self, weight: int) -> "Poly":
        """Return t^weight * f(1/t); requires deg f <= weight."""
        if self.degree > weight:
            raise InputError(f"degree {self.degree} exceeds chart weight {weight}")
        if self.is_zero():
            return self
        return Poly([0] * (weight - self.degree) + list(reversed(self._c)))

    def ord0(self) -> int:
        """Order of vanishing at t = 0."""
        if self.is_zero():
            raise ZeroInput("order of the zero polynomial")
        k = 0
        while self._c[k] == 0:
            k += 1
        return k

    def content_denominator(self) -> int:
        d = 1
        for c in self._c:
            d = d * c.denominator // gcd(d, c.denominator)
        return d


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (the zero polynomial when both inputs vanish)."""
    while g:
        f, g = g, f % g
    return f.monic()


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly()
    return (f * g // poly_gcd(f, g)).monic()


class RatFunc:
    """Element of Q(t) as num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly.coerce(num) if not isinstance(num, RatFunc) else num
        if isinstance(num, RatFunc):
            if den is not None:
                raise TypeError("RatFunc(RatFunc, den) is ambiguous")
            self.num, self.den = num.num, num.den
            return
        den = Poly.const(1) if den is None else Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, other) -> "RatFunc":
        return other if isinstance(other, RatFunc) else cls(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return RatFunc(1) / self ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def degree(self) -> int:
        """deg(num) - deg(den); the negative of the order at infinity."""
        if self.is_zero():
            raise ZeroInput("degree of the zero rational function")
        return self.num.degree - self.den.degree

    def reversed_in(self, weight: int) -> "RatFunc":
        """s^weight * f(1/s) as an element of Q(s)."""
        n, d = self.num.degree, self.den.degree
        num = self.num.reversed_in(n)
        den = self.den.reversed_in(d)
        shift = weight + d - n
        if shift >= 0:
            return RatFunc(num * Poly.monomial(shift), den)
        return RatFunc(num, den * Poly.monomial(-shift))

    def shift(self, c) -> "RatFunc":
        return RatFunc(self.num.shift(c), self.den.shift(c))

    def sqrt(self):
        """Square root in Q(t), or None when there is none."""
        if self.is_zero():
            return self
        r = poly_sqrt(self.num)
        s = poly_sqrt(self.den)
        if r is None or s is None:
            return None
        return RatFunc(r, s)


@dataclass(frozen=True)
class Place:
    """A place of P^1 over Q: a monic squarefree polynomial, or infinity."""

    poly: Poly | None = None

    def __post_init__(self):
        if self.poly is None:
            return
        if self.poly.degree < 1 or self.poly.lc != 1:
            raise InputError(f"place polynomial must be monic of positive degree: {self.poly}")
        if poly_gcd(self.poly, self.poly.derivative()).degree > 0:
            raise InputError(f"place polynomial must be squarefree: {self.poly}")

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def at(cls, r) -> "Place":
        return cls(Poly((-as_rat(r), 1)))

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def is_rational(self) -> bool:
        return self.poly is None or self.poly.degree == 1

    @property
    def root(self) -> Fraction:
        if self.poly is None or self.poly.degree != 1:
            raise ValueError("only finite rational places have a root")
        return -self.poly[0]

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def label(self) -> str:
        if self.poly is None:
            return "inf"
        if self.poly.degree == 1:
            return f"t={rat_str(self.root)}"
        return f"roots of {self.poly}"

    def __str__(self) -> str:
        return self.label()


def _poly_order(f: Poly, g: Poly) -> int:
    """Exponent of the squarefree g in f, insisting on uniformity over g's factors."""
    if f.is_zero():
        raise ZeroInput("valuation of zero")
    k = 0
    while True:
        q, r = divmod(f, g)
        if r:
            break
        f, k = q, k + 1
    if g.degree > 1 and poly_gcd(f, g).degree > 0:
        raise NonUniformValuation(f"multiplicity of {g} is not uniform across its factors")
    return k


def valuation(f, v: Place) -> int:
    """Order of f in Q(t) at the place v."""
    f = RatFunc.coerce(f)
    if f.is_zero():
        raise ZeroInput("valuation of zero")
    if v.is_infinity:
        return f.den.degree - f.num.degree
    return _poly_order(f.num, v.poly) - _poly_order(f.den, v.poly)


def squarefree_decompose(f: Poly) -> list:
    """Yun's algorithm: [(g_i, m_i)] with f = lc * prod g_i^m_i, m_i increasing."""
    f = Poly.coerce(f)
    if f.is_zero():
        raise ZeroInput("squarefree decomposition of zero")
    out = []
    if f.degree == 0:
        return out
    f = f.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    m = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, m))
        b = b // g
        c = d // g
        m += 1
    return out


def _rat_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def poly_sqrt(f: Poly):
    """g with g*g == f, or None (NotASquare) when f is not a square in Q[t]."""
    f = Poly.coerce(f)
    if f.is_zero():
        return f
    if f.degree % 2:
        return None
    lead = _rat_sqrt(f.lc)
    if lead is None:
        return None
    # Newton-free top-down extraction of the square root coefficients.
    n = f.degree // 2
    g = [Fraction(0)] * (n + 1)
    g[n] = lead
    for k in range(n - 1, -1, -1):
        # coefficient of t^(n+k) in g^2 determines g[k]
        acc = f[n + k]
        for i in range(k + 1, n):
            j = n + k - i
            if k < j <= n:
                acc -= g[i] * g[j]
        g[k] = acc / (2 * lead)
    root = Poly(g)
    return root if root * root == f else None


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: Poly) -> list:
    """All rational roots of f, repeated according to multiplicity, ascending."""
    f = Poly.coerce(f)
    if f.is_zero():
        raise ZeroInput("roots of the zero polynomial")
    roots = []
    z = 0
    while f[z] == 0:
        z += 1
    roots += [Fraction(0)] * z
    f = Poly(f.coeffs[z:])
    if f.degree < 1:
        return roots
    scale = f.content_denominator()
    ints = [int(c * scale) for c in f.coeffs]
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    lin_roots = []
    for r in sorted(cands):
        lin = Poly((-r, 1))
        while True:
            q, rem = divmod(f, lin)
            if rem:
                break
            f = q
            lin_roots.append(r)
    return sorted(roots + lin_roots)


# serialization ---------------------------------------------------------------

def poly_to_json(f: Poly) -> list:
    return [rat_str(c) for c in f.coeffs]


def poly_from_json(data: Sequence) -> Poly:
    if not isinstance(data, (list, tuple)):
        raise InputError("polynomial JSON must be an array of \"p/q\" strings")
    return Poly(as_rat(x) for x in data)


def poly_dumps(f: Poly) -> str:
    return json.dumps(poly_to_json(f))


def parse_poly(text: str) -> Poly:
    """Parse "c0,c1,...,cn" (ascending degree) or a JSON array."""
    text = text.strip()
    if text.startswith("["):
        return poly_from_json(json.loads(text))
    if not text:
        return Poly()
    return Poly(as_rat(part) for part in text.split(","))


def parse_ratfunc(text: str) -> RatFunc:
    """Parse "num" or "num;den" where both halves are comma-separated polynomials."""
    if ";" in text:
        num, den = text.split(";", 1)
        return RatFunc(parse_poly(num), parse_poly(den))
    return RatFunc(parse_poly(text))


def ratfunc_str(f: RatFunc) -> str:
    text = ",".join(poly_to_json(f.num)) or "0"
    if not f.is_poly():
        text += ";" + ",".join(poly_to_json(f.den))
    return text


T = Poly.t()
