"""Weierstrass models over Q(t) for elliptic K3 surfaces, and their sections.

Coefficients a_i are polynomials of degree at most 2i (Euler characteristic
chi = 2), which fixes the chart at t = infinity: with s = 1/t,

    a_i(s) = s^(2i) a_i(1/s),   x(s) = s^4 x(1/s),   y(s) = s^6 y(1/s).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import (
    DegenerateCurve,
    DegenerateLeadingCoefficient,
    InputError,
    NonzeroConstantTerm,
    PointNotOnCurve,
)
from ..exactalg import Place, Poly, RatFunc

CHI = 2
WEIGHTS = {"a1": CHI, "a2": 2 * CHI, "a3": 3 * CHI, "a4": 4 * CHI, "a6": 6 * CHI}
X_WEIGHT, Y_WEIGHT = 2 * CHI, 3 * CHI
NAMES = ("a1", "a2", "a3", "a4", "a6")


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in Q[t]."""

    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly
    form: str = "long"
    note: str = field(default="", compare=False)

    def __post_init__(self):
        for name in NAMES:
            p = getattr(self, name)
            if not isinstance(p, Poly):
                object.__setattr__(self, name, Poly.coerce(p))
        if self.disc.is_zero():
            raise DegenerateCurve("discriminant vanishes identically")

    @classmethod
    def extended(cls, a, b, note: str = "") -> "WeierstrassModel":
        """y^2 = x (x^2 + a x + b)."""
        return cls(Poly(), Poly.coerce(a), Poly(), Poly.coerce(b), Poly(), form="extended", note=note)

    @classmethod
    def short(cls, A, B, note: str = "") -> "WeierstrassModel":
        """y^2 = x^3 + A x + B."""
        return cls(Poly(), Poly(), Poly(), Poly.coerce(A), Poly.coerce(B), form="short", note=note)

    @property
    def coeffs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # extended-form accessors
    @property
    def a(self) -> Poly:
        self._require_extended()
        return self.a2

    @property
    def b(self) -> Poly:
        self._require_extended()
        return self.a4

    def _require_extended(self):
        if self.a1 or self.a3 or self.a6:
            raise InputError("model is not in extended form y^2 = x(x^2 + ax + b)")

    def is_extended(self) -> bool:
        return not (self.a1 or self.a3 or self.a6)

    # standard invariants
    @property
    def b2(self) -> Poly:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> Poly:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Poly:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> Poly:
        a1, a2, a3, a4, a6 = self.coeffs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self) -> Poly:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self) -> Poly:
        return -(self.b2 ** 3) + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self) -> Poly:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def in_k3_chart(self) -> bool:
        return all(getattr(self, n).degree <= WEIGHTS[n] for n in NAMES)

    def at_infinity(self) -> "WeierstrassModel":
        """The model in the chart s = 1/t."""
        if not self.in_k3_chart():
            raise InputError("coefficient degrees exceed the K3 weights 2i")
        return WeierstrassModel(*(getattr(self, n).reversed_in(WEIGHTS[n]) for n in NAMES),
                                form=self.form, note="chart at infinity")

    def shifted(self, t0) -> "WeierstrassModel":
        """The model in the local parameter t - t0."""
        return WeierstrassModel(*(p.shift(t0) for p in self.coeffs), form=self.form)

    def local_model(self, place: Place) -> "WeierstrassModel":
        if place.is_infinity:
            return self.at_infinity()
        if place.is_rational:
            return self.shifted(place.root)
        return self

    def scaled(self, u) -> "WeierstrassModel":
        """Admissible change (x, y) -> (u^2 x, u^3 y): a_i -> a_i / u^i."""
        u = RatFunc.coerce(u)
        if not u.is_poly() or u.num.degree != 0:
            raise InputError("scaling factor must be a nonzero rational constant")
        c = u.num[0]
        return WeierstrassModel(*(p * (1 / c ** k) for p, k in zip(self.coeffs, (1, 2, 3, 4, 6))),
                                form=self.form)

    def lhs_minus_rhs(self, x, y) -> RatFunc:
        x, y = RatFunc.coerce(x), RatFunc.coerce(y)
        a1, a2, a3, a4, a6 = (RatFunc(p) for p in self.coeffs)
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)

    def contains(self, P: "SectionPoint") -> bool:
        return P.is_zero or self.lhs_minus_rhs(P.x, P.y).is_zero()

    def __str__(self) -> str:
        if self.is_extended():
            return f"y^2 = x(x^2 + ({self.a2})x + ({self.a4}))"
        terms = ["y^2"]
        if self.a1:
            terms.append(f"({self.a1})xy")
        if self.a3:
            terms.append(f"({self.a3})y")
        rhs = ["x^3"]
        if self.a2:
            rhs.append(f"({self.a2})x^2")
        if self.a4:
            rhs.append(f"({self.a4})x")
        if self.a6:
            rhs.append(f"({self.a6})")
        return " + ".join(terms) + " = " + " + ".join(rhs)


@dataclass(frozen=True)
class SectionPoint:
    """A Q(t)-rational point; x = y = None is the zero section."""

    x: RatFunc | None = None
    y: RatFunc | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise InputError("a section needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", RatFunc.coerce(self.x))
            object.__setattr__(self, "y", RatFunc.coerce(self.y))

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_zero else f"({self.x}, {self.y})"


ZERO = SectionPoint()


def point(x, y) -> SectionPoint:
    return SectionPoint(RatFunc.coerce(x), RatFunc.coerce(y))


def _check(W: WeierstrassModel, P: SectionPoint):
    if not W.contains(P):
        raise PointNotOnCurve(f"{P} is not on {W}")


def point_neg(W: WeierstrassModel, P: SectionPoint) -> SectionPoint:
    _check(W, P)
    if P.is_zero:
        return P
    return SectionPoint(P.x, -P.y - W.a1 * P.x - W.a3)


def point_add(W: WeierstrassModel, P: SectionPoint, Q: SectionPoint) -> SectionPoint:
    """Chord-tangent addition over Q(t)."""
    _check(W, P)
    _check(W, Q)
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    a1, a2, a3, a4, a6 = (RatFunc(p) for p in W.coeffs)
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3).is_zero():
            return ZERO
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-(x1 * x1 * x1) + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return SectionPoint(x3, y3)


def point_double(W: WeierstrassModel, P: SectionPoint) -> SectionPoint:
    return point_add(W, P, P)


def point_mul(W: WeierstrassModel, P: SectionPoint, k: int) -> SectionPoint:
    if k < 0:
        return point_mul(W, point_neg(W, P), -k)
    result, base = ZERO, P
    while k:
        if k & 1:
            result = point_add(W, result, base)
        base = point_add(W, base, base)
        k >>= 1
    return result


def point_at_infinity_chart(P: SectionPoint) -> SectionPoint:
    if P.is_zero:
        return P
    return SectionPoint(P.x.reversed_in(X_WEIGHT), P.y.reversed_in(Y_WEIGHT))


def local_point(P: SectionPoint, place: Place) -> SectionPoint:
    if P.is_zero:
        return P
    if place.is_infinity:
        return point_at_infinity_chart(P)
    if place.is_rational:
        return SectionPoint(P.x.shift(place.root), P.y.shift(place.root))
    return P


def from_cubic(c3, c2, c1, c0=0) -> WeierstrassModel:
    """y^2 = c3 T^3 + c2 T^2 + c1 T  ->  y^2 = x(x^2 + c2 x + c1 c3) via x = c3 T, y -> c3 y."""
    c3, c2, c1, c0 = (Poly.coerce(c) for c in (c3, c2, c1, c0))
    if c0:
        raise NonzeroConstantTerm("cubic must vanish at T = 0 so that (0, 0) lies on it")
    if c3.is_zero():
        raise DegenerateLeadingCoefficient("leading coefficient of the cubic vanishes")
    return WeierstrassModel.extended(c2, c1 * c3, note="x = c3*T, y -> c3*y")


def from_cubic_point(c3, T, y) -> SectionPoint:
    """Transport a point (T, y) of the cubic model to the extended model."""
    c3 = RatFunc.coerce(c3)
    return SectionPoint(c3 * T, c3 * y)


def j_invariant(W: WeierstrassModel) -> RatFunc:
    d = W.disc
    if d.is_zero():
        raise DegenerateCurve("singular curve has no j-invariant")
    return RatFunc(W.c4 ** 3, d)
