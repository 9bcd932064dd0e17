"""Kodaira fibres: Tate's algorithm, fibre data and component groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import (
    AdditiveAtNonRationalPlace,
    InconsistentData,
    InputError,
    NonMinimalModel,
)
from ..exactalg import Place, Poly, poly_gcd, rational_roots, squarefree_decompose
from ..lattice import Lattice, direct_sum, hyperbolic_plane, root_lattice_gram
from .model import CHI, WeierstrassModel

INF = 10**9

_EULER_ADDITIVE = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
_ROOT = {"III": ("A", 1), "IV": ("A", 2), "IV*": ("E", 6), "III*": ("E", 7), "II*": ("E", 8)}


@dataclass(frozen=True)
class KodairaFiber:
    """A singular fibre, or a batch of ``count`` conjugate ones at a non-rational place."""

    kind: str  # "I", "I*", "II", "III", "IV", "II*", "III*", "IV*"
    n: int = 0
    place: Place | None = None
    count: int = 1
    disc_order: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.kind not in ("I", "I*") + tuple(_EULER_ADDITIVE):
            raise InputError(f"unknown Kodaira type {self.kind!r}")

    @classmethod
    def from_symbol(cls, symbol: str, count: int = 1, place: Place | None = None) -> "KodairaFiber":
        s = symbol.replace("_", "").strip()
        if s in _EULER_ADDITIVE:
            return cls(s, 0, place, count)
        if s.startswith("I") and s.endswith("*"):
            return cls("I*", int(s[1:-1]), place, count)
        if s.startswith("I") and s[1:].isdigit():
            return cls("I", int(s[1:]), place, count)
        raise InputError(f"cannot parse fibre type {symbol!r}")

    @property
    def symbol(self) -> str:
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind

    @property
    def euler(self) -> int:
        if self.kind == "I":
            return self.n
        if self.kind == "I*":
            return self.n + 6
        return _EULER_ADDITIVE[self.kind]

    @property
    def root_type(self):
        """(letter, rank) of the lattice spanned by non-identity components, or None."""
        if self.kind == "I":
            return ("A", self.n - 1) if self.n >= 2 else None
        if self.kind == "I*":
            return ("D", self.n + 4)
        return _ROOT.get(self.kind)

    @property
    def root_label(self) -> str:
        rt = self.root_type
        return f"{rt[0]}{rt[1]}" if rt else "none"

    @property
    def rank(self) -> int:
        rt = self.root_type
        return rt[1] if rt else 0

    @property
    def root_disc(self) -> int:
        """|discriminant| of the root lattice (order of the component group)."""
        if self.kind == "I":
            return max(self.n, 1)
        if self.kind == "I*":
            return 4
        return {"III": 2, "IV": 3, "IV*": 3, "III*": 2, "II*": 1, "II": 1}[self.kind]

    # component groups -------------------------------------------------------
    def labels(self) -> list:
        """Simple components other than the identity component."""
        if self.kind == "I":
            return list(range(1, self.n))
        if self.kind == "I*":
            return [1, 2, 3]
        return {"III": [1], "IV": [1, 2], "IV*": [1, 2], "III*": [1]}.get(self.kind, [])

    def correction(self, i: int) -> Fraction:
        """Height correction contr(P) for a section meeting component ``i``."""
        return self.pair_correction(i, i)

    def pair_correction(self, i: int, j: int) -> Fraction:
        if i == 0 or j == 0:
            return Fraction(0)
        n = self.n
        if self.kind == "I":
            i, j = min(i, j), max(i, j)
            return Fraction(i * (n - j), n)
        if self.kind == "I*":
            if i == j:
                return Fraction(1) if i == 1 else 1 + Fraction(n, 4)
            if 1 in (i, j):
                return Fraction(1, 2)
            return Fraction(1, 2) + Fraction(n, 4)
        if self.kind in ("IV", "IV*"):
            base = Fraction(2, 3) if self.kind == "IV" else Fraction(4, 3)
            return base if i == j else base / 2
        return {"III": Fraction(1, 2), "III*": Fraction(3, 2)}[self.kind]

    def corrections(self) -> dict:
        return {i: self.correction(i) for i in self.labels()}

    def add(self, i: int, j: int) -> int:
        """Group law on component labels."""
        if self.kind == "I":
            return (i + j) % self.n
        if self.kind in ("III", "III*"):
            return (i + j) % 2
        if self.kind in ("IV", "IV*"):
            return (i + j) % 3
        if self.kind == "I*":
            if self.n % 2 == 0:
                return i ^ j
            # Z/4 with far components +-1 and the near one 2
            to_z4 = {0: 0, 1: 2, 2: 1, 3: 3}
            back = {v: k for k, v in to_z4.items()}
            return back[(to_z4[i] + to_z4[j]) % 4]
        return 0

    def ambiguity(self, i: int) -> tuple:
        """Labels indistinguishable from ``i`` by the local invariants."""
        if self.kind == "I" and i:
            return tuple(sorted({i, self.n - i}))
        if self.kind == "I*" and i in (2, 3):
            return (2, 3)
        if self.kind in ("IV", "IV*") and i:
            return (1, 2)
        return (i,)

    # component configuration -------------------------------------------------
    def component_gram(self) -> list:
        """Gram of the non-identity components, in the order used by :meth:`basis_index`."""
        rt = self.root_type
        if rt is None:
            return []
        if self.kind == "I":
            return root_lattice_gram("A", self.n - 1)
        if self.kind == "I*":
            # Theta1, C0..Cn, Theta2, Theta3
            m = self.n + 4
            g = [[-2 if i == j else 0 for j in range(m)] for i in range(m)]
            edges = [(0, 1)] + [(1 + k, 2 + k) for k in range(self.n)]
            edges += [(self.n + 1, self.n + 2), (self.n + 1, self.n + 3)]
            for a, b in edges:
                g[a][b] = g[b][a] = 1
            return g
        if self.kind == "IV*":
            # centre, p1, p2, q2, p3, q3 (q1 is the identity component)
            g = [[-2 if i == j else 0 for j in range(6)] for i in range(6)]
            for a, b in [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)]:
                g[a][b] = g[b][a] = 1
            return g
        if self.kind == "III*":
            # chain c1..c6 then c7 on c3 (c0 is the identity component)
            g = [[-2 if i == j else 0 for j in range(7)] for i in range(7)]
            for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]:
                g[a][b] = g[b][a] = 1
            return g
        if self.kind == "II*":
            # chain c1..c7 then c8 on c5
            g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
            for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]:
                g[a][b] = g[b][a] = 1
            return g
        return root_lattice_gram(*rt)

    def basis_index(self, i: int) -> int:
        """Position of simple component ``i`` in :meth:`component_gram`."""
        if self.kind == "I":
            return i - 1
        if self.kind == "I*":
            return {1: 0, 2: self.n + 2, 3: self.n + 3}[i]
        if self.kind == "IV*":
            return {1: 3, 2: 5}[i]
        if self.kind == "III*":
            return 5
        return i - 1

    def identity_neighbours(self) -> list:
        """Basis positions of non-identity components meeting the identity component."""
        if self.kind == "I":
            return sorted({0, self.n - 2}) if self.n >= 2 else []
        if self.kind == "I*":
            return [1]
        if self.kind == "IV*":
            return [1]
        if self.kind == "III*":
            return [0]
        if self.kind == "II*":
            return [0]
        if self.kind == "III":
            return [0, 0]
        if self.kind == "IV":
            return [0, 1]
        return []

    def __str__(self) -> str:
        where = f" at {self.place.label()}" if self.place is not None else ""
        mult = f"{self.count}x" if self.count != 1 else ""
        return f"{mult}{self.symbol}{where}"


# Tate's algorithm -------------------------------------------------------------

def _v(p: Poly) -> int:
    return INF if p.is_zero() else p.ord0()


def _change(a, r=0, s=0, t=0) -> tuple:
    """Coordinates x = x' + r, y = y' + s x' + t (u = 1)."""
    a1, a2, a3, a4, a6 = a
    r, s, t = (Poly.coerce(z) for z in (r, s, t))
    return (
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    )


def _invariants(a):
    return WeierstrassModel(*a)


def _multiple_root(f: Poly) -> Fraction:
    """The unique multiple root of f (double or triple), which is rational."""
    g = poly_gcd(f, f.derivative())
    if g.degree == 1:
        return -g[0]
    if g.degree == 2:
        return -g[1] / 2
    raise InconsistentData(f"{f} has no multiple root")


def tate_local(W: WeierstrassModel) -> tuple:
    """Kodaira type of W at t = 0, returned as (kind, n).

    W must have coefficients in Q[t]; the residue field Q has characteristic 0.
    """
    pi = Poly.t()
    a = W.coeffs
    vd = _v(W.disc)
    if vd == 0:
        return ("I", 0)
    # move the singular point of the reduction to (0, 0)
    a0 = [p[0] for p in a]
    b2, b4, b6 = a0[0] ** 2 + 4 * a0[1], 2 * a0[3] + a0[0] * a0[2], a0[2] ** 2 + 4 * a0[4]
    x0 = _multiple_root(Poly((b6, 2 * b4, b2, 4)))
    y0 = -(a0[0] * x0 + a0[2]) / 2
    a = _change(a, r=x0, t=y0)
    m = _invariants(a)
    if min(_v(a[2]), _v(a[3]), _v(a[4])) < 1:
        raise InconsistentData("failed to move the singular point to the origin")
    if _v(m.b2) == 0:
        return ("I", vd)
    if _v(a[4]) < 2:
        return ("II", 0)
    if _v(m.b8) < 3:
        return ("III", 0)
    if _v(m.b6) < 3:
        return ("IV", 0)
    # pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
    s = -a[0][0] / 2
    a = _change(a, s=s)
    a = _change(a, t=(-a[2][1] / 2) * pi)
    if _v(a[0]) < 1 or _v(a[1]) < 1 or _v(a[2]) < 2 or _v(a[3]) < 2 or _v(a[4]) < 3:
        raise InconsistentData("Tate step 6 normalisation failed")
    cubic = Poly((a[4][3], a[3][2], a[1][1], 1))
    g = poly_gcd(cubic, cubic.derivative())
    if g.degree == 0:
        return ("I*", 0)
    if g.degree == 1:
        beta = -g[0]
        a = _change(a, r=beta * pi)
        n = 1
        while n <= vd:
            if n % 2:
                k = (n + 3) // 2
                p, q = a[2][k], -a[4][n + 3]
                if p * p - 4 * q != 0:  # Y^2 + pY + q
                    return ("I*", n)
                a = _change(a, t=(-p / 2) * pi ** k)
            else:
                k = n // 2 + 2
                lead, p, q = a[1][1], a[3][k], a[4][n + 3]
                if p * p - 4 * lead * q != 0:
                    return ("I*", n)
                a = _change(a, r=(-p / (2 * lead)) * pi ** (k - 1))
            n += 1
        raise InconsistentData("I_n* loop did not terminate")
    beta = -g[1] / 2
    a = _change(a, r=beta * pi)
    p, q = a[2][2], -a[4][4]
    if p * p - 4 * q != 0:
        return ("IV*", 0)
    a = _change(a, t=(-p / 2) * pi ** 2)
    if _v(a[3]) < 4:
        return ("III*", 0)
    if _v(a[4]) < 6:
        return ("II*", 0)
    raise NonMinimalModel("model is not minimal (Tate step 11)")


def _check_type(kind: str, n: int, vd: int):
    fib = KodairaFiber(kind, n)
    expected = fib.euler
    if expected != vd:
        raise InconsistentData(f"{fib.symbol} with ord(disc) = {vd}")


def classify_at(W: WeierstrassModel, place: Place) -> KodairaFiber:
    """Kodaira type at a rational place (finite or infinity)."""
    if not place.is_rational:
        raise InputError("Tate's algorithm is run at rational places only")
    local = W.local_model(place)
    kind, n = tate_local(local)
    vd = _v(local.disc)
    _check_type(kind, n, vd)
    return KodairaFiber(kind, n, place, 1, vd)


def bad_places(W: WeierstrassModel) -> list:
    """[(place, ord(disc))] with non-rational squarefree factors kept whole."""
    d = W.disc
    out = []
    for g, m in squarefree_decompose(d):
        rest = g
        for r in sorted(set(rational_roots(g))):
            out.append((Place.at(r), m))
            rest = rest // Poly((-r, 1))
        if rest.degree > 0:
            out.append((Place(rest.monic()), m))
    if not W.in_k3_chart():
        raise InputError("coefficient degrees exceed the K3 weights 2i")
    vinf = 12 * CHI - d.degree
    if vinf > 0:
        out.append((Place.infinity(), vinf))
    return out


def _place_key(item):
    place = item[0]
    if place.is_infinity:
        return (2, 0, "")
    if place.is_rational:
        return (0, place.root, "")
    return (1, place.degree, str(place.poly))


def kodaira_classify(W: WeierstrassModel) -> list:
    """All singular fibres of W, in place order (rational, batches, infinity)."""
    c4 = W.c4
    fibres = []
    for place, m in sorted(bad_places(W), key=_place_key):
        if place.is_rational:
            fibres.append(classify_at(W, place))
            continue
        if c4.is_zero() or poly_gcd(place.poly, c4).degree > 0:
            raise AdditiveAtNonRationalPlace(f"additive reduction at {place.label()}")
        fibres.append(KodairaFiber("I", m, place, place.degree, m))
    return fibres


def euler_number(fibres) -> int:
    return sum(f.euler * f.count for f in fibres)


def fiber_table(fibres) -> dict:
    """{symbol: total count}, e.g. {"I14": 1, "I2": 1, "I1": 8}."""
    out: dict = {}
    for f in fibres:
        out[f.symbol] = out.get(f.symbol, 0) + f.count
    return out


def trivial_lattice(fibres) -> Lattice:
    """U plus one root lattice per reducible fibre."""
    parts = [hyperbolic_plane()]
    for f in fibres:
        for _ in range(f.count):
            if f.rank:
                parts.append(Lattice(f.component_gram(), label=f.root_label))
    return direct_sum(*parts)
