"""Even integral lattices, discriminant forms and gluing.

Root lattices use the negative-definite convention (every root has
square -2).  Discriminant-form values are kept reduced: ``q`` in [0, 2)
and the bilinear pairing in [0, 1).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

import numpy as np
from sympy import Matrix, Rational, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import (
    DegenerateLattice,
    DegenerateSublattice,
    GroupTooLarge,
    InputError,
    InvalidParameter,
    NonIntegralGlue,
    NonPrimitiveVector,
    NotInDual,
    OddGlue,
    OddResult,
)
from .exactalg import as_rat, rat_str

DEFAULT_GROUP_CAP = 10**4


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * (x // m)


def _smat(rows) -> Matrix:
    return Matrix([[Rational(_frac(x).numerator, _frac(x).denominator) for x in r] for r in rows])


def _fvec(vec) -> tuple:
    return tuple(_frac(x) for x in vec)


class Lattice:
    """A non-degenerate even integral lattice given by its Gram matrix."""

    def __init__(self, gram, label: str | None = None, check: bool = True):
        g = np.array(gram, dtype=np.int64)
        if g.ndim == 1 and g.size == 0:
            g = g.reshape(0, 0)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InvalidParameter("Gram matrix must be square")
        if check:
            if not np.array_equal(g, g.T):
                raise InvalidParameter("Gram matrix must be symmetric")
            if np.any(np.diag(g) % 2):
                raise OddResult("lattice is not even (odd diagonal entry)")
        g.setflags(write=False)
        self.gram = g
        self.label = label
        self._det = None
        if check and self.rank and self.det == 0:
            raise DegenerateLattice("Gram matrix is singular")

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    @property
    def det(self) -> int:
        if self._det is None:
            self._det = int(self.sym().det(method="bareiss")) if self.rank else 1
        return self._det

    def sym(self) -> Matrix:
        return Matrix(self.gram.tolist())

    def inner(self, x, y) -> Fraction:
        x, y = _fvec(x), _fvec(y)
        g = self.gram
        return sum((x[i] * int(g[i, j]) * y[j] for i in range(self.rank) for j in range(self.rank)
                    if x[i] and y[j]), Fraction(0))

    def square(self, x) -> Fraction:
        return self.inner(x, x)

    def signature(self) -> tuple:
        return signature(self)

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"<Lattice{name} rank={self.rank} det={self.det}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and np.array_equal(self.gram, other.gram)

    def __hash__(self) -> int:
        return hash(self.gram.tobytes())


# constructors ----------------------------------------------------------------

def _dynkin_gram(n: int, edges) -> list:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def root_lattice_gram(kind: str, n: int) -> list:
    """Negative-definite Gram of A_n, D_n or E_n in the Bourbaki-style chain labelling."""
    if kind == "A":
        if n < 1:
            raise InvalidParameter("A_n needs n >= 1")
        return _dynkin_gram(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "D":
        if n < 4:
            raise InvalidParameter("D_n needs n >= 4")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return _dynkin_gram(n, edges)
    if kind == "E":
        if n not in (6, 7, 8):
            raise InvalidParameter("E_n needs n in {6, 7, 8}")
        # chain of n-1 nodes, extra node on the third one
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
        return _dynkin_gram(n, edges)
    raise InvalidParameter(f"unknown root system {kind!r}")


def hyperbolic_plane() -> Lattice:
    return Lattice([[0, 1], [1, 0]], label="U")


def rank1(m: int) -> Lattice:
    return Lattice([[m]], label=f"<{m}>")


def binary(a: int, b: int, c: int) -> Lattice:
    return Lattice([[a, b], [b, c]], label=f"[{a},{b};{b},{c}]")


def named_lattice(name: str, *params) -> Lattice:
    """Build U, A_n, D_n, E6, E7, E8, rank1(m) or binary(a, b, c) by name.

    >>> named_lattice("A1").gram.tolist()
    [[-2]]
    """
    key = name.replace("_", "").strip()
    if key == "U":
        return hyperbolic_plane()
    if key == "rank1":
        return rank1(*params)
    if key == "binary":
        return binary(*params)
    if key and key[0] in "ADE":
        try:
            n = int(key[1:]) if len(key) > 1 else int(params[0])
        except (ValueError, IndexError) as exc:
            raise InvalidParameter(f"bad lattice name {name!r}") from exc
        return Lattice(root_lattice_gram(key[0], n), label=f"{key[0]}{n}")
    raise InvalidParameter(f"unknown lattice {name!r}")


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(L.rank for L in lattices)
    g = np.zeros((n, n), dtype=np.int64)
    k = 0
    for L in lattices:
        g[k:k + L.rank, k:k + L.rank] = L.gram
        k += L.rank
    labels = [L.label or "?" for L in lattices]
    return Lattice(g, label="+".join(labels), check=False)


def twist(L: Lattice, k: int) -> Lattice:
    """The lattice L(k): every inner product multiplied by k."""
    if k == 0:
        raise InvalidParameter("twist by zero")
    g = L.gram * k
    if np.any(np.diag(g) % 2):
        raise OddResult(f"{L.label}({k}) is odd")
    return Lattice(g, label=f"{L.label or '?'}({k})", check=False)


def disc(L: Lattice) -> int:
    return L.det


def signature(L: Lattice) -> tuple:
    """(positive, negative) index via exact congruence diagonalisation."""
    a = [[Fraction(int(x)) for x in row] for row in L.gram]
    n = len(a)

    def add_to(k, j, f):
        # e_k += f * e_j, applied as a congruence
        for i in range(n):
            a[k][i] += f * a[j][i]
        for i in range(n):
            a[i][k] += f * a[i][j]

    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                add_to(k, j, 1)
                if a[k][k] == 0:
                    add_to(k, j, 1)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                add_to(k, j, 1)
        p = a[k][k]
        pos += p > 0
        neg += p < 0
        for i in range(k + 1, n):
            if a[i][k]:
                add_to(i, k, -a[i][k] / p)
    return pos, neg


# discriminant forms ------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic form on Z/d_1 x ... x Z/d_k."""

    orders: tuple
    qvals: tuple
    pairing: tuple  # symmetric matrix of Fractions mod 1
    generators: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, orders, qvals, pairing=None, generators=()):
        orders = tuple(int(d) for d in orders)
        qvals = tuple(_mod(as_rat(q), 2) for q in qvals)
        k = len(orders)
        if pairing is None:
            pairing = [[Fraction(0)] * k for _ in range(k)]
        pm = [[_mod(as_rat(pairing[i][j]), 1) for j in range(k)] for i in range(k)]
        for i in range(k):
            pm[i][i] = _mod(qvals[i], 1)
            for j in range(i):
                pm[j][i] = pm[i][j] = pm[min(i, j)][max(i, j)]
        return cls(orders, qvals, tuple(tuple(r) for r in pm), tuple(generators))

    @property
    def size(self) -> int:
        return reduce(lambda a, b: a * b, self.orders, 1)

    def q(self, x: Sequence[int]) -> Fraction:
        val = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            if x[i]:
                val += x[i] * x[i] * self.qvals[i]
                for j in range(i + 1, k):
                    if x[j]:
                        val += 2 * x[i] * x[j] * self.pairing[i][j]
        return _mod(val, 2)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        k = len(self.orders)
        val = sum((x[i] * y[j] * self.pairing[i][j] for i in range(k) for j in range(k)
                   if x[i] and y[j]), Fraction(0))
        return _mod(val, 1)

    def negate(self) -> "DiscriminantForm":
        return DiscriminantForm.build(self.orders, [-q for q in self.qvals],
                                      [[-x for x in r] for r in self.pairing], self.generators)

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def element_order(self, x) -> int:
        return reduce(lcm, (d // gcd(xi, d) for xi, d in zip(x, self.orders)), 1)

    def __add__(self, other: "DiscriminantForm") -> "DiscriminantForm":
        k, m = len(self.orders), len(other.orders)
        pm = [[Fraction(0)] * (k + m) for _ in range(k + m)]
        for i in range(k):
            for j in range(k):
                pm[i][j] = self.pairing[i][j]
        for i in range(m):
            for j in range(m):
                pm[k + i][k + j] = other.pairing[i][j]
        return DiscriminantForm.build(self.orders + other.orders, self.qvals + other.qvals, pm)

    def value_counts(self) -> dict:
        """Multiset {(order, q): count} over all elements -- an isomorphism invariant."""
        counts: dict = {}
        for x in self.elements():
            key = (self.element_order(x), self.q(x))
            counts[key] = counts.get(key, 0) + 1
        return counts

    def to_json(self) -> dict:
        k = len(self.orders)
        return {
            "orders": list(self.orders),
            "q": [rat_str(q) for q in self.qvals],
            "pairing": [[rat_str(self.pairing[i][j]) for j in range(k)] for i in range(k)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DiscriminantForm":
        try:
            return cls.build(data["orders"], data["q"], data.get("pairing"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad discriminant form JSON: {exc}") from exc


def cyclic_form(order: int, q) -> DiscriminantForm:
    """The form Z/order with a generator of value q."""
    return DiscriminantForm.build([order], [q])


def discriminant_form(L: Lattice) -> DiscriminantForm:
    """q_L on L^dual / L, with generators as rational coordinates in L's basis."""
    if L.rank == 0:
        return DiscriminantForm.build([], [])
    if L.det == 0:
        raise DegenerateLattice("discriminant form of a degenerate lattice")
    D, _, T = smith_normal_decomp(L.sym(), domain=ZZ)
    gens, orders = [], []
    for i in range(L.rank):
        d = abs(int(D[i, i]))
        if d != 1:
            orders.append(d)
            gens.append(tuple(Fraction(int(T[j, i]), d) for j in range(L.rank)))
    k = len(gens)
    qvals = [L.square(g) for g in gens]
    pairing = [[L.inner(gens[i], gens[j]) for j in range(k)] for i in range(k)]
    return DiscriminantForm.build(orders, qvals, pairing, gens)


def disc_forms_isomorphic(q1: DiscriminantForm, q2: DiscriminantForm, negate: bool = False,
                          cap: int = DEFAULT_GROUP_CAP) -> bool:
    """Decide q1 ~ q2 (or q1 ~ -q2) by backtracking over generator images."""
    if q1.size > cap or q2.size > cap:
        raise GroupTooLarge(f"group orders {q1.size}, {q2.size} exceed cap {cap}")
    if negate:
        q2 = q2.negate()
    if q1.size != q2.size:
        return False
    if q1.value_counts() != q2.value_counts():
        return False
    k = len(q1.orders)
    if k == 0:
        return True

    elems = list(q2.elements())
    buckets: dict = {}
    for x in elems:
        buckets.setdefault((q2.element_order(x), q2.q(x)), []).append(x)
    cand = [buckets.get((d, q1.qvals[i]), []) for i, d in enumerate(q1.orders)]

    def generated(images) -> int:
        seen = {tuple([0] * len(q2.orders))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for h in images:
                    y = tuple((a + b) % d for a, b, d in zip(x, h, q2.orders))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(seen)

    def search(i, images):
        if i == k:
            return generated(images) == q2.size
        for h in cand[i]:
            if all(q2.b(images[j], h) == q1.pairing[j][i] for j in range(i)):
                if search(i + 1, images + [h]):
                    return True
        return False

    return search(0, [])


def same_genus(L1: Lattice, L2: Lattice) -> bool:
    """Equality of rank, signature, |disc| and discriminant form."""
    return (L1.rank == L2.rank and signature(L1) == signature(L2) and abs(L1.det) == abs(L2.det)
            and disc_forms_isomorphic(discriminant_form(L1), discriminant_form(L2)))


# gluing, complements, projections ----------------------------------------------

def _integer_row_basis(rows: list) -> list:
    """Row-echelon Z-basis of the lattice spanned by integer row vectors."""
    rows = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                f = r[col] // piv[col]
                r = [a - f * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = rest
        col += 1
    return basis


def overlattice(L: Lattice, glues: Sequence) -> Lattice:
    """Lattice generated by L and glue vectors (rational coordinates in L's basis)."""
    glues = [_fvec(g) for g in glues]
    n = L.rank
    for g in glues:
        if len(g) != n:
            raise InputError("glue vector has wrong length")
        if any(v.denominator != 1 for v in _gram_times(L, g)):
            raise NonIntegralGlue(f"glue {g} is not in the dual lattice")
        sq = L.square(g)
        if sq.denominator != 1 or sq.numerator % 2:
            raise OddGlue(f"glue square {rat_str(sq)} is not an even integer")
    for g, h in itertools.combinations(glues, 2):
        if L.inner(g, h).denominator != 1:
            raise NonIntegralGlue("glue vectors pair non-integrally")
    rows = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)] + glues
    den = reduce(lcm, (x.denominator for r in rows for x in r), 1)
    ints = [[int(x * den) for x in r] for r in rows]
    basis = [[Fraction(x, den) for x in r] for r in _integer_row_basis(ints)]
    B = _smat(basis)
    G = B * L.sym() * B.T
    label = f"{L.label or '?'}+glue"
    return Lattice([[int(G[i, j]) for j in range(n)] for i in range(n)], label=label)


def _gram_times(L: Lattice, x) -> tuple:
    g = L.gram
    return tuple(sum((int(g[i, j]) * x[j] for j in range(L.rank)), Fraction(0)) for i in range(L.rank))


def orthogonal_complement(L: Lattice, v: Sequence[int]) -> Lattice:
    """Gram matrix of {x in L : x.v = 0} on an integral basis."""
    v = [int(x) for x in v]
    if not any(v):
        raise NonPrimitiveVector("zero vector")
    if reduce(gcd, v) != 1:
        raise NonPrimitiveVector(f"{v} is not primitive")
    w = [int(x) for x in _gram_times(L, v)]
    n = L.rank
    # unimodular column operations bringing w to (g, 0, ..., 0)
    T = [[int(i == j) for j in range(n)] for i in range(n)]
    r = list(w)
    while sum(1 for x in r if x) > 1:
        p = min((i for i in range(n) if r[i]), key=lambda i: abs(r[i]))
        for j in range(n):
            if j != p and r[j]:
                f = r[j] // r[p]
                r[j] -= f * r[p]
                for i in range(n):
                    T[i][j] -= f * T[i][p]
    piv = next(i for i in range(n) if r[i])
    kernel = [[T[i][j] for i in range(n)] for j in range(n) if j != piv]
    B = Matrix(kernel)
    G = B * L.sym() * B.T
    m = n - 1
    return Lattice([[int(G[i, j]) for j in range(m)] for i in range(m)],
                   label=f"{v}^perp in {L.label or '?'}")


def orthogonal_project(L: Lattice, x, S: Sequence) -> tuple:
    """Component of x orthogonal to the span of the rows of S (all in L's coordinates)."""
    x = _fvec(x)
    S = [_fvec(s) for s in S]
    if not S:
        return x
    G = L.sym()
    Sm = _smat(S)
    M = Sm * G * Sm.T
    if M.det() == 0:
        raise DegenerateSublattice("sublattice Gram is singular")
    xv = _smat([x]).T
    coeffs = M.inv() * (Sm * G * xv)
    proj = xv - Sm.T * coeffs
    return tuple(_frac(proj[i, 0]) for i in range(L.rank))


def disc_form_eval(L: Lattice, x) -> tuple:
    """(order of x + L in L^dual / L, q(x) mod 2) for x in L^dual."""
    x = _fvec(x)
    if any(v.denominator != 1 for v in _gram_times(L, x)):
        raise NotInDual(f"{x} is not in the dual lattice")
    order = reduce(lcm, (v.denominator for v in x), 1)
    return order, _mod(L.square(x), 2)


# serialization ---------------------------------------------------------------

def lattice_to_json(L: Lattice) -> dict:
    return {"label": L.label or "", "gram": L.gram.tolist()}


def lattice_from_json(data) -> Lattice:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return Lattice(data["gram"], label=data.get("label") or None)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad lattice JSON: {exc}") from exc
