"""Mordell-Weil heights, component indices and Neron-Severi Gram matrices.

Component indices come from the valuations of the 2- and 3-division
polynomials at the place (the classical local height formulas), which on a
minimal model identify the component a section meets up to the symmetries
of the fibre.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import sympy

from ..errors import InconsistentData, NonRationalPlace, SingularHeightGram
from ..exactalg import Poly, RatFunc, poly_gcd, squarefree_decompose, valuation
from ..lattice import Lattice, overlattice
from .fibers import KodairaFiber, kodaira_classify
from .model import (
    CHI,
    X_WEIGHT,
    SectionPoint,
    WeierstrassModel,
    local_point,
    point_add,
)

HEIGHT_CONSTANT = 2 * CHI


def _psi2(W: WeierstrassModel, P: SectionPoint) -> RatFunc:
    return 2 * P.y + W.a1 * P.x + W.a3


def _psi3(W: WeierstrassModel, P: SectionPoint) -> RatFunc:
    x = P.x
    return 3 * x ** 4 + W.b2 * x ** 3 + 3 * W.b4 * x * x + 3 * W.b6 * x + W.b8


def _fx(W: WeierstrassModel, P: SectionPoint) -> RatFunc:
    """Partial derivative of the Weierstrass equation in x (up to sign)."""
    return 3 * P.x * P.x + 2 * W.a2 * P.x + W.a4 - W.a1 * P.y


def _ord0(f: RatFunc) -> int:
    if f.is_zero():
        return 10**9
    return f.num.ord0() - f.den.ord0()


def intersection_with_zero(W: WeierstrassModel, P: SectionPoint) -> Fraction:
    """(P . O) from the poles of x(P), counted over all places including infinity."""
    if P.is_zero:
        raise InconsistentData("(O . O) is the self-intersection -2, not a pole count")
    total = Fraction(0)
    for g, m in squarefree_decompose(P.x.den):
        if m % 2:
            raise InconsistentData(f"x(P) has a pole of odd order {m}: section data is not minimal")
        total += Fraction(m * g.degree, 2)
    excess = P.x.degree() - X_WEIGHT if P.x else 0
    if excess > 0:
        if excess % 2:
            raise InconsistentData("x(P) has a pole of odd order at infinity")
        total += Fraction(excess, 2)
    return total


def _additive_correction(W: WeierstrassModel, P: SectionPoint) -> Fraction:
    v2 = _ord0(_psi2(W, P))
    v3 = _ord0(_psi3(W, P))
    if v3 >= 3 * v2:
        return Fraction(2 * v2, 3)
    return Fraction(v3, 4)


def _label_for(fiber: KodairaFiber, contr: Fraction) -> int:
    if contr == 0:
        return 0
    for label in fiber.labels():
        if fiber.correction(label) == contr:
            return label
    raise InconsistentData(f"correction {contr} impossible for a {fiber.symbol} fibre")


def component_index(W: WeierstrassModel, P: SectionPoint, fiber: KodairaFiber) -> int:
    """Label of the component met by P at a rational place (I_n: up to i <-> n-i).

    I_n fibres return i in 0..n//2, I_n* returns 1 (near) or 2 (far, up to
    the swap with 3), IV and IV* return 1 (up to the swap with 2).
    """
    if fiber.place is None or not fiber.place.is_rational:
        raise NonRationalPlace("component index is defined here only at rational places")
    if P.is_zero or fiber.rank == 0:
        return 0
    local = W.local_model(fiber.place)
    Pl = local_point(P, fiber.place)
    if _ord0(Pl.x) < 0:
        return 0
    if _ord0(_psi2(local, Pl)) <= 0 or _ord0(_fx(local, Pl)) <= 0:
        return 0
    if fiber.kind == "I":
        return min(_ord0(_psi2(local, Pl)), fiber.n // 2)
    return _label_for(fiber, _additive_correction(local, Pl))


def component_indices(W: WeierstrassModel, P: SectionPoint, fiber: KodairaFiber) -> dict:
    """{label: number of geometric fibres} for P over all copies of ``fiber``."""
    if fiber.place is None:
        raise InconsistentData("fibre has no place attached")
    if fiber.place.is_rational:
        return {component_index(W, P, fiber): 1}
    if fiber.kind != "I":
        raise NonRationalPlace("additive fibres at non-rational places are not supported")
    g = fiber.place.poly
    if P.is_zero or fiber.n < 2:
        return {0: fiber.count}
    # roots where x(P) is integral and P passes through the node
    g1 = g.exact_div(poly_gcd(g, P.x.den)) if poly_gcd(g, P.x.den).degree > 0 else g
    psi2 = _psi2(W, P)
    gs = poly_gcd(g1, _fx(W, P).num)
    if not psi2.is_zero():
        gs = poly_gcd(gs, psi2.num)
    out = {}
    if gs.degree <= 0:
        return {0: fiber.count}
    half = fiber.n // 2
    if psi2.is_zero():
        out[half] = gs.degree
    else:
        prev = 0
        at_least = {}
        for k in range(1, half + 1):
            cur = poly_gcd(gs ** k, psi2.num).degree
            at_least[k] = cur - prev
            prev = cur
        for k in range(1, half + 1):
            exact = at_least[k] - at_least.get(k + 1, 0) if k < half else at_least[k]
            if exact:
                out[k] = exact
    hit = sum(out.values())
    if fiber.count - hit:
        out[0] = fiber.count - hit
    return dict(sorted(out.items()))


def fiber_correction(W: WeierstrassModel, P: SectionPoint, fiber: KodairaFiber) -> Fraction:
    """Sum of contr_v(P) over the geometric copies of ``fiber``."""
    return sum((fiber.correction(i) * c for i, c in component_indices(W, P, fiber).items()),
               Fraction(0))


def height(W: WeierstrassModel, P: SectionPoint, fibers=None) -> Fraction:
    """h(P) = 2 chi + 2 (P.O) - sum_v contr_v(P)."""
    if P.is_zero:
        return Fraction(0)
    if fibers is None:
        fibers = kodaira_classify(W)
    h = HEIGHT_CONSTANT + 2 * intersection_with_zero(W, P)
    for f in fibers:
        if f.rank:
            h -= fiber_correction(W, P, f)
    return h


def height_pairing(W: WeierstrassModel, P: SectionPoint, Q: SectionPoint, fibers=None) -> Fraction:
    if fibers is None:
        fibers = kodaira_classify(W)
    hp, hq = height(W, P, fibers), height(W, Q, fibers)
    return (height(W, point_add(W, P, Q), fibers) - hp - hq) / 2


def height_report(W: WeierstrassModel, P: SectionPoint, fibers=None) -> dict:
    if fibers is None:
        fibers = kodaira_classify(W)
    comps = {}
    for f in fibers:
        if f.rank:
            idx = component_indices(W, P, f)
            comps[f"{f.symbol} at {f.place.label()}"] = idx
    return {
        "height": height(W, P, fibers),
        "pO": intersection_with_zero(W, P),
        "components": comps,
    }


# discriminants and Gram matrices -------------------------------------------------

def _det(M) -> Fraction:
    if not M:
        return Fraction(1)
    d = sympy.Matrix([[sympy.Rational(Fraction(z).numerator, Fraction(z).denominator) for z in r]
                      for r in M]).det()
    return Fraction(int(d.p), int(d.q))


def ns_disc(fibers, height_gram=(), torsion_order: int = 1) -> Fraction:
    """|disc NS| = prod |disc of fibre root lattices| * det(height Gram) / |torsion|^2."""
    det = _det([list(r) for r in height_gram])
    if det <= 0:
        raise SingularHeightGram("height Gram matrix must be positive definite")
    prod = 1
    for f in fibers:
        prod *= f.root_disc ** f.count
    return Fraction(prod) * det / torsion_order ** 2


def fiber_from_symbol(symbol: str, count: int = 1) -> KodairaFiber:
    return KodairaFiber.from_symbol(symbol, count)


@dataclass
class SectionSpec:
    """Abstract section data: (P.O), components met, and optionally its height.

    ``components`` maps the index of a fibre copy (see :func:`fiber_copies`)
    to a component label; missing copies mean the identity component.
    """

    name: str
    pO: Fraction
    components: dict = field(default_factory=dict)
    height: Fraction | None = None
    torsion: bool = False


def fiber_copies(fibers) -> list:
    """Expand batches into one entry per geometric fibre, keeping reducible ones only."""
    out = []
    for f in fibers:
        if f.rank:
            out.extend([f] * f.count)
    return out


def _copy_labels(W, P, fibers) -> list:
    """Per-copy component labels of P; batches with ambiguous labels are rejected."""
    labels = []
    for f in fibers:
        if not f.rank:
            continue
        counts = component_indices(W, P, f)
        if f.count > 1 and len(f.labels()) > 1 and len([k for k in counts if k]) > 0:
            if any(len(f.ambiguity(k)) > 1 for k in counts if k):
                raise NonRationalPlace(f"cannot orient components over the batch {f}")
        for k, c in counts.items():
            labels.extend([k] * c)
    return labels


def _orientations(f: KodairaFiber, label: int) -> tuple:
    return f.ambiguity(label) if label else (0,)


def section_specs(W: WeierstrassModel, sections, fibers=None, names=None) -> list:
    """SectionSpecs for explicit sections, with component labels oriented consistently.

    Labels are fixed modulo the fibre symmetries by requiring that the
    components met by P + Q be the sums of those met by P and Q, for every
    pair of given sections.
    """
    if fibers is None:
        fibers = kodaira_classify(W)
    copies = fiber_copies(fibers)
    sections = list(sections)
    names = names or [f"P{k + 1}" for k in range(len(sections))]
    raw = [_copy_labels(W, P, fibers) for P in sections]
    sums = {}
    for i in range(len(sections)):
        for j in range(i + 1, len(sections)):
            sums[(i, j)] = _copy_labels(W, point_add(W, sections[i], sections[j]), fibers)
    chosen = [[0] * len(copies) for _ in sections]
    for c, f in enumerate(copies):
        options = [_orientations(f, raw[k][c]) for k in range(len(sections))]
        for pick in product(*options):
            if pick and pick[0] != options[0][0]:
                continue  # fix the orientation of the first section
            ok = all(f.add(pick[i], pick[j]) in _orientations(f, sums[(i, j)][c])
                     for (i, j) in sums)
            if ok:
                for k in range(len(sections)):
                    chosen[k][c] = pick[k]
                break
        else:
            raise InconsistentData(f"no consistent component orientation at {f}")
    out = []
    for k, P in enumerate(sections):
        h = height(W, P, fibers)
        comps = {c: lab for c, lab in enumerate(chosen[k]) if lab}
        out.append(SectionSpec(names[k], intersection_with_zero(W, P), comps, h, h == 0))
    return out


@dataclass
class NSModel:
    lattice: Lattice
    basis: list
    fibers: list


def _fraction_inverse(G):
    M = sympy.Matrix(G).inv()
    return [[Fraction(int(sympy.Rational(z).p), int(sympy.Rational(z).q)) for z in M.row(i)]
            for i in range(M.rows)]


def ns_gram(fibers, sections=(), pairings=None, torsion=()) -> NSModel:
    """Gram matrix of the lattice spanned by O, F, fibre components and sections.

    ``sections`` are non-torsion SectionSpecs; ``pairings`` is their height
    pairing matrix (defaults to the diagonal of their heights, valid for one
    section); ``torsion`` are torsion SectionSpecs adjoined as glue vectors.
    """
    copies = fiber_copies(fibers)
    blocks = [f.component_gram() for f in copies]
    offsets, pos = [], 2
    for b in blocks:
        offsets.append(pos)
        pos += len(b)
    n_fix = pos
    sections = list(sections)
    size = n_fix + len(sections)
    G = [[0] * size for _ in range(size)]
    G[0][0], G[0][1], G[1][0] = -2, 1, 1
    basis = ["O", "F"]
    for c, (f, b, off) in enumerate(zip(copies, blocks, offsets)):
        for i, row in enumerate(b):
            for j, val in enumerate(row):
                G[off + i][off + j] = val
        basis.extend(f"{f.symbol}[{c}].{k}" for k in range(len(b)))

    def comp_vector(spec):
        vec = [0] * n_fix
        for c, lab in spec.components.items():
            if lab:
                vec[offsets[c] + copies[c].basis_index(lab)] = 1
        return vec

    if pairings is None:
        if len(sections) > 1:
            raise InconsistentData("height pairings are required for several sections")
        pairings = [[s.height] for s in sections]
    for k, s in enumerate(sections):
        p = n_fix + k
        basis.append(s.name)
        vec = comp_vector(s)
        G[p][p] = -2
        G[p][0] = G[0][p] = int(s.pO)
        G[p][1] = G[1][p] = 1
        for i in range(2, n_fix):
            G[p][i] = G[i][p] = vec[i]
    for k, s in enumerate(sections):
        for l in range(k + 1, len(sections)):
            t = sections[l]
            corr = Fraction(0)
            for c, f in enumerate(copies):
                corr += f.pair_correction(s.components.get(c, 0), t.components.get(c, 0))
            val = 2 + s.pO + t.pO - Fraction(pairings[k][l]) - corr
            if val.denominator != 1:
                raise InconsistentData(f"non-integral intersection {s.name}.{t.name} = {val}")
            G[n_fix + k][n_fix + l] = G[n_fix + l][n_fix + k] = int(val)
    L = Lattice(G, label="NS")
    glues = []
    comp_idx = list(range(2, n_fix))
    if torsion and comp_idx:
        sub = [[G[i][j] for j in comp_idx] for i in comp_idx]
        inv = _fraction_inverse(sub)
        for s in torsion:
            e = comp_vector(s)[2:]
            coeffs = [sum(inv[i][j] * e[j] for j in range(len(e))) for i in range(len(e))]
            glue = [Fraction(0), Fraction(0)] + coeffs + [Fraction(0)] * len(sections)
            glues.append(glue)
        L = overlattice(L, glues)
    return NSModel(L, basis, list(fibers))
