"""2-isogenies of y^2 = x(x^2 + ax + b) over Q(t) with kernel {O, (0, 0)}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentData, NoRationalPreimage, PointNotOnCurve, SingularKernel
from .exactalg import Poly, RatFunc
from .ellsurf.model import ZERO, SectionPoint, WeierstrassModel, j_invariant


@dataclass(frozen=True)
class TwoIsogeny:
    """phi: Extended(a, b) -> Extended(-2a, a^2 - 4b).

    ``rescale`` is set on duals: their natural target Extended(4a, 16b) is
    identified with the original source by (x, y) -> (x / 4, y / 8).
    """

    source: WeierstrassModel
    target: WeierstrassModel
    rescale: bool = False

    @property
    def kernel(self) -> SectionPoint:
        return SectionPoint(RatFunc(0), RatFunc(0))


def quotient_curve(W: WeierstrassModel) -> TwoIsogeny:
    a, b = W.a, W.b
    if b.is_zero() or (a * a - 4 * b).is_zero():
        raise SingularKernel("(0, 0) is singular on the generic fibre")
    target = WeierstrassModel.extended(-2 * a, a * a - 4 * b, note="2-isogenous quotient")
    return TwoIsogeny(W, target)


def _raw_map(W: WeierstrassModel, P: SectionPoint) -> SectionPoint:
    if P.is_zero or P.x.is_zero():
        return ZERO
    a, b = RatFunc(W.a), RatFunc(W.b)
    x, y = P.x, P.y
    return SectionPoint(x + a + b / x, y * (1 - b / (x * x)))


def map_point(iso: TwoIsogeny, P: SectionPoint) -> SectionPoint:
    """phi(x, y) = (x + a + b/x, y (1 - b/x^2)); the kernel goes to O."""
    if not iso.source.contains(P):
        raise PointNotOnCurve(f"{P} is not on the source curve")
    Q = _raw_map(iso.source, P)
    if iso.rescale and not Q.is_zero:
        Q = SectionPoint(Q.x / 4, Q.y / 8)
    if not iso.target.contains(Q):
        raise PointNotOnCurve("image is off the target: inconsistent isogeny data")
    return Q


def dual(iso: TwoIsogeny) -> TwoIsogeny:
    """The quotient of the target by its own (0, 0), landing back on the source."""
    if iso.rescale:
        raise SingularKernel("dual of a dual is the original isogeny; use it directly")
    natural = quotient_curve(iso.target).target
    if natural.coeffs != iso.source.scaled(Fraction(1, 2)).coeffs:
        raise InconsistentData("double quotient is not Extended(4a, 16b)")
    return TwoIsogeny(iso.target, iso.source, rescale=True)


def preimage_point(iso: TwoIsogeny, Q: SectionPoint) -> SectionPoint:
    """A Q(t)-point P with phi(P) = Q, or NoRationalPreimage.

    Solves x^2 + (a - X) x + b = 0 for x; its discriminant equals Y^2 / X,
    so the rationality test is a square-root extraction in Q(t).
    """
    if not iso.target.contains(Q):
        raise PointNotOnCurve(f"{Q} is not on the target curve")
    W = iso.source
    if Q.is_zero:
        return ZERO
    X, Y = Q.x, Q.y
    if iso.rescale:
        X, Y = 4 * X, 8 * Y
    a, b = RatFunc(W.a), RatFunc(W.b)
    if X.is_zero():
        # over the kernel of the dual: x^2 + a x + b = 0
        disc = a * a - 4 * b
        r = disc.sqrt()
        if r is None:
            raise NoRationalPreimage("x^2 + a x + b has no root in Q(t)")
        P = SectionPoint((-a + r) / 2, RatFunc(0))
    else:
        r = (Y * Y / X).sqrt()
        if r is None:
            raise NoRationalPreimage("Y^2 / X is not a square in Q(t)")
        P = None
        for root in ((X - a + r) / 2, (X - a - r) / 2):
            if root.is_zero():
                continue
            yy = (root * (root * root + a * root + b)).sqrt()
            if yy is None:
                continue
            for y in (yy, -yy):
                cand = SectionPoint(root, y)
                if map_point(iso, cand) == Q:
                    P = cand
                    break
            if P is not None:
                break
        if P is None:
            raise NoRationalPreimage("no sign choice of y lands on Q")
    if not W.contains(P):
        raise PointNotOnCurve("computed preimage is off the source curve")
    return P


def j_match(W: WeierstrassModel) -> bool:
    """j of the double quotient equals j of W identically in Q(t)."""
    iso = quotient_curve(W)
    back = dual(iso)
    twice = quotient_curve(iso.target).target
    return j_invariant(twice) == j_invariant(W) and back.target == W


def sandwich_report(W: WeierstrassModel) -> dict:
    iso = quotient_curve(W)
    twice = quotient_curve(iso.target).target
    return {
        "source": str(W),
        "quotient": str(iso.target),
        "double_quotient": str(twice),
        "j_match": j_invariant(twice) == j_invariant(W),
    }
