"""The three K3 families, their lattice enhancements and the sandwich checks.

Series 1:  y^2 = x^3 + t^3 a(t) x + t^5 b(t),  deg a, b = 2   (2 x III*)
Series 2:  y^2 = x(x^2 + a(t) x + t),           deg a = 4     (I14 + I2)
Series 3:  y^2 = x(x^2 + a(t) x + t^3),         deg a = 4     (I10 + I6)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import (
    CriterionFailed,
    DegenerateParams,
    InconsistentData,
    InputError,
    K3SandwichError,
    NoRepresentation,
)
from .exactalg import Poly, RatFunc, T, rat_str
from .lattice import (
    Lattice,
    direct_sum,
    disc,
    disc_forms_isomorphic,
    discriminant_form,
    hyperbolic_plane,
    orthogonal_complement,
    overlattice,
    rank1,
    root_lattice_gram,
    signature,
    twist,
)
from .quadform import SERIES_FORMS, criterion, primitive_representations
from .ellsurf.fibers import KodairaFiber, euler_number, fiber_table, kodaira_classify
from .ellsurf.heights import height, ns_disc, ns_gram, section_specs
from .ellsurf.model import SectionPoint, WeierstrassModel, from_cubic, j_invariant, point, point_mul
from .isogeny import dual, map_point, preimage_point, quotient_curve

DEFAULT_PARAMS = {
    1: (Poly((5, 3, 2)), Poly((7, 1, 1))),
    2: (Poly((1, 0, 0, 0, 1)),),
    3: (Poly((1, 0, 0, 0, 1)),),
}

# rank-2 summand of the transcendental lattice carrying the enhancement vector
SUMMAND_DISC = {1: 4, 2: 7, 3: 15}


def section_height(series: int, N: int) -> Fraction:
    return Fraction(N, 2) if series == 1 else Fraction(2 * N, SUMMAND_DISC[series])


@dataclass
class FamilyMember:
    series: int
    params: tuple
    model: WeierstrassModel
    alt_model: WeierstrassModel | None = None
    note: str = ""

    def fibers(self):
        return kodaira_classify(self.model)

    def alt_fibers(self):
        return kodaira_classify(self.alt_model) if self.alt_model is not None else None


def alternate_model(a: Poly, b: Poly) -> WeierstrassModel:
    """Fibration by u = x / t^2 on the series-1 surface.

    With x = u t^2 and y = t^2 eta the equation becomes
    eta^2 = t (u^3 t + u a(t) + b(t)), a cubic in t with coefficients in Q[u].
    """
    u = T
    c3 = a[2] * u + b[2]
    c2 = u ** 3 + a[1] * u + b[1]
    c1 = a[0] * u + b[0]
    return from_cubic(c3, c2, c1)


def build_member(series: int, params=None) -> FamilyMember:
    if params is None:
        params = DEFAULT_PARAMS.get(series)
        if params is None:
            raise InputError(f"unknown series {series}")
    params = tuple(Poly.coerce(p) for p in params)
    try:
        if series == 1:
            if len(params) != 2:
                raise DegenerateParams("series 1 needs a(t) and b(t)")
            a, b = params
            if a.degree != 2 or b.degree != 2:
                raise DegenerateParams("series 1 needs deg a = deg b = 2")
            model = WeierstrassModel.short(T ** 3 * a, T ** 5 * b)
            member = FamilyMember(1, params, model, alternate_model(a, b),
                                  note="coefficients up to rescaling of x, y and t")
        elif series in (2, 3):
            if len(params) != 1:
                raise DegenerateParams(f"series {series} needs a single a(t)")
            (a,) = params
            if a.degree != 4:
                raise DegenerateParams(f"series {series} needs deg a = 4, got {a.degree}")
            if a[0] == 0:
                raise DegenerateParams("a(0) must be nonzero")
            model = WeierstrassModel.extended(a, T if series == 2 else T ** 3)
            member = FamilyMember(series, params, model)
        else:
            raise InputError(f"unknown series {series}")
        fibres = member.fibers()
    except (DegenerateParams, InputError):
        raise
    except K3SandwichError as exc:
        raise DegenerateParams(f"degenerate member: {exc}") from exc
    if euler_number(fibres) != 24:
        raise DegenerateParams(f"Euler number {euler_number(fibres)} != 24")
    return member


def solve_section_series2(alpha, w) -> tuple:
    """Member with a(t) = (w^2 - alpha^3 - alpha t) / alpha^2 and its section (alpha, w)."""
    alpha, w = Fraction(alpha), Poly.coerce(w)
    if alpha == 0:
        raise DegenerateParams("alpha must be nonzero")
    if w.degree > 2:
        raise DegenerateParams("w must have degree at most 2")
    a = (w * w - Poly.const(alpha ** 3) - alpha * T) * (1 / alpha ** 2)
    member = build_member(2, (a,))
    P = point(alpha, w)
    if not member.model.contains(P):
        raise InconsistentData("constructed section is off the curve")
    return member, P


def solve_section_series3(alpha, w) -> tuple:
    """Member with a(t) = (w^2 - alpha^3 t^2 - alpha t) / alpha^2 and section (alpha t^2, w t^2)."""
    alpha, w = Fraction(alpha), Poly.coerce(w)
    if alpha == 0:
        raise DegenerateParams("alpha must be nonzero")
    if w.degree > 2:
        raise DegenerateParams("w must have degree at most 2")
    a = (w * w - alpha ** 3 * T ** 2 - alpha * T) * (1 / alpha ** 2)
    member = build_member(3, (a,))
    P = point(alpha * T ** 2, w * T ** 2)
    if not member.model.contains(P):
        raise InconsistentData("constructed section is off the curve")
    return member, P


# lattice enhancement ------------------------------------------------------------

@dataclass
class Enhancement:
    series: int
    N: int
    v: tuple
    section_height: Fraction
    T_prime: Lattice
    disc_ns: int
    ns_lattice: Lattice | None = None
    glue: dict = field(default_factory=dict)

    @property
    def expected_quotient_disc(self) -> int:
        """|disc| of T'(2) = U(2)^2 + <-4N>."""
        return 2 ** 6 * self.N


def reference_T(N: int) -> Lattice:
    return direct_sum(hyperbolic_plane(), hyperbolic_plane(), rank1(-2 * N))


def _e7_weight() -> tuple:
    """A dual vector of E7 of square -3/2 (generator of the discriminant group)."""
    E7 = Lattice(root_lattice_gram("E", 7))
    inv = sympy.Matrix(E7.gram.tolist()).inv()
    for k in range(7):
        w = tuple(Fraction(int(sympy.Rational(inv[i, k]).p), int(sympy.Rational(inv[i, k]).q))
                  for i in range(7))
        if E7.square(w) == Fraction(-3, 2):
            return w
    raise InconsistentData("E7 has no dual vector of square -3/2")


def _pick_representation(reps) -> tuple:
    nonneg = [r for r in reps if r[0] >= 0 and r[1] >= 0]
    return min(nonneg) if nonneg else reps[-1]


def series1_glue(N: int, v: tuple) -> dict:
    """Glue v' = v/2 + sum of E7 weights over odd coordinates of v.

    Base lattice: U + E7 + E7 + <v> with v^2 = -2N; the E7 weight w_i is
    paired with the i-th A_1 summand, so v' lies in the primitive closure.
    """
    w = _e7_weight()
    zero7 = (Fraction(0),) * 7
    glue = (Fraction(0),) * 2
    glue += w if v[0] % 2 else zero7
    glue += w if v[1] % 2 else zero7
    glue += (Fraction(1, 2),)
    base = direct_sum(hyperbolic_plane(), Lattice(root_lattice_gram("E", 7)),
                      Lattice(root_lattice_gram("E", 7)), rank1(-2 * N))
    sq = base.square(glue)
    odd = sum(x % 2 for x in v)
    predicted = Fraction(-N, 2) - (Fraction(3, 2) if N % 2 else 3) if odd else None
    info = {"v_prime_square": sq, "predicted": predicted, "even": sq.denominator == 1 and sq.numerator % 2 == 0}
    if info["even"] and odd:
        info["lattice"] = overlattice(base, [glue])
    else:
        info["lattice"] = None
    return info


def enhancement_plan(series: int, N: int) -> Enhancement:
    if not criterion(series, N):
        raise CriterionFailed(f"N = {N} fails the series-{series} criterion")
    Q = SERIES_FORMS[series]
    reps = primitive_representations(Q, N)
    if not reps:
        raise NoRepresentation(f"criterion holds for N = {N} but no primitive representation exists")
    v = _pick_representation(reps)
    summand = Lattice(Q.lattice_gram())
    if summand.square(v) != -2 * N:
        raise InconsistentData("representation has the wrong square")
    UU = direct_sum(hyperbolic_plane(), hyperbolic_plane())
    if series == 1:
        T_prime = direct_sum(UU, orthogonal_complement(summand, v))
    else:
        # the enhancement makes v-perp algebraic; v stays transcendental
        T_prime = direct_sum(UU, rank1(summand.square(v).numerator))
    enh = Enhancement(series, N, v, section_height(series, N), T_prime, 2 * N)
    if series == 1 and (v[0] % 2 or v[1] % 2):
        enh.glue = series1_glue(N, v)
        enh.ns_lattice = enh.glue["lattice"]
    return enh


def genus_matches(L: Lattice, N: int) -> bool:
    ref = reference_T(N)
    return (L.rank == ref.rank and signature(L) == signature(ref) and abs(disc(L)) == abs(disc(ref))
            and disc_forms_isomorphic(discriminant_form(L), discriminant_form(ref)))


# verification pipeline ---------------------------------------------------------------

@dataclass
class Stage:
    name: str
    passed: bool
    values: dict = field(default_factory=dict)


@dataclass
class Report:
    series: int
    N: int | None
    stages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def add(self, name, passed, **values) -> Stage:
        st = Stage(name, bool(passed), values)
        self.stages.append(st)
        return st

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "series": self.series,
            "N": self.N,
            "pass": self.passed,
            "stages": [{"name": s.name, "pass": s.passed, "values": _jsonable(s.values)}
                       for s in self.stages],
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (Poly, RatFunc, Lattice)):
        return str(obj)
    return obj


def _guarded(report: Report, name: str, fn):
    try:
        fn()
    except K3SandwichError as exc:
        report.add(name, False, error=f"{type(exc).__name__}: {exc}")


def _disc_form_complement(report: Report, T_prime: Lattice, ns: Lattice):
    ok = disc_forms_isomorphic(discriminant_form(T_prime), discriminant_form(ns), negate=True)
    report.add("viii_disc_form_complement", ok, disc_T=disc(T_prime), disc_NS=disc(ns))


def verify_sandwich(series: int, N: int | None = None, member: FamilyMember | None = None,
                    section: SectionPoint | None = None) -> Report:
    """Run stages (i)-(viii); stage failures are recorded, never raised."""
    if member is None:
        member = build_member(series)
    report = Report(series, N)
    W = member.model
    fibres = member.fibers()
    report.add("i_fibers", euler_number(fibres) == 24,
               table=fiber_table(fibres), euler=euler_number(fibres))
    torsion = point(0, 0) if W.is_extended() else None
    h = None
    if section is not None:
        h = height(W, section, fibres)
        if report.N is None:
            guess = h / section_height(series, 1)
            report.N = N = int(guess) if guess.denominator == 1 and guess > 0 else None
        report.add("ii_height", N is not None and h == section_height(series, N),
                   height=h, expected=section_height(series, N) if N else None)

        def stage3():
            specs = section_specs(W, [section, torsion], fibres)
            nd = ns_disc(fibres, [[h]], 2)
            model = ns_gram(fibres, [specs[0]], torsion=[specs[1]])
            report.add("iii_ns_disc", nd == 2 * N and abs(disc(model.lattice)) == nd,
                       ns_disc=nd, gram_disc=abs(disc(model.lattice)), expected=2 * N)
            T_prime = enhancement_plan(series, N).T_prime if criterion(series, N) else reference_T(N)
            _disc_form_complement(report, T_prime, model.lattice)
        _guarded(report, "iii_ns_disc", stage3)
    elif N is not None:
        def lattice_stages():
            enh = enhancement_plan(series, N)
            report.add("iii_enhancement", genus_matches(enh.T_prime, N),
                       v=enh.v, section_height=enh.section_height, disc_NS=enh.disc_ns)
            if enh.ns_lattice is not None:
                report.add("iii_ns_disc", abs(disc(enh.ns_lattice)) == 2 * N,
                           ns_disc=abs(disc(enh.ns_lattice)), expected=2 * N,
                           v_prime_square=enh.glue["v_prime_square"])
                _disc_form_complement(report, enh.T_prime, enh.ns_lattice)
        _guarded(report, "iii_enhancement", lattice_stages)

    # (iv) quotient
    source = member.alt_model if series == 1 else W
    iso = quotient_curve(source)
    qf = kodaira_classify(iso.target)
    report.add("iv_quotient", euler_number(qf) == 24, table=fiber_table(qf), euler=euler_number(qf))

    if section is not None and series in (2, 3):
        Pm = map_point(iso, section)
        hm = height(iso.target, Pm, qf)
        report.add("v_transport", hm == 2 * h, height=hm, expected=2 * h)

        def halving():
            Q = preimage_point(dual(iso), section)
            hq = height(iso.target, Q, qf)
            doubled = point_mul(iso.target, Q, 2) == Pm
            nd = ns_disc(qf, [[hq]], 2)
            report.add("vi_halving", doubled and nd == 2 ** 6 * N,
                       height=hq, doubles_to_image=doubled, ns_disc=nd, expected=2 ** 6 * N)
        _guarded(report, "vi_halving", halving)
    elif series == 1 and N is not None:
        st = series1_obstruction(N)
        report.add("vi_obstruction", st["passed"], **{k: v for k, v in st.items() if k != "passed"})

    twice = quotient_curve(iso.target).target
    report.add("vii_j_match", j_invariant(twice) == j_invariant(source))
    return report


def series1_obstruction(N: int) -> dict:
    """Lattice-level check for odd N: disc NS(Y') = 2^6 N and h(Q) = N/4 is not in (1/2)Z.

    On the quotient fibration (I4*, 2 I1, 6 I2) every correction term is a
    half integer, so a half of the image section would need h in (1/2)Z.
    """
    fibres = [KodairaFiber("I*", 4), KodairaFiber("I", 1, count=2), KodairaFiber("I", 2, count=6)]
    nd = ns_disc(fibres, [[Fraction(N)]], 2)
    half = Fraction(N, 4)
    corrections = {f.symbol: [f.correction(i) for i in f.labels()] for f in fibres if f.rank}
    all_half = all((2 * c).denominator == 1 for cs in corrections.values() for c in cs)
    obstructed = (2 * half).denominator != 1
    return {
        "passed": nd == 2 ** 6 * N and (obstructed if N % 2 else True) and all_half,
        "ns_disc": nd,
        "expected": 2 ** 6 * N,
        "half_height": half,
        "obstructed": obstructed,
    }


def even_swap_check(N: int) -> dict:
    """N = 2 mod 4: the halved section exists numerically and matches T = U(2)^2 + <-2M>, M = N/2."""
    if N % 4 != 2:
        raise InputError("the swap applies to N = 2 mod 4")
    fibres = [KodairaFiber("I*", 4), KodairaFiber("I", 1, count=2), KodairaFiber("I", 2, count=6)]
    half = Fraction(N, 4)
    nd = ns_disc(fibres, [[half]], 2)
    M = N // 2
    U2 = twist(hyperbolic_plane(), 2)
    target = direct_sum(U2, U2, rank1(-2 * M))
    return {
        "passed": (2 * half).denominator == 1 and nd == abs(disc(target)),
        "half_height": half,
        "ns_disc": nd,
        "disc_T": abs(disc(target)),
        "M": M,
    }
