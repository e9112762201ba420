"""Foliations of the projective plane and the global tangency ledger.

A polynomial 1-form A dx + B dy extends to a homogeneous form
P dx + Q dy + R dz with x P + y Q + z R = 0, built by homogenizing the
coefficients and saturating the resulting triple.  After saturation the
coefficients have degree d + 1 where d is the degree of the foliation.

The global check sums mu_p + tang_p - tau_p over all singular points of the
foliation together with the tangency points against an invariant-free curve
of degree r, and compares with d^2 + d + 1 + r(d + r - 1) - tau(X).  Every
point is found in one of three disjoint regions: the affine chart z = 1, the
line at infinity minus [0:1:0], and the single point [0:1:0].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .elim import poly_gcd, rational_common_zeros, rational_roots
from .errors import (
    ComputationError,
    InvariantCurveError,
    IrrationalPointError,
)
from .foliation import PlaneFoliation
from .invariants import HypersurfaceGerm, tjurina
from .localalg import INFINITY, LocalIdeal, colength
from .poly import MPoly, OneForm, exact_divide, ring

PROJ_RING = ring("x", "y", "z")
CHART_X = ring("u", "v")  # (u, v) = (y/x, z/x), divisor at infinity is v = 0
CHART_Y = ring("s", "w")  # (s, w) = (x/y, z/y)


def _saturate_triple(polys: list[MPoly]) -> list[MPoly]:
    g = None
    for p in polys:
        if p.is_zero:
            continue
        g = p if g is None else poly_gcd(g, p)
    if g is None:
        raise ComputationError("the zero form does not define a foliation")
    if g.total_degree() == 0:
        return polys
    out = []
    for p in polys:
        if p.is_zero:
            out.append(p)
            continue
        q = exact_divide(p, g)
        if q is None:
            raise ComputationError("saturation failed; inconsistent gcd")
        out.append(q)
    return out


@dataclass(frozen=True)
class ProjectiveFoliation:
    """Saturated homogeneous 1-form P dx + Q dy + R dz with Euler relation."""

    P: MPoly
    Q: MPoly
    R: MPoly
    degree: int

    @classmethod
    def from_affine(cls, omega: OneForm) -> "ProjectiveFoliation":
        fol = PlaneFoliation.from_form(omega)
        A, B = fol.A, fol.B
        m = max(A.total_degree(), B.total_degree())
        Ahat = A.homogenize(PROJ_RING, 2, m)
        Bhat = B.homogenize(PROJ_RING, 2, m)
        x, y, z = (PROJ_RING.var(i) for i in range(3))
        P = z * Ahat
        Q = z * Bhat
        R = -(x * Ahat + y * Bhat)
        P, Q, R = _saturate_triple([P, Q, R])
        euler = x * P + y * Q + z * R
        if not euler.is_zero:
            raise ComputationError("Euler relation failed after homogenization")
        d = max(P.total_degree(), Q.total_degree(), R.total_degree()) - 1
        return cls(P, Q, R, d)

    def chart_z(self) -> PlaneFoliation:
        """Affine chart z = 1 with coordinates (x, y)."""
        R2 = ring("x", "y")
        return PlaneFoliation(
            R2,
            self.P.dehomogenize(R2, 2, [0, 1]),
            self.Q.dehomogenize(R2, 2, [0, 1]),
        )

    def chart_x(self) -> PlaneFoliation:
        """Chart x = 1 with (u, v) = (y/x, z/x); infinity is v = 0."""
        return PlaneFoliation(
            CHART_X,
            self.Q.dehomogenize(CHART_X, 0, [1, 2]),
            self.R.dehomogenize(CHART_X, 0, [1, 2]),
        )

    def chart_y(self) -> PlaneFoliation:
        """Chart y = 1 with (s, w) = (x/y, z/y); [0:1:0] is the origin."""
        return PlaneFoliation(
            CHART_Y,
            self.P.dehomogenize(CHART_Y, 1, [0, 2]),
            self.R.dehomogenize(CHART_Y, 1, [0, 2]),
        )


@dataclass(frozen=True)
class ProjectiveCurve:
    """Reduced homogeneous curve equation of degree r >= 1."""

    F: MPoly
    r: int

    @classmethod
    def from_affine(cls, phi: MPoly) -> "ProjectiveCurve":
        from .elim import is_squarefree

        if phi.is_zero or phi.total_degree() < 1:
            raise ComputationError("curve equation must be nonconstant")
        r = phi.total_degree()
        F = phi.homogenize(PROJ_RING, 2, r)
        if not is_squarefree(F):
            raise ComputationError("projective curve equation is not reduced")
        return cls(F, r)

    def chart_z(self) -> MPoly:
        return self.F.dehomogenize(ring("x", "y"), 2, [0, 1])

    def chart_x(self) -> MPoly:
        return self.F.dehomogenize(CHART_X, 0, [1, 2])

    def chart_y(self) -> MPoly:
        return self.F.dehomogenize(CHART_Y, 1, [0, 2])


def _affine_candidates(f: MPoly, g: MPoly, what: str) -> list[tuple[Fraction, Fraction]]:
    """Common rational zeros of a pair defining a finite set."""
    if f.is_zero or g.is_zero:
        raise InvariantCurveError(f"{what} locus is a whole curve, not a finite set")
    if f.total_degree() == 0 or g.total_degree() == 0:
        return []  # a nonzero constant vanishes nowhere
    try:
        return rational_common_zeros(f, g)
    except IrrationalPointError as exc:
        raise IrrationalPointError(f"irrational {what} point: {exc}") from exc
    except ComputationError as exc:
        raise InvariantCurveError(f"{what} locus is not finite: {exc}") from exc


def _line_candidates(a: MPoly, b: MPoly, what: str) -> list[Fraction]:
    """Common rational zeros on the line at infinity; a, b univariate."""
    if a.is_zero and b.is_zero:
        raise InvariantCurveError(f"{what} locus contains the line at infinity")
    h = b if a.is_zero else a if b.is_zero else poly_gcd(a, b)
    if h.total_degree() == 0:
        return []
    try:
        return [r for r, _ in rational_roots(h)]
    except IrrationalPointError as exc:
        raise IrrationalPointError(
            f"irrational {what} point on the line at infinity: {exc}"
        ) from exc


def _restrict_to_infinity(p: MPoly) -> MPoly:
    """Set the second chart coordinate to zero; univariate in the first."""
    uni = ring(p.ring.names[0])
    return p.subs(uni, [uni.var(0), uni.zero()])


@dataclass(frozen=True)
class PointContribution:
    point: tuple[Fraction, Fraction, Fraction]  # projective coordinates
    mu: int
    tang: int
    tau: int

    @property
    def term(self) -> int:
        return self.mu + self.tang - self.tau


def _contribution_at(
    fol: PlaneFoliation,
    curve_chart: MPoly,
    chart_point: tuple[Fraction, Fraction],
    proj_point: tuple[Fraction, Fraction, Fraction],
) -> PointContribution:
    local = fol.translate(chart_point)
    mu = colength(LocalIdeal.make(local.ring, [local.A, local.B]))
    if mu == INFINITY:
        raise ComputationError(f"non-isolated foliation singularity at {proj_point}")
    phi_local = curve_chart.translate(chart_point)
    if phi_local.constant_term() != 0:
        return PointContribution(proj_point, int(mu), 0, 0)
    germ = HypersurfaceGerm(phi_local)
    tang = colength(
        LocalIdeal.make(local.ring, [germ.phi, local.tangent_field_applied(germ.phi)])
    )
    if tang == INFINITY:
        raise InvariantCurveError(f"a branch of the curve at {proj_point} is invariant")
    tau = tjurina(germ)
    return PointContribution(proj_point, int(mu), int(tang), int(tau))


@dataclass(frozen=True)
class GlobalReport:
    """Two sides of the global tangency sum on the projective plane."""

    d: int  # foliation degree
    r: int  # curve degree
    points: tuple[PointContribution, ...]

    @property
    def lhs(self) -> int:
        return sum(p.term for p in self.points)

    @property
    def mu_sum(self) -> int:
        return sum(p.mu for p in self.points)

    @property
    def tau_total(self) -> int:
        return sum(p.tau for p in self.points)

    @property
    def rhs(self) -> int:
        d, r = self.d, self.r
        return d * d + d + 1 + r * (d + r - 1) - self.tau_total

    @property
    def global_sum_ok(self) -> bool:
        return self.lhs == self.rhs

    @property
    def milnor_sum_ok(self) -> bool:
        return self.mu_sum == self.d * self.d + self.d + 1

    @property
    def tjurina_bound_ok(self) -> bool:
        d, r = self.d, self.r
        return self.tau_total <= d * d + d + 1 + r * (d + r - 1)


def global_br_check(omega: OneForm, phi: MPoly) -> GlobalReport:
    """Sum the local contributions over the whole projective plane.

    omega and phi are given in the affine chart z = 1.  Every candidate point
    must be rational; the curve may pass through infinity but no branch of it
    may be invariant.
    """
    pf = ProjectiveFoliation.from_affine(omega)
    pc = ProjectiveCurve.from_affine(phi)

    contributions: list[PointContribution] = []

    # Region 1: the affine chart z = 1.
    fol_z = pf.chart_z()
    phi_z = pc.chart_z()
    vphi_z = fol_z.tangent_field_applied(phi_z)
    seen: set[tuple[Fraction, Fraction]] = set()
    if not (fol_z.A.is_zero or fol_z.B.is_zero):
        seen.update(_affine_candidates(fol_z.A, fol_z.B, "singular"))
    if vphi_z.is_zero:
        raise InvariantCurveError("the curve is invariant by the foliation")
    seen.update(_affine_candidates(phi_z, vphi_z, "tangency"))
    for pt in sorted(seen):
        contributions.append(
            _contribution_at(fol_z, phi_z, pt, (pt[0], pt[1], Fraction(1)))
        )

    # Region 2: the line at infinity minus [0:1:0], in the chart x = 1.
    fol_x = pf.chart_x()
    phi_x = pc.chart_x()
    vphi_x = fol_x.tangent_field_applied(phi_x)
    line_pts: set[Fraction] = set()
    line_pts.update(
        _line_candidates(
            _restrict_to_infinity(fol_x.A),
            _restrict_to_infinity(fol_x.B),
            "singular",
        )
    )
    line_pts.update(
        _line_candidates(
            _restrict_to_infinity(phi_x),
            _restrict_to_infinity(vphi_x),
            "tangency",
        )
    )
    for u0 in sorted(line_pts):
        contributions.append(
            _contribution_at(
                fol_x,
                phi_x,
                (u0, Fraction(0)),
                (Fraction(1), u0, Fraction(0)),
            )
        )

    # Region 3: the single remaining point [0:1:0].
    fol_y = pf.chart_y()
    phi_y = pc.chart_y()
    vphi_y = fol_y.tangent_field_applied(phi_y)
    singular_here = fol_y.A.constant_term() == 0 and fol_y.B.constant_term() == 0
    tangent_here = phi_y.constant_term() == 0 and vphi_y.constant_term() == 0
    if singular_here or tangent_here:
        contributions.append(
            _contribution_at(
                fol_y,
                phi_y,
                (Fraction(0), Fraction(0)),
                (Fraction(0), Fraction(1), Fraction(0)),
            )
        )

    return GlobalReport(d=pf.degree, r=pc.r, points=tuple(contributions))


@dataclass(frozen=True)
class MilnorSumReport:
    """Milnor numbers of all singular points against d^2 + d + 1."""

    d: int
    points: tuple[PointContribution, ...]

    @property
    def mu_sum(self) -> int:
        return sum(p.mu for p in self.points)

    @property
    def expected(self) -> int:
        return self.d * self.d + self.d + 1

    @property
    def ok(self) -> bool:
        return self.mu_sum == self.expected


def foliation_milnor_sum(omega: OneForm) -> MilnorSumReport:
    """Locate all singular points of the extended foliation and sum mu_p."""
    pf = ProjectiveFoliation.from_affine(omega)
    contributions: list[PointContribution] = []

    fol_z = pf.chart_z()
    pts: list[tuple[Fraction, Fraction]] = []
    if not (fol_z.A.is_zero or fol_z.B.is_zero):
        pts = _affine_candidates(fol_z.A, fol_z.B, "singular")
    for pt in sorted(pts):
        contributions.append(
            _contribution_at(fol_z, fol_z.ring.one(), pt, (pt[0], pt[1], Fraction(1)))
        )

    fol_x = pf.chart_x()
    for u0 in sorted(
        _line_candidates(
            _restrict_to_infinity(fol_x.A),
            _restrict_to_infinity(fol_x.B),
            "singular",
        )
    ):
        contributions.append(
            _contribution_at(
                fol_x, CHART_X.one(), (u0, Fraction(0)), (Fraction(1), u0, Fraction(0))
            )
        )

    fol_y = pf.chart_y()
    if fol_y.A.constant_term() == 0 and fol_y.B.constant_term() == 0:
        contributions.append(
            _contribution_at(
                fol_y,
                CHART_Y.one(),
                (Fraction(0), Fraction(0)),
                (Fraction(0), Fraction(1), Fraction(0)),
            )
        )

    return MilnorSumReport(d=pf.degree, points=tuple(contributions))
