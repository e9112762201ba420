"""Local invariants of hypersurface germs and 1-forms at an isolated singularity.

Everything reduces to colengths of explicitly constructed ideals:

* mu0(omega)        coefficient ideal of the form
* mu0(X), tau0(X)   Jacobian ideal, Tjurina ideal of the hypersurface
* GSV index         <phi> + 2x2 minors of the matrix (dphi; A)
* Bruce-Roberts     GSV + mu0(omega) - tau0(X); equivalently the colength of
                    the evaluation of omega on the trivial tangent fields
                    (phi d_i and the Hamiltonian fields of phi) minus tau0
* relative version  GSV - tau0
* radial index      GSV - mu0(X)
* Euler obstruction (plane curves) radial index - (multiplicity - 1)

The identities connecting the routes are exercised by the test suite on both
curated and randomized inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .elim import is_squarefree
from .errors import (
    ComputationError,
    InvariantCurveError,
    NonIsolatedError,
    NotTangentError,
    UnsupportedError,
)
from .localalg import INFINITY, LocalIdeal, colength, minors
from .poly import MPoly, OneForm, exact_divide, wedge_coeffs


@dataclass(frozen=True)
class HypersurfaceGerm:
    """A reduced hypersurface germ (X, 0) = {phi = 0}.

    phi must vanish at the origin.  For plane curves reducedness is enforced
    (squarefree check); in higher dimension it is the caller's responsibility.
    """

    phi: MPoly

    def __post_init__(self):
        if self.phi.is_zero:
            raise ComputationError("the zero polynomial does not define a germ")
        if self.phi.constant_term() != 0:
            raise ComputationError("the hypersurface must pass through the origin")
        if self.phi.ring.n == 2 and not is_squarefree(self.phi):
            raise ComputationError("plane curve equation is not reduced")

    @property
    def ring(self):
        return self.phi.ring

    @property
    def n(self) -> int:
        return self.phi.ring.n

    def multiplicity(self) -> int:
        return int(self.phi.order())

    def jacobian_ideal(self) -> LocalIdeal:
        return LocalIdeal.make(
            self.ring, [self.phi.partial(i) for i in range(self.n)]
        )

    def tjurina_ideal(self) -> LocalIdeal:
        return LocalIdeal.make(
            self.ring,
            [self.phi] + [self.phi.partial(i) for i in range(self.n)],
        )


@dataclass(frozen=True)
class ThetaGenerators:
    """Polynomial vector fields claimed to generate the tangent module of X."""

    fields: tuple[tuple[MPoly, ...], ...]

    def __post_init__(self):
        if not self.fields:
            raise ValueError("need at least one vector field")
        n = len(self.fields[0])
        for xi in self.fields:
            if len(xi) != n:
                raise ValueError("vector fields of mixed dimension")

    def verify_tangent(self, X: HypersurfaceGerm) -> None:
        """Check dphi(xi) in <phi> for every field, by exact division."""
        dphi = [X.phi.partial(i) for i in range(X.n)]
        for k, xi in enumerate(self.fields):
            if len(xi) != X.n:
                raise ValueError("vector field dimension does not match the germ")
            value = X.ring.zero()
            for comp, d in zip(xi, dphi):
                value = value + comp * d
            if not value.is_zero and exact_divide(value, X.phi) is None:
                raise NotTangentError(
                    f"generator {k} is not tangent to the hypersurface"
                )


def milnor_form(omega: OneForm) -> int | float:
    """mu0(omega): colength of the coefficient ideal <A_1, ..., A_n>."""
    if omega.is_zero:
        raise ComputationError("the zero 1-form has no Milnor number")
    return colength(LocalIdeal.make(omega.ring, list(omega.coeffs)))


def milnor_hyp(X: HypersurfaceGerm) -> int | float:
    """mu0(X): colength of the Jacobian ideal."""
    return colength(X.jacobian_ideal())


def tjurina(X: HypersurfaceGerm) -> int | float:
    """tau0(X): colength of <phi, dphi>."""
    return colength(X.tjurina_ideal())


def is_invariant(omega: OneForm, X: HypersurfaceGerm) -> bool:
    """True when omega ∧ dphi vanishes on X, i.e. phi divides every
    coefficient of the wedge; then X is invariant by the foliation of omega."""
    if omega.ring != X.ring:
        raise ValueError("form and hypersurface live in different rings")
    for c in wedge_coeffs(omega, X.phi).values():
        if c.is_zero:
            continue
        if exact_divide(c, X.phi) is None:
            return False
    return True


def gsv_ideal(omega: OneForm, X: HypersurfaceGerm) -> LocalIdeal:
    dphi_row = [X.phi.partial(i) for i in range(X.n)]
    mm = minors([dphi_row, list(omega.coeffs)], 2)
    return LocalIdeal.make(X.ring, [X.phi] + mm)


def gsv_hyp(omega: OneForm, X: HypersurfaceGerm) -> int | float:
    """GSV index of omega along the hypersurface.

    Infinite exactly when some branch of X is invariant (non-isolated
    tangency); finite otherwise.
    """
    if omega.ring != X.ring:
        raise ValueError("form and hypersurface live in different rings")
    return colength(gsv_ideal(omega, X))


def gsv_icis(omega: OneForm, fs: Sequence[MPoly]) -> int | float:
    """GSV index of omega along the ICIS {f_1 = ... = f_k = 0}."""
    if not fs:
        raise ValueError("need at least one equation")
    ring_ = omega.ring
    k = len(fs)
    if k + 1 > ring_.n:
        raise UnsupportedError("too many equations: not an ICIS of positive dimension")
    for f in fs:
        if f.ring != ring_:
            raise ValueError("equations must share the ring of the form")
        if f.constant_term() != 0:
            raise ComputationError("ICIS equations must vanish at the origin")
    rows = [[f.partial(i) for i in range(ring_.n)] for f in fs]
    rows.append(list(omega.coeffs))
    mm = minors(rows, k + 1)
    return colength(LocalIdeal.make(ring_, list(fs) + mm))


def bruce_roberts(omega: OneForm, X: HypersurfaceGerm) -> int:
    """mu_BR(omega, X) computed as GSV + mu0(omega) - tau0(X)."""
    mu0 = milnor_form(omega)
    if mu0 == INFINITY:
        raise NonIsolatedError("the 1-form does not have an isolated zero")
    tau = tjurina(X)
    if tau == INFINITY:
        raise NonIsolatedError("the hypersurface singularity is not isolated")
    if is_invariant(omega, X):
        raise InvariantCurveError("the hypersurface is invariant by the form")
    gsv = gsv_hyp(omega, X)
    if gsv == INFINITY:
        raise InvariantCurveError(
            "a branch of the hypersurface is invariant by the form"
        )
    return int(gsv + mu0 - tau)


def trivial_evaluation_ideal(omega: OneForm, X: HypersurfaceGerm) -> LocalIdeal:
    """omega evaluated on the tangent fields that exist for every X:
    phi * d_i and the Hamiltonian fields phi_{x_j} d_k - phi_{x_k} d_j."""
    gens = [X.phi * a for a in omega.coeffs]
    dphi_row = [X.phi.partial(i) for i in range(X.n)]
    gens += minors([dphi_row, list(omega.coeffs)], 2)
    return LocalIdeal.make(X.ring, gens)


def bruce_roberts_trivial_direct(omega: OneForm, X: HypersurfaceGerm) -> int:
    """mu_BR via the colength of the trivial tangent-field evaluation minus
    tau0.  Independent of the GSV route except for sharing colength."""
    tau = tjurina(X)
    if tau == INFINITY:
        raise NonIsolatedError("the hypersurface singularity is not isolated")
    value = colength(trivial_evaluation_ideal(omega, X))
    if value == INFINITY:
        raise InvariantCurveError(
            "trivial tangent-field evaluation has infinite colength"
        )
    return int(value - tau)


def bruce_roberts_user_theta(
    omega: OneForm, X: HypersurfaceGerm, theta: ThetaGenerators
) -> int:
    """mu_BR from a user-supplied generating set of the tangent module.

    Each field is verified tangent (dphi(xi) in <phi>); the result is the
    colength of <omega(xi_1), ..., omega(xi_r)>.
    """
    theta.verify_tangent(X)
    values = [omega.apply(list(xi)) for xi in theta.fields]
    if all(v.is_zero for v in values):
        raise NonIsolatedError("omega vanishes on all supplied tangent fields")
    result = colength(LocalIdeal.make(omega.ring, values))
    if result == INFINITY:
        raise NonIsolatedError(
            "evaluation ideal has infinite colength; the generating set may be incomplete"
        )
    return int(result)


def br_relative(omega: OneForm, X: HypersurfaceGerm) -> int:
    """mu_BR^-(omega, X) = GSV - tau0: the relative Bruce-Roberts number."""
    tau = tjurina(X)
    if tau == INFINITY:
        raise NonIsolatedError("the hypersurface singularity is not isolated")
    gsv = gsv_hyp(omega, X)
    if gsv == INFINITY:
        raise InvariantCurveError(
            "a branch of the hypersurface is invariant by the form"
        )
    return int(gsv - tau)


def radial_index(omega: OneForm, X: HypersurfaceGerm) -> int:
    """Radial (Schwartz) index of the restriction of omega to X."""
    mu_x = milnor_hyp(X)
    if mu_x == INFINITY:
        raise NonIsolatedError("the hypersurface singularity is not isolated")
    gsv = gsv_hyp(omega, X)
    if gsv == INFINITY:
        raise InvariantCurveError(
            "a branch of the hypersurface is invariant by the form"
        )
    return int(gsv - mu_x)


def euler_obstruction_curve(omega: OneForm, X: HypersurfaceGerm) -> int:
    """Local Euler obstruction of omega on a plane curve:
    radial index - (multiplicity - 1)."""
    if X.n != 2:
        raise UnsupportedError(
            "Euler obstruction is implemented for plane curves only"
        )
    return radial_index(omega, X) - (X.multiplicity() - 1)


def icis_pair_milnor(X: HypersurfaceGerm, f: MPoly) -> int:
    """mu0(phi, f): Milnor number of the curve ICIS (phi, f), by the
    difference GSV(df; X) - mu0(X)."""
    if f.ring != X.ring:
        raise ValueError("function and hypersurface live in different rings")
    if f.constant_term() != 0:
        raise ComputationError("the function must vanish at the origin")
    mu_x = milnor_hyp(X)
    if mu_x == INFINITY:
        raise NonIsolatedError("the hypersurface singularity is not isolated")
    gsv = gsv_hyp(OneForm.differential(f), X)
    if gsv == INFINITY:
        raise InvariantCurveError("(phi, f) is not an ICIS pair")
    return int(gsv - mu_x)


def br_function(f: MPoly, X: HypersurfaceGerm) -> int:
    """mu_BR(f, X) for a function: mu_BR of its differential.

    Also assembled from mu0(f) + mu0(X) + mu0(phi, f) - tau0(X); the two
    routes must agree and the mismatch is reported as an internal error.
    """
    df = OneForm.differential(f)
    direct = bruce_roberts(df, X)
    parts = (
        milnor_form(df)
        + milnor_hyp(X)
        + icis_pair_milnor(X, f)
        - tjurina(X)
    )
    if direct != parts:
        raise ComputationError(
            f"function Bruce-Roberts routes disagree: {direct} vs {parts}"
        )
    return direct


@dataclass(frozen=True)
class InvariantReport:
    """All local invariants of a (form, hypersurface) pair at the origin."""

    n: int
    multiplicity: int
    mu0_omega: int
    mu0_X: int
    tau0: int
    gsv: int
    mu_br: int
    mu_br_rel: int
    rad: int
    tang: int | None  # plane curves only
    eu: int | None  # plane curves only

    def as_dict(self) -> dict:
        out = {
            "mu0_omega": self.mu0_omega,
            "mu0_X": self.mu0_X,
            "tau0": self.tau0,
            "gsv": self.gsv,
            "mu_br": self.mu_br,
            "mu_br_rel": self.mu_br_rel,
            "rad": self.rad,
        }
        if self.tang is not None:
            out["tang"] = self.tang
        if self.eu is not None:
            out["eu"] = self.eu
        return out


def invariant_report(omega: OneForm, X: HypersurfaceGerm) -> InvariantReport:
    """Compute the full battery of invariants; everything must be finite."""
    mu0 = milnor_form(omega)
    if mu0 == INFINITY:
        raise NonIsolatedError("the 1-form does not have an isolated zero")
    mu_x = milnor_hyp(X)
    if mu_x == INFINITY:
        raise NonIsolatedError("the hypersurface singularity is not isolated")
    tau = tjurina(X)
    if is_invariant(omega, X):
        raise InvariantCurveError("the hypersurface is invariant by the form")
    gsv = gsv_hyp(omega, X)
    if gsv == INFINITY:
        raise InvariantCurveError(
            "a branch of the hypersurface is invariant by the form"
        )
    mu_br = int(gsv + mu0 - tau)
    rad = int(gsv - mu_x)
    n = X.n
    m = X.multiplicity()
    return InvariantReport(
        n=n,
        multiplicity=m,
        mu0_omega=int(mu0),
        mu0_X=int(mu_x),
        tau0=int(tau),
        gsv=int(gsv),
        mu_br=mu_br,
        mu_br_rel=int(gsv - tau),
        rad=rad,
        tang=int(gsv) if n == 2 else None,
        eu=rad - (m - 1) if n == 2 else None,
    )
