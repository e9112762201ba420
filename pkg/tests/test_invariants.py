"""Local invariants of (1-form, hypersurface) pairs at the origin."""

from __future__ import annotations

import pytest

from brindex.errors import (
    ComputationError,
    InvariantCurveError,
    NonIsolatedError,
    NotTangentError,
)
from brindex.invariants import (
    HypersurfaceGerm,
    InvariantReport,
    ThetaGenerators,
    br_function,
    br_relative,
    bruce_roberts,
    bruce_roberts_trivial_direct,
    bruce_roberts_user_theta,
    euler_obstruction_curve,
    gsv_hyp,
    gsv_icis,
    icis_pair_milnor,
    invariant_report,
    is_invariant,
    milnor_form,
    milnor_hyp,
    radial_index,
    tjurina,
)
from brindex.localalg import INFINITY
from brindex.parsing import parse_form, parse_poly
from brindex.poly import OneForm, ring

R2 = ring("x", "y")
R3 = ring("x", "y", "z")


def _germ(text: str, ring_=R2) -> HypersurfaceGerm:
    return HypersurfaceGerm(parse_poly(text, ring_))


def _form(text: str, ring_=R2) -> OneForm:
    return parse_form(text, ring_)


CUSP = _germ("y^2 - x^3")


# -- germs ------------------------------------------------------------------------


def test_germ_validation():
    with pytest.raises(ComputationError):
        HypersurfaceGerm(R2.zero())
    with pytest.raises(ComputationError):
        _germ("x + 1")
    with pytest.raises(ComputationError):
        _germ("x^2")  # not reduced
    with pytest.raises(ComputationError):
        _germ("x^2*y + x^2*y^2")  # x^2 divides both terms
    assert _germ("x^2*y - x*y^2").phi is not None  # xy(x - y) is reduced
    assert _germ("x*y").multiplicity() == 2
    assert CUSP.multiplicity() == 2


def test_milnor_and_tjurina_of_knowns():
    assert milnor_hyp(CUSP) == 2
    assert tjurina(CUSP) == 2
    quasi = _germ("y^3 - x^7")
    assert milnor_hyp(quasi) == 12
    assert tjurina(quasi) == 12
    # A curve with mu != tau.
    wild = _germ("y^3 - x^7 + x^5*y")
    assert milnor_hyp(wild) == 12
    assert tjurina(wild) == 11
    node = _germ("x*y")
    assert milnor_hyp(node) == 1
    assert tjurina(node) == 1


def test_milnor_form():
    assert milnor_form(_form("x dx + y dy")) == 1
    assert milnor_form(_form("y dx + x dy")) == 1
    assert milnor_form(_form("(-3*x^2) dx + 2*y dy")) == 2
    assert milnor_form(_form("x dx + 0 dy")) == INFINITY


def test_is_invariant():
    # The level curves of phi are invariant by dphi.
    assert is_invariant(OneForm.differential(CUSP.phi), CUSP)
    assert not is_invariant(_form("y dx + x dy"), CUSP)
    line = _germ("y - x")
    assert is_invariant(_form("y dx + x dy"), _germ("x*y"))
    assert not is_invariant(_form("y dx + x dy"), line)


# -- the dual Bruce-Roberts routes -------------------------------------------------


def test_space_curve_worked_example():
    # Cyclic 1-form on a space curve: every invariant in one report.
    X = _germ("x^3 + y*z^2 + y^3 + x*y^4", R3)
    omega = _form("z dx + x dy + y dz", R3)
    rep = invariant_report(omega, X)
    assert rep.n == 3
    assert rep.mu0_omega == 1
    assert rep.mu0_X == 8
    assert rep.tau0 == 8
    assert rep.gsv == 21
    assert rep.mu_br == 14
    assert rep.mu_br_rel == 13
    assert rep.rad == 13
    assert rep.tang is None and rep.eu is None
    assert rep.mu_br == rep.gsv + rep.mu0_omega - rep.tau0
    assert rep.as_dict()["mu_br"] == 14
    assert "tang" not in rep.as_dict()


@pytest.mark.parametrize("p,q,expected", [(2, 5, 7), (7, 3, 10), (11, 13, 24)])
def test_monomial_curves_all_routes(p, q, expected):
    X = _germ(f"y^{p} - x^{q}")
    omega = _form("y dx + x dy")
    assert bruce_roberts(omega, X) == expected
    assert bruce_roberts_trivial_direct(omega, X) == expected
    theta = ThetaGenerators(
        (
            (parse_poly(f"{p}*x", R2), parse_poly(f"{q}*y", R2)),
            (parse_poly(f"{p}*y^{p - 1}", R2), parse_poly(f"{q}*x^{q - 1}", R2)),
        )
    )
    assert bruce_roberts_user_theta(omega, X, theta) == expected
    assert br_relative(omega, X) == expected - 1  # mu0(omega) = 1 splits off


def test_mu_br_relative_knowns():
    assert br_relative(_form("y dx + x dy"), _germ("y^2 - x^5")) == 6
    assert br_relative(_form("y dx + x dy"), _germ("y^11 - x^13")) == 23


def test_plane_curve_report_with_distinct_forms():
    # Two different forms on the same quasi-homogeneous curve share tau and
    # mu0 but are distinguished by nothing else here: both reports are equal
    # value by value, which is the known coincidence for this pair.
    X = _germ("y^7 - x^3")
    omega = _form("(y^3 + y^2 - x*y) dx + (-2*x*y^2 - x*y + x^2) dy")
    eta = _form("(2*y^2 + x^3) dx + (-2*x*y) dy")
    for om in (omega, eta):
        rep = invariant_report(om, X)
        assert rep.mu0_omega == 5
        assert rep.tau0 == 12
        assert rep.mu_br == 17
        assert rep.mu_br_rel == 12
        assert rep.tang == 24
        assert rep.mu_br == rep.mu0_omega + rep.mu_br_rel


def test_user_theta_must_be_tangent():
    theta = ThetaGenerators(((R2.one(), R2.zero()),))
    with pytest.raises(NotTangentError):
        bruce_roberts_user_theta(_form("y dx + x dy"), CUSP, theta)


def test_theta_generators_validation():
    with pytest.raises(ValueError):
        ThetaGenerators(())
    with pytest.raises(ValueError):
        ThetaGenerators(((R2.one(),), (R2.one(), R2.zero())))


# -- indices on singular varieties --------------------------------------------------


def test_radial_and_euler_obstruction():
    X = _germ("y^2 - x^5")
    omega = _form("(-3*y) dx + 2*x dy")
    assert radial_index(omega, X) == 6
    assert euler_obstruction_curve(omega, X) == 5
    # Radial index of a radial form on a smooth point-like curve germ.
    line = _germ("y")
    rad_form = _form("x dx + y dy")
    assert radial_index(rad_form, line) == 1
    assert euler_obstruction_curve(rad_form, line) == 1


def test_gsv_knowns():
    assert gsv_hyp(_form("y dx + x dy"), _germ("y^2 - x^5")) == 10
    assert gsv_hyp(OneForm.differential(parse_poly("x", R2)), CUSP) == 3
    assert gsv_hyp(OneForm.differential(CUSP.phi), CUSP) == INFINITY


def test_gsv_icis_smoke():
    omega = _form("x dx + y dy + z dz", R3)
    fs = [parse_poly("x", R3), parse_poly("y", R3)]
    assert gsv_icis(omega, fs) == 1


def test_icis_pair_milnor():
    # Checked against the Le-Greuel relation mu(pair) + mu(X) = i0(phi, f_y).
    assert icis_pair_milnor(CUSP, parse_poly("x", R2)) == 1
    assert icis_pair_milnor(CUSP, parse_poly("y", R2)) == 2
    with pytest.raises(ComputationError):
        icis_pair_milnor(CUSP, parse_poly("x + 1", R2))


def test_br_function_routes_agree():
    assert br_function(parse_poly("x", R2), CUSP) == 1
    assert br_function(parse_poly("y", R2), CUSP) == 2
    assert br_function(parse_poly("x^2 + y^3", R2), CUSP) == 5


# -- degenerate inputs ---------------------------------------------------------------


def test_report_rejects_non_isolated_form():
    with pytest.raises(NonIsolatedError):
        invariant_report(_form("x dx + 0 dy"), CUSP)


def test_report_rejects_invariant_pair():
    with pytest.raises(InvariantCurveError):
        invariant_report(OneForm.differential(CUSP.phi), CUSP)
