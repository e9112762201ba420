"""Foliations: saturation, tangency, blow-up ledgers, pullback orders."""

from __future__ import annotations

from fractions import Fraction

import pytest

from brindex.errors import ComputationError, InvariantCurveError
from brindex.foliation import (
    CHART_XT,
    ExceptionalPoint,
    PlaneFoliation,
    blowup,
    delta_invariant_drop,
    exceptional_singularities,
    generalized_curve_check,
    intersection_mult,
    order_pullback,
    saturate,
    strict_transform_curve,
    tangency_order,
    verify_blowup_formula,
)
from brindex.invariants import HypersurfaceGerm
from brindex.localalg import INFINITY
from brindex.parsing import parse_form, parse_poly
from brindex.poly import OneForm, ring
from brindex.series import Parametrization, T_RING

R2 = ring("x", "y")


def _germ(text: str) -> HypersurfaceGerm:
    return HypersurfaceGerm(parse_poly(text, R2))


def _fol(text: str) -> PlaneFoliation:
    return PlaneFoliation.from_form(parse_form(text, R2))


def _param(*exprs: str) -> Parametrization:
    return Parametrization(tuple(parse_poly(e, T_RING) for e in exprs))


# -- saturation and basic structure ------------------------------------------------


def test_saturate_strips_the_common_factor():
    A = parse_poly("x*y^2", R2)
    B = parse_poly("x^2*y", R2)
    a, b, common = saturate(A, B)
    assert common * a == A and common * b == B
    assert common == parse_poly("x*y", R2)
    coprime = saturate(a, b)
    assert coprime == (a, b, R2.one())


def test_foliation_from_form_saturates():
    F = PlaneFoliation.from_form(parse_form("x*y dx + x^2 dy", R2))
    assert F.A == parse_poly("y", R2)
    assert F.B == parse_poly("x", R2)
    assert F.multiplicity() == 1
    assert F.milnor() == 1
    assert F.is_singular_at_origin()


def test_tangent_field_applied():
    F = _fol("y dx + x dy")
    phi = parse_poly("y^2 - x^5", R2)
    # v = (-B, A) applied to phi.
    expected = parse_poly("5*x^5 + 2*y^2", R2) * Fraction(1)
    assert F.tangent_field_applied(phi) == expected or F.tangent_field_applied(
        phi
    ) == -expected


def test_tangency_order_knowns():
    assert tangency_order(_fol("y dx + x dy"), _germ("y^2 - x^5")) == 10
    assert tangency_order(_fol("(-3*y) dx + 2*x dy"), _germ("y^2 - x^5")) == 10
    assert tangency_order(_fol("x dx + y dy"), _germ("y")) == 1


def test_tangency_order_rejects_invariant_curves():
    cusp = _germ("y^2 - x^3")
    with pytest.raises(InvariantCurveError):
        tangency_order(PlaneFoliation.from_form(OneForm.differential(cusp.phi)), cusp)


def test_intersection_mult_knowns():
    assert intersection_mult(parse_poly("x", R2), parse_poly("y", R2)) == 1
    assert intersection_mult(parse_poly("y^2 - x^3", R2), parse_poly("x", R2)) == 2
    assert intersection_mult(parse_poly("x", R2), parse_poly("x + x*y", R2)) == INFINITY


# -- pullback orders ----------------------------------------------------------------


def test_order_pullback_knowns():
    om = parse_form("y dx + x dy", R2)
    assert order_pullback(om, _param("t^2", "t^5"), _germ("y^2 - x^5")) == 6
    assert order_pullback(om, _param("t^3", "t^4"), _germ("y^3 - x^4")) == 6
    assert order_pullback(om, _param("t^2", "t^7"), _germ("y^2 - x^7")) == 8


def test_order_pullback_without_curve_argument():
    om = parse_form("y dx + x dy", R2)
    assert order_pullback(om, _param("t^2", "t^5")) == 6


def test_order_pullback_rejects_mismatched_curve():
    om = parse_form("y dx + x dy", R2)
    with pytest.raises(ComputationError):
        order_pullback(om, _param("t^2", "t^5"), _germ("y^2 - x^3"))


def test_order_pullback_detects_invariant_branch():
    cusp = parse_poly("y^2 - x^3", R2)
    with pytest.raises(InvariantCurveError):
        order_pullback(OneForm.differential(cusp), _param("t^2", "t^3"))


# -- blow-up ---------------------------------------------------------------------------


def test_blowup_charts_nondicritical():
    bl = blowup(_fol("(-3*y) dx + 2*x dy"))
    assert bl.nu == 1
    assert bl.k == 1
    assert not bl.dicritical
    sing = exceptional_singularities(bl)
    assert sum(mu for _, mu in sing) == 2  # two reduced singular points


def test_blowup_dicritical_detection():
    # Lines through the origin: the divisor is transverse, not invariant.
    bl = blowup(_fol("(-y) dx + x dy"))
    assert bl.nu == 1
    assert bl.dicritical
    assert bl.k == bl.nu + 1


def test_strict_transform_of_the_cusp():
    cb = strict_transform_curve(_germ("y^2 - x^3"))
    assert cb.m == 2
    assert cb.points_xt == (Fraction(0),)
    assert not cb.meets_uy_origin
    q = cb.unique_divisor_point()
    assert q == ExceptionalPoint("xt", Fraction(0))
    assert cb.germ_at(q).phi == parse_poly("t^2 - x", CHART_XT)


def test_strict_transform_vertical_branch():
    # x = y^2 has vertical tangent; the transform lives in the second chart.
    cb = strict_transform_curve(_germ("x - y^2"))
    assert cb.points_xt == ()
    assert cb.meets_uy_origin
    q = cb.unique_divisor_point()
    assert q.chart == "uy"


def test_strict_transform_reducible_curve_has_no_unique_point():
    cb = strict_transform_curve(_germ("x*y"))
    with pytest.raises(ComputationError):
        cb.unique_divisor_point()


def test_delta_invariant_drop_verifies_milnor_drop():
    X = _germ("y^2 - x^5")
    cb = strict_transform_curve(X)
    q = cb.unique_divisor_point()
    assert delta_invariant_drop(X, cb, q) == 1


def test_blowup_ledger_nondicritical():
    X = _germ("y^2 - x^5")
    F = _fol("(-3*y) dx + 2*x dy")
    rep = verify_blowup_formula(F, X)
    assert rep.nu == 1
    assert rep.m == 2
    assert not rep.dicritical
    assert rep.mu_br_origin == 7
    assert rep.mu_br_q == 5
    assert rep.sum_mu_other == 1
    assert rep.delta_drop == 1
    assert rep.mu_br_rel_origin == 6
    assert rep.main_ok and rep.relative_ok and rep.conservation_ok


def test_blowup_ledger_dicritical():
    X = _germ("y^3 - x^7")
    F = _fol("(2*x^7 + 5*y^5) dx + (-5*x*y^4 - 3*x^6*y^2) dy")
    rep = verify_blowup_formula(F, X)
    assert rep.nu == 5
    assert rep.m == 3
    assert rep.dicritical
    assert rep.mu_br_origin == 56
    assert rep.mu_br_q == 9
    assert rep.sum_mu_other == 0
    assert rep.sum_mu_all == 4
    assert rep.mu0_F == 33
    assert rep.delta_drop == 3
    assert rep.mu_br_rel_origin == 23
    assert rep.main_ok and rep.relative_ok and rep.conservation_ok
    # Conservation through a dicritical blow-up counts the extra divisor term.
    assert rep.rhs_conservation == rep.mu0_F


# -- generalized curves -----------------------------------------------------------------


def test_generalized_curve_positive():
    X = _germ("y^2 - x^5")
    F = _fol("(-3*y) dx + 2*x dy")
    rep = generalized_curve_check(F, parse_poly("x*y", R2), X)
    assert rep.delta == 0
    assert rep.is_generalized_curve
    assert rep.routes_agree


def test_generalized_curve_negative_saddle_node():
    L = _germ("y - x")
    F = _fol("y dx + (-x^2) dy")
    rep = generalized_curve_check(F, parse_poly("x*y", R2), L)
    assert rep.delta == 1
    assert not rep.is_generalized_curve
    assert rep.mu0_F == 2
    assert rep.mu0_dsep == 1
    assert rep.delta == rep.mu0_F - rep.mu0_dsep


def test_generalized_curve_rejects_non_invariant_separatrix():
    X = _germ("y - x")
    F = _fol("(-3*y) dx + 2*x dy")
    with pytest.raises(ComputationError):
        generalized_curve_check(F, parse_poly("x + y^2", R2), X)
