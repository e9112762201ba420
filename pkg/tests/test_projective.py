"""Global tangency sums on the projective plane."""

from __future__ import annotations

import pytest

from brindex.errors import InvariantCurveError, IrrationalPointError
from brindex.parsing import parse_form, parse_poly
from brindex.poly import ring
from brindex.projective import (
    ProjectiveCurve,
    ProjectiveFoliation,
    foliation_milnor_sum,
    global_br_check,
)

R2 = ring("x", "y")


def _check(form_text: str, curve_text: str):
    return global_br_check(parse_form(form_text, R2), parse_poly(curve_text, R2))


def test_homogenization_degree():
    pf = ProjectiveFoliation.from_affine(parse_form("y dx + x dy", R2))
    assert pf.degree == 1
    radial = ProjectiveFoliation.from_affine(parse_form("(-y) dx + x dy", R2))
    assert radial.degree == 0


def test_projective_curve_charts():
    pc = ProjectiveCurve.from_affine(parse_poly("y - x^2", R2))
    assert pc.r == 2
    assert pc.chart_z() == parse_poly("y - x^2", R2)


def test_pencil_against_a_line():
    rep = _check("y dx + x dy", "x + y - 1")
    assert rep.d == 1 and rep.r == 1
    assert rep.lhs == 4 and rep.rhs == 4
    assert rep.mu_sum == 3
    assert rep.tau_total == 0
    assert rep.global_sum_ok and rep.milnor_sum_ok and rep.tjurina_bound_ok


def test_degree_zero_foliation_against_a_line():
    rep = _check("(-y) dx + x dy", "x + y - 1")
    assert rep.d == 0 and rep.r == 1
    assert rep.lhs == 1 and rep.rhs == 1
    assert rep.global_sum_ok and rep.tjurina_bound_ok


def test_pencil_against_a_conic():
    rep = _check("y dx + x dy", "y - x^2")
    assert rep.d == 1 and rep.r == 2
    assert rep.lhs == 7 and rep.rhs == 7
    assert rep.global_sum_ok


def test_degree_zero_foliation_against_the_cusp():
    rep = _check("(-y) dx + x dy", "y^2 - x^3")
    assert rep.d == 0 and rep.r == 3
    assert rep.lhs == 5 and rep.rhs == 5
    assert rep.tau_total == 2
    assert rep.global_sum_ok and rep.tjurina_bound_ok


def test_every_contribution_is_located():
    rep = _check("y dx + x dy", "x + y - 1")
    # d = 1: three radial-type singularities, each of local index one.
    assert sorted(p.mu for p in rep.points if p.mu) == [1, 1, 1]
    assert all(len(p.point) == 3 for p in rep.points)


def test_milnor_sum_without_a_curve():
    rep = foliation_milnor_sum(parse_form("(-3*x^2) dx + 2*y dy", R2))
    assert rep.d == 2
    assert rep.mu_sum == 7
    assert rep.expected == 7
    assert rep.ok


def test_invariant_curve_is_rejected():
    # x = 0 is a leaf of the pencil xy = c in disguise.
    with pytest.raises(InvariantCurveError):
        _check("y dx + x dy", "x")
    # Same leaf hiding as one branch of a reducible curve.
    with pytest.raises(InvariantCurveError):
        _check("y dx + x dy", "x*(x + y - 1)")


def test_irrational_singularities_are_reported():
    # Singularities at y^2 = 2 do not have rational coordinates.
    with pytest.raises(IrrationalPointError):
        _check("(x - y^2 + 1) dx + (y^3 - 2*y) dy", "x + y - 1")
