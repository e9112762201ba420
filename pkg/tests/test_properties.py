"""Identity families over the randomized suites.

Suite A: random 1-forms with coefficient degree <= 4 against a pool of plane
curves.  Suite B: parametrized branches (monomial and hand-built) against
non-invariant forms.  The suites are built once in conftest and shared with
the acceptance gate; each test here isolates one identity so a regression
points at the law that broke, not at a wall of cases.
"""

from __future__ import annotations

from tests_util import describe_case


def test_suite_a_population(suite_a):
    cases = suite_a["cases"]
    assert len(cases) >= 200
    curves = {c["X"] for c in cases}
    assert len(curves) == 8  # every pool curve was exercised


def test_dual_route_bruce_roberts(suite_a):
    bad = [c for c in suite_a["cases"] if c["mu_br"] != c["direct"]]
    assert not bad, describe_case(bad[0])


def test_relative_decomposition(suite_a):
    bad = [
        c
        for c in suite_a["cases"]
        if c["mu_br"] != c["mu0"] + (c["gsv"] - c["tau"])
    ]
    assert not bad, describe_case(bad[0])


def test_trivial_module_evaluation(suite_a):
    bad = [c for c in suite_a["cases"] if c["trivial"] != c["gsv"] + c["mu0"]]
    assert not bad, describe_case(bad[0])


def test_tangency_equals_gsv(suite_a):
    bad = [c for c in suite_a["cases"] if c["tang"] != c["gsv"]]
    assert not bad, describe_case(bad[0])


def test_foliation_multiplicity_bound(suite_a):
    bad = [
        c
        for c in suite_a["cases"]
        if 2 * c["milnor_F"] < c["nu"] * (c["nu"] + 1)
    ]
    assert not bad, describe_case(bad[0])


def test_intersection_additivity(suite_a):
    applicable = [c for c in suite_a["cases"] if c["additivity"] is not None]
    assert len(applicable) >= 100
    bad = [c for c in applicable if c["additivity"][0] != c["additivity"][1]]
    assert not bad, describe_case(bad[0])


def test_oracle_agreement_suite_a(suite_a):
    for c in suite_a["cases"]:
        for primary, oracle in c["colengths"]:
            assert primary == oracle, describe_case(c)


def test_suite_b_population(suite_b):
    assert suite_b["monomial_curves"] >= 20
    assert suite_b["hand_built"] >= 5
    assert len(suite_b["cases"]) >= 25


def test_pullback_order_identity(suite_b):
    bad = [c for c in suite_b["cases"] if c["tang"] != c["order"] + c["mu0_X"]]
    assert not bad, describe_case(bad[0])


def test_radial_index_equals_pullback_order(suite_b):
    bad = [c for c in suite_b["cases"] if c["rad"] != c["order"]]
    assert not bad, describe_case(bad[0])


def test_oracle_agreement_suite_b(suite_b):
    for c in suite_b["cases"]:
        for primary, oracle in c["colengths"]:
            assert primary == oracle, describe_case(c)
