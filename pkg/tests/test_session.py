"""Session files: grammar, error reporting, directives, and output formats."""

from __future__ import annotations

import json

import pytest

from brindex.config import reset_limits
from brindex.errors import (
    ComputationError,
    InvariantCurveError,
    SessionError,
)
from brindex.session import render_human, render_jsonl, run_session_text


@pytest.fixture(autouse=True)
def _fresh_limits():
    reset_limits()
    yield
    reset_limits()


GOOD_SESSION = """
# A monomial curve with its Saito fields.
ring x, y
curve X = y^2 - x^5
form w = y dx + x dy
theta T = [2*x, 5*y; 2*y, 5*x^4]
poly f = x*y

compute invariants w X
compute br w X T
compute br-rel w X
compute tang w X
"""


# -- grammar -----------------------------------------------------------------------


def test_good_session_runs():
    records = run_session_text(GOOD_SESSION)
    assert [r.directive for r in records] == ["invariants", "br", "br-rel", "tang"]
    inv = records[0]
    assert inv.values["mu_br"] == 7
    assert inv.values["tang"] == 10
    assert all(c.passed for r in records for c in r.checks)
    br = records[1]
    assert br.values["mu_br_theta"] == 7
    assert br.inputs == ("w", "X", "T")


def test_comments_and_blank_lines_are_skipped():
    assert run_session_text("# nothing\n\n   \n# more nothing\n") == []


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("poly f = x", "ring"),  # no ring declared yet
        ("ring x, y\nring x, y", "already declared"),
        ("ring x, y\npoly x = y", "ring variable"),
        ("ring x, y\npoly f = x\npoly f = y", "already"),
        ("ring x, y\npoly 2f = x", "name"),
        ("ring x, y\ncompute frobnicate f", "unknown directive"),
        ("ring x, y\nform w = y dx + x dy\ncompute tang w", "usage"),
        ("ring x, y\ncompute tang w X", "w"),
        ("ring x, y\nbogus statement here", "statement"),
        ("ring x, y\npoly f = x +", "expected a number"),
        ("ring x, y\ntheta T = [x, y", "theta"),
        ("ring x, y\nparam c = t^2, t^3", "param"),
    ],
)
def test_malformed_sessions_raise(text, fragment):
    with pytest.raises(SessionError) as err:
        run_session_text(text)
    assert fragment.lower() in str(err.value).lower()


def test_errors_carry_line_numbers():
    text = "ring x, y\n\n# comment\npoly f = x +"
    with pytest.raises(SessionError) as err:
        run_session_text(text)
    assert "line 4" in str(err.value)


def test_math_errors_keep_their_type_and_line():
    text = "ring x, y\ncurve X = y^2 - x^3\nform w = -3*x^2 dx + 2*y dy\ncompute tang w X"
    with pytest.raises(InvariantCurveError) as err:
        run_session_text(text)
    assert "line 4" in str(err.value)
    assert isinstance(err.value, ComputationError)


def test_curve_must_be_reduced():
    with pytest.raises(ComputationError):
        run_session_text("ring x, y\ncurve X = x^2")


# -- all directives ----------------------------------------------------------------


def test_every_directive_smokes():
    text = """
    ring x, y
    curve X = y^2 - x^5
    curve C = y - x^2
    form w = y dx + x dy
    form lin = -3*y dx + 2*x dy
    form rad = -y dx + x dy
    poly sep = x*y
    param c = (t^2, t^5)
    theta T = [2*x, 5*y; 2*y, 5*x^4]
    compute invariants w X
    compute br w X T
    compute br-rel w X
    compute gsv w X
    compute milnor X
    compute tjurina X
    compute tang w X
    compute radial w X
    compute euler w X
    compute blowup lin
    compute blowup-verify lin X
    compute pullback-order w c X
    compute gc-check lin sep X
    compute p2-check rad C
    """
    records = run_session_text(text)
    by_directive = {r.directive: r for r in records}
    assert len(records) == 14
    assert by_directive["gsv"].values["gsv"] == 10
    assert by_directive["milnor"].values["milnor"] == 4
    assert by_directive["tjurina"].values["tjurina"] == 4
    assert by_directive["tang"].values["tang"] == 10
    assert by_directive["radial"].values["radial"] == 6
    assert by_directive["euler"].values["euler_obstruction"] == 5
    assert by_directive["blowup"].values["nu"] == 1
    assert by_directive["blowup-verify"].values["mu_br_origin"] == 7
    assert by_directive["pullback-order"].values["order"] == 6
    assert by_directive["gc-check"].values["delta"] == 0
    assert by_directive["p2-check"].values["lhs"] == by_directive["p2-check"].values["rhs"]
    assert all(c.passed for r in records for c in r.checks)


def test_milnor_directive_dispatches_on_kind():
    text = """
    ring x, y
    curve X = y^3 - x^4
    form w = x dx + y dy
    poly f = x^2 + y^3
    compute milnor X
    compute milnor w
    compute milnor f
    """
    values = [r.values["milnor"] for r in run_session_text(text)]
    assert values == [6, 1, 2]


def test_infinite_values_serialize_as_string():
    text = "ring x, y\nform w = x dx + 0 dy\ncompute milnor w"
    records = run_session_text(text)
    assert records[0].values["milnor"] == "infinity"
    obj = json.loads(render_jsonl(records))
    assert obj["values"]["milnor"] == "infinity"


def test_gsv_icis_arity():
    text = """
    ring x, y, z
    form w = x dx + y dy + z dz
    poly f1 = x
    poly f2 = y
    compute gsv w f1 f2
    """
    records = run_session_text(text)
    assert records[0].values["gsv"] == 1


# -- output formats ------------------------------------------------------------------


def test_json_schema_is_exact():
    records = run_session_text(GOOD_SESSION)
    payload = render_jsonl(records)
    lines = payload.split("\n")
    assert len(lines) == len(records)
    for line in lines:
        obj = json.loads(line)
        assert set(obj) == {"directive", "inputs", "values", "checks"}
        assert isinstance(obj["inputs"], list)
        for check in obj["checks"]:
            assert set(check) == {"name", "lhs", "rhs", "pass"}
            assert isinstance(check["pass"], bool)
        assert "elapsed" not in obj


def test_jsonl_is_deterministic():
    a = render_jsonl(run_session_text(GOOD_SESSION))
    b = render_jsonl(run_session_text(GOOD_SESSION))
    assert a == b


def test_human_rendering():
    records = run_session_text(GOOD_SESSION)
    out = render_human(records)
    assert "[PASS]" in out
    assert "ms)" in out
    assert out.rstrip().endswith("failed")
    assert "mu_br" in out
