"""Line-oriented session files: named bindings plus compute directives.

Grammar (one statement per line, ``#`` starts a comment):

    ring x, y
    poly  NAME = EXPR
    form  NAME = EXPR dx + EXPR dy
    curve NAME = EXPR            # validated germ: vanishes at 0, reduced
    theta NAME = [EXPR, ...; EXPR, ...]
    param NAME = (EXPR_t, EXPR_t)
    compute DIRECTIVE ARG...

Directives: invariants, br, br-rel, gsv, milnor, tjurina, tang, radial,
euler, blowup, blowup-verify, pullback-order, gc-check, p2-check.

Each compute line yields one ResultRecord; the JSON form carries exactly the
keys directive, inputs, values, checks (timing is human-output only, so two
runs of the same session are byte-identical).
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BrindexError, ExprParseError, SessionError
from .foliation import (
    PlaneFoliation,
    blowup,
    generalized_curve_check,
    order_pullback,
    tangency_order,
    verify_blowup_formula,
)
from .invariants import (
    HypersurfaceGerm,
    ThetaGenerators,
    br_relative,
    bruce_roberts,
    bruce_roberts_trivial_direct,
    bruce_roberts_user_theta,
    euler_obstruction_curve,
    gsv_hyp,
    gsv_icis,
    invariant_report,
    milnor_form,
    milnor_hyp,
    radial_index,
    tjurina,
    trivial_evaluation_ideal,
)
from .localalg import INFINITY, LocalIdeal, colength
from .parsing import parse_form, parse_poly
from .poly import MPoly, OneForm, Ring, ring
from .projective import foliation_milnor_sum, global_br_check
from .series import Parametrization, T_RING

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Check:
    name: str
    lhs: object
    rhs: object
    passed: bool

    @classmethod
    def equal(cls, name: str, lhs, rhs) -> "Check":
        return cls(name, lhs, rhs, lhs == rhs)

    @classmethod
    def at_most(cls, name: str, lhs, rhs) -> "Check":
        return cls(name, lhs, rhs, lhs <= rhs)


@dataclass
class ResultRecord:
    directive: str
    inputs: tuple[str, ...]
    values: dict
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0  # seconds; shown in the table, never in JSON

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "directive": self.directive,
            "inputs": list(self.inputs),
            "values": self.values,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "pass": c.passed}
                for c in self.checks
            ],
        }


def _fin(value) -> object:
    """Colengths go to JSON as ints, or the literal string \"infinity\"."""
    if value == INFINITY:
        return "infinity"
    return int(value)


class Session:
    """Holds the declared ring and named objects while a file executes."""

    def __init__(self):
        self.ring: Ring | None = None
        self.polys: dict[str, MPoly] = {}
        self.forms: dict[str, OneForm] = {}
        self.curves: dict[str, HypersurfaceGerm] = {}
        self.thetas: dict[str, ThetaGenerators] = {}
        self.params: dict[str, Parametrization] = {}
        self.records: list[ResultRecord] = []

    # -- name plumbing ---------------------------------------------------

    def _check_name(self, name: str, line: int) -> None:
        if not _NAME_RE.match(name):
            raise SessionError(f"invalid name {name!r}", line)
        if self.ring is not None and name in self.ring.names:
            raise SessionError(f"name {name!r} collides with a ring variable", line)
        for space in (self.polys, self.forms, self.curves, self.thetas, self.params):
            if name in space:
                raise SessionError(f"name {name!r} is already bound", line)

    def _need_ring(self, line: int) -> Ring:
        if self.ring is None:
            raise SessionError("no ring declared yet", line)
        return self.ring

    def _get(self, space: dict, name: str, kind: str, line: int):
        if name not in space:
            raise SessionError(f"no {kind} named {name!r}", line)
        return space[name]

    def _get_poly_like(self, name: str, line: int) -> MPoly:
        if name in self.polys:
            return self.polys[name]
        if name in self.curves:
            return self.curves[name].phi
        raise SessionError(f"no poly or curve named {name!r}", line)

    def _germ_of(self, name: str, line: int) -> HypersurfaceGerm:
        if name in self.curves:
            return self.curves[name]
        if name in self.polys:
            return HypersurfaceGerm(self.polys[name])
        raise SessionError(f"no curve named {name!r}", line)

    # -- statement execution ----------------------------------------------

    def execute_text(self, text: str) -> list[ResultRecord]:
        for no, raw in enumerate(text.splitlines(), start=1):
            stmt = raw.split("#", 1)[0].strip()
            if not stmt:
                continue
            try:
                self._statement(stmt, no)
            except SessionError:
                raise
            except ExprParseError as exc:
                raise SessionError(f"{exc}", no) from exc
            except BrindexError as exc:
                raise type(exc)(f"line {no}: {exc}") from exc
        return self.records

    def _statement(self, stmt: str, line: int) -> None:
        head, _, rest = stmt.partition(" ")
        rest = rest.strip()
        if head == "ring":
            if self.ring is not None:
                raise SessionError("ring is already declared", line)
            names = [n.strip() for n in rest.replace(",", " ").split()]
            if not names:
                raise SessionError("ring needs at least one variable", line)
            for n in names:
                if not _NAME_RE.match(n):
                    raise SessionError(f"invalid variable name {n!r}", line)
            if len(set(names)) != len(names):
                raise SessionError("repeated ring variable", line)
            self.ring = ring(*names)
            return
        if head in ("poly", "form", "curve", "theta", "param"):
            R = self._need_ring(line)
            name, eq, rhs = rest.partition("=")
            name = name.strip()
            rhs = rhs.strip()
            if not eq or not rhs:
                raise SessionError(f"{head} needs NAME = EXPR", line)
            self._check_name(name, line)
            if head == "poly":
                self.polys[name] = parse_poly(rhs, R)
            elif head == "form":
                self.forms[name] = parse_form(rhs, R)
            elif head == "curve":
                self.curves[name] = HypersurfaceGerm(parse_poly(rhs, R))
            elif head == "theta":
                self.thetas[name] = self._parse_theta(rhs, R, line)
            else:
                self.params[name] = self._parse_param(rhs, line)
            return
        if head == "compute":
            parts = rest.split()
            if not parts:
                raise SessionError("compute needs a directive", line)
            directive, args = parts[0], parts[1:]
            started = time.perf_counter()
            record = self._dispatch(directive, args, line)
            record.elapsed = time.perf_counter() - started
            self.records.append(record)
            return
        raise SessionError(f"unknown statement {head!r}", line)

    def _parse_theta(self, rhs: str, R: Ring, line: int) -> ThetaGenerators:
        if not (rhs.startswith("[") and rhs.endswith("]")):
            raise SessionError("theta needs [EXPR, ...; EXPR, ...]", line)
        rows = []
        for chunk in rhs[1:-1].split(";"):
            entries = [e.strip() for e in chunk.split(",")]
            if not all(entries):
                raise SessionError("empty entry in theta row", line)
            rows.append(tuple(parse_poly(e, R) for e in entries))
        return ThetaGenerators(tuple(rows))

    def _parse_param(self, rhs: str, line: int) -> Parametrization:
        if not (rhs.startswith("(") and rhs.endswith(")")):
            raise SessionError("param needs (EXPR_t, EXPR_t)", line)
        entries = [e.strip() for e in rhs[1:-1].split(",")]
        if len(entries) < 2 or not all(entries):
            raise SessionError("param needs one expression per variable", line)
        comps = tuple(parse_poly(e, T_RING) for e in entries)
        return Parametrization(comps)

    # -- directives --------------------------------------------------------

    def _dispatch(self, directive: str, args: list[str], line: int) -> ResultRecord:
        handlers = {
            "invariants": self._run_invariants,
            "br": self._run_br,
            "br-rel": self._run_br_rel,
            "gsv": self._run_gsv,
            "milnor": self._run_milnor,
            "tjurina": self._run_tjurina,
            "tang": self._run_tang,
            "radial": self._run_radial,
            "euler": self._run_euler,
            "blowup": self._run_blowup,
            "blowup-verify": self._run_blowup_verify,
            "pullback-order": self._run_pullback_order,
            "gc-check": self._run_gc_check,
            "p2-check": self._run_p2_check,
        }
        if directive not in handlers:
            raise SessionError(f"unknown directive {directive!r}", line)
        return handlers[directive](args, line)

    def _need_args(self, args: list[str], counts: tuple[int, ...], usage: str, line: int):
        if len(args) not in counts:
            raise SessionError(f"usage: compute {usage}", line)

    def _run_invariants(self, args, line) -> ResultRecord:
        self._need_args(args, (2,), "invariants FORM CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        rep = invariant_report(omega, X)
        values = {"n": rep.n, "multiplicity": rep.multiplicity}
        values.update(rep.as_dict())
        checks = [
            Check.equal(
                "trivial_evaluation",
                _fin(colength(trivial_evaluation_ideal(omega, X))),
                rep.gsv + rep.mu0_omega,
            ),
            Check.equal("relative_split", rep.mu_br, rep.mu0_omega + rep.mu_br_rel),
        ]
        if rep.n == 2:
            checks.append(
                Check.equal(
                    "tang_equals_gsv",
                    tangency_order(PlaneFoliation.from_form(omega), X),
                    rep.gsv,
                )
            )
        return ResultRecord("invariants", tuple(args), values, checks)

    def _run_br(self, args, line) -> ResultRecord:
        self._need_args(args, (2, 3), "br FORM CURVE [THETA]", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        value = bruce_roberts(omega, X)
        checks = [
            Check.equal(
                "gsv_decomposition", bruce_roberts_trivial_direct(omega, X), value
            )
        ]
        values = {"mu_br": value}
        if len(args) == 3:
            theta = self._get(self.thetas, args[2], "theta", line)
            via_theta = bruce_roberts_user_theta(omega, X, theta)
            values["mu_br_theta"] = via_theta
            checks.append(Check.equal("user_theta_route", via_theta, value))
        return ResultRecord("br", tuple(args), values, checks)

    def _run_br_rel(self, args, line) -> ResultRecord:
        self._need_args(args, (2,), "br-rel FORM CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        value = br_relative(omega, X)
        mu0 = milnor_form(omega)
        check = Check.equal(
            "relative_split", bruce_roberts(omega, X), _fin(mu0 + value)
        )
        return ResultRecord("br-rel", tuple(args), {"mu_br_rel": value}, [check])

    def _run_gsv(self, args, line) -> ResultRecord:
        if len(args) < 2:
            raise SessionError("usage: compute gsv FORM CURVE | gsv FORM F1 F2 ...", line)
        omega = self._get(self.forms, args[0], "form", line)
        if len(args) == 2:
            X = self._germ_of(args[1], line)
            value = gsv_hyp(omega, X)
        else:
            fs = [self._get_poly_like(a, line) for a in args[1:]]
            value = gsv_icis(omega, fs)
        return ResultRecord("gsv", tuple(args), {"gsv": _fin(value)}, [])

    def _run_milnor(self, args, line) -> ResultRecord:
        self._need_args(args, (1,), "milnor FORM|CURVE|POLY", line)
        name = args[0]
        if name in self.forms:
            value = milnor_form(self.forms[name])
        elif name in self.curves:
            value = milnor_hyp(self.curves[name])
        elif name in self.polys:
            f = self.polys[name]
            value = colength(
                LocalIdeal.make(f.ring, [f.partial(i) for i in range(f.ring.n)])
            )
        else:
            raise SessionError(f"no form, curve or poly named {name!r}", line)
        return ResultRecord("milnor", tuple(args), {"milnor": _fin(value)}, [])

    def _run_tjurina(self, args, line) -> ResultRecord:
        self._need_args(args, (1,), "tjurina CURVE", line)
        X = self._germ_of(args[0], line)
        return ResultRecord("tjurina", tuple(args), {"tjurina": _fin(tjurina(X))}, [])

    def _run_tang(self, args, line) -> ResultRecord:
        self._need_args(args, (2,), "tang FORM CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        value = tangency_order(PlaneFoliation.from_form(omega), X)
        check = Check.equal("tang_equals_gsv", value, _fin(gsv_hyp(omega, X)))
        return ResultRecord("tang", tuple(args), {"tang": value}, [check])

    def _run_radial(self, args, line) -> ResultRecord:
        self._need_args(args, (2,), "radial FORM CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        return ResultRecord(
            "radial", tuple(args), {"radial": radial_index(omega, X)}, []
        )

    def _run_euler(self, args, line) -> ResultRecord:
        self._need_args(args, (2,), "euler FORM CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        eu = euler_obstruction_curve(omega, X)
        values = {
            "euler_obstruction": eu,
            "radial": radial_index(omega, X),
            "multiplicity": X.multiplicity(),
        }
        return ResultRecord("euler", tuple(args), values, [])

    def _run_blowup(self, args, line) -> ResultRecord:
        self._need_args(args, (1,), "blowup FORM", line)
        omega = self._get(self.forms, args[0], "form", line)
        bl = blowup(PlaneFoliation.from_form(omega))
        values = {
            "nu": bl.nu,
            "k": bl.k,
            "dicritical": bl.dicritical,
            "chart_xt": [str(bl.chart_xt.A), str(bl.chart_xt.B)],
            "chart_uy": [str(bl.chart_uy.A), str(bl.chart_uy.B)],
        }
        return ResultRecord("blowup", tuple(args), values, [])

    def _run_blowup_verify(self, args, line) -> ResultRecord:
        self._need_args(args, (2,), "blowup-verify FORM CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        X = self._germ_of(args[1], line)
        rep = verify_blowup_formula(PlaneFoliation.from_form(omega), X)
        values = {
            "nu": rep.nu,
            "m": rep.m,
            "k": rep.k,
            "dicritical": rep.dicritical,
            "mu_br_origin": rep.mu_br_origin,
            "mu_br_q": rep.mu_br_q,
            "mu_br_rel_origin": rep.mu_br_rel_origin,
            "mu_br_rel_q": rep.mu_br_rel_q,
            "sum_mu_other": rep.sum_mu_other,
            "sum_mu_all": rep.sum_mu_all,
            "mu0_F": rep.mu0_F,
            "delta_drop": rep.delta_drop,
            "q_chart": rep.q.chart,
            "q_coord": str(rep.q.coord),
        }
        main_name = "blowup_dicritical" if rep.dicritical else "blowup_nondicritical"
        checks = [
            Check.equal(main_name, rep.mu_br_origin, rep.rhs_mu_br),
            Check.equal("blowup_relative", rep.mu_br_rel_origin, rep.rhs_mu_br_rel),
            Check.equal("milnor_conservation", rep.mu0_F, rep.rhs_conservation),
        ]
        return ResultRecord("blowup-verify", tuple(args), values, checks)

    def _run_pullback_order(self, args, line) -> ResultRecord:
        self._need_args(args, (2, 3), "pullback-order FORM PARAM [CURVE]", line)
        omega = self._get(self.forms, args[0], "form", line)
        param = self._get(self.params, args[1], "param", line)
        checks: list[Check] = []
        if len(args) == 3:
            X = self._germ_of(args[2], line)
            order = order_pullback(omega, param, X)
            tang = tangency_order(PlaneFoliation.from_form(omega), X)
            mu_x = milnor_hyp(X)
            checks.append(
                Check.equal("pullback_order_identity", tang, _fin(order + mu_x))
            )
            checks.append(
                Check.equal("radial_pullback", radial_index(omega, X), order)
            )
        else:
            order = order_pullback(omega, param)
        return ResultRecord(
            "pullback-order", tuple(args), {"order": order}, checks
        )

    def _run_gc_check(self, args, line) -> ResultRecord:
        self._need_args(args, (3,), "gc-check FORM SEPARATRIX CURVE", line)
        omega = self._get(self.forms, args[0], "form", line)
        sep = self._get_poly_like(args[1], line)
        X = self._germ_of(args[2], line)
        rep = generalized_curve_check(PlaneFoliation.from_form(omega), sep, X)
        values = {
            "delta": rep.delta,
            "mu0_F": rep.mu0_F,
            "mu0_dsep": rep.mu0_dsep,
            "mu_br_F": rep.mu_br_F,
            "mu_br_sep": rep.mu_br_sep,
            "mu_br_rel_F": rep.mu_br_rel_F,
            "mu_br_rel_sep": rep.mu_br_rel_sep,
            "is_generalized_curve": rep.is_generalized_curve,
        }
        check = Check.equal("generalized_curve_delta", rep.delta, rep.delta_direct)
        return ResultRecord("gc-check", tuple(args), values, [check])

    def _run_p2_check(self, args, line) -> ResultRecord:
        self._need_args(args, (1, 2), "p2-check FORM [CURVE]", line)
        omega = self._get(self.forms, args[0], "form", line)
        if len(args) == 1:
            rep = foliation_milnor_sum(omega)
            values = {
                "d": rep.d,
                "mu_sum": rep.mu_sum,
                "expected": rep.expected,
                "points": [
                    [str(c) for c in p.point] + [p.mu] for p in rep.points
                ],
            }
            checks = [Check.equal("milnor_sum", rep.mu_sum, rep.expected)]
            return ResultRecord("p2-check", tuple(args), values, checks)
        phi = self._get_poly_like(args[1], line)
        rep = global_br_check(omega, phi)
        values = {
            "d": rep.d,
            "r": rep.r,
            "lhs": rep.lhs,
            "rhs": rep.rhs,
            "mu_sum": rep.mu_sum,
            "tau_total": rep.tau_total,
            "points": [
                [str(c) for c in p.point] + [p.mu, p.tang, p.tau]
                for p in rep.points
            ],
        }
        d, r = rep.d, rep.r
        checks = [
            Check.equal("global_sum", rep.lhs, rep.rhs),
            Check.equal("milnor_sum", rep.mu_sum, d * d + d + 1),
            Check.at_most("tjurina_bound", rep.tau_total, d * d + d + 1 + r * (d + r - 1)),
        ]
        return ResultRecord("p2-check", tuple(args), values, checks)


def run_session_text(text: str) -> list[ResultRecord]:
    return Session().execute_text(text)


def render_jsonl(records: list[ResultRecord]) -> str:
    return "\n".join(json.dumps(r.to_json_obj()) for r in records)


def render_human(records: list[ResultRecord]) -> str:
    lines: list[str] = []
    for r in records:
        args = " ".join(r.inputs)
        lines.append(f"compute {r.directive} {args}    ({r.elapsed * 1000:.0f} ms)")
        for key, val in r.values.items():
            if key == "points":
                lines.append(f"  {key}:")
                for row in val:
                    lines.append("    " + "  ".join(str(c) for c in row))
                continue
            lines.append(f"  {key:<18} {val}")
        for c in r.checks:
            verdict = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{verdict}] {c.name}: {c.lhs} vs {c.rhs}")
        lines.append("")
    total = sum(len(r.checks) for r in records)
    failed = sum(1 for r in records for c in r.checks if not c.passed)
    lines.append(f"{len(records)} directives, {total} checks, {failed} failed")
    return "\n".join(lines)
