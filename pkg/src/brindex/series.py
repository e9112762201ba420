"""Truncated power series in one variable and pullbacks along parametrizations.

A parametrization is a tuple of polynomials in t (integer exponents only).
Pullbacks are computed with truncated arithmetic; the truncation order is
explicit everywhere so order queries can be retried at higher precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ComputationError, InconclusiveTruncation
from .poly import MPoly, OneForm, Ring, ring


class TruncatedSeries:
    """A series sum c_k t^k known exactly for k < trunc."""

    __slots__ = ("var", "trunc", "terms")

    def __init__(self, var: str, trunc: int, terms: dict):
        if trunc < 1:
            raise ValueError("truncation order must be positive")
        self.var = var
        self.trunc = trunc
        self.terms = {
            k: Fraction(c) for k, c in terms.items() if 0 <= k < trunc and c != 0
        }

    @classmethod
    def from_poly(cls, p: MPoly, trunc: int) -> "TruncatedSeries":
        if p.ring.n != 1:
            raise ValueError("series come from univariate polynomials")
        return cls(p.ring.names[0], trunc, {e[0]: c for e, c in p.terms()})

    @classmethod
    def constant(cls, var: str, trunc: int, c) -> "TruncatedSeries":
        return cls(var, trunc, {0: Fraction(c)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "TruncatedSeries"):
        if self.var != other.var or self.trunc != other.trunc:
            raise ValueError("series must share variable and truncation order")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return TruncatedSeries(self.var, self.trunc, acc)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.var, self.trunc, {k: -c for k, c in self.terms.items()}
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                if k >= self.trunc:
                    continue
                acc[k] = acc.get(k, Fraction(0)) + c1 * c2
        return TruncatedSeries(self.var, self.trunc, acc)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(
            self.var, self.trunc, {k: c * v for k, v in self.terms.items()}
        )

    def power(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.constant(self.var, self.trunc, 1)
        base = self
        if k < 0:
            raise ValueError("negative series powers are not supported")
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def order(self) -> int:
        """Vanishing order; raises InconclusiveTruncation on a zero prefix."""
        if not self.terms:
            raise InconclusiveTruncation(
                f"series vanishes up to t^{self.trunc}; order unknown"
            )
        return min(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.var == other.var
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return f"O({self.var}^{self.trunc})"
        body = " + ".join(
            f"{c}*{self.var}^{k}" for k, c in sorted(self.terms.items())
        )
        return f"{body} + O({self.var}^{self.trunc})"


T_RING = ring("t")


@dataclass(frozen=True)
class Parametrization:
    """A polynomial map t -> (x_1(t), ..., x_n(t)) with all x_i(0) = 0."""

    components: tuple[MPoly, ...]

    def __post_init__(self):
        for p in self.components:
            if p.ring != T_RING:
                raise ValueError("parametrization components must be polynomials in t")
            if p.constant_term() != 0:
                raise ValueError("parametrizations must pass through the origin")

    @property
    def n(self) -> int:
        return len(self.components)

    def max_degree(self) -> int:
        return max((p.total_degree() for p in self.components), default=-1)

    def series(self, trunc: int) -> list[TruncatedSeries]:
        return [TruncatedSeries.from_poly(p, trunc) for p in self.components]

    def derivative_series(self, trunc: int) -> list[TruncatedSeries]:
        return [
            TruncatedSeries.from_poly(p.partial(0), trunc) for p in self.components
        ]

    def lies_on(self, phi: MPoly) -> bool:
        """Exact membership test: phi(x(t)) == 0 as a polynomial in t."""
        if phi.ring.n != self.n:
            raise ValueError("parametrization and polynomial sizes differ")
        return phi.subs(T_RING, list(self.components)).is_zero

    def multiplicity(self) -> int:
        """min_i ord_t x_i(t); the multiplicity of the parametrized branch."""
        orders = [p.order() for p in self.components if not p.is_zero]
        if not orders:
            raise ComputationError("zero parametrization has no multiplicity")
        return int(min(orders))


def _eval_poly_on_series(
    f: MPoly, values: Sequence[TruncatedSeries], trunc: int
) -> TruncatedSeries:
    var = values[0].var
    pow_cache: list[dict[int, TruncatedSeries]] = [
        {0: TruncatedSeries.constant(var, trunc, 1), 1: v} for v in values
    ]

    def power(i: int, k: int) -> TruncatedSeries:
        cache = pow_cache[i]
        if k not in cache:
            cache[k] = cache[1].power(k)
        return cache[k]

    total = TruncatedSeries(var, trunc, {})
    for e, c in f.terms():
        term = TruncatedSeries.constant(var, trunc, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


def pullback_poly(f: MPoly, param: Parametrization, trunc: int) -> TruncatedSeries:
    """f(x(t)) as a truncated series."""
    if f.ring.n != param.n:
        raise ValueError("polynomial and parametrization sizes differ")
    return _eval_poly_on_series(f, param.series(trunc), trunc)


def pullback_form(omega: OneForm, param: Parametrization, trunc: int) -> TruncatedSeries:
    """The pullback  sum_i A_i(x(t)) x_i'(t) dt,  returned as its coefficient."""
    if omega.ring.n != param.n:
        raise ValueError("form and parametrization sizes differ")
    xs = param.series(trunc)
    dxs = param.derivative_series(trunc)
    total = TruncatedSeries(xs[0].var, trunc, {})
    for a, dx in zip(omega.coeffs, dxs):
        total = total + _eval_poly_on_series(a, xs, trunc) * dx
    return total


def pullback_form_degree_bound(omega: OneForm, param: Parametrization) -> int:
    """A degree in t beyond which the (polynomial) pullback has no terms."""
    d = param.max_degree()
    bound = 0
    for a in omega.coeffs:
        if a.is_zero:
            continue
        bound = max(bound, a.total_degree() * d + max(d - 1, 0))
    return bound
