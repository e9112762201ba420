"""Standard bases in local rings and colength computations.

The normal form is Mora's tangent-cone reduction for the negative degree
reverse lexicographic order: reductors are chosen with minimal ecart (ties go
to the first listed) and the intermediate polynomial may itself join the
reductor list, which is what makes the local division terminate.  Once the
staircase of the partial basis is finite, terms deeper than its corner are
discarded during reduction (they already lie in the ideal), which keeps
intermediate polynomials small and makes reductions to zero cheap.

Colength (the vector-space dimension of O_n / I) is read off the staircase of
leading exponents.  Infinite colength is detected structurally: some variable
has no pure power in the leading ideal.  A second, independent route
(`colength_oracle`) computes dim O_n/(I + m^b) by exact sparse Gaussian
elimination on truncated multiples of the generators and is used throughout
the tests to cross-check the standard-basis route.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .config import get_limits
from .elim import is_unit_germ, poly_gcd
from .errors import ResourceLimitError
from .poly import (
    Exp,
    MPoly,
    Ring,
    exp_add,
    exp_lcm,
    exp_sub,
    local_key,
    monomial_divides,
)

INFINITY = math.inf


@dataclass(frozen=True)
class LocalIdeal:
    """An ideal of the local ring at the origin, given by polynomial generators.

    Zero generators are dropped at construction; the list must stay nonempty.
    """

    ring: Ring
    gens: tuple[MPoly, ...]

    def __post_init__(self):
        kept = tuple(g for g in self.gens if not g.is_zero)
        for g in kept:
            if g.ring != self.ring:
                raise ValueError("ideal generators must share the ring")
        if not kept:
            raise ValueError("refusing the zero ideal (no nonzero generators)")
        object.__setattr__(self, "gens", kept)

    @classmethod
    def make(cls, ring_: Ring, gens: Iterable[MPoly]) -> "LocalIdeal":
        return cls(ring_, tuple(gens))


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, steps: int):
        self.remaining = steps

    def spend(self):
        self.remaining -= 1
        if self.remaining < 0:
            raise ResourceLimitError(
                "reduction step budget exhausted; raise the limit with --steps"
            )


# -- integer reduction core ---------------------------------------------------
# Working polynomials are plain dict[Exp, int] with content 1 and positive
# leading coefficient.  Reduction steps are pseudo-reductions (cross-multiply
# by leading coefficients, then strip the content), so no Fraction arithmetic
# happens until the finished basis is made monic.  Reductors are carried as
# (terms, leading exponent, ecart) records.


def _int_strip(d: dict) -> dict:
    if not d:
        return d
    g = 0
    for c in d.values():
        g = math.gcd(g, c)
    if d[min(d, key=local_key)] < 0:
        g = -g
    if g != 1:
        return {e: c // g for e, c in d.items()}
    return d


def _int_from_poly(f: MPoly) -> dict:
    den = 1
    for _, c in f.terms():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _int_strip({e: int(c * den) for e, c in f.terms()})


def _int_record(d: dict) -> tuple:
    lt = min(d, key=local_key)
    return (d, lt, max(sum(e) for e in d) - sum(lt))


def _int_combine(h: dict, ch: int, g: dict, cg: int, shift: Exp) -> dict:
    """cg/k * h - ch/k * x^shift * g with k = gcd; leading terms must cancel."""
    k = math.gcd(ch, cg)
    mh, mg = cg // k, ch // k
    out = dict(h) if mh == 1 else {e: c * mh for e, c in h.items()}
    for e, c in g.items():
        ne = exp_add(e, shift)
        v = out.get(ne, 0) - c * mg
        if v:
            out[ne] = v
        elif ne in out:
            del out[ne]
    return out


def _int_spoly(f_rec: tuple, g_rec: tuple) -> dict:
    ft, fe, _ = f_rec
    gt, ge, _ = g_rec
    lcm = exp_lcm(fe, ge)
    shifted = {exp_add(e, exp_sub(lcm, fe)): c for e, c in ft.items()}
    return _int_combine(shifted, shifted[lcm], gt, gt[ge], exp_sub(lcm, ge))


def _corner_key(ring_: Ring, exps: Sequence[Exp]) -> tuple | None:
    """Local-order key of the deepest staircase cell, or None if unbounded.

    Every monomial strictly deeper than this cell already lies in the leading
    ideal of ``exps``, hence (corner theorem for local degree orders) any
    polynomial supported entirely past the corner lies in the ideal itself.
    """
    n = ring_.n
    box = []
    for i in range(n):
        pure = [e[i] for e in exps if all(e[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return None
        box.append(min(pure))
    deepest = local_key((0,) * n)
    for point in itertools.product(*(range(k) for k in box)):
        if not any(monomial_divides(e, point) for e in exps):
            deepest = max(deepest, local_key(point))
    return deepest


def _int_cut(d: dict, corner: tuple | None) -> dict:
    """Discard the terms deeper than the staircase corner; they lie in the ideal."""
    if corner is None or not d:
        return d
    kept = {e: c for e, c in d.items() if local_key(e) <= corner}
    return kept if len(kept) != len(d) else d


def _mora_nf(
    f: dict, reductors: Sequence[tuple], budget: _Budget, corner: tuple | None = None
) -> dict:
    """Mora weak normal form of f against the list of reductor records."""
    h = _int_strip(_int_cut(f, corner))
    allowed = list(reductors)
    while h:
        he = min(h, key=local_key)
        usable = [r for r in allowed if monomial_divides(r[1], he)]
        if not usable:
            return h
        g = min(usable, key=lambda r: r[2])
        h_ecart = max(sum(e) for e in h) - sum(he)
        if g[2] > h_ecart:
            allowed.append((h, he, h_ecart))
        budget.spend()
        h = _int_strip(
            _int_cut(_int_combine(h, h[he], g[0], g[0][g[1]], exp_sub(he, g[1])), corner)
        )
    return h


def _complete_records(ring_: Ring, basis: list, budget: _Budget) -> list:
    """Buchberger pair loop over reductor records, Mora normal forms.

    Pairs of single monomials are skipped: their s-polynomial is identically
    zero.  The staircase corner is refreshed whenever the basis grows.
    """
    heap: list = []
    counter = itertools.count()

    def push_pairs(new_index: int):
        g = basis[new_index]
        for i in range(new_index):
            if len(g[0]) == 1 and len(basis[i][0]) == 1:
                continue
            lcm = exp_lcm(basis[i][1], g[1])
            heapq.heappush(heap, (local_key(lcm), next(counter), i, new_index))

    for j in range(1, len(basis)):
        push_pairs(j)

    corner = _corner_key(ring_, [r[1] for r in basis])
    while heap:
        _, _, i, j = heapq.heappop(heap)
        budget.spend()
        h = _mora_nf(_int_spoly(basis[i], basis[j]), basis, budget, corner)
        if h:
            basis.append(_int_record(h))
            push_pairs(len(basis) - 1)
            corner = _corner_key(ring_, [r[1] for r in basis])
    return basis


def standard_basis(ideal: LocalIdeal, max_steps: int | None = None) -> tuple[MPoly, ...]:
    """Minimal monic standard basis w.r.t. the local order; deterministic."""
    if max_steps is None:
        max_steps = get_limits().max_reduction_steps
    budget = _Budget(max_steps)
    basis = _complete_records(
        ideal.ring, [_int_record(_int_from_poly(g)) for g in ideal.gens], budget
    )

    # Minimalize: keep only generators whose leading exponent is not divisible
    # by another kept one.  Sorting by the order makes the scan greedy-safe.
    basis.sort(key=lambda r: local_key(r[1]))
    kept: list[MPoly] = []
    kept_exps: list[Exp] = []
    for terms, e, _ in basis:
        if any(monomial_divides(d, e) for d in kept_exps):
            continue
        lead = terms[e]
        kept.append(MPoly(ideal.ring, {m: Fraction(c, lead) for m, c in terms.items()}))
        kept_exps.append(e)
    return tuple(kept)


def leading_exponents(basis: Sequence[MPoly]) -> list[Exp]:
    return [g.leading_exp() for g in basis]


def colength_from_leading(ring_: Ring, exps: Sequence[Exp]) -> int | float:
    """Count monomials outside the staircase of ``exps``; inf when unbounded."""
    n = ring_.n
    box = []
    for i in range(n):
        pure = [e[i] for e in exps if all(e[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return INFINITY
        box.append(min(pure))
    count = 0
    for point in itertools.product(*(range(k) for k in box)):
        if not any(monomial_divides(e, point) for e in exps):
            count += 1
    return count


def _degree_slice(n: int, d: int) -> list[Exp]:
    """All exponents in n variables of total degree exactly d."""
    if n == 1:
        return [(d,)]
    out = []
    for k in range(d + 1):
        out.extend((k,) + rest for rest in _degree_slice(n - 1, d - k))
    out.sort(key=local_key)
    return out


def _staircase_census(exps: Sequence[Exp], n: int) -> tuple[int, int]:
    """(cell count, max cell degree) for a staircase with all pure powers."""
    box = []
    for i in range(n):
        box.append(
            min(e[i] for e in exps if all(e[j] == 0 for j in range(n) if j != i))
        )
    count = 0
    max_deg = -1
    for point in itertools.product(*(range(k) for k in box)):
        if not any(monomial_divides(e, point) for e in exps):
            count += 1
            max_deg = max(max_deg, sum(point))
    return count, max_deg


def _colength_bounded(ideal: LocalIdeal, bound: int, budget: _Budget) -> int | None:
    """Colength via a standard basis of I + m^bound, or None if uncertified.

    The staircase of I + m^bound is the staircase of I cut at degree < bound.
    A staircase cell of degree d forces divisor cells at every degree below d,
    so if no cell reaches degree bound - 1 the cut changed nothing and the
    count is the colength of I itself.
    """
    basis = [_int_record(_int_from_poly(g)) for g in ideal.gens]
    for e in _degree_slice(ideal.ring.n, bound):
        basis.append(({e: 1}, e, 0))
    basis = _complete_records(ideal.ring, basis, budget)
    count, max_deg = _staircase_census([r[1] for r in basis], ideal.ring.n)
    if max_deg >= bound - 1:
        return None
    return count


_BOUND_CAP = 256


def colength(ideal: LocalIdeal, max_steps: int | None = None) -> int | float:
    """dim_Q O_n / I as a local ring quotient; inf for non-isolated ideals.

    In two variables the staircase is computed through certified truncations
    I + m^b with doubling b, which keeps every intermediate polynomial degree
    bounded; infinitude is decided exactly by the gcd of the generators.
    """
    if max_steps is None:
        max_steps = get_limits().max_reduction_steps
    if ideal.ring.n == 1:
        return int(min(g.order() for g in ideal.gens))
    if ideal.ring.n == 2:
        budget = _Budget(max_steps)
        bound = 8
        infinite_ruled_out = False
        while bound <= _BOUND_CAP:
            value = _colength_bounded(ideal, bound, budget)
            if value is not None:
                return value
            if not infinite_ruled_out:
                g = ideal.gens[0]
                for other in ideal.gens[1:]:
                    g = poly_gcd(g, other)
                if not is_unit_germ(g):
                    return INFINITY
                infinite_ruled_out = True
            bound *= 2
        raise ResourceLimitError(
            f"staircase does not close below degree {_BOUND_CAP}"
        )
    basis = standard_basis(ideal, max_steps=max_steps)
    return colength_from_leading(ideal.ring, leading_exponents(basis))


# -- independent truncated linear-algebra route ------------------------------


def _monomials_below(ring_: Ring, bound: int) -> list[Exp]:
    """All exponents of total degree < bound, sorted by the local order."""
    out: list[Exp] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == ring_.n - 1:
            for k in range(remaining + 1):
                out.append(tuple(prefix + [k]))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, pos + 1)

    rec([], bound - 1, 0)
    out.sort(key=local_key)
    return out


def _sparse_rank(rows: list[dict]) -> int:
    """Rank of a sparse rational matrix; exact Gaussian elimination."""
    pivots: dict[int, dict] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            pivot = pivots.get(lead)
            if pivot is None:
                inv = 1 / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            factor = row.pop(lead)
            for c, v in pivot.items():
                if c == lead:
                    continue
                nv = row.get(c, _F0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rank


_F0 = Fraction(0)


def _truncated_dim(ideal: LocalIdeal, bound: int) -> int:
    """dim O_n / (I + m^bound), by elimination on truncated generator multiples."""
    ring_ = ideal.ring
    monomials = _monomials_below(ring_, bound)
    col = {e: i for i, e in enumerate(monomials)}
    rows: list[dict] = []
    for g in ideal.gens:
        g_ord = g.order()
        for m in monomials:
            if sum(m) + g_ord >= bound:
                continue
            row = {}
            for e, c in g.terms():
                prod = tuple(a + b for a, b in zip(e, m))
                if sum(prod) < bound:
                    row[col[prod]] = row.get(col[prod], _F0) + c
            row = {c: v for c, v in row.items() if v != 0}
            if row:
                rows.append(row)
    return len(monomials) - _sparse_rank(rows)


def colength_oracle(ideal: LocalIdeal, bound: int) -> int | None:
    """Truncated-dimension route to the colength.

    Returns the dimension when it is stable between bound-1 and bound (which
    certifies it equals the colength), and None when the staircase does not
    fit under the bound.  Shares no code with the standard-basis route.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    d_prev = _truncated_dim(ideal, bound - 1)
    d_here = _truncated_dim(ideal, bound)
    if d_prev == d_here:
        return d_here
    return None


def colength_oracle_auto(ideal: LocalIdeal, start: int = 4, cap: int = 64) -> int:
    """Raise the oracle bound until the dimension stabilizes."""
    bound = max(start, 2)
    while bound <= cap:
        value = colength_oracle(ideal, bound)
        if value is not None:
            return value
        bound += 2
    raise ResourceLimitError(f"colength oracle did not stabilize below bound {cap}")


# -- minors -------------------------------------------------------------------


def _det(matrix: list[list[MPoly]], ring_: Ring) -> MPoly:
    k = len(matrix)
    if k == 1:
        return matrix[0][0]
    total = ring_.zero()
    for j in range(k):
        entry = matrix[0][j]
        if entry.is_zero:
            continue
        sub = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        cofactor = _det(sub, ring_)
        term = entry * cofactor
        total = total + (term if j % 2 == 0 else -term)
    return total


def minors(rows: Sequence[Sequence[MPoly]], k: int) -> list[MPoly]:
    """All k x k minors of the matrix, in sorted row/column-subset order."""
    if not rows:
        raise ValueError("empty matrix")
    ring_ = rows[0][0].ring
    n_rows = len(rows)
    n_cols = len(rows[0])
    for row in rows:
        if len(row) != n_cols:
            raise ValueError("ragged matrix")
    if k < 1 or k > n_rows or k > n_cols:
        raise ValueError(f"cannot take {k}x{k} minors of a {n_rows}x{n_cols} matrix")
    out = []
    for ris in itertools.combinations(range(n_rows), k):
        for cis in itertools.combinations(range(n_cols), k):
            sub = [[rows[r][c] for c in cis] for r in ris]
            out.append(_det(sub, ring_))
    return out
