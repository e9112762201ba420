"""Exact local invariants of 1-forms along hypersurface singularities.

Everything is computed over the rationals: sparse polynomials with Fraction
coefficients, local standard bases for colengths, and the indices built from
them (Milnor, Tjurina, GSV, Bruce-Roberts and its relative version, radial
index, Euler obstruction, tangency order), plus quadratic blow-ups and the
global check on the projective plane.
"""

from .config import Limits, get_limits, reset_limits, set_limits
from .errors import (
    BrindexError,
    ComputationError,
    ExprParseError,
    InvariantCurveError,
    IrrationalPointError,
    NonIsolatedError,
    NotTangentError,
    ResourceLimitError,
    SessionError,
    UnsupportedError,
)
from .invariants import (
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
from .foliation import (
    PlaneFoliation,
    blowup,
    generalized_curve_check,
    intersection_mult,
    order_pullback,
    strict_transform_curve,
    tangency_order,
    verify_blowup_formula,
)
from .localalg import LocalIdeal, colength, colength_oracle, standard_basis
from .parsing import parse_form, parse_poly
from .poly import MPoly, OneForm, Ring, ring
from .projective import (
    ProjectiveCurve,
    ProjectiveFoliation,
    foliation_milnor_sum,
    global_br_check,
)
from .series import Parametrization

__version__ = "0.1.0"
