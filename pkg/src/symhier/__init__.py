"""Exact symbolic computation of generalized symmetries of u_t = u_m + f."""

from .diffalg import (
    NEG_INFINITY,
    DiffPoly,
    GradedSeries,
    bracket,
    homogeneous_component,
    order,
    partial,
    prolong,
    total_derivative,
    u,
)
from .errors import EquationError, HypothesisViolated, InternalInconsistency, ParseError
from .integrability import (
    EvolutionEquation,
    OrderEstimate,
    OrderSet,
    Status,
    SymmetryResult,
    classify,
    lemma8_equivalence,
    propagate_order_bounds,
    pull_back,
    solve_symmetry,
    t2_divides,
    theorem3_bound,
    verify_symmetry,
)
from .parsing import format_expression, parse_expression
from .symbolic import (
    P,
    SymPoly,
    exact_divide,
    gd_inverse,
    gd_transform,
    p_cofactor,
    sym_bracket,
    symmetrize,
    t_factor,
)

__version__ = "0.1.0"
