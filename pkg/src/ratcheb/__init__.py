"""Rational approximation toolkit: Newton-Pade interpolation, Pade
approximants, Chebyshev nodes/constants, and minimax rational approximation
on scaled domains eps*K, with sweep experiments for the asymptotic error and
node-convergence laws as eps -> 0.
"""

from .divdiff import NodeMultiset, dd_contour, dd_full_table, dd_recursive
from .domains import ChebSystem, DomainSpec, cheb_constant, cheb_system, sample_domain, uniform_norm
from .functions import HoloFunction, registry_get, registry_names
from .interpolation import (
    InterpolationResult,
    determinant_denominator_remainder,
    hermite_check,
    interp_at_scaled_cheb,
    interpolate,
)
from .minimax import LawsonOptions, MinimaxResult, best_approx, extract_nodes, unitary_best_exp
from .pade import (
    PadeResult,
    amn_exp_closed_form,
    hankel_det,
    leading_coeff,
    pade_approx,
    taylor_leading_coeff,
)
from .poly import (
    ComplexPolynomial,
    RationalFunction,
    compute_defect,
    poly_eval,
    poly_from_roots,
    poly_roots,
    rational_eval,
)
from .sweeps import (
    SweepRecord,
    SweepResult,
    error_ratio_pade_cheb,
    match_nodes,
    run_full_sweep,
    sweep_node_convergence,
    sweep_pointwise_profile,
    sweep_uniform_error,
)

__all__ = [
    "ChebSystem",
    "ComplexPolynomial",
    "DomainSpec",
    "HoloFunction",
    "InterpolationResult",
    "LawsonOptions",
    "MinimaxResult",
    "NodeMultiset",
    "PadeResult",
    "RationalFunction",
    "SweepRecord",
    "SweepResult",
    "amn_exp_closed_form",
    "best_approx",
    "cheb_constant",
    "cheb_system",
    "compute_defect",
    "dd_contour",
    "dd_full_table",
    "dd_recursive",
    "determinant_denominator_remainder",
    "error_ratio_pade_cheb",
    "extract_nodes",
    "hankel_det",
    "hermite_check",
    "interp_at_scaled_cheb",
    "interpolate",
    "leading_coeff",
    "match_nodes",
    "pade_approx",
    "poly_eval",
    "poly_from_roots",
    "poly_roots",
    "rational_eval",
    "registry_get",
    "registry_names",
    "run_full_sweep",
    "sample_domain",
    "sweep_node_convergence",
    "sweep_pointwise_profile",
    "sweep_uniform_error",
    "taylor_leading_coeff",
    "uniform_norm",
    "unitary_best_exp",
]

__version__ = "0.1.0"
