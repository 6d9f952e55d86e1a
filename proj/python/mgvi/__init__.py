"""Predictor-corrector solvers for monotone generalized variational
inequalities, with lasso and basis-pursuit front ends."""

from ._mgvi import (
    generate_lasso_instance,
    soft_threshold,
    solve_basis_pursuit,
    solve_lasso,
    spectral_norm_estimate,
    support_recovered,
)

__all__ = [
    "generate_lasso_instance",
    "soft_threshold",
    "solve_basis_pursuit",
    "solve_lasso",
    "spectral_norm_estimate",
    "support_recovered",
]
