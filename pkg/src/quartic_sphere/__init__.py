"""Spherically constrained quartic-quadratic optimization.

Tensor homogenization of inhomogeneous quartics, a proximal alternating
minimization solver with closed-form block updates, a normalized-gradient
refinement step, an ADMM baseline, and finite-difference BEC ground-state
instances for benchmarking.
"""

from .admm_solver import AdmmConfig, AdmmState, admm_solve, riemannian_grad_norm, y_subproblem_gradient_hessian
from .bec_model import BecGrid, build_1d, build_2d, build_problem, profile_rows, write_profile_tsv
from .pam_solver import PamConfig, SolveReport, bim_refine, block_update, pam_solve, random_unit_init
from .quartic_problem import BlockState, QuarticProblem
from .tensor_core import (
    AugVector,
    MonomialPoly,
    SymTensor,
    eval_via_tensor,
    frobenius_norm,
    homogenize,
    multilinear_eval,
    multiplicity,
    partial_gradient,
    tensor_from_text,
    tensor_to_text,
)

__all__ = [
    "AdmmConfig",
    "AdmmState",
    "AugVector",
    "BecGrid",
    "BlockState",
    "MonomialPoly",
    "PamConfig",
    "QuarticProblem",
    "SolveReport",
    "SymTensor",
    "admm_solve",
    "bim_refine",
    "block_update",
    "build_1d",
    "build_2d",
    "build_problem",
    "eval_via_tensor",
    "frobenius_norm",
    "homogenize",
    "multilinear_eval",
    "multiplicity",
    "pam_solve",
    "partial_gradient",
    "profile_rows",
    "random_unit_init",
    "riemannian_grad_norm",
    "tensor_from_text",
    "tensor_to_text",
    "write_profile_tsv",
    "y_subproblem_gradient_hessian",
]

__version__ = "0.1.0"
