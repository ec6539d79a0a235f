"""Fractional Green kernels, eigenvalue solvers and inequality checks.

The one-dimensional operator is ``D_{a+}^alpha D_{b-}^alpha`` (left
Riemann-Liouville derivative after right Caputo derivative, Dirichlet
conditions, ``1/2 < alpha <= 1``); the cross-section operator is the
restricted fractional Laplacian ``(-Delta)^s``. On a cylinder
``(a, b) x Omega`` the first eigenvalue separates as ``mu1 + lambda1``.
"""

__version__ = "0.1.0"

from .errors import DomainError, FracSpecError, NumericalError, ParameterError
from .grids import DomainMask2D, Grid1D, GridFn1D, GridFn2D
from .kernel import KernelParams, eval_G, eval_K, sup_G_diag
from .eigen1d import assemble_green_matrix, eigen_frac1d, eigen_scaling_check
from .fraclap import fraclap_matrix_1d, fraclap_matrix_2d, lambda1
from .rearrange import layer_cake, rearrange_1d, schwarz_set_2d, steiner_2d
from .inequalities import (
    CylinderSpec,
    InequalityReport,
    cylinder_nu1,
    hartman_wintner_check,
    lyapunov_check,
    rfk_sweep,
)

__all__ = [
    "DomainError",
    "FracSpecError",
    "NumericalError",
    "ParameterError",
    "DomainMask2D",
    "Grid1D",
    "GridFn1D",
    "GridFn2D",
    "KernelParams",
    "eval_G",
    "eval_K",
    "sup_G_diag",
    "assemble_green_matrix",
    "eigen_frac1d",
    "eigen_scaling_check",
    "fraclap_matrix_1d",
    "fraclap_matrix_2d",
    "lambda1",
    "layer_cake",
    "rearrange_1d",
    "schwarz_set_2d",
    "steiner_2d",
    "CylinderSpec",
    "InequalityReport",
    "cylinder_nu1",
    "hartman_wintner_check",
    "lyapunov_check",
    "rfk_sweep",
]
