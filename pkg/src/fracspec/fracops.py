"""Riemann-Liouville integrals and Riemann-Liouville / Caputo derivatives on 1D grids.

Integrals use product integration of the piecewise-linear interpolant: the
weights integrate the power kernel against each hat function exactly, which
makes the scheme exact for piecewise-linear data and works on arbitrary
(e.g. graded) node sets. Derivatives combine these integrals with
second-order finite differences (one-sided at the endpoints).

The right Caputo derivative carries the conventional minus sign,
``-I_{b-}^{1-alpha} f'``, so that at ``alpha = 1`` it reduces to ``-f'`` and
the composition ``D_{a+}^alpha o D_{b-}^alpha`` reduces to ``-d^2/dx^2``.
"""

from __future__ import annotations

from functools import lru_cache
from math import gamma

import numpy as np

from .errors import ParameterError
from .grids import GridFn1D, check_order

__all__ = [
    "rl_integral_left",
    "rl_integral_right",
    "rl_derivative_left",
    "caputo_derivative_right",
    "left_integral_matrix",
    "right_integral_matrix",
]

MIN_DIFF_NODES = 5


def _hat_moments(A: np.ndarray, B: np.ndarray, h: np.ndarray, alpha: float):
    r"""Moments of ``tau**(alpha-1)`` over ``[B, A]`` (``A = B + h``).

    Returns ``(lo, hi)`` where ``lo = \int (tau - B) tau^{alpha-1} / h`` is the
    weight of the cell's left node and ``hi = \int (A - tau) tau^{alpha-1} / h``
    the weight of its right node; ``tau`` is the distance to the evaluation
    point. Cells far from it (``B >> h``) go through ``expm1/log1p`` to
    limit cancellation.
    """
    lo = np.empty_like(A)
    hi = np.empty_like(A)
    near = B <= 0.0
    # cell touching the evaluation point
    An = A[near]
    lo[near] = An ** (alpha + 1) / (alpha + 1) / h[near]
    hi[near] = An ** (alpha + 1) / (alpha * (alpha + 1)) / h[near]

    far = ~near
    Bf, hf = B[far], h[far]
    L = np.log1p(hf / Bf)
    e0 = np.expm1(alpha * L) / alpha  # (A^a - B^a) / (a B^a)
    e1 = np.expm1((alpha + 1) * L) / (alpha + 1)  # (A^{a+1} - B^{a+1}) / ((a+1) B^{a+1})
    Bp = Bf**alpha
    c0 = Bp * e0
    c1 = Bp * Bf * e1
    lo[far] = (c1 - Bf * c0) / hf
    hi[far] = (Bf + hf) * c0 / hf - c1 / hf
    return lo, hi


@lru_cache(maxsize=64)
def _left_matrix_cached(nodes_bytes: bytes, alpha: float) -> np.ndarray:
    x = np.frombuffer(nodes_bytes, dtype=float)
    n = x.size
    W = np.zeros((n, n))
    i, j = np.tril_indices(n, k=-1)  # cell [x_j, x_{j+1}] contributes to node i > j
    A = x[i] - x[j]
    B = x[i] - x[j + 1]
    h = x[j + 1] - x[j]
    lo, hi = _hat_moments(A, B, h, alpha)
    np.add.at(W, (i, j), lo)
    np.add.at(W, (i, j + 1), hi)
    W /= gamma(alpha)
    W.flags.writeable = False
    return W


def left_integral_matrix(nodes: np.ndarray, alpha: float) -> np.ndarray:
    """Dense matrix ``W`` with ``(W @ f)[i] = I_{a+}^alpha f_lin (x_i)``.

    Cached per (node set, order); the returned array is read-only.
    """
    alpha = check_order(alpha)
    nodes = np.ascontiguousarray(nodes, dtype=float)
    return _left_matrix_cached(nodes.tobytes(), alpha)


def right_integral_matrix(nodes: np.ndarray, alpha: float) -> np.ndarray:
    """Mirror image of :func:`left_integral_matrix` for ``I_{b-}^alpha``."""
    nodes = np.ascontiguousarray(nodes, dtype=float)
    mirrored = (nodes[0] + nodes[-1]) - nodes[::-1]
    return left_integral_matrix(mirrored, alpha)[::-1, ::-1]


def rl_integral_left(f: GridFn1D, alpha: float) -> GridFn1D:
    """Left Riemann-Liouville integral ``I_{a+}^alpha f`` at the grid nodes."""
    W = left_integral_matrix(f.grid.nodes, alpha)
    return GridFn1D(f.grid, W @ f.values)


def rl_integral_right(f: GridFn1D, alpha: float) -> GridFn1D:
    """Right Riemann-Liouville integral ``I_{b-}^alpha f`` at the grid nodes."""
    W = right_integral_matrix(f.grid.nodes, alpha)
    return GridFn1D(f.grid, W @ f.values)


def _derivative(f: GridFn1D) -> np.ndarray:
    if f.grid.n < MIN_DIFF_NODES:
        raise ParameterError(
            f"differentiation needs at least {MIN_DIFF_NODES} nodes, got {f.grid.n}"
        )
    g = f.grid
    # scalar spacing on uniform grids keeps constants exactly flat
    step = g.spacing[0] if g.is_uniform() else g.nodes
    return np.gradient(f.values, step, edge_order=2)


def rl_derivative_left(f: GridFn1D, alpha: float) -> GridFn1D:
    """Left Riemann-Liouville derivative ``d/dx I_{a+}^{1-alpha} f``."""
    alpha = check_order(alpha)
    if f.grid.n < MIN_DIFF_NODES:
        raise ParameterError(
            f"differentiation needs at least {MIN_DIFF_NODES} nodes, got {f.grid.n}"
        )
    g = f if alpha == 1.0 else rl_integral_left(f, 1.0 - alpha)
    return GridFn1D(f.grid, _derivative(g))


def caputo_derivative_right(f: GridFn1D, alpha: float) -> GridFn1D:
    """Right Caputo derivative ``-I_{b-}^{1-alpha} f'``."""
    alpha = check_order(alpha)
    df = GridFn1D(f.grid, _derivative(f))
    if alpha == 1.0:
        return GridFn1D(f.grid, -df.values)
    return GridFn1D(f.grid, -rl_integral_right(df, 1.0 - alpha).values)
