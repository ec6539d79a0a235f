r"""The restricted (integral) fractional Laplacian with exterior Dirichlet data.

.. math::

    (-\Delta)^s u(y) = C_{N,s} \int_{\mathbb{R}^N} \frac{u(y) - u(\xi)}{|y - \xi|^{N+2s}}\,d\xi,
    \qquad C_{N,s} = \frac{4^s\,\Gamma(N/2 + s)}{\pi^{N/2}\,|\Gamma(-s)|},

the normalization whose Fourier symbol is ``|xi|**(2s)``. Functions vanish
outside the domain.

* 1D: fractional centered differences with coefficients
  ``g_m = (-1)^m Gamma(2s+1) / (Gamma(s-m+1) Gamma(s+m+1))`` on an interval
  of given length, exterior nodes set to zero.
* 2D: cell-centered quadrature of the singular integral on a mask. Cells
  outside the 3x3 block around the target use the midpoint rule; the block
  itself uses a correction exact for quadratics (a 9-point Laplacian times
  the moment of ``|xi|**(-2s)`` over the block). Interactions with all
  cells outside the domain collapse into the diagonal through a lattice sum
  whose far tail is integrated in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gamma, pi

import numpy as np
from scipy import integrate, linalg

from .errors import NumericalError, ParameterError
from .grids import DomainMask2D, Grid1D, GridFn1D, GridFn2D

__all__ = [
    "FracLapMatrix",
    "normalisation_constant",
    "fcd_coefficients",
    "fraclap_matrix_1d",
    "fraclap_matrix_2d",
    "lambda1",
    "eigen_residual",
]

MIN_NODES_1D = 8
TAIL_RADIUS_FACTOR = 4.0  # lattice sum radius in units of the domain diameter
MIN_TAIL_RADIUS = 128  # ... but never fewer cells than this


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ParameterError(f"fractional power s must lie in (0, 1), got {s}")
    return s


@dataclass(frozen=True, eq=False)
class FracLapMatrix:
    """Dense symmetric discretization plus the geometry it lives on.

    ``domain`` is a :class:`Grid1D` (interior nodes plus the two boundary
    nodes) in 1D and the :class:`DomainMask2D` in 2D.
    """

    s: float
    dimension: int
    entries: np.ndarray
    h: float
    domain: Grid1D | DomainMask2D
    low_accuracy: bool = False

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def scaled(self, r: float) -> FracLapMatrix:
        """Same operator on the domain stretched by ``r`` (exact ``r**(-2s)`` scaling)."""
        if self.dimension == 1:
            dom = Grid1D(self.domain.nodes * r)
        else:
            m = self.domain
            dom = DomainMask2D(m.h * r, m.mask, (m.origin[0] * r, m.origin[1] * r))
        return FracLapMatrix(
            self.s, self.dimension, self.entries * r ** (-2 * self.s), self.h * r, dom, self.low_accuracy
        )


def normalisation_constant(N: int, s: float) -> float:
    """``C_{N,s} = 4^s Gamma(N/2 + s) / (pi^{N/2} |Gamma(-s)|)``."""
    s = _check_s(s)
    return 4.0**s * gamma(N / 2 + s) / (pi ** (N / 2) * abs(gamma(-s)))


def fcd_coefficients(s: float, m: int) -> np.ndarray:
    """Fractional centered difference coefficients ``g_0, ..., g_m``."""
    s = _check_s(s)
    g = np.empty(m + 1)
    g[0] = gamma(2 * s + 1) / gamma(s + 1) ** 2
    for j in range(m):
        g[j + 1] = g[j] * (j - s) / (j + s + 1)
    return g


def fraclap_matrix_1d(n: int, s: float, length: float = 2.0) -> FracLapMatrix:
    """Fractional Laplacian on ``(-length/2, length/2)`` with ``n`` interior nodes."""
    s = _check_s(s)
    n = int(n)
    if n < MIN_NODES_1D:
        raise ParameterError(f"need n >= {MIN_NODES_1D}, got {n}")
    if not length > 0:
        raise ParameterError(f"length must be positive, got {length}")
    h = length / (n + 1)
    g = fcd_coefficients(s, n - 1)
    A = linalg.toeplitz(g) * h ** (-2 * s)
    grid = Grid1D(np.linspace(-length / 2, length / 2, n + 2))
    return FracLapMatrix(s, 1, A, h, grid)


@lru_cache(maxsize=16)
def _near_moment(s: float) -> float:
    """``int_{[-3/2, 3/2]^2} |xi|^(-2s) dxi`` (unit cells)."""
    val, _ = integrate.quad(lambda th: (1.5 / np.cos(th)) ** (2 - 2 * s), 0.0, pi / 4, epsabs=1e-14)
    return 8.0 * val / (2 - 2 * s)


@lru_cache(maxsize=16)
def _far_lattice_sum(s: float, radius: int) -> float:
    """``sum |k|^(-2-2s)`` over lattice points outside the 3x3 block.

    Points with ``|k| <= radius`` are summed; the rest is replaced by the
    radial integral ``pi radius^(-2s) / s``.
    """
    r = np.arange(-radius, radius + 1, dtype=float)
    k2 = r[:, None] ** 2 + r[None, :] ** 2
    far = (np.maximum(np.abs(r)[:, None], np.abs(r)[None, :]) >= 2) & (k2 <= radius**2)
    return float(np.sum(k2[far] ** (-1 - s)) + pi * radius ** (-2 * s) / s)


def fraclap_matrix_2d(mask: DomainMask2D, s: float) -> FracLapMatrix:
    """Fractional Laplacian on the cells of ``mask`` (zero outside)."""
    s = _check_s(s)
    idx = mask.indices()
    ncell = idx.shape[0]
    C = normalisation_constant(2, s)
    scale = C * mask.h ** (-2 * s)

    di = idx[:, 0][:, None] - idx[:, 0][None, :]
    dj = idx[:, 1][:, None] - idx[:, 1][None, :]
    cheb = np.maximum(np.abs(di), np.abs(dj))
    k2 = (di * di + dj * dj).astype(float)

    A = np.zeros((ncell, ncell))
    far = cheb >= 2
    A[far] = -(k2[far] ** (-1 - s))

    extent = max(mask.cropped().mask.shape)
    radius = max(int(np.ceil(TAIL_RADIUS_FACTOR * extent * np.sqrt(2))), MIN_TAIL_RADIUS)
    diag = _far_lattice_sum(s, radius)

    # quadratic-exact correction on the 3x3 block: beta * (20 u0 - 4 sum(edge) - sum(corner))
    beta = _near_moment(s) / 24.0
    A[(cheb == 1) & (k2 == 1)] = -4.0 * beta
    A[(cheb == 1) & (k2 == 2)] = -beta
    A[np.diag_indices(ncell)] = diag + 20.0 * beta

    A *= scale
    A = 0.5 * (A + A.T)
    return FracLapMatrix(s, 2, A, mask.h, mask, low_accuracy=ncell == 1)


def lambda1(m: FracLapMatrix, *, rtol: float = 1e-10, max_iter: int = 10_000):
    """Smallest eigenvalue and positive eigenfunction by inverse power iteration.

    Uses a Cholesky factorization (zero shift) and the Rayleigh quotient as
    the eigenvalue estimate; stops when it changes by less than ``rtol``
    relatively. The eigenfunction has unit discrete L2 norm.

    Raises
    ------
    NumericalError
        If the matrix is not positive definite or iteration stalls.
    """
    A = m.entries
    try:
        factor = linalg.cho_factor(A, lower=True)
    except linalg.LinAlgError as exc:
        raise NumericalError("fractional Laplacian matrix is not positive definite") from exc
    x = np.ones(m.size) / np.sqrt(m.size)
    lam = float(x @ A @ x)
    for _ in range(max_iter):
        y = linalg.cho_solve(factor, x)
        y /= np.linalg.norm(y)
        new = float(y @ A @ y)
        x = y
        if abs(new - lam) <= rtol * abs(new):
            lam = new
            break
        lam = new
    else:
        raise NumericalError(f"inverse iteration did not converge in {max_iter} steps")
    if x.sum() < 0:
        x = -x

    if m.dimension == 1:
        grid = m.domain
        h = m.h
        values = np.concatenate([[0.0], x / np.sqrt(h), [0.0]])
        return lam, GridFn1D(grid, values)
    mask = m.domain
    values = np.zeros(mask.mask.shape)
    values[mask.mask] = x / mask.h
    return lam, GridFn2D(mask.h, values, mask.origin)


def _as_vector(m: FracLapMatrix, phi) -> np.ndarray:
    if m.dimension == 1:
        return phi.values[1:-1] * np.sqrt(m.h)
    return phi.values[m.domain.mask] * m.domain.h


def eigen_residual(m: FracLapMatrix, lam: float, phi) -> float:
    """Relative residual ``||A x - lam x|| / (lam ||x||)`` of an eigenpair."""
    x = _as_vector(m, phi)
    return float(np.linalg.norm(m.entries @ x - lam * x) / (lam * np.linalg.norm(x)))
