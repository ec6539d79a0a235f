r"""The kernels ``K`` and ``G`` of the fractional Dirichlet problem.

.. math::

    K(x, t) = \frac{1}{\Gamma(\alpha)^2} \int_{\max(x,t)}^b (s-x)^{\alpha-1}(s-t)^{\alpha-1}\,ds,
    \qquad
    G(x, t) = K(x, t) - \frac{K(a, t) K(x, a)}{K(a, a)}.

``G`` is the Green function of ``D_{a+}^alpha D_{b-}^alpha`` (left
Riemann-Liouville after right Caputo) with ``u(a) = u(b) = 0``.

Off the diagonal, write ``m = max(x, t)``, ``d = |x - t|`` and ``L = b - m``.
The substitution ``s = m + d v`` gives

.. math::

    K(x, t) = \frac{d^{2\alpha-1}}{\Gamma(\alpha)^2} F(L/d),\qquad
    F(R) = \int_0^R v^{\alpha-1}(1+v)^{\alpha-1}\,dv,

so a single scale-free function of ``R`` is needed. ``F`` is evaluated with
Gauss-Jacobi nodes for the ``v**(alpha-1)`` endpoint singularity on
``[0, min(R, 1)]`` and Gauss-Legendre panels on the dyadic intervals
``[2**k, 2**(k+1)]`` beyond, which keeps the nearby singularity at ``v = -1``
well separated from every panel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gamma

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import DomainError, ParameterError
from .grids import check_order

__all__ = [
    "KernelParams",
    "KernelEval",
    "scaled_integral",
    "kernel_K",
    "kernel_G",
    "green_diagonal",
    "eval_K",
    "eval_G",
    "sup_G_diag",
]

DEFAULT_ORDER = 12
SCAN_POINTS = 64
_R_CAP = 2.0**60
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class KernelParams:
    """Fractional order and interval defining ``K`` and ``G``."""

    alpha: float
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_order(self.alpha, bvp=True))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (np.isfinite(self.a) and np.isfinite(self.b) and self.a < self.b):
            raise ParameterError(f"need finite a < b, got ({self.a}, {self.b})")

    @property
    def length(self) -> float:
        return self.b - self.a

    @cached_property
    def gamma2(self) -> float:
        return gamma(self.alpha) ** 2

    @cached_property
    def k_aa(self) -> float:
        """Closed form ``K(a, a) = (b-a)^{2 alpha-1} / (Gamma(alpha)^2 (2 alpha-1))``."""
        return float(k_diagonal(self, self.a))

    def with_interval(self, a: float, b: float) -> KernelParams:
        return KernelParams(self.alpha, a, b)


@dataclass(frozen=True)
class KernelEval:
    x: float
    t: float
    value: float
    abs_error_estimate: float


@lru_cache(maxsize=32)
def _jacobi_rule(order: int, beta: float):
    return roots_jacobi(order, 0.0, beta)


@lru_cache(maxsize=8)
def _legendre_rule(order: int):
    return roots_legendre(order)


def scaled_integral(R, alpha: float, order: int = DEFAULT_ORDER) -> np.ndarray:
    """``F(R) = int_0^R v^(alpha-1) (1+v)^(alpha-1) dv`` for an array of ``R >= 0``."""
    R = np.asarray(R, dtype=float)
    shape = R.shape
    R = R.ravel()
    out = np.zeros_like(R)
    xj, wj = _jacobi_rule(order, alpha - 1.0)
    xl, wl = _legendre_rule(order)

    r = np.minimum(R, 1.0)
    v = r[:, None] * (1.0 + xj) / 2.0
    out += (r / 2.0) ** alpha * ((1.0 + v) ** (alpha - 1.0) @ wj)

    big = R > 1.0
    if np.any(big):
        Rb = R[big]

        def f(v):
            return v ** (alpha - 1.0) * (1.0 + v) ** (alpha - 1.0)

        k = np.floor(np.log2(Rb)).astype(int)
        k = np.where(2.0 ** (k + 1) <= Rb, k + 1, k)  # guard log2 rounding
        kmax = int(k.max())
        lo = 2.0 ** np.arange(kmax)
        panels = 0.5 * lo * (f(1.5 * lo[:, None] + 0.5 * lo[:, None] * xl) @ wl)
        cum = np.concatenate([[0.0], np.cumsum(panels)])  # cum[k] = int_1^{2^k}
        start = 2.0**k
        half = (Rb - start) / 2.0
        part = half * (f((start + half)[:, None] + half[:, None] * xl) @ wl)
        out[big] += cum[k] + part
    return out.reshape(shape)


def k_diagonal(p: KernelParams, x) -> np.ndarray:
    """Closed form ``K(x, x) = (b-x)^{2 alpha-1} / (Gamma(alpha)^2 (2 alpha-1))``."""
    x = np.asarray(x, dtype=float)
    e = 2.0 * p.alpha - 1.0
    return np.maximum(p.b - x, 0.0) ** e / (p.gamma2 * e)


def _check_points(p: KernelParams, *arrays):
    for arr in arrays:
        arr = np.asarray(arr, dtype=float)
        if np.any(~np.isfinite(arr)) or np.any(arr < p.a) or np.any(arr > p.b):
            raise DomainError(f"kernel arguments must lie in [{p.a}, {p.b}]")


def _kernel_K(p: KernelParams, x, t, order: int) -> np.ndarray:
    x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
    shape = x.shape
    x, t = x.ravel(), t.ravel()
    m = np.maximum(x, t)
    d = np.abs(x - t)
    L = p.b - m
    out = k_diagonal(p, m)  # exact on the diagonal, zero at s-range L = 0
    off = (d > 0) & (L > 0)
    if np.any(off):
        do, Lo = d[off], L[off]
        e = 2.0 * p.alpha - 1.0
        with np.errstate(over="ignore"):
            R = Lo / do
        far = R > _R_CAP
        val = np.empty_like(do)
        val[~far] = do[~far] ** e * scaled_integral(R[~far], p.alpha, order)
        if np.any(far):
            # beyond the cap the integrand is v^(2 alpha - 2) to relative 1/R_CAP
            c = float(scaled_integral(_R_CAP, p.alpha, order)) - _R_CAP**e / e
            val[far] = Lo[far] ** e / e + do[far] ** e * c
        out[off] = val / p.gamma2
    return out.reshape(shape)


def kernel_K(p: KernelParams, x, t, *, order: int = DEFAULT_ORDER, with_error: bool = False):
    """Vectorized ``K(x, t)``; the diagonal uses the closed form.

    With ``with_error=True`` also return the order-doubling difference as an
    absolute error estimate.
    """
    _check_points(p, x, t)
    val = _kernel_K(p, x, t, order)
    if not with_error:
        return val
    err = np.abs(_kernel_K(p, x, t, 2 * order) - val)
    return val, err


def kernel_G(p: KernelParams, x, t, *, order: int = DEFAULT_ORDER, with_error: bool = False):
    """Vectorized ``G(x, t) = K(x, t) - K(a, t) K(x, a) / K(a, a)``."""
    _check_points(p, x, t)
    x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
    kxt = _kernel_K(p, x, t, order)
    kat = _kernel_K(p, p.a, t, order)
    kxa = _kernel_K(p, x, p.a, order)
    val = kxt - kat * kxa / p.k_aa
    if not with_error:
        return val
    e_xt = np.abs(_kernel_K(p, x, t, 2 * order) - kxt)
    e_at = np.abs(_kernel_K(p, p.a, t, 2 * order) - kat)
    e_xa = np.abs(_kernel_K(p, x, p.a, 2 * order) - kxa)
    err = e_xt + (e_at * np.abs(kxa) + e_xa * np.abs(kat)) / p.k_aa
    return val, err


def green_diagonal(p: KernelParams, x, *, order: int = DEFAULT_ORDER) -> np.ndarray:
    """``G(x, x) = K(x, x) - K(a, x)**2 / K(a, a)``."""
    _check_points(p, x)
    x = np.asarray(x, dtype=float)
    kax = _kernel_K(p, p.a, x, order)
    return k_diagonal(p, x) - kax**2 / p.k_aa


def _diag_by_quadrature(p: KernelParams, x: float, order: int) -> float:
    # int_x^b (s - x)^{2 alpha - 2} ds with the Jacobi weight carrying the singularity
    L = p.b - x
    if L <= 0:
        return 0.0
    _, w = _jacobi_rule(order, 2.0 * p.alpha - 2.0)
    return float((L / 2.0) ** (2.0 * p.alpha - 1.0) * w.sum() / p.gamma2)


def eval_K(
    p: KernelParams, x: float, t: float, *, order: int = DEFAULT_ORDER, diagonal: str = "closed"
) -> KernelEval:
    """Evaluate ``K(x, t)`` with an error estimate.

    ``diagonal="quadrature"`` evaluates ``x == t`` with a Gauss-Jacobi rule
    instead of the closed form; it exists to cross-check the two.
    """
    _check_points(p, x, t)
    x, t = float(x), float(t)
    if x == t and diagonal == "quadrature":
        v1 = _diag_by_quadrature(p, x, order)
        v2 = _diag_by_quadrature(p, x, 2 * order)
        return KernelEval(x, t, v1, abs(v2 - v1))
    if diagonal not in ("closed", "quadrature"):
        raise ParameterError(f"unknown diagonal mode {diagonal!r}")
    val, err = kernel_K(p, x, t, order=order, with_error=True)
    return KernelEval(x, t, float(val), float(err))


def eval_G(p: KernelParams, x: float, t: float, *, order: int = DEFAULT_ORDER) -> KernelEval:
    val, err = kernel_G(p, float(x), float(t), order=order, with_error=True)
    return KernelEval(float(x), float(t), float(val), float(err))


def sup_G_diag(p: KernelParams, *, xtol: float = 1e-10) -> tuple[float, float]:
    """Maximize ``x -> G(x, x)`` over ``(a, b)``.

    A 64-point scan brackets the maximum, then golden-section search shrinks
    the bracket below ``xtol * (b - a)``. Returns ``(x_star, value)``.
    """
    a, b = p.a, p.b
    xs = np.linspace(a, b, SCAN_POINTS + 2)[1:-1]
    gs = green_diagonal(p, xs)
    i = int(np.argmax(gs))
    lo = xs[i - 1] if i > 0 else a
    hi = xs[i + 1] if i < xs.size - 1 else b

    def g(x):
        return float(green_diagonal(p, x))

    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    gc, gd = g(c), g(d)
    tol = xtol * (b - a)
    while hi - lo > tol:
        if gc >= gd:
            hi, d, gd = d, c, gc
            c = hi - _GOLDEN * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + _GOLDEN * (hi - lo)
            gd = g(d)
    x_star = 0.5 * (lo + hi)
    candidates = [(g(x_star), x_star), (gc, c), (gd, d)]
    value, x_star = max(candidates)
    return float(x_star), float(value)
