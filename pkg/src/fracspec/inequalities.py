"""Executable forms of the eigenvalue and Lyapunov-type inequalities.

The checkers audit a *necessary* condition: a report with
``satisfied=False`` certifies that no nontrivial solution exists for the
given potential, while ``satisfied=True`` decides nothing about solvability.
Both checkers depend on ``q`` and ``lambda1`` only through ``q - lambda1``.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Mapping

import numpy as np
from scipy.special import roots_legendre

from .eigen1d import eigen_frac1d
from .errors import ParameterError
from .fraclap import fraclap_matrix_2d, lambda1 as fraclap_lambda1
from .grids import DomainMask2D, GridFn1D, check_order
from .kernel import KernelParams, kernel_K, sup_G_diag

__all__ = [
    "InequalityReport",
    "CylinderSpec",
    "RFKRow",
    "RFKTable",
    "cylinder_nu1",
    "lyapunov_check",
    "hartman_wintner_check",
    "rfk_sweep",
    "max_workers",
]

DEFAULT_N_1D = 128
_GAUSS_POINTS = 4


def max_workers() -> int:
    """Worker cap from ``FRACSPEC_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("FRACSPEC_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class InequalityReport:
    """``lhs >= rhs`` audited with tolerance ``1e-9 * max(1, |rhs|)``."""

    name: str
    lhs: float
    rhs: float
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "lhs", float(self.lhs))
        object.__setattr__(self, "rhs", float(self.rhs))

    @property
    def tol(self) -> float:
        return 1e-9 * max(1.0, abs(self.rhs))

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def satisfied(self) -> bool:
        return bool(self.lhs >= self.rhs - self.tol)

    @property
    def equality(self) -> bool:
        """Both sides agree to within the tolerance (the bound is attained)."""
        return bool(abs(self.margin) <= self.tol)

    @property
    def verdict(self) -> str:
        return "necessary condition " + ("satisfied" if self.satisfied else "violated")

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(
            margin=self.margin,
            satisfied=self.satisfied,
            equality=self.equality,
            verdict=self.verdict,
        )
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class CylinderSpec:
    """Cylinder ``(a, b) x Omega`` with operator orders ``alpha`` and ``s``."""

    interval: tuple[float, float]
    alpha: float
    s: float
    cross_section: DomainMask2D

    def __post_init__(self):
        check_order(self.alpha, bvp=True)
        if not 0 < self.s < 1:
            raise ParameterError(f"s must lie in (0, 1), got {self.s}")
        a, b = self.interval
        if not a < b:
            raise ParameterError(f"need a < b, got {self.interval}")

    @property
    def kernel_params(self) -> KernelParams:
        return KernelParams(self.alpha, *self.interval)


def cylinder_nu1(spec: CylinderSpec, n_1d: int = DEFAULT_N_1D) -> tuple[float, float, float]:
    """First eigenvalue of the cylinder problem as ``(nu1, mu1, lambda1)``.

    Separation of variables gives ``nu1 = mu1 + lambda1``.
    """
    mu1 = eigen_frac1d(spec.kernel_params, n_1d, 1, residuals=False).mu1
    lam, _ = fraclap_lambda1(fraclap_matrix_2d(spec.cross_section, spec.s))
    return mu1 + lam, mu1, lam


def _pw_linear_abs_integral(x: np.ndarray, y: np.ndarray) -> float:
    """Exact integral of ``|y|`` for the piecewise-linear interpolant."""
    h = np.diff(x)
    y0, y1 = y[:-1], y[1:]
    same = y0 * y1 >= 0
    out = np.where(same, 0.5 * h * (np.abs(y0) + np.abs(y1)), 0.0)
    cross = ~same
    if np.any(cross):
        a, b = np.abs(y0[cross]), np.abs(y1[cross])
        out[cross] = 0.5 * h[cross] * (a * a + b * b) / (a + b)
    return float(out.sum())


def _check_grid(q: GridFn1D, p: KernelParams):
    if not (np.isclose(q.grid.a, p.a) and np.isclose(q.grid.b, p.b)):
        raise ParameterError("potential grid does not span the interval")


def lyapunov_check(
    q: GridFn1D, alpha: float, lambda1: float, *, interval: tuple[float, float] | None = None
) -> InequalityReport:
    """``int_a^b |q - lambda1| dx >= 1 / sup_x G(x, x)``.

    ``q`` is integrated as its piecewise-linear interpolant (the trapezoid
    rule, made exact across sign changes of ``q - lambda1``).
    """
    a, b = interval if interval is not None else (q.grid.a, q.grid.b)
    p = KernelParams(alpha, a, b)
    _check_grid(q, p)
    if lambda1 < 0:
        raise ParameterError(f"lambda1 must be nonnegative, got {lambda1}")
    lhs = _pw_linear_abs_integral(q.x, q.values - lambda1)
    x_star, g_sup = sup_G_diag(p)
    ctx = {"alpha": p.alpha, "interval": [p.a, p.b], "lambda1": float(lambda1), "x_star": x_star}
    return InequalityReport("lyapunov", lhs, 1.0 / g_sup, ctx)


def _hw_weight(p: KernelParams, s: np.ndarray) -> np.ndarray:
    # K(a,a) K(s,s) - K(a,s)^2 = K(a,a) G(s,s)
    kss = kernel_K(p, s, s)
    kas = kernel_K(p, p.a, s)
    return p.k_aa * kss - kas**2


def hartman_wintner_check(
    q: GridFn1D, alpha: float, lambda1: float, *, interval: tuple[float, float] | None = None
) -> InequalityReport:
    """``int (K(a,a)K(s,s) - K(a,s)^2) [q - lambda1]^+ ds >= K(a,a)``.

    ``q`` enters as its piecewise-linear interpolant; the kernel weight is
    integrated with 4-point Gauss-Legendre on every cell (split where
    ``q - lambda1`` changes sign).
    """
    a, b = interval if interval is not None else (q.grid.a, q.grid.b)
    p = KernelParams(alpha, a, b)
    _check_grid(q, p)
    if lambda1 < 0:
        raise ParameterError(f"lambda1 must be nonnegative, got {lambda1}")
    x = q.x
    y = q.values - lambda1
    x0, x1 = x[:-1], x[1:]
    y0, y1 = y[:-1], y[1:]
    # positive sub-interval [lo, hi] of each cell
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.where(y0 != y1, x0 + (x1 - x0) * y0 / (y0 - y1), x0)
    lo = np.where(y0 > 0, x0, np.where(y1 > 0, root, x0))
    hi = np.where(y1 > 0, x1, np.where(y0 > 0, root, x0))
    lo, hi = np.clip(lo, x0, x1), np.clip(hi, x0, x1)

    gx, gw = roots_legendre(_GAUSS_POINTS)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    s = np.clip(mid[:, None] + half[:, None] * gx, p.a, p.b)
    frac = (s - x0[:, None]) / (x1 - x0)[:, None]
    ys = np.maximum(y0[:, None] + frac * (y1 - y0)[:, None], 0.0)
    lhs = float(np.sum(half[:, None] * gw * _hw_weight(p, s) * ys))
    ctx = {"alpha": p.alpha, "interval": [p.a, p.b], "lambda1": float(lambda1)}
    return InequalityReport("hartman-wintner", lhs, p.k_aa, ctx)


@dataclass(frozen=True)
class RFKRow:
    shape_id: str
    cells: int
    lambda1: float
    mu1: float
    nu1: float


@dataclass(frozen=True)
class RFKTable:
    """Sweep rows sorted by ``nu1`` (ties by shape id)."""

    rows: list[RFKRow]
    alpha: float
    s: float
    interval: tuple[float, float]

    @property
    def minimizer(self) -> str:
        return self.rows[0].shape_id

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["shape_id", "cells", "lambda1", "mu1", "nu1"])
        for r in self.rows:
            w.writerow([r.shape_id, r.cells, repr(r.lambda1), repr(r.mu1), repr(r.nu1)])
        return buf.getvalue()


def rfk_sweep(
    shapes: Mapping[str, DomainMask2D],
    interval: tuple[float, float],
    alpha: float,
    s: float,
    *,
    n_1d: int = DEFAULT_N_1D,
) -> RFKTable:
    """``lambda1`` and ``nu1`` for cross-sections of equal cell count.

    ``mu1`` does not depend on the cross-section and is computed once.
    Shapes are solved in parallel up to ``FRACSPEC_THREADS`` workers.
    """
    if len(shapes) < 2:
        raise ParameterError("an RFK sweep needs at least two shapes")
    counts = {m.cells for m in shapes.values()}
    if len(counts) != 1:
        raise ParameterError(f"shapes must have equal cell counts, got {sorted(counts)}")
    p = KernelParams(alpha, *interval)
    mu1 = eigen_frac1d(p, n_1d, 1, residuals=False).mu1

    def solve(item):
        sid, mask = item
        lam, _ = fraclap_lambda1(fraclap_matrix_2d(mask, s))
        return RFKRow(sid, mask.cells, lam, mu1, mu1 + lam)

    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        rows = list(pool.map(solve, shapes.items()))
    rows.sort(key=lambda r: (r.nu1, r.shape_id))
    return RFKTable(rows, p.alpha, float(s), (p.a, p.b))
