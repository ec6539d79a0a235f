"""Grid carriers: 1D node sets, sampled functions and planar cell masks.

Masks are indexed ``mask[i, j]`` with ``i`` running along the first planar
coordinate and ``j`` along the second. Cell ``(i, j)`` has its center at
``origin + h * (i + 0.5, j + 0.5)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParameterError

__all__ = [
    "Grid1D",
    "GridFn1D",
    "GridFn2D",
    "DomainMask2D",
    "check_order",
]


def check_order(alpha: float, *, bvp: bool = False) -> float:
    """Validate a fractional order.

    Integrals accept ``0 < alpha <= 1``; the boundary value problem (and
    everything built on the Green kernel) needs ``1/2 < alpha <= 1``.
    """
    alpha = float(alpha)
    lo = 0.5 if bvp else 0.0
    if not (lo < alpha <= 1.0):
        raise ParameterError(f"fractional order must lie in ({lo}, 1], got {alpha}")
    return alpha


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Strictly increasing nodes covering ``[a, b]`` including both endpoints."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 3:
            raise ParameterError("a 1D grid needs at least 3 nodes")
        if not np.all(np.diff(nodes) > 0):
            raise ParameterError("grid nodes must be strictly increasing")
        nodes = nodes.copy()
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def uniform(cls, a: float, b: float, n: int) -> Grid1D:
        if not a < b:
            raise ParameterError(f"need a < b, got ({a}, {b})")
        return cls(np.linspace(a, b, int(n)))

    @classmethod
    def graded(cls, a: float, b: float, n: int, exponent: float) -> Grid1D:
        """Nodes clustered symmetrically toward both endpoints.

        The reference coordinate ``xi`` in ``[0, 1/2]`` is mapped to
        ``2**(r-1) * xi**r`` and mirrored on the other half, so ``exponent=1``
        gives the uniform grid.
        """
        if not a < b:
            raise ParameterError(f"need a < b, got ({a}, {b})")
        if exponent < 1:
            raise ParameterError("grading exponent must be >= 1")
        xi = np.linspace(0.0, 1.0, int(n))
        r = float(exponent)
        g = np.where(xi <= 0.5, 2 ** (r - 1) * xi**r, 1 - 2 ** (r - 1) * (1 - xi) ** r)
        g[0], g[-1] = 0.0, 1.0
        return cls(a + (b - a) * g)

    @property
    def a(self) -> float:
        return float(self.nodes[0])

    @property
    def b(self) -> float:
        return float(self.nodes[-1])

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def spacing(self) -> np.ndarray:
        return np.diff(self.nodes)

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        h = self.spacing
        return bool(np.all(np.abs(h - h.mean()) <= rtol * h.mean()))

    def trapezoid_weights(self) -> np.ndarray:
        h = self.spacing
        w = np.zeros(self.n)
        w[:-1] += h / 2
        w[1:] += h / 2
        return w


@dataclass(frozen=True, eq=False)
class GridFn1D:
    """Values sampled at the nodes of a :class:`Grid1D`."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise ParameterError(
                f"expected {self.grid.n} values for this grid, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: Grid1D, f) -> GridFn1D:
        return cls(grid, np.broadcast_to(np.asarray(f(grid.nodes), float), grid.nodes.shape))

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    def l2_norm(self) -> float:
        """Discrete L2 norm with trapezoid weights."""
        return float(np.sqrt(np.sum(self.grid.trapezoid_weights() * self.values**2)))


@dataclass(frozen=True, eq=False)
class DomainMask2D:
    """Planar domain described by the cells whose centers lie inside it."""

    h: float
    mask: np.ndarray
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.ndim != 2:
            raise ParameterError("mask must be a 2D array")
        if not mask.any():
            raise ParameterError("mask must contain at least one cell")
        if not (self.h > 0 and np.isfinite(self.h)):
            raise ParameterError(f"cell width must be positive, got {self.h}")
        mask = mask.copy()
        mask.flags.writeable = False
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def cells(self) -> int:
        return int(self.mask.sum())

    @property
    def area(self) -> float:
        return self.cells * self.h**2

    def indices(self) -> np.ndarray:
        """``(cells, 2)`` integer array of ``(i, j)`` in row-major order."""
        return np.argwhere(self.mask)

    def centers(self) -> np.ndarray:
        idx = self.indices()
        return np.asarray(self.origin) + self.h * (idx + 0.5)

    def cropped(self) -> DomainMask2D:
        """Same domain on the tight bounding box of its cells."""
        rows = np.flatnonzero(self.mask.any(axis=1))
        cols = np.flatnonzero(self.mask.any(axis=0))
        i0, j0 = rows[0], cols[0]
        sub = self.mask[i0 : rows[-1] + 1, j0 : cols[-1] + 1]
        origin = (self.origin[0] + i0 * self.h, self.origin[1] + j0 * self.h)
        return DomainMask2D(self.h, sub, origin)

    def same_cells(self, other: DomainMask2D) -> bool:
        a, b = self.cropped(), other.cropped()
        return a.mask.shape == b.mask.shape and bool(np.array_equal(a.mask, b.mask))

    # -- text format: header ``h=<real>`` then one row of 0/1 characters per line

    def to_text(self) -> str:
        rows = ["".join("1" if v else "0" for v in row) for row in self.mask]
        return f"h={self.h!r}\n" + "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> DomainMask2D:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("h="):
            raise ParameterError("mask text must start with a header line 'h=<real>'")
        try:
            h = float(lines[0][2:])
        except ValueError as exc:
            raise ParameterError(f"bad header line {lines[0]!r}") from exc
        body = lines[1:]
        if not body or any(set(ln) - {"0", "1"} for ln in body):
            raise ParameterError("mask rows must consist of '0' and '1' characters only")
        if len({len(ln) for ln in body}) != 1:
            raise ParameterError("mask rows must all have the same length")
        mask = np.array([[c == "1" for c in ln] for ln in body], dtype=bool)
        return cls(h, mask)

    @classmethod
    def load(cls, path) -> DomainMask2D:
        return cls.from_text(Path(path).read_text())

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())


@dataclass(frozen=True, eq=False)
class GridFn2D:
    """Cell values on the array underlying a mask (zero outside the domain)."""

    h: float
    values: np.ndarray
    origin: tuple[float, float] = field(default=(0.0, 0.0))

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ParameterError("GridFn2D values must be a 2D array")
        object.__setattr__(self, "values", values)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(self.values**2)) * self.h)
