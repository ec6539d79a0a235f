"""Builders for the cell masks used in the shape experiments.

All builders take an exact cell count so shapes of equal measure (at grid
resolution) can be compared. Rectangles whose cell count does not factor
exactly get a partial extra column, centered along the short side.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError
from .grids import DomainMask2D

__all__ = ["disk_mask", "rectangle_mask", "square_mask", "right_triangle_mask", "l_shape_mask", "builtin_mask"]


def _check_cells(cells: int) -> int:
    cells = int(cells)
    if cells < 1:
        raise ParameterError(f"need at least one cell, got {cells}")
    return cells


def disk_mask(cells: int, h: float) -> DomainMask2D:
    """The ``cells`` cells nearest the center of an odd-sized square array.

    Ties in distance are broken by lexicographic cell index.
    """
    cells = _check_cells(cells)
    size = 2 * math.ceil(math.sqrt(cells / math.pi)) + 3
    c = (size - 1) / 2
    i, j = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    d2 = ((i - c) ** 2 + (j - c) ** 2).ravel()
    chosen = np.lexsort((j.ravel(), i.ravel(), d2))[:cells]
    m = np.zeros(size * size, dtype=bool)
    m[chosen] = True
    return DomainMask2D(h, m.reshape(size, size)).cropped()


def rectangle_mask(cells: int, aspect: float, h: float) -> DomainMask2D:
    """Quasi-rectangle with long/short side ratio close to ``aspect``.

    The short side has ``w = round(sqrt(cells / aspect))`` cells and the
    long side ``cells // w`` full columns; leftover cells form a partial
    column centered along the short side.
    """
    cells = _check_cells(cells)
    if aspect < 1:
        raise ParameterError(f"aspect ratio must be >= 1, got {aspect}")
    w = max(1, int(round(math.sqrt(cells / aspect))))
    full, rem = divmod(cells, w)
    m = np.zeros((w, full + (rem > 0)), dtype=bool)
    m[:, :full] = True
    if rem:
        start = (w - rem) // 2
        m[start : start + rem, full] = True
    return DomainMask2D(h, m)


def square_mask(cells: int, h: float) -> DomainMask2D:
    return rectangle_mask(cells, 1.0, h)


def right_triangle_mask(legs: int, h: float) -> DomainMask2D:
    """Isosceles right triangle: cell ``(i, j)`` is inside when ``i + j < legs``."""
    i, j = np.indices((legs, legs))
    return DomainMask2D(h, (i + j) < legs)


def l_shape_mask(size: int, h: float) -> DomainMask2D:
    """Square of side ``size`` minus its upper-right quadrant."""
    m = np.ones((size, size), dtype=bool)
    half = size // 2
    m[half:, half:] = False
    return DomainMask2D(h, m)


_BUILTIN = {
    "disk": lambda cells, h: disk_mask(cells, h),
    "square": lambda cells, h: rectangle_mask(cells, 1.0, h),
}


def builtin_mask(name: str, cells: int, h: float) -> DomainMask2D:
    """Named shapes: ``disk``, ``square`` and ``rect<r>`` (aspect ratio ``r``)."""
    if name in _BUILTIN:
        return _BUILTIN[name](cells, h)
    if name.startswith("rect"):
        try:
            aspect = float(name[4:])
        except ValueError:
            aspect = None
        if aspect is not None and aspect >= 1:
            return rectangle_mask(cells, aspect, h)
    raise ParameterError(f"unknown builtin shape {name!r}")
