"""Richardson extrapolation from a geometric sequence of meshes."""

from __future__ import annotations

from dataclasses import dataclass
from math import log

from .errors import NumericalError

__all__ = ["Extrapolation", "richardson"]


@dataclass(frozen=True)
class Extrapolation:
    value: float
    order: float
    uncertainty: float
    samples: tuple[float, float, float]


def richardson(coarse: float, medium: float, fine: float, ratio: float = 2.0) -> Extrapolation:
    """Extrapolate three values computed with mesh sizes ``h, h/r, h/r**2``.

    The convergence order is estimated from the data. The reported
    uncertainty is the size of the correction applied to the finest value.
    """
    d1, d2 = medium - coarse, fine - medium
    if d1 == 0 or d2 == 0 or d1 * d2 < 0:
        raise NumericalError("values are not converging monotonically; cannot extrapolate")
    order = log(d1 / d2) / log(ratio)
    if order <= 0:
        raise NumericalError(f"estimated order {order:.3f} is not positive")
    correction = d2 / (ratio**order - 1.0)
    return Extrapolation(fine + correction, order, abs(correction), (coarse, medium, fine))
