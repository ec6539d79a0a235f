"""Recompute the regression pins used by the test-suite.

    python scripts/extrapolate_pins.py

Prints the extrapolated first eigenvalues together with the estimated
convergence order and the uncertainty (size of the Richardson correction).
The values printed here are the ones frozen in tests/pins.py.
"""

from fracspec.eigen1d import eigen_frac1d
from fracspec.extrapolate import richardson
from fracspec.fraclap import fraclap_matrix_1d, lambda1
from fracspec.kernel import KernelParams


def mu1_alpha08():
    p = KernelParams(0.8, 0.0, 1.0)
    vals = [eigen_frac1d(p, n, 1, residuals=False).mu1 for n in (128, 256, 512)]
    return richardson(*vals)


def lambda1_half_on_unit_interval():
    vals = [lambda1(fraclap_matrix_1d(n, 0.5, 2.0))[0] for n in (256, 512, 1024)]
    return richardson(*vals)


if __name__ == "__main__":
    for name, fn in [
        ("mu1(alpha=0.8, (0,1)), n=128/256/512", mu1_alpha08),
        ("lambda1(s=0.5, (-1,1)), n=256/512/1024", lambda1_half_on_unit_interval),
    ]:
        ex = fn()
        print(f"{name}: {ex.value!r} (order {ex.order:.3f}, uncertainty {ex.uncertainty:.3e})")
        print(f"    samples: {', '.join(repr(v) for v in ex.samples)}")
