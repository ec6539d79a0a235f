"""A tour of the Green kernels K and G on an interval.

    python demos/kernels.py
"""
import numpy as np

from fracspec import KernelParams, eval_G, eval_K, sup_G_diag
from fracspec.kernel import green_diagonal

# %% For alpha = 1 the kernel is simply b - max(x, t).
p1 = KernelParams(1.0, 0.0, 1.0)
print("alpha=1   K(0.3, 0.7) =", eval_K(p1, 0.3, 0.7).value)
print("alpha=1   G(0.6, 0.2) =", eval_G(p1, 0.6, 0.2).value, "(expected 0.2 * 0.4)")

# %% Fractional orders: the integrand is singular at s = max(x, t), which
# Gauss-Jacobi handles without fuss. The error estimate comes from doubling
# the quadrature order.
for alpha in (0.6, 0.75, 0.9):
    p = KernelParams(alpha, 0.0, 1.0)
    ev = eval_K(p, 0.2, 0.7)
    print(f"alpha={alpha:<4} K(0.2, 0.7) = {ev.value:.15f}  +/- {ev.abs_error_estimate:.1e}")

# %% The diagonal of G vanishes at both ends and peaks somewhere inside.
# Its maximum controls the Lyapunov-type bound.
xs = np.linspace(0, 1, 11)
for alpha in (0.6, 0.8, 1.0):
    p = KernelParams(alpha, 0.0, 1.0)
    x_star, top = sup_G_diag(p)
    row = " ".join(f"{v:.3f}" for v in green_diagonal(p, xs))
    print(f"alpha={alpha:<4} G(x,x): {row}")
    print(f"           max {top:.12f} at x = {x_star:.6f}, so 1/sup = {1 / top:.6f}")
