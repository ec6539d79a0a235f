"""First Dirichlet eigenvalues of the fractional operator on (0, 1).

    python demos/eigenvalues_1d.py

The eigenproblem is solved through its Green kernel (a Nystrom
discretization), so no differentiation matrices are needed.
"""
import numpy as np

from fracspec import KernelParams
from fracspec.eigen1d import eigen_frac1d, eigen_scaling_check
from fracspec.extrapolate import richardson

# %% alpha = 1 reproduces the Laplacian: mu_k = (k pi)^2.
res = eigen_frac1d(KernelParams(1.0, 0.0, 1.0), 256, 3)
for k, mu in enumerate(res.eigenvalues, 1):
    print(f"mu_{k} = {mu:.6f}   (k pi)^2 = {(k * np.pi) ** 2:.6f}")

# %% Mesh refinement at alpha = 0.8, then Richardson extrapolation.
p = KernelParams(0.8, 0.0, 1.0)
vals = []
for n in (64, 128, 256):
    r = eigen_frac1d(p, n, 1)
    vals.append(r.mu1)
    print(f"n={n:4d}  mu_1 = {r.mu1:.8f}  residual {r.residuals[0]:.1e}")
ex = richardson(*vals)
print(f"extrapolated mu_1 = {ex.value:.6f} (observed order {ex.order:.2f})")

# %% Stretching the interval by r scales every eigenvalue by r^(-2 alpha).
for stretch in (2.0, 3.0):
    rep = eigen_scaling_check(p, stretch, n=96)
    print(f"stretch {stretch}: ratio {rep.ratio:.10f}  expected {rep.expected:.10f}")
