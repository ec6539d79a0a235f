"""Necessary conditions for a nontrivial solution with a given potential.

    python demos/inequalities.py

Both checks compare an integral of the potential against a bound computed
from the Green kernel. A violated check proves there is no solution.
"""
import numpy as np

from fracspec import Grid1D, GridFn1D, KernelParams, hartman_wintner_check, lyapunov_check
from fracspec.eigen1d import eigen_frac1d

grid = Grid1D.uniform(0.0, 1.0, 201)

# %% Classical case: a constant potential 4 sits exactly on the bound.
print(lyapunov_check(GridFn1D(grid, np.full(201, 4.0)), 1.0, 0.0).to_json())

# %% The first eigenvalue itself is a witness: q = mu_1 + lambda must pass.
alpha, lam = 0.75, 1.0
mu1 = eigen_frac1d(KernelParams(alpha, 0.0, 1.0), 128, 1, residuals=False).mu1
q = GridFn1D(grid, np.full(201, mu1 + lam))
for check in (lyapunov_check, hartman_wintner_check):
    r = check(q, alpha, lam)
    print(f"{r.name:16s} lhs {r.lhs:.4f}  rhs {r.rhs:.4f}  -> {r.verdict}")

# %% A weak bump is too small to support a solution.
weak = GridFn1D.from_callable(grid, lambda x: 1.0 + 0.5 * np.sin(np.pi * x))
r = lyapunov_check(weak, alpha, 1.0)
print(f"weak potential: lhs {r.lhs:.4f} < rhs {r.rhs:.4f}: {r.verdict}")
