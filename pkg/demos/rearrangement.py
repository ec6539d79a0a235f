"""Symmetric decreasing rearrangement on grids.

    python demos/rearrangement.py
"""
import numpy as np

from fracspec import Grid1D, GridFn1D, GridFn2D
from fracspec.fraclap import fraclap_matrix_2d, lambda1
from fracspec.rearrange import layer_cake, rearrange_1d, schwarz_set_2d, steiner_2d
from fracspec.shapes import l_shape_mask

# %% In 1D the values are moved, never changed.
g = Grid1D.uniform(-1, 1, 11)
f = GridFn1D(g, np.array([0, 3, 1, 0, 0, 2, 5, 4, 0, 1, 0], dtype=float))
print("f  =", f.values)
print("f* =", rearrange_1d(f).values)

# %% Steiner symmetrization of an L-shape, then Schwarz rearrangement.
# Each step keeps the cell count and lowers the first eigenvalue.
L = l_shape_mask(12, 1 / 12)
for label, m in (("L-shape", L), ("Steiner", steiner_2d(L, 1)), ("Schwarz", schwarz_set_2d(L))):
    lam, _ = lambda1(fraclap_matrix_2d(m, 0.5))
    print(f"{label:8s} cells {m.cells}  lambda_1 {lam:.4f}")
print(schwarz_set_2d(L).to_text())

# %% A function splits into nested level sets.
c = (np.arange(16) + 0.5) / 16 - 0.5
X, Y = np.meshgrid(c, c, indexing="ij")
u = GridFn2D(1 / 16, np.exp(-8 * (X**2 + Y**2)))
dec = layer_cake(u, 8)
print("level sizes:", [int(m.sum()) for m in dec.masks])
print("max reconstruction error:", np.abs(dec.reconstruct().values - u.values).max())
