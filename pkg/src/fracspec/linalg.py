"""Dense symmetric eigensolver by cyclic Jacobi rotations."""

from __future__ import annotations

import numba
import numpy as np

from .errors import NumericalError, ParameterError

__all__ = ["jacobi_eigh", "off_norm"]


@numba.njit(cache=True)
def _cyclic_sweep(A, V):
    # Row-cyclic ordering. A stays exactly symmetric: rows p, q are rotated
    # and then copied into columns p, q.
    n = A.shape[0]
    rp = np.empty(n)
    rq = np.empty(n)
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = A[p, q]
            if apq == 0.0:
                continue
            app = A[p, p]
            aqq = A[q, q]
            theta = (aqq - app) / (2.0 * apq)
            sgn = 1.0 if theta >= 0.0 else -1.0
            t = sgn / (abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                akp = A[p, k]
                akq = A[q, k]
                rp[k] = c * akp - s * akq
                rq[k] = s * akp + c * akq
            rp[p] = app - t * apq
            rq[q] = aqq + t * apq
            rp[q] = 0.0
            rq[p] = 0.0
            for k in range(n):
                A[p, k] = rp[k]
                A[q, k] = rq[k]
            for k in range(n):
                A[k, p] = rp[k]
                A[k, q] = rq[k]
            for k in range(n):
                vkp = V[p, k]
                vkq = V[q, k]
                V[p, k] = c * vkp - s * vkq
                V[q, k] = s * vkp + c * vkq


def off_norm(A: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part."""
    return float(np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2)))


def jacobi_eigh(A, *, tol: float = 1e-12, max_sweeps: int = 50):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps until ``off(A) <= tol * ||A||_F``. Returns ``(w, V, sweeps)`` with
    eigenvalues ascending and eigenvectors in the columns of ``V``.

    Raises
    ------
    NumericalError
        If the tolerance is not reached within ``max_sweeps`` sweeps.
    """
    A = np.array(A, dtype=float, copy=True, order="C")
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ParameterError("jacobi_eigh needs a square matrix")
    if not np.array_equal(A, A.T):
        raise ParameterError("jacobi_eigh needs an exactly symmetric matrix")
    n = A.shape[0]
    Vt = np.eye(n)  # rows hold the eigenvectors while sweeping
    scale = np.linalg.norm(A)
    sweeps = 0
    while off_norm(A) > tol * scale:
        if sweeps >= max_sweeps:
            raise NumericalError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off_norm(A):.3e})"
            )
        _cyclic_sweep(A, Vt)
        sweeps += 1
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], Vt[order].T.copy(), sweeps
