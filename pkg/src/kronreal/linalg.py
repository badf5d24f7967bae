"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything in the
package goes through these helpers so that dimension checks and the
singularity threshold are applied in one place.
"""

import warnings

import numpy as np
import scipy.linalg

from .errors import DimensionError, SingularMatrixError

SOLVE_TOL = 1e-10
PIVOT_TOL = 1e-13


def as_cmatrix(x, name="matrix"):
    """Coerce ``x`` to a finite 2-D complex array (a copy)."""
    arr = np.array(x, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionError(f"{name}: expected a 2-D array, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite entries")
    return arr


def eye(n):
    return np.eye(n, dtype=np.complex128)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.complex128)


def kron(X, Y):
    """Kronecker product; block ``(i, j)`` of the result is ``X[i, j] * Y``."""
    return np.kron(np.asarray(X, dtype=np.complex128), np.asarray(Y, dtype=np.complex128))


def mat_mul(X, Y):
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    if X.shape[1] != Y.shape[0]:
        raise DimensionError(f"cannot multiply {X.shape} by {Y.shape}")
    return X @ Y


def max_abs(M):
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def fro(M):
    return float(np.linalg.norm(M)) if np.size(M) else 0.0


def solve(M, rhs):
    """Solve ``M X = rhs`` by LU with partial pivoting.

    Raises
    ------
    SingularMatrixError
        If a pivot falls below ``PIVOT_TOL * max|M|``.
    """
    M = np.asarray(M, dtype=np.complex128)
    rhs = np.asarray(rhs, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"solve: matrix must be square, got {M.shape}")
    if rhs.ndim != 2 or rhs.shape[0] != M.shape[0]:
        raise DimensionError(f"solve: rhs shape {rhs.shape} does not match {M.shape}")
    n = M.shape[0]
    if n == 0:
        return zeros(0, rhs.shape[1])
    scale = max_abs(M)
    if scale == 0.0:
        raise SingularMatrixError("solve: zero matrix")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    smallest = float(np.min(np.abs(np.diag(lu))))
    if smallest < PIVOT_TOL * scale:
        raise SingularMatrixError(
            f"solve: pivot {smallest:.3e} below threshold {PIVOT_TOL * scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)


def inverse(M):
    M = np.asarray(M, dtype=np.complex128)
    return solve(M, eye(M.shape[0]))


def block2x2(M11, M12, M21, M22):
    """Assemble ``[[M11, M12], [M21, M22]]`` after checking conformability."""
    M11, M12, M21, M22 = (np.asarray(M, dtype=np.complex128) for M in (M11, M12, M21, M22))
    if M11.shape[0] != M12.shape[0] or M21.shape[0] != M22.shape[0]:
        raise DimensionError("block2x2: row counts differ within a block row")
    if M11.shape[1] != M21.shape[1] or M12.shape[1] != M22.shape[1]:
        raise DimensionError("block2x2: column counts differ within a block column")
    top = np.hstack([M11, M12])
    bottom = np.hstack([M21, M22])
    return np.vstack([top, bottom])


def block_diag(*blocks):
    return scipy.linalg.block_diag(*[np.asarray(b, dtype=np.complex128) for b in blocks]).astype(
        np.complex128
    )


def is_idempotent(P, tol):
    P = np.asarray(P, dtype=np.complex128)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise DimensionError(f"is_idempotent: matrix must be square, got {P.shape}")
    return fro(P @ P - P) <= tol


def elimination_rank(M, rtol=1e-9):
    """Numerical rank by Gaussian elimination with complete pivoting.

    Elimination stops once the largest remaining entry drops below
    ``rtol`` times the largest entry of ``M``.
    """
    W = np.array(M, dtype=np.complex128)
    if W.size == 0:
        return 0
    thresh = rtol * max_abs(W)
    if thresh == 0.0:
        return 0
    rank = 0
    rows, cols = W.shape
    for k in range(min(rows, cols)):
        sub = np.abs(W[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= thresh:
            break
        i += k
        j += k
        W[[k, i], :] = W[[i, k], :]
        W[:, [k, j]] = W[:, [j, k]]
        W[k + 1:, k:] -= np.outer(W[k + 1:, k] / W[k, k], W[k, k:])
        rank += 1
    return rank


def relative_residual(X, Y):
    """``||X - Y||_F / ||Y||_F``, falling back to the absolute value when ``Y = 0``."""
    diff = fro(np.asarray(X) - np.asarray(Y))
    ref = fro(Y)
    return diff / ref if ref > 0.0 else diff
