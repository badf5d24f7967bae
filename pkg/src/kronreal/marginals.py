"""Partial-trace marginals of an ``N1 N2``-dimensional rational function.

Side A sums ``(I_{N1} (x) f_k)* R (I_{N1} (x) f_k)`` over an orthonormal basis
``f_k`` of ``C^{N2}``; side B sums ``(e_k (x) I_{N2})* R (e_k (x) I_{N2})`` over
a basis of ``C^{N1}``. For ``R = R1 (x) R2`` these are ``R1 tr R2`` and
``R2 tr R1``.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import DimensionError
from .realization import Realization, evaluate
from .tensor import tensor_realization


@dataclass(frozen=True)
class MarginalSpec:
    N1: int
    N2: int
    side: str = "A"

    def __post_init__(self):
        if self.side not in ("A", "B"):
            raise ValueError(f"side must be 'A' or 'B', got {self.side!r}")
        if self.N1 < 1 or self.N2 < 1:
            raise DimensionError("N1 and N2 must be positive")

    @property
    def traced_dim(self):
        return self.N2 if self.side == "A" else self.N1

    @property
    def kept_dim(self):
        return self.N1 if self.side == "A" else self.N2


def _embeddings(spec, basis):
    """Isometries ``J_k`` with ``marginal = sum_k J_k* M J_k``."""
    k = spec.traced_dim
    basis = la.eye(k) if basis is None else la.as_cmatrix(basis, "basis")
    if basis.shape != (k, k):
        raise DimensionError(f"basis must be {k}x{k}")
    keep = la.eye(spec.kept_dim)
    cols = [basis[:, [j]] for j in range(k)]
    if spec.side == "A":
        return [la.kron(keep, f) for f in cols]
    return [la.kron(e, keep) for e in cols]


def _check(R, spec):
    N = spec.N1 * spec.N2
    if R.m_in != N or R.m_out != N:
        raise DimensionError(f"function is {R.m_out}x{R.m_in}, spec needs {N}x{N}")


def compress(M, spec, basis=None):
    """Partial trace of a constant ``N1 N2`` square matrix."""
    J = _embeddings(spec, basis)
    return sum(Jk.conj().T @ M @ Jk for Jk in J)


def marginal_eval(R, spec, z, basis=None):
    _check(R, spec)
    return compress(evaluate(R, z), spec, basis)


def marginal_realization(R, spec, basis=None):
    """Realization of the marginal: one copy of ``A`` per basis vector."""
    _check(R, spec)
    J = _embeddings(spec, basis)
    D = sum(Jk.conj().T @ R.D @ Jk for Jk in J)
    if R.n == 0:
        return Realization.constant(D)
    A = la.kron(la.eye(len(J)), R.A)
    B = np.vstack([R.B @ Jk for Jk in J])
    C = np.hstack([Jk.conj().T @ R.C for Jk in J])
    return Realization(A, B, C, D)


def trace_relation_residual(R1, R2, points):
    """Max over ``points`` of ``||marginal_A(R1 (x) R2)(z) - R1(z) tr R2(z)||_F``."""
    spec = MarginalSpec(R1.m_out, R2.m_out, "A")
    R = tensor_realization(R1, R2)
    worst = 0.0
    for z in points:
        expected = evaluate(R1, z) * np.trace(evaluate(R2, z))
        worst = max(worst, la.fro(marginal_eval(R, spec, z) - expected))
    return worst


def reconstruction_residual(R, N1, N2, points):
    """Max relative gap between ``R(z)`` and ``R_A(z) (x) R_B(z) / tr R(z)``.

    Zero for exact tensor products; generally nonzero otherwise.
    """
    spec_a = MarginalSpec(N1, N2, "A")
    spec_b = MarginalSpec(N1, N2, "B")
    worst = 0.0
    for z in points:
        M = evaluate(R, z)
        tr = np.trace(M)
        if tr == 0:
            continue
        rebuilt = la.kron(compress(M, spec_a), compress(M, spec_b)) / tr
        worst = max(worst, la.relative_residual(rebuilt, M))
    return worst
