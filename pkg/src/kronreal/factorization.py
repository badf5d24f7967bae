"""Tensor factorization ``F(z) = F_l(z) (x) F_r(z)`` of a function with ``F(inf) = I``.

Given realizations of ``F`` and ``F^{-1}`` in unknown coordinates, a pair of
supporting projections splitting the state space into an ``A``-invariant part
(dimension ``n_l m_r``) and an ``A^x``-invariant part (dimension ``m_l n_r``)
yields both factors by compression. The projections either come from a known
coordinate transformation ``T`` or are searched for over eigenvector subsets.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import (
    DimensionError,
    NoAdmissiblePairError,
    NormError,
    NotScalarError,
    PreconditionError,
    RepeatedEigenvalueError,
    SingularMatrixError,
)
from .generate import safe_points, sample_points
from .realization import Realization, evaluate

PROJECTION_TOL = 1e-9
SUM_TOL = 1e-12
SUBSPACE_TOL = 1e-8
D_TOL = 1e-10
UNIT_TOL = 1e-12
EIG_GAP = 1e-6
MAX_BASIS_COND = 1e8


@dataclass(frozen=True, eq=False)
class SupportingProjectionPair:
    """Complementary idempotents ``P_alpha + P_beta = I``.

    ``transform`` is the ``T`` with ``P_alpha = T^-1 diag(I, 0) T`` when known.
    Construction does not validate; call :meth:`validate`.
    """

    P_alpha: np.ndarray
    P_beta: np.ndarray
    alpha: int
    beta: int
    transform: np.ndarray | None = None

    def residuals(self):
        Pa, Pb = self.P_alpha, self.P_beta
        return {
            "idempotent_alpha": la.fro(Pa @ Pa - Pa),
            "idempotent_beta": la.fro(Pb @ Pb - Pb),
            "cross_ab": la.fro(Pa @ Pb),
            "cross_ba": la.fro(Pb @ Pa),
            "sum": la.fro(Pa + Pb - la.eye(self.alpha + self.beta)),
        }

    def validate(self):
        N = self.alpha + self.beta
        if self.P_alpha.shape != (N, N) or self.P_beta.shape != (N, N):
            raise DimensionError(f"projections must be {N}x{N}")
        res = self.residuals()
        for key, value in res.items():
            tol = SUM_TOL if key == "sum" else PROJECTION_TOL
            if value > tol:
                raise PreconditionError(f"supporting projections: {key} residual {value:.3e}", value)
        return self


@dataclass(frozen=True)
class FactorDims:
    n_l: int
    m_l: int
    n_r: int
    m_r: int

    @property
    def alpha(self):
        return self.n_l * self.m_r

    @property
    def beta(self):
        return self.m_l * self.n_r

    @property
    def state_dim(self):
        return self.alpha + self.beta

    @property
    def io_dim(self):
        return self.m_l * self.m_r


@dataclass(frozen=True, eq=False)
class FactorizationProblem:
    R_F: Realization
    R_Finv: Realization
    dims: FactorDims
    u: np.ndarray
    v: np.ndarray

    def validate(self):
        d = self.dims
        if self.R_F.n != d.state_dim or self.R_Finv.n != d.state_dim:
            raise DimensionError(
                f"state dim {self.R_F.n} != n_l*m_r + m_l*n_r = {d.state_dim}"
            )
        if self.R_F.m_in != d.io_dim or self.R_F.m_out != d.io_dim:
            raise DimensionError(f"I/O dim {self.R_F.D.shape} != m_l*m_r = {d.io_dim}")
        for name, R in (("F", self.R_F), ("F_inv", self.R_Finv)):
            gap = la.fro(R.D - la.eye(d.io_dim))
            if gap > D_TOL:
                raise PreconditionError(f"{name}.D differs from I by {gap:.3e}", gap)
        for name, w, k in (("u", self.u, d.m_r), ("v", self.v, d.m_l)):
            if np.shape(w) != (k, 1):
                raise DimensionError(f"{name} must have shape ({k}, 1)")
            gap = abs(np.linalg.norm(w) - 1.0)
            if gap > UNIT_TOL:
                raise NormError(f"{name} is not a unit vector (| ||{name}|| - 1 | = {gap:.3e})")
        return self


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    F_l: Realization
    F_r: Realization
    residual_report: list = field(default_factory=list)
    projections: SupportingProjectionPair | None = None

    @property
    def max_residual(self):
        return max((r for _, r in self.residual_report), default=0.0)


def projections_from_T(T, alpha, beta):
    """``P_alpha = T^-1 diag(I_alpha, 0) T`` and ``P_beta = I - P_alpha``."""
    T = la.as_cmatrix(T, "T")
    if T.shape != (alpha + beta, alpha + beta):
        raise DimensionError(f"T has shape {T.shape}, expected size {alpha + beta}")
    Tinv = la.inverse(T)
    P_alpha = Tinv[:, :alpha] @ T[:alpha, :]
    P_beta = la.eye(alpha + beta) - P_alpha
    return SupportingProjectionPair(P_alpha, P_beta, alpha, beta, T).validate()


def _check_unit(w, dim, name):
    w = la.as_cmatrix(w, name)
    if w.shape != (dim, 1):
        raise DimensionError(f"{name} must have shape ({dim}, 1), got {w.shape}")
    if abs(np.linalg.norm(w) - 1.0) > UNIT_TOL:
        raise NormError(f"{name} is not a unit vector")
    return w


def hat_projections(T, u, v, dims):
    """Refined projections ``T^-1 diag(I_{n_l} (x) uu*, 0) T`` and ``T^-1 diag(0, vv* (x) I_{n_r}) T``."""
    T = la.as_cmatrix(T, "T")
    N = dims.state_dim
    if T.shape != (N, N):
        raise DimensionError(f"T has shape {T.shape}, expected {N}x{N}")
    u = _check_unit(u, dims.m_r, "u")
    v = _check_unit(v, dims.m_l, "v")
    Tinv = la.inverse(T)
    left = la.block_diag(la.kron(la.eye(dims.n_l), u @ u.conj().T), la.zeros(dims.beta, dims.beta))
    right = la.block_diag(la.zeros(dims.alpha, dims.alpha), la.kron(v @ v.conj().T, la.eye(dims.n_r)))
    return Tinv @ left @ T, Tinv @ right @ T


def hat_consistency_residual(P_hat, P):
    """``max(||P_hat P - P_hat||, ||P P_hat - P_hat||)``."""
    return max(la.fro(P_hat @ P - P_hat), la.fro(P @ P_hat - P_hat))


def subspace_condition_residual(A, A_times, P):
    """Invariance residuals ``||A P_a - P_a A P_a||`` and ``||A^x P_b - P_b A^x P_b||``."""
    Pa, Pb = P.P_alpha, P.P_beta
    r1 = la.fro(A @ Pa - Pa @ A @ Pa)
    r2 = la.fro(A_times @ Pb - Pb @ A_times @ Pb)
    return r1, r2


def factor_residuals(F_l, F_r, R_F, points):
    """Relative gaps ``||F_l(z) (x) F_r(z) - F(z)|| / ||F(z)||`` over ``points``."""
    report = []
    for z in points:
        target = evaluate(R_F, z)
        report.append((z, la.relative_residual(la.kron(evaluate(F_l, z), evaluate(F_r, z)), target)))
    return report


def tensor_factorize(problem, P, P_hat_l, P_hat_r, points=None):
    """Recover ``F_l`` and ``F_r`` with ``D = I`` on the full state space.

    Both factors keep the ``n_l m_r + m_l n_r`` dimensional state matrix of
    ``F``; the hat projections compress input and output maps.

    Raises
    ------
    PreconditionError
        When the subspace condition or the hat/projection consistency fails
        beyond ``SUBSPACE_TOL``; the offending residual is attached.
    """
    problem.validate()
    d = problem.dims
    F, Finv = problem.R_F, problem.R_Finv
    r1, r2 = subspace_condition_residual(F.A, Finv.A, P)
    if max(r1, r2) > SUBSPACE_TOL:
        raise PreconditionError(f"subspace condition residual {max(r1, r2):.3e}", max(r1, r2))
    hat = max(hat_consistency_residual(P_hat_l, P.P_alpha), hat_consistency_residual(P_hat_r, P.P_beta))
    if hat > SUBSPACE_TOL:
        raise PreconditionError(f"hat projection consistency residual {hat:.3e}", hat)

    u, v = problem.u, problem.v
    left_in = la.kron(la.eye(d.m_l), u)
    right_in = la.kron(v, la.eye(d.m_r))
    F_l = Realization(
        F.A, P_hat_l @ F.B @ left_in, left_in.conj().T @ F.C @ P_hat_l, la.eye(d.m_l)
    )
    F_r = Realization(
        F.A, P_hat_r @ F.B @ right_in, right_in.conj().T @ F.C @ P_hat_r, la.eye(d.m_r)
    )
    if points is None:
        points = safe_points(lambda z: evaluate(F, z), sample_points())
    return FactorizationResult(F_l, F_r, factor_residuals(F_l, F_r, F, points), P)


def _sorted_eig(M):
    w, V = np.linalg.eig(M)
    order = sorted(range(len(w)), key=lambda i: (round(w[i].real, 12), round(w[i].imag, 12)))
    return w[order], V[:, order]


def _check_distinct(w, name):
    for i, j in itertools.combinations(range(len(w)), 2):
        if abs(w[i] - w[j]) <= EIG_GAP:
            raise RepeatedEigenvalueError(
                f"{name} has eigenvalues {w[i]:.6g} and {w[j]:.6g} closer than {EIG_GAP}"
            )


def admissible_pairs(A, A_times, alpha, beta):
    """Yield every admissible pair in enumeration order.

    Subsets of eigenvectors of ``A`` (size ``alpha``) and of ``A^x`` (size
    ``beta``) are enumerated lexicographically over eigenvalues sorted by real
    then imaginary part. A pair is admissible when the concatenated bases have
    condition number at most ``MAX_BASIS_COND`` and the resulting projections
    pass the invariant and subspace checks.
    """
    A = la.as_cmatrix(A, "A")
    A_times = la.as_cmatrix(A_times, "A_times")
    N = alpha + beta
    if A.shape != (N, N) or A_times.shape != (N, N):
        raise DimensionError(f"A and A_times must be {N}x{N}")
    w, V = _sorted_eig(A)
    wx, Vx = _sorted_eig(A_times)
    _check_distinct(w, "A")
    _check_distinct(wx, "A_times")
    for S in itertools.combinations(range(N), alpha):
        for Sx in itertools.combinations(range(N), beta):
            basis = np.hstack([V[:, list(S)], Vx[:, list(Sx)]])
            if np.linalg.cond(basis) > MAX_BASIS_COND:
                continue
            try:
                T = la.inverse(basis)
                pair = projections_from_T(T, alpha, beta)
            except (SingularMatrixError, PreconditionError):
                continue
            if max(subspace_condition_residual(A, A_times, pair)) > SUBSPACE_TOL:
                continue
            yield pair


def find_supporting_projections(A, A_times, alpha, beta):
    """First admissible pair in enumeration order; see :func:`admissible_pairs`.

    Raises
    ------
    RepeatedEigenvalueError
        If either matrix has two eigenvalues within ``EIG_GAP``.
    NoAdmissiblePairError
        If no subset pair gives complementary invariant subspaces.
    """
    for pair in admissible_pairs(A, A_times, alpha, beta):
        return pair
    raise NoAdmissiblePairError(
        f"no admissible pair among C({alpha + beta},{alpha})*C({alpha + beta},{beta}) subset pairs"
    )


def scaling_normalize(R, tol=1e-10):
    """Rescale a realization with ``D = cI`` to ``D = I``; returns ``(R / c, c)``."""
    D = R.D
    if D.shape[0] != D.shape[1]:
        raise NotScalarError("D is not square")
    c = complex(D[0, 0]) if D.size else 1.0
    off = D - np.diag(np.diag(D))
    spread = la.max_abs(np.diag(D) - c)
    if la.max_abs(off) > tol or spread > tol:
        raise NotScalarError("D is not a scalar multiple of the identity")
    if c == 0:
        raise SingularMatrixError("D is zero")
    return Realization(R.A, R.B, R.C / c, la.eye(D.shape[0])), c


def factorize_given_T(problem, T, points=None):
    d = problem.dims
    P = projections_from_T(T, d.alpha, d.beta)
    P_hat_l, P_hat_r = hat_projections(T, problem.u, problem.v, d)
    return tensor_factorize(problem, P, P_hat_l, P_hat_r, points)


def factorize_search(problem, points=None):
    """Search for supporting projections, then factor with the reconstructed ``T``."""
    problem.validate()
    d = problem.dims
    P = find_supporting_projections(problem.R_F.A, problem.R_Finv.A, d.alpha, d.beta)
    P_hat_l, P_hat_r = hat_projections(P.transform, problem.u, problem.v, d)
    return tensor_factorize(problem, P, P_hat_l, P_hat_r, points)
