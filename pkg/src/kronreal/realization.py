"""Realizations ``F(z) = D + C (zI - A)^{-1} B`` and their single-function calculus."""

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import DimensionError, PoleError, SingularMatrixError


@dataclass(frozen=True, eq=False)
class Realization:
    """State-space quadruple ``(A, B, C, D)``.

    ``A`` is ``n x n``, ``B`` is ``n x m_in``, ``C`` is ``m_out x n`` and ``D`` is
    ``m_out x m_in``. ``n = 0`` is allowed and represents the constant ``D``.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        D = la.as_cmatrix(self.D, "D")
        p, m = D.shape
        n = np.shape(self.A)[0] if np.size(self.A) else 0
        A = _shaped(self.A, (n, n), "A")
        B = _shaped(self.B, (n, m), "B")
        C = _shaped(self.C, (p, n), "C")
        for name, value in zip("ABCD", (A, B, C, D)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def constant(cls, D):
        D = la.as_cmatrix(D, "D")
        p, m = D.shape
        return cls(la.zeros(0, 0), la.zeros(0, m), la.zeros(p, 0), D)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def m_in(self):
        return self.D.shape[1]

    @property
    def m_out(self):
        return self.D.shape[0]

    def array(self):
        """The partitioned system array ``[[A, B], [C, D]]``."""
        return la.block2x2(self.A, self.B, self.C, self.D)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"Realization(n={self.n}, m_in={self.m_in}, m_out={self.m_out})"


def _shaped(x, shape, name):
    arr = np.asarray(x, dtype=np.complex128)
    if arr.size == 0:
        return la.zeros(*shape)
    arr = la.as_cmatrix(arr, name)
    if arr.shape != shape:
        raise DimensionError(f"{name} has shape {arr.shape}, expected {shape}")
    return arr


def _resolvent_apply(A, rhs, z):
    try:
        return la.solve(z * la.eye(A.shape[0]) - A, rhs)
    except SingularMatrixError as exc:
        raise PoleError(f"z = {complex(z)} is a pole to working precision") from exc


def evaluate(R, z):
    """Return ``D + C (zI - A)^{-1} B``."""
    z = complex(z)
    if R.n == 0:
        return R.D.copy()
    return R.D + R.C @ _resolvent_apply(R.A, R.B, z)


def series_product(Rl, Rr):
    """Realization of the cascade ``F_l(z) F_r(z)`` with state ``[x_l; x_r]``."""
    if Rl.m_in != Rr.m_out:
        raise DimensionError(
            f"series_product: left input dim {Rl.m_in} != right output dim {Rr.m_out}"
        )
    A = la.block2x2(Rl.A, Rl.B @ Rr.C, la.zeros(Rr.n, Rl.n), Rr.A)
    B = np.vstack([Rl.B @ Rr.D, Rr.B])
    C = np.hstack([Rl.C, Rl.D @ Rr.C])
    return Realization(A, B, C, Rl.D @ Rr.D)


def product_array_factors(Rl, Rr):
    """The two extended arrays whose product is ``series_product(Rl, Rr).array()``."""
    nl, nr = Rl.n, Rr.n
    left = np.block([
        [Rl.A, la.zeros(nl, nr), Rl.B],
        [la.zeros(nr, nl), la.eye(nr), la.zeros(nr, Rl.m_in)],
        [Rl.C, la.zeros(Rl.m_out, nr), Rl.D],
    ])
    right = np.block([
        [la.eye(nl), la.zeros(nl, nr), la.zeros(nl, Rr.m_in)],
        [la.zeros(nr, nl), Rr.A, Rr.B],
        [la.zeros(Rr.m_out, nl), Rr.C, Rr.D],
    ])
    return left, right


def evaluate_split(R, k, z_l, z_r):
    """Evaluate ``D + C (diag(z_l I_k, z_r I_{n-k}) - A)^{-1} B``.

    ``A`` must be block upper triangular with respect to the ``k / n-k`` split;
    the two diagonal blocks are solved in turn, so a pole in either factor is
    reported separately.
    """
    A11, A12, A22 = R.A[:k, :k], R.A[:k, k:], R.A[k:, k:]
    if R.A[k:, :k].size and la.max_abs(R.A[k:, :k]) != 0.0:
        raise DimensionError("evaluate_split: state matrix is not block upper triangular")
    try:
        x2 = la.solve(complex(z_r) * la.eye(A22.shape[0]) - A22, R.B[k:])
    except SingularMatrixError as exc:
        raise PoleError(f"z_r = {complex(z_r)} is a pole of the right factor") from exc
    try:
        x1 = la.solve(complex(z_l) * la.eye(k) - A11, R.B[:k] + A12 @ x2)
    except SingularMatrixError as exc:
        raise PoleError(f"z_l = {complex(z_l)} is a pole of the left factor") from exc
    return R.D + R.C[:, :k] @ x1 + R.C[:, k:] @ x2


def eval_two_var(Rl, Rr, z_l, z_r):
    """Evaluate ``F_l(z_l) F_r(z_r)`` through the cascade realization."""
    return evaluate_split(series_product(Rl, Rr), Rl.n, z_l, z_r)


def _inverse_D(R):
    if R.m_in != R.m_out:
        raise DimensionError(f"D must be square, got {R.D.shape}")
    try:
        return la.inverse(R.D)
    except SingularMatrixError as exc:
        raise SingularMatrixError("D is singular to working precision") from exc


def inverse_realization(R):
    """Realization ``(A - B D^-1 C, -B D^-1, D^-1 C, D^-1)`` of ``F(z)^{-1}``."""
    Dinv = _inverse_D(R)
    BD = R.B @ Dinv
    return Realization(R.A - BD @ R.C, -BD, Dinv @ R.C, Dinv)


def inverse_product_realization(Rl, Rr):
    """Realization of ``(F_l F_r)^{-1}`` built from the two factor inverses.

    The state keeps the ``[x_l; x_r]`` ordering of :func:`series_product`, so
    the state matrix comes out block lower triangular.
    """
    if Rl.m_in != Rr.m_out or Rl.m_out != Rr.m_in:
        raise DimensionError("inverse_product_realization: need m_l = p_r and p_l = m_r")
    Li = inverse_realization(Rl)
    Ri = inverse_realization(Rr)
    A = la.block2x2(Li.A, la.zeros(Rl.n, Rr.n), Ri.B @ Li.C, Ri.A)
    B = np.vstack([Li.B, Ri.B @ Li.D])
    C = np.hstack([Ri.D @ Li.C, Ri.C])
    return Realization(A, B, C, Ri.D @ Li.D)


def inverse_product_array_factors(Rl, Rr):
    """Extended arrays whose product is ``inverse_product_realization(Rl, Rr).array()``."""
    Li = inverse_realization(Rl)
    Ri = inverse_realization(Rr)
    nl, nr = Rl.n, Rr.n
    left = np.block([
        [la.eye(nl), la.zeros(nl, nr), la.zeros(nl, Ri.m_in)],
        [la.zeros(nr, nl), Ri.A, Ri.B],
        [la.zeros(Ri.m_out, nl), Ri.C, Ri.D],
    ])
    right = np.block([
        [Li.A, la.zeros(nl, nr), Li.B],
        [la.zeros(nr, nl), la.eye(nr), la.zeros(nr, Li.m_in)],
        [Li.C, la.zeros(Li.m_out, nr), Li.D],
    ])
    return left, right


def conjugate(R, T):
    """Change of state coordinates: ``(T^-1 A T, T^-1 B, C T, D)``."""
    T = la.as_cmatrix(T, "T")
    if T.shape != (R.n, R.n):
        raise DimensionError(f"conjugate: T has shape {T.shape}, state dim is {R.n}")
    if R.n == 0:
        return R
    rhs = np.hstack([R.A @ T, R.B])
    try:
        X = la.solve(T, rhs)
    except SingularMatrixError as exc:
        raise SingularMatrixError("conjugate: T is singular to working precision") from exc
    return Realization(X[:, :R.n], X[:, R.n:], R.C @ T, R.D)


def controllability_matrix(R):
    blocks = [R.B]
    for _ in range(R.n - 1):
        blocks.append(R.A @ blocks[-1])
    return np.hstack(blocks) if blocks else la.zeros(0, 0)


def observability_matrix(R):
    blocks = [R.C]
    for _ in range(R.n - 1):
        blocks.append(blocks[-1] @ R.A)
    return np.vstack(blocks) if blocks else la.zeros(0, 0)


def degree_probe(R, rtol=1e-9):
    """Lower of the controllability and observability ranks.

    Equals ``n`` for a minimal realization; a smaller value exposes
    uncontrollable or unobservable states.
    """
    if R.n == 0:
        return 0
    return min(
        la.elimination_rank(controllability_matrix(R), rtol),
        la.elimination_rank(observability_matrix(R), rtol),
    )
