"""Kronecker products of realizations.

A tensor product ``F_l (x) F_r`` becomes an ordinary cascade once the factors
are inflated: ``F_l (x) I_{p_r}`` on the left and ``I_{m_l} (x) F_r`` on the
right. :func:`tensor_realization` assembles the blocks directly and
:func:`proposition_check` compares it with the inflated cascade.
"""

from dataclasses import dataclass
from enum import Enum
from functools import reduce

import numpy as np

from . import linalg as la
from .errors import DimensionError, NormError
from .realization import (
    Realization,
    evaluate_split,
    inverse_product_array_factors,
    inverse_realization,
    product_array_factors,
    series_product,
)

UNIT_NORM_TOL = 1e-12


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class InflationSide:
    """Which slot the identity occupies: ``M (x) I_p`` (LEFT) or ``I_m (x) M`` (RIGHT)."""

    side: Side
    factor_dim: int

    def __post_init__(self):
        if self.factor_dim < 1:
            raise DimensionError(f"factor_dim must be >= 1, got {self.factor_dim}")

    @classmethod
    def left(cls, p):
        return cls(Side.LEFT, p)

    @classmethod
    def right(cls, m):
        return cls(Side.RIGHT, m)

    def apply(self, M):
        I = la.eye(self.factor_dim)
        return la.kron(M, I) if self.side is Side.LEFT else la.kron(I, M)


def inflate(R, s):
    return Realization(s.apply(R.A), s.apply(R.B), s.apply(R.C), s.apply(R.D))


def tensor_realization(Rl, Rr):
    """Realization of ``F_l (x) F_r`` with state dimension ``n_l p_r + m_l n_r``."""
    p_r, m_l = Rr.m_out, Rl.m_in
    Ip, Im = la.eye(p_r), la.eye(m_l)
    Bl = la.kron(Rl.B, Ip)
    Cr = la.kron(Im, Rr.C)
    A = la.block2x2(
        la.kron(Rl.A, Ip),
        Bl @ Cr,
        la.zeros(m_l * Rr.n, Rl.n * p_r),
        la.kron(Im, Rr.A),
    )
    B = np.vstack([Bl @ la.kron(Im, Rr.D), la.kron(Im, Rr.B)])
    C = np.hstack([la.kron(Rl.C, Ip), la.kron(Rl.D, Ip) @ Cr])
    return Realization(A, B, C, la.kron(Rl.D, Rr.D))


def inflated_pair(Rl, Rr):
    """The inflated factors ``(F_l (x) I_{p_r}, I_{m_l} (x) F_r)``."""
    return inflate(Rl, InflationSide.left(Rr.m_out)), inflate(Rr, InflationSide.right(Rl.m_in))


def tensor_realization_two_var(Rl, Rr, z_l, z_r):
    """Evaluate ``F_l(z_l) (x) F_r(z_r)`` through the tensor realization."""
    return evaluate_split(tensor_realization(Rl, Rr), Rl.n * Rr.m_out, z_l, z_r)


def _max_diff(R1, R2):
    if R1.array().shape != R2.array().shape:
        return float("inf")
    return la.max_abs(R1.array() - R2.array())


def proposition_check(Rl, Rr):
    """Max entrywise gap between the tensor realization and the inflated cascade."""
    return _max_diff(tensor_realization(Rl, Rr), series_product(*inflated_pair(Rl, Rr)))


def tensor_inverse_realization(Rl, Rr):
    """Realization of ``(F_l (x) F_r)^{-1}`` from the inflated factor inverses.

    Both ``D_l`` and ``D_r`` must be square and nonsingular.
    """
    for name, R in (("left", Rl), ("right", Rr)):
        if R.m_in != R.m_out:
            raise DimensionError(f"tensor_inverse_realization: {name} D is not square")
    Li = inverse_realization(Rl)
    Ri = inverse_realization(Rr)
    left = InflationSide.left(Rr.m_out)
    right = InflationSide.right(Rl.m_in)
    Al, Bl, Cl, Dl = (left.apply(M) for M in (Li.A, Li.B, Li.C, Li.D))
    Ar, Br, Cr, Dr = (right.apply(M) for M in (Ri.A, Ri.B, Ri.C, Ri.D))
    A = la.block2x2(Al, la.zeros(Al.shape[0], Ar.shape[0]), Br @ Cl, Ar)
    B = np.vstack([Bl, Br @ Dl])
    C = np.hstack([Dr @ Cl, Cr])
    return Realization(A, B, C, Dr @ Dl)


def factored_array_check(Rl, Rr, inverted=False):
    """Gap between the (inverse) tensor array and the product of its two extended factors."""
    Ll, Rb = inflated_pair(Rl, Rr)
    if inverted:
        lhs = tensor_inverse_realization(Rl, Rr).array()
        first, second = inverse_product_array_factors(Ll, Rb)
    else:
        lhs = tensor_realization(Rl, Rr).array()
        first, second = product_array_factors(Ll, Rb)
    return la.max_abs(lhs - first @ second)


def _check_unit(w, dim):
    w = la.as_cmatrix(w, "w")
    if w.shape != (dim, 1):
        raise DimensionError(f"deflation vector must have shape ({dim}, 1), got {w.shape}")
    if abs(np.linalg.norm(w) - 1.0) > UNIT_NORM_TOL:
        raise NormError(f"deflation vector has norm {np.linalg.norm(w):.17g}, expected 1")
    return w


def unit_vector(dim, index=0):
    e = la.zeros(dim, 1)
    e[index, 0] = 1.0
    return e


def deflate(Mbold, s, w=None):
    """Compress an inflated matrix back with a unit vector ``w``.

    LEFT: ``(I_s (x) w*) M (I_q (x) w)``; RIGHT: ``(w* (x) I_s) M (w (x) I_q)``.
    Matrices that are not of Kronecker form are compressed all the same.
    """
    Mbold = np.asarray(Mbold, dtype=np.complex128)
    k = s.factor_dim
    rows, cols = Mbold.shape
    if rows % k or cols % k:
        raise DimensionError(f"deflate: shape {Mbold.shape} not divisible by {k}")
    w = unit_vector(k) if w is None else _check_unit(w, k)
    Is, Iq = la.eye(rows // k), la.eye(cols // k)
    if s.side is Side.LEFT:
        return la.kron(Is, w.conj().T) @ Mbold @ la.kron(Iq, w)
    return la.kron(w.conj().T, Is) @ Mbold @ la.kron(w, Iq)


def deflate_realization(Rbold, s, w=None):
    """Undo :func:`inflate` by deflating each of ``A, B, C, D``."""
    return Realization(*(deflate(M, s, w) for M in (Rbold.A, Rbold.B, Rbold.C, Rbold.D)))


def multi_tensor(factors):
    """Left fold of :func:`tensor_realization` over ``factors``."""
    factors = list(factors)
    if not factors:
        raise ValueError("multi_tensor needs at least one factor")
    return reduce(tensor_realization, factors)
