"""Deterministic instance generation.

All randomness comes from :class:`SplitMix64` so instances are reproducible
bit-for-bit from an integer seed, independently of numpy's generators.
"""

import cmath
import math

import numpy as np

from . import linalg as la
from .errors import PoleError
from .realization import Realization, conjugate, inverse_realization
from .tensor import tensor_realization

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood).

    ``uniform()`` maps the top 53 bits of each output to ``[0, 1)``.
    """

    def __init__(self, seed):
        self.state = int(seed) & MASK64

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def symmetric(self):
        return 2.0 * self.uniform() - 1.0

    def complex(self):
        re = self.symmetric()
        im = self.symmetric()
        return complex(re, im)

    def integer(self, low, high):
        """Uniform integer in ``[low, high]``."""
        return low + self.next_u64() % (high - low + 1)

    def cmatrix(self, rows, cols):
        """Row-major matrix with real and imaginary parts uniform in ``[-1, 1]``."""
        data = [self.complex() for _ in range(rows * cols)]
        return np.array(data, dtype=np.complex128).reshape(rows, cols)


def random_realization(rng, n, m_in, m_out, d_identity=False):
    """Draw ``A, B, C`` and then ``D`` (unless ``d_identity``) from ``rng``."""
    if d_identity and m_in != m_out:
        raise ValueError("d_identity requires a square D (m_in == m_out)")
    A = rng.cmatrix(n, n)
    B = rng.cmatrix(n, m_in)
    C = rng.cmatrix(m_out, n)
    D = la.eye(m_in) if d_identity else rng.cmatrix(m_out, m_in)
    return Realization(A, B, C, D)


def random_unit_vector(rng, dim):
    w = rng.cmatrix(dim, 1)
    return w / np.linalg.norm(w)


def random_unitary(rng, dim):
    Q, R = np.linalg.qr(rng.cmatrix(dim, dim))
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def random_transform(rng, dim, cond=100.0):
    """Nonsingular ``T = U diag(s) V`` with singular values spread geometrically over ``[1, cond]``."""
    U = random_unitary(rng, dim)
    V = random_unitary(rng, dim)
    if dim == 1:
        s = np.ones(1)
    else:
        s = cond ** (np.arange(dim) / (dim - 1))
    return (U * s) @ V


def sample_points(count=20):
    """Fixed grid ``z_j = 1.5 exp(2 pi i j / count) + 0.1 j``."""
    return [1.5 * cmath.exp(2j * math.pi * j / count) + 0.1 * j for j in range(count)]


def annulus_points(rng, count, inner=1.0, outer=10.0):
    """Points uniform (in area) on ``inner <= |z| <= outer``."""
    pts = []
    for _ in range(count):
        r = math.sqrt(inner**2 + (outer**2 - inner**2) * rng.uniform())
        pts.append(cmath.rect(r, 2 * math.pi * rng.uniform()))
    return pts


def safe_points(check, points, max_redraws=100):
    """Replace any point where ``check(z)`` raises :class:`PoleError`.

    A colliding point is pushed outward by 1% per attempt.
    """
    out = []
    for z in points:
        for k in range(max_redraws + 1):
            candidate = z * (1 + 0.01 * k) if z != 0 else 0.01 * k
            try:
                check(candidate)
            except PoleError:
                continue
            out.append(candidate)
            break
        else:
            raise PoleError(f"no pole-free point near {z} after {max_redraws} redraws")
    return out


def factorization_instance(rng, n_l, m_l, n_r, m_r, cond=100.0, c=1.0):
    """Synthetic tensor-factorization problem with known factors.

    Returns a dict with the generating factors ``F_l0`` and ``F_r0`` (``D``
    equal to ``c I`` and ``I / c``), the realizations ``F`` and ``F_inv`` of the
    tensor product in coordinates scrambled by ``T``, ``T`` itself, and unit
    deflation vectors ``u`` (length ``m_r``) and ``v`` (length ``m_l``).
    """
    Fl = random_realization(rng, n_l, m_l, m_l, d_identity=True)
    Fr = random_realization(rng, n_r, m_r, m_r, d_identity=True)
    if c != 1.0:
        Fl = Realization(Fl.A, Fl.B, Fl.C, c * Fl.D)
        Fr = Realization(Fr.A, Fr.B, Fr.C, Fr.D / c)
    T = random_transform(rng, n_l * m_r + m_l * n_r, cond)
    F = conjugate(tensor_realization(Fl, Fr), T)
    return {
        "F_l0": Fl,
        "F_r0": Fr,
        "F": F,
        "F_inv": inverse_realization(F),
        "T": T,
        "u": random_unit_vector(rng, m_r),
        "v": random_unit_vector(rng, m_l),
    }
