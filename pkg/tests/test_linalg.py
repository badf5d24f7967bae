import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronreal import linalg as la
from kronreal.errors import DimensionError, SingularMatrixError
from kronreal.generate import SplitMix64, random_transform


def naive_kron(X, Y):
    r1, c1 = X.shape
    r2, c2 = Y.shape
    out = np.zeros((r1 * r2, c1 * c2), dtype=complex)
    for i in range(r1):
        for j in range(c1):
            for k in range(r2):
                for l in range(c2):
                    out[i * r2 + k, j * c2 + l] = X[i, j] * Y[k, l]
    return out


def naive_matmul(X, Y):
    out = np.zeros((X.shape[0], Y.shape[1]), dtype=complex)
    for i in range(X.shape[0]):
        for j in range(Y.shape[1]):
            for k in range(X.shape[1]):
                out[i, j] += X[i, k] * Y[k, j]
    return out


def test_kron_identity_and_scalar(rng):
    assert np.array_equal(la.kron(la.eye(2), la.eye(3)), la.eye(6))
    Y = rng.cmatrix(3, 2)
    assert np.array_equal(la.kron([[2]], Y), 2 * Y)


def test_kron_blocks_match_quadruple_loop():
    X = np.array([[1, 2], [3, 4]], dtype=complex)
    Y = np.array([[0, 1], [1, 0]], dtype=complex)
    K = la.kron(X, Y)
    assert K.shape == (4, 4)
    assert np.array_equal(K, naive_kron(X, Y))
    assert np.array_equal(K[2:, :2], 3 * Y)


def test_kron_random_against_loop(rng):
    X, Y = rng.cmatrix(2, 3), rng.cmatrix(3, 2)
    assert la.max_abs(la.kron(X, Y) - naive_kron(X, Y)) <= 1e-15


def test_mat_mul(rng):
    Y = rng.cmatrix(3, 4)
    assert np.array_equal(la.mat_mul(la.eye(3), Y), Y)
    assert np.array_equal(la.mat_mul(Y, la.zeros(4, 2)), la.zeros(3, 2))
    X, Y = rng.cmatrix(3, 4), rng.cmatrix(4, 2)
    ref = naive_matmul(X, Y)
    assert np.linalg.norm(la.mat_mul(X, Y) - ref) <= 1e-15 * np.linalg.norm(ref) * 4
    with pytest.raises(DimensionError):
        la.mat_mul(X, X)


def test_solve_simple_cases(rng):
    rhs = rng.cmatrix(4, 2)
    assert np.allclose(la.solve(la.eye(4), rhs), rhs, atol=0)
    assert np.array_equal(la.solve(np.diag([2.0, 4.0]), [[2.0], [8.0]]), [[1.0], [2.0]])


def test_solve_residual(rng):
    T = random_transform(rng, 5, cond=1e3)
    rhs = rng.cmatrix(5, 3)
    X = la.solve(T, rhs)
    assert la.fro(T @ X - rhs) <= la.SOLVE_TOL * (1 + la.fro(rhs))


def test_solve_singular_and_shapes():
    with pytest.raises(SingularMatrixError):
        la.solve(np.array([[1.0, 2.0], [2.0, 4.0]]), la.eye(2))
    with pytest.raises(SingularMatrixError):
        la.solve(la.zeros(2, 2), la.eye(2))
    with pytest.raises(DimensionError):
        la.solve(la.zeros(2, 3), la.eye(2))
    assert la.solve(la.zeros(0, 0), la.zeros(0, 3)).shape == (0, 3)


def test_inverse(rng):
    assert np.array_equal(la.inverse(la.eye(3)), la.eye(3))
    assert np.allclose(la.inverse(np.diag([2.0, -1.0])), np.diag([0.5, -1.0]), rtol=0, atol=1e-16)
    M = rng.cmatrix(4, 4) + 2 * la.eye(4)
    assert la.fro(M @ la.inverse(M) - la.eye(4)) <= 1e-9


def test_block2x2(rng):
    assert np.array_equal(la.block2x2(la.eye(2), la.zeros(2, 3), la.zeros(3, 2), la.eye(3)), la.eye(5))
    a, b, c, d = ([[v]] for v in (1, 2j, 3, 4))
    assert np.array_equal(la.block2x2(a, b, c, d), [[1, 2j], [3, 4]])
    M = rng.cmatrix(5, 5)
    assert np.array_equal(la.block2x2(M[:2, :2], M[:2, 2:], M[2:, :2], M[2:, 2:]), M)
    with pytest.raises(DimensionError):
        la.block2x2(la.eye(2), la.zeros(3, 3), la.zeros(3, 2), la.eye(3))


def test_is_idempotent(rng):
    assert la.is_idempotent(la.eye(4), 1e-12)
    assert la.is_idempotent(la.zeros(4, 4), 1e-12)
    T = random_transform(rng, 5)
    P = la.inverse(T) @ np.diag([1, 1, 0, 0, 0]).astype(complex) @ T
    assert la.is_idempotent(P, 1e-9)
    assert not la.is_idempotent(2 * la.eye(2), 1e-9)


def test_elimination_rank():
    assert la.elimination_rank(la.eye(3)) == 3
    assert la.elimination_rank(np.ones((3, 4))) == 1
    assert la.elimination_rank(la.zeros(2, 2)) == 0
    M = np.array([[1, 2, 3], [4, 5, 6], [5, 7, 9]], dtype=complex)
    assert la.elimination_rank(M) == 2


seeds = st.integers(min_value=0, max_value=2**63)
small = st.integers(min_value=1, max_value=3)


@settings(max_examples=40, deadline=None)
@given(seeds, small, small, small, small, small)
def test_mixed_product_rule(seed, n, m, l, p, q):
    g = SplitMix64(seed)
    T, X = g.cmatrix(n, m), g.cmatrix(m, l)
    Y, Z = g.cmatrix(l, p), g.cmatrix(p, q)
    lhs = la.kron(T @ X, Y @ Z)
    rhs = la.kron(T, Y) @ la.kron(X, Z)
    assert la.fro(lhs - rhs) <= 1e-10 * max(1.0, la.fro(lhs))


@settings(max_examples=40, deadline=None)
@given(seeds, small, small, small)
def test_kron_associative(seed, a, b, c):
    g = SplitMix64(seed)
    X, Y, Z = g.cmatrix(a, b), g.cmatrix(b, c), g.cmatrix(c, a)
    assert la.max_abs(la.kron(la.kron(X, Y), Z) - la.kron(X, la.kron(Y, Z))) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=8), st.floats(min_value=1.0, max_value=1e6))
def test_solve_inverse_residual_bounds(seed, n, cond):
    g = SplitMix64(seed)
    M = random_transform(g, n, cond)
    rhs = g.cmatrix(n, 2)
    X = la.solve(M, rhs)
    assert la.fro(M @ X - rhs) <= la.SOLVE_TOL * (1 + la.fro(rhs))
    assert la.fro(M @ la.inverse(M) - la.eye(n)) <= 1e-9
