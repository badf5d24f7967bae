import numpy as np
import pytest

from kronreal import linalg as la
from kronreal.errors import DimensionError, NormError, SingularMatrixError
from kronreal.generate import SplitMix64, random_unit_vector
from kronreal.realization import Realization, evaluate, inverse_realization
from kronreal.tensor import (
    InflationSide,
    deflate,
    deflate_realization,
    factored_array_check,
    inflate,
    multi_tensor,
    proposition_check,
    tensor_inverse_realization,
    tensor_realization,
    tensor_realization_two_var,
    unit_vector,
)
from kronreal.verify import random_pair

from conftest import assert_close, points_for, rand_real


def scalar(a, b=1.0, c=1.0, d=0.0):
    return Realization([[a]], [[b]], [[c]], [[d]])


class TestInflate:
    def test_factor_dim_one_is_noop(self):
        R = rand_real(0, 2, 2, 3)
        for s in (InflationSide.left(1), InflationSide.right(1)):
            assert la.max_abs(inflate(R, s).array() - R.array()) == 0.0

    def test_rejects_bad_dim(self):
        with pytest.raises(DimensionError):
            InflationSide.left(0)

    @pytest.mark.parametrize("k", [2, 3])
    def test_evaluation(self, k):
        R = rand_real(k, 3, 2, 2)
        for z in points_for(R):
            Fz = evaluate(R, z)
            assert_close(evaluate(inflate(R, InflationSide.left(k)), z), la.kron(Fz, la.eye(k)), 1e-10)
            assert_close(evaluate(inflate(R, InflationSide.right(k)), z), la.kron(la.eye(k), Fz), 1e-10)


class TestTensorRealization:
    def test_constants(self):
        Dl, Dr = np.array([[1, 2]]), np.array([[0, 1j], [3, 1]])
        R = tensor_realization(Realization.constant(Dl), Realization.constant(Dr))
        assert R.n == 0
        assert np.array_equal(R.D, np.kron(Dl, Dr))

    @pytest.mark.parametrize("seed", range(50))
    def test_state_dim_and_evaluation(self, seed):
        Rl, Rr = random_pair(SplitMix64(seed))
        R = tensor_realization(Rl, Rr)
        assert R.n == Rl.n * Rr.m_out + Rl.m_in * Rr.n
        assert np.array_equal(R.D, la.kron(Rl.D, Rr.D))
        for z in points_for(Rl, Rr, R):
            ref = la.kron(evaluate(Rl, z), evaluate(Rr, z))
            assert la.relative_residual(evaluate(R, z), ref) <= 1e-9


class TestTwoVariable:
    def test_diagonal(self):
        Rl, Rr = rand_real(1, 2, 2, 3), rand_real(2, 2, 2, 2)
        R = tensor_realization(Rl, Rr)
        for z in points_for(Rl, Rr, R):
            assert_close(tensor_realization_two_var(Rl, Rr, z, z), evaluate(R, z), 1e-10)

    def test_constant_left(self):
        Rl = Realization.constant([[2, 1]])
        Rr = rand_real(3, 2, 1, 2)
        for z in points_for(Rr):
            assert_close(tensor_realization_two_var(Rl, Rr, 5.0, z), la.kron(Rl.D, evaluate(Rr, z)), 1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_against_kron(self, seed):
        Rl, Rr = random_pair(SplitMix64(seed))
        pts = points_for(Rl, Rr)
        for zl, zr in zip(pts, pts[3:] + pts[:3]):
            ref = la.kron(evaluate(Rl, zl), evaluate(Rr, zr))
            assert la.relative_residual(tensor_realization_two_var(Rl, Rr, zl, zr), ref) <= 1e-9


class TestProposition:
    def test_identity_constants(self):
        I2, I3 = Realization.constant(np.eye(2)), Realization.constant(np.eye(3))
        assert proposition_check(I2, I3) == 0.0

    def test_scalar_one_over_z(self):
        assert proposition_check(scalar(0.0), scalar(0.0)) <= 1e-12
        assert proposition_check(scalar(0.5j, 2.0, -1.0, 1.0), scalar(-0.3, 1.0, 1.0, 2.0)) <= 1e-12

    @pytest.mark.parametrize("seed", range(50))
    def test_random(self, seed):
        assert proposition_check(*random_pair(SplitMix64(seed))) <= 1e-12


class TestTensorInverse:
    def test_identity_constants(self):
        R = tensor_inverse_realization(Realization.constant(np.eye(2)), Realization.constant(np.eye(2)))
        assert R.n == 0
        assert np.array_equal(R.D, np.eye(4))

    @pytest.mark.parametrize("seed", range(20))
    def test_inverse_and_agreement(self, seed):
        Rl, Rr = random_pair(SplitMix64(seed), square=True)
        R = tensor_realization(Rl, Rr)
        Ri = tensor_inverse_realization(Rl, Rr)
        Rd = inverse_realization(R)
        N = R.m_out
        for z in points_for(R, Ri, Rd):
            assert la.fro(evaluate(Ri, z) @ evaluate(R, z) - la.eye(N)) <= 1e-8
            assert la.relative_residual(evaluate(Ri, z), evaluate(Rd, z)) <= 1e-9

    def test_same_array_as_direct_inverse(self):
        Rl, Rr = rand_real(4, 2, 2, 2), rand_real(5, 1, 3, 3)
        gap = la.max_abs(tensor_inverse_realization(Rl, Rr).array() - inverse_realization(tensor_realization(Rl, Rr)).array())
        assert gap <= 1e-12

    def test_requires_square_nonsingular(self):
        with pytest.raises(DimensionError):
            tensor_inverse_realization(rand_real(0, 1, 2, 3), rand_real(1, 1, 2, 2))
        with pytest.raises(SingularMatrixError):
            tensor_inverse_realization(Realization.constant(np.zeros((2, 2))), rand_real(1, 1, 2, 2))


class TestFactoredArrays:
    def test_constants(self):
        c1, c2 = Realization.constant([[2.0]]), Realization.constant([[3.0, 1.0], [0.0, 1.0]])
        assert factored_array_check(c1, c2) == 0.0
        assert factored_array_check(c1, c2, inverted=True) == 0.0

    @pytest.mark.parametrize("seed", range(20))
    def test_random(self, seed):
        Rl, Rr = random_pair(SplitMix64(seed))
        assert factored_array_check(Rl, Rr) <= 1e-12
        Sl, Sr = random_pair(SplitMix64(seed + 1000), square=True)
        assert factored_array_check(Sl, Sr, inverted=True) <= 1e-12


class TestDeflate:
    def test_standard_basis(self, rng):
        M = rng.cmatrix(2, 3)
        assert np.array_equal(deflate(la.kron(M, la.eye(4)), InflationSide.left(4), unit_vector(4)), M)

    def test_default_vector_is_e1(self, rng):
        M = rng.cmatrix(3, 3)
        assert np.array_equal(deflate(la.kron(M, la.eye(2)), InflationSide.left(2)), M)

    def test_right_random_unit(self, rng):
        M = rng.cmatrix(3, 2)
        v = random_unit_vector(rng, 3)
        assert la.max_abs(deflate(la.kron(la.eye(3), M), InflationSide.right(3), v) - M) <= 1e-12

    def test_non_kronecker_input_is_compressed(self, rng):
        Mb = rng.cmatrix(6, 4)
        u = random_unit_vector(rng, 2)
        expected = np.zeros((3, 2), dtype=complex)
        for i in range(3):
            for j in range(2):
                expected[i, j] = (u.conj().T @ Mb[2 * i:2 * i + 2, 2 * j:2 * j + 2] @ u)[0, 0]
        assert la.max_abs(deflate(Mb, InflationSide.left(2), u) - expected) <= 1e-14

    def test_errors(self, rng):
        with pytest.raises(NormError):
            deflate(la.eye(4), InflationSide.left(2), np.array([[1.0], [1.0]]))
        with pytest.raises(DimensionError):
            deflate(la.eye(3), InflationSide.left(2))

    @pytest.mark.parametrize("seed", range(20))
    def test_realization_round_trip(self, seed):
        g = SplitMix64(seed)
        R = rand_real(seed, g.integer(0, 3), g.integer(1, 3), g.integer(1, 3))
        for side in (InflationSide.left(3), InflationSide.right(2)):
            w = random_unit_vector(g, side.factor_dim)
            back = deflate_realization(inflate(R, side), side, w)
            assert la.max_abs(back.array() - R.array()) <= 1e-12
            for z in points_for(R, count=5):
                assert la.fro(evaluate(back, z) - evaluate(R, z)) <= 1e-12 * max(1, la.fro(evaluate(R, z)))


class TestMultiTensor:
    def test_single(self):
        R = rand_real(0, 2, 1, 1)
        assert multi_tensor([R]) is R

    def test_three_scalar_factors(self):
        Rs = [rand_real(s, 2, 1, 1) for s in range(3)]
        R = multi_tensor(Rs)
        for z in points_for(*Rs):
            vals = [evaluate(Ri, z) for Ri in Rs]
            ref = la.kron(la.kron(vals[0], vals[1]), vals[2])
            assert la.relative_residual(evaluate(R, z), ref) <= 1e-9

    @pytest.mark.parametrize("seed", range(5))
    def test_fold_associativity(self, seed):
        g = SplitMix64(seed)
        Rs = [rand_real(10 * seed + k, g.integer(0, 2), g.integer(1, 2), g.integer(1, 2)) for k in range(3)]
        left = multi_tensor(Rs)
        right = tensor_realization(Rs[0], tensor_realization(Rs[1], Rs[2]))
        for z in points_for(*Rs):
            assert la.relative_residual(evaluate(left, z), evaluate(right, z)) <= 1e-9

    def test_empty(self):
        with pytest.raises(ValueError):
            multi_tensor([])
