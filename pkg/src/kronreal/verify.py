"""Seeded property suites behind ``kronreal verify``.

Each suite maps a seed to one report: the instance dimensions, the measured
residuals, the tolerance each residual is held to, and an overall pass flag.
Residuals are reported exactly as computed.
"""

import itertools

import numpy as np

from . import linalg as la
from .factorization import (
    FactorDims,
    FactorizationProblem,
    factorize_given_T,
    factorize_search,
    projections_from_T,
    subspace_condition_residual,
)
from .generate import (
    SplitMix64,
    factorization_instance,
    random_realization,
    random_unit_vector,
    random_unitary,
    safe_points,
    sample_points,
)
from .marginals import MarginalSpec, marginal_eval, trace_relation_residual
from .realization import eval_two_var, evaluate, inverse_realization
from .tensor import (
    InflationSide,
    deflate_realization,
    factored_array_check,
    inflate,
    proposition_check,
    tensor_inverse_realization,
    tensor_realization,
    tensor_realization_two_var,
)

TOL_CONSTRUCTION = 1e-12
TOL_EVAL = 1e-9
TOL_INVERSE = 1e-8
TOL_SUBSPACE = 1e-8
TOL_ROUNDTRIP = 1e-7
TOL_TRACE = 1e-10

FACTOR_DIMS = list(itertools.product((1, 2, 3), repeat=4))


def random_pair(rng, square=False):
    """Two random factors with state dims in 0..3 and I/O dims in 1..3."""
    dims = []
    for _ in range(2):
        n = rng.integer(0, 3)
        m = rng.integer(1, 3)
        p = m if square else rng.integer(1, 3)
        dims.append((n, m, p))
    Rl = random_realization(rng, *dims[0])
    Rr = random_realization(rng, *dims[1])
    return Rl, Rr


def _points(*realizations, count=20):
    def check(z):
        for R in realizations:
            evaluate(R, z)

    return safe_points(check, sample_points(count))


def _dims(Rl, Rr):
    return {
        "n_l": Rl.n, "m_l": Rl.m_in, "p_l": Rl.m_out,
        "n_r": Rr.n, "m_r": Rr.m_in, "p_r": Rr.m_out,
    }


def _report(suite, seed, dims, checks, info=None):
    residuals = {name: value for name, value, _ in checks}
    tolerances = {name: tol for name, _, tol in checks}
    report = {
        "suite": suite,
        "seed": seed,
        "dims": dims,
        "residuals": residuals,
        "tolerances": tolerances,
        "pass": all(value <= tol for _, value, tol in checks),
    }
    if info:
        report["info"] = info
    return report


def suite_proposition(seed):
    Rl, Rr = random_pair(SplitMix64(seed))
    R = tensor_realization(Rl, Rr)
    expected_n = Rl.n * Rr.m_out + Rl.m_in * Rr.n
    checks = [
        ("proposition", proposition_check(Rl, Rr), TOL_CONSTRUCTION),
        ("state_dim", float(abs(R.n - expected_n)), 0.0),
        ("d_block", la.max_abs(R.D - la.kron(Rl.D, Rr.D)), 0.0),
    ]
    return _report("proposition", seed, _dims(Rl, Rr), checks)


def suite_tensor_eval(seed):
    Rl, Rr = random_pair(SplitMix64(seed))
    R = tensor_realization(Rl, Rr)
    worst = max(
        la.relative_residual(evaluate(R, z), la.kron(evaluate(Rl, z), evaluate(Rr, z)))
        for z in _points(Rl, Rr, R)
    )
    checks = [
        ("tensor_eval", worst, TOL_EVAL),
        ("state_dim", float(abs(R.n - (Rl.n * Rr.m_out + Rl.m_in * Rr.n))), 0.0),
    ]
    return _report("tensor-eval", seed, _dims(Rl, Rr), checks)


def suite_two_var(seed):
    rng = SplitMix64(seed)
    Rl, Rr = random_pair(rng)
    pts = _points(Rl, Rr)
    pairs = [(pts[j], pts[(j + 7) % len(pts)]) for j in range(len(pts))]
    tensor_gap = max(
        la.relative_residual(
            tensor_realization_two_var(Rl, Rr, zl, zr), la.kron(evaluate(Rl, zl), evaluate(Rr, zr))
        )
        for zl, zr in pairs
    )
    # cascade check needs m_l = p_r; draw a conformable right factor
    Rc = random_realization(rng, Rr.n, Rr.m_in, Rl.m_in)
    pts_c = _points(Rc)
    cascade_gap = max(
        la.relative_residual(eval_two_var(Rl, Rc, zl, zr), evaluate(Rl, zl) @ evaluate(Rc, zr))
        for zl, zr in zip(pts, pts_c[7:] + pts_c[:7])
    )
    checks = [("tensor_two_var", tensor_gap, TOL_EVAL), ("cascade_two_var", cascade_gap, TOL_EVAL)]
    return _report("two-var", seed, _dims(Rl, Rr), checks)


def suite_inverse(seed):
    Rl, Rr = random_pair(SplitMix64(seed), square=True)
    R = tensor_realization(Rl, Rr)
    Rinv = tensor_inverse_realization(Rl, Rr)
    Rinv_direct = inverse_realization(R)
    pts = _points(Rl, Rr, Rinv, Rinv_direct, inverse_realization(Rl))
    inv_gap = 0.0
    agree = 0.0
    for z in pts:
        Fz = evaluate(R, z)
        inv_gap = max(
            inv_gap,
            la.fro(evaluate(inverse_realization(Rl), z) @ evaluate(Rl, z) - la.eye(Rl.m_in)),
            la.fro(evaluate(Rinv, z) @ Fz - la.eye(Fz.shape[0])),
        )
        agree = max(agree, la.relative_residual(evaluate(Rinv, z), evaluate(Rinv_direct, z)))
    checks = [
        ("inverse_eval", inv_gap, TOL_INVERSE),
        ("tensor_inverse_agreement", agree, TOL_EVAL),
        ("factored_array", factored_array_check(Rl, Rr, inverted=False), TOL_CONSTRUCTION),
        ("factored_array_inverted", factored_array_check(Rl, Rr, inverted=True), TOL_CONSTRUCTION),
    ]
    return _report("inverse", seed, _dims(Rl, Rr), checks)


def suite_deflation(seed):
    rng = SplitMix64(seed)
    Rl, Rr = random_pair(rng)
    u = random_unit_vector(rng, Rr.m_out)
    v = random_unit_vector(rng, Rl.m_in)
    left = InflationSide.left(Rr.m_out)
    right = InflationSide.right(Rl.m_in)
    back_l = deflate_realization(inflate(Rl, left), left, u)
    back_r = deflate_realization(inflate(Rr, right), right, v)
    checks = [
        ("deflate_left", la.max_abs(back_l.array() - Rl.array()), TOL_CONSTRUCTION),
        ("deflate_right", la.max_abs(back_r.array() - Rr.array()), TOL_CONSTRUCTION),
    ]
    return _report("deflation", seed, _dims(Rl, Rr), checks)


def problem_from_instance(inst, dims):
    return FactorizationProblem(inst["F"], inst["F_inv"], dims, inst["u"], inst["v"])


def factor_match(recovered, known, points):
    return max(la.relative_residual(evaluate(recovered, z), evaluate(known, z)) for z in points)


def suite_factorize_roundtrip(seed):
    dims = FactorDims(*FACTOR_DIMS[seed % len(FACTOR_DIMS)])
    inst = factorization_instance(SplitMix64(seed), dims.n_l, dims.m_l, dims.n_r, dims.m_r)
    problem = problem_from_instance(inst, dims)
    result = factorize_given_T(problem, inst["T"])
    P = projections_from_T(inst["T"], dims.alpha, dims.beta)
    r1, r2 = subspace_condition_residual(inst["F"].A, inst["F_inv"].A, P)
    pts = [z for z, _ in result.residual_report]
    checks = [
        ("subspace_alpha", r1, TOL_SUBSPACE),
        ("subspace_beta", r2, TOL_SUBSPACE),
        ("reconstruction", result.max_residual, TOL_ROUNDTRIP),
        ("left_factor", factor_match(result.F_l, inst["F_l0"], pts), TOL_ROUNDTRIP),
        ("right_factor", factor_match(result.F_r, inst["F_r0"], pts), TOL_ROUNDTRIP),
    ]
    return _report("factorize-roundtrip", seed, vars(dims), checks)


def search_instance(seed):
    """Scalar-factor instance (``m_l = m_r = 1``) with total state dimension at most 8."""
    rng = SplitMix64(seed)
    n_l = rng.integer(1, 4)
    n_r = rng.integer(1, 4)
    dims = FactorDims(n_l, 1, n_r, 1)
    return dims, factorization_instance(rng, n_l, 1, n_r, 1)


def suite_factorize_search(seed):
    dims, inst = search_instance(seed)
    result = factorize_search(problem_from_instance(inst, dims))
    pts = [z for z, _ in result.residual_report]
    r1, r2 = subspace_condition_residual(inst["F"].A, inst["F_inv"].A, result.projections)
    checks = [
        ("subspace_alpha", r1, TOL_SUBSPACE),
        ("subspace_beta", r2, TOL_SUBSPACE),
        ("reconstruction", result.max_residual, TOL_ROUNDTRIP),
    ]
    info = {
        "left_factor_vs_generator": factor_match(result.F_l, inst["F_l0"], pts),
        "right_factor_vs_generator": factor_match(result.F_r, inst["F_r0"], pts),
    }
    return _report("factorize-search", seed, vars(dims), checks, info)


def suite_marginals(seed):
    rng = SplitMix64(seed)
    R1, R2 = random_pair(rng, square=True)
    R = tensor_realization(R1, R2)
    pts = _points(R1, R2)
    trace_gap = trace_relation_residual(R1, R2, pts)
    spec_a = MarginalSpec(R1.m_out, R2.m_out, "A")
    spec_b = MarginalSpec(R1.m_out, R2.m_out, "B")
    U = random_unitary(rng, R2.m_out)
    consistency = 0.0
    invariance = 0.0
    for z in pts:
        tr = np.trace(evaluate(R, z))
        consistency = max(
            consistency,
            abs(np.trace(marginal_eval(R, spec_a, z)) - tr),
            abs(np.trace(marginal_eval(R, spec_b, z)) - tr),
        )
        invariance = max(
            invariance, la.fro(marginal_eval(R, spec_a, z, U) - marginal_eval(R, spec_a, z))
        )
    checks = [
        ("trace_relation", trace_gap, TOL_EVAL),
        ("trace_consistency", consistency, TOL_TRACE),
        ("basis_invariance", invariance, TOL_TRACE),
    ]
    return _report("marginals", seed, _dims(R1, R2), checks)


SUITES = {
    "proposition": suite_proposition,
    "tensor-eval": suite_tensor_eval,
    "two-var": suite_two_var,
    "inverse": suite_inverse,
    "deflation": suite_deflation,
    "factorize-roundtrip": suite_factorize_roundtrip,
    "factorize-search": suite_factorize_search,
    "marginals": suite_marginals,
}
