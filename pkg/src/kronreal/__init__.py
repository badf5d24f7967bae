"""State-space realizations of Kronecker products of matrix-valued rational functions."""

from .errors import (
    DimensionError,
    KronrealError,
    NoAdmissiblePairError,
    NormError,
    NotScalarError,
    PoleError,
    PreconditionError,
    RepeatedEigenvalueError,
    SingularMatrixError,
)
from .factorization import (
    FactorDims,
    FactorizationProblem,
    FactorizationResult,
    SupportingProjectionPair,
    find_supporting_projections,
    hat_projections,
    projections_from_T,
    scaling_normalize,
    subspace_condition_residual,
    tensor_factorize,
)
from .marginals import MarginalSpec, marginal_eval, marginal_realization, trace_relation_residual
from .realization import (
    Realization,
    conjugate,
    degree_probe,
    eval_two_var,
    evaluate,
    inverse_product_realization,
    inverse_realization,
    series_product,
)
from .tensor import (
    InflationSide,
    Side,
    deflate,
    deflate_realization,
    factored_array_check,
    inflate,
    multi_tensor,
    proposition_check,
    tensor_inverse_realization,
    tensor_realization,
    tensor_realization_two_var,
)

__version__ = "0.1.0"
