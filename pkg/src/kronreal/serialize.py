"""JSON encodings for matrices, realizations and factorization envelopes.

Matrix: ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` (row-major).
Realization: ``{"n", "m_in", "m_out", "A", "B", "C", "D"}``.
Floats are written with 17 significant digits so doubles round-trip exactly
and output is byte-stable.
"""

import json
import math

import numpy as np

from .errors import DimensionError
from .factorization import FactorDims, FactorizationProblem
from .realization import Realization


def format_float(x):
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj):
    """Deterministic compact JSON with fixed float formatting."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag])
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_json(M):
    M = np.asarray(M, dtype=np.complex128)
    rows, cols = M.shape
    return {"rows": rows, "cols": cols, "data": [[v.real, v.imag] for v in M.ravel()]}


def matrix_from_json(obj):
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise DimensionError(f"matrix data has {len(data)} entries, expected {rows * cols}")
    vals = [complex(float(re), float(im)) for re, im in data]
    M = np.array(vals, dtype=np.complex128).reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def realization_to_json(R):
    return {
        "n": R.n,
        "m_in": R.m_in,
        "m_out": R.m_out,
        "A": matrix_to_json(R.A),
        "B": matrix_to_json(R.B),
        "C": matrix_to_json(R.C),
        "D": matrix_to_json(R.D),
    }


def realization_from_json(obj):
    R = Realization(*(matrix_from_json(obj[k]) for k in "ABCD"))
    for key, value in (("n", R.n), ("m_in", R.m_in), ("m_out", R.m_out)):
        if key in obj and int(obj[key]) != value:
            raise DimensionError(f"declared {key}={obj[key]} but matrices give {value}")
    return R


def dims_to_json(d):
    return {"n_l": d.n_l, "m_l": d.m_l, "n_r": d.n_r, "m_r": d.m_r}


def dims_from_json(obj):
    return FactorDims(int(obj["n_l"]), int(obj["m_l"]), int(obj["n_r"]), int(obj["m_r"]))


def problem_to_json(problem, T=None, known=None):
    """Factorization problem envelope; ``T`` and known factors are optional extras."""
    out = {
        "F": realization_to_json(problem.R_F),
        "F_inv": realization_to_json(problem.R_Finv),
        "dims": dims_to_json(problem.dims),
        "u": matrix_to_json(problem.u),
        "v": matrix_to_json(problem.v),
    }
    if T is not None:
        out["T"] = matrix_to_json(T)
    if known is not None:
        out["F_l0"] = realization_to_json(known[0])
        out["F_r0"] = realization_to_json(known[1])
    return out


def problem_from_json(obj):
    problem = FactorizationProblem(
        realization_from_json(obj["F"]),
        realization_from_json(obj["F_inv"]),
        dims_from_json(obj["dims"]),
        matrix_from_json(obj["u"]),
        matrix_from_json(obj["v"]),
    )
    T = matrix_from_json(obj["T"]) if "T" in obj else None
    known = None
    if "F_l0" in obj and "F_r0" in obj:
        known = (realization_from_json(obj["F_l0"]), realization_from_json(obj["F_r0"]))
    return problem, T, known


def result_to_json(result, dims):
    return {
        "F_l": realization_to_json(result.F_l),
        "F_r": realization_to_json(result.F_r),
        "dims": dims_to_json(dims),
        "residuals": [{"z": [complex(z).real, complex(z).imag], "residual": r} for z, r in result.residual_report],
    }
