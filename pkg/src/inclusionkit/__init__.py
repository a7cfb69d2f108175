"""Exact decision and construction toolkit for first-order differential
inclusions Du ∈ E and Du + (Du)ᵀ ∈ E in the minimal dimension.

Everything is exact rational arithmetic: feasibility verdicts carry
re-checkable certificates, constructions are piecewise-affine with
gradients exactly in the admissible set, and the verifier re-derives
every claim from the serialized data alone.
"""

from .builder import (
    Cell,
    CoverCopy,
    PiecewiseAffine,
    PyramidSpec,
    assemble_solution,
    build_pyramid,
    build_scalar_solution,
    integrate,
    vitali_cover,
)
from .convexity import (
    CaratheodoryCertificate,
    PointSet,
    certificate_valid,
    in_interior_of_hull,
    in_relative_interior_of_hull,
    separating_functional,
    simplex_solve,
)
from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    ContainmentViolation,
    DimensionMismatch,
    EmptyInterior,
    InclusionKitError,
    InvalidInput,
    NotInSlice,
    NotInterior,
    SchemaError,
    Unbounded,
    ZeroInSet,
    ZeroVector,
)
from .feasibility import (
    FEASIBLE,
    GRADIENT,
    INFEASIBLE,
    OUT_OF_SCOPE,
    SYMMETRIZED,
    InclusionProblem,
    Verdict,
    decide,
    decide_gradient,
    decide_symmetrized,
    factor_slice,
)
from .geometry import Polytope, triangulate, unit_box, vertices, volume
from .linalg import Mat, Subspace, Vec, mat, mat_from_flat, rank, rat, span_of, vec
from .products import (
    ProductKind,
    detect_rank_one_span,
    detect_sym_slice,
    detect_wedge_slice,
    sym_product,
    slice_subspace,
    tensor,
    wedge_product,
)
from .serialize import (
    canonical_dumps,
    decode_problem,
    decode_solution,
    encode_problem,
    encode_report,
    encode_solution,
    encode_verdict,
    load_problem,
    load_solution,
)
from .verify import Report, measure, verify_solution

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "BudgetExceeded",
    "CaratheodoryCertificate",
    "Cell",
    "ContainmentViolation",
    "CoverCopy",
    "DimensionMismatch",
    "EmptyInterior",
    "FEASIBLE",
    "GRADIENT",
    "INFEASIBLE",
    "InclusionKitError",
    "InclusionProblem",
    "InvalidInput",
    "Mat",
    "NotInSlice",
    "NotInterior",
    "OUT_OF_SCOPE",
    "PiecewiseAffine",
    "PointSet",
    "Polytope",
    "ProductKind",
    "PyramidSpec",
    "Report",
    "SYMMETRIZED",
    "SchemaError",
    "Subspace",
    "Unbounded",
    "Vec",
    "Verdict",
    "ZeroInSet",
    "ZeroVector",
    "assemble_solution",
    "build_pyramid",
    "build_scalar_solution",
    "canonical_dumps",
    "certificate_valid",
    "decide",
    "decide_gradient",
    "decide_symmetrized",
    "decode_problem",
    "decode_solution",
    "detect_rank_one_span",
    "detect_sym_slice",
    "detect_wedge_slice",
    "encode_problem",
    "encode_report",
    "encode_solution",
    "encode_verdict",
    "factor_slice",
    "in_interior_of_hull",
    "in_relative_interior_of_hull",
    "integrate",
    "load_problem",
    "load_solution",
    "mat",
    "mat_from_flat",
    "measure",
    "rank",
    "rat",
    "separating_functional",
    "simplex_solve",
    "slice_subspace",
    "span_of",
    "sym_product",
    "tensor",
    "triangulate",
    "unit_box",
    "verify_solution",
    "vertices",
    "vec",
    "vitali_cover",
    "volume",
    "wedge_product",
    "__version__",
]
