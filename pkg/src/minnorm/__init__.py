"""Minimum L_p-norm interpolation curve networks over triangulated scattered data."""

from .basis import (
    BasisNetwork,
    BasisSet,
    choose_star_rotation,
    d_value,
    enumerate_basis,
    evaluate_on_edge,
    find_star_rotation,
    lambda_coefficients,
)
from .calculus import (
    EdgeLinearForm,
    abs_moment_integral,
    dual_objective,
    hessian_entry,
    hessian_matrix,
    moment_integral,
    residual_entries,
    residual_entry,
    signed_power,
)
from .errors import (
    CollinearDataError,
    DanglingVertexError,
    DegenerateTriangleError,
    DuplicateProjectionError,
    ExponentRangeError,
    InvalidInputError,
    MinNormError,
    NoConvergenceError,
    NotIncidentError,
    NoValidRotationError,
    NumericallySingularGramError,
    OutOfRangeError,
    OverlappingTrianglesError,
    SingularDirectionsError,
    TieAngleError,
)
from .mesh import (
    Edge,
    ScatterPoint,
    Triangulation,
    build_triangulation,
    clockwise_star,
    edge_unit_vector,
)
from .network import (
    EdgeCurve,
    SolutionNetwork,
    accumulate_edge_forms,
    derivative,
    evaluate,
    lp_norm,
    reconstruct,
    sample,
    verify_characterization,
    verify_smoothness,
)
from .solver import (
    SolveReport,
    SolverConfig,
    assemble_gram,
    conjugate_exponent,
    continuation_path,
    residual_vector,
    solve,
    solve_p2,
)

__version__ = "0.1.0"
