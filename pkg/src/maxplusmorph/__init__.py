"""maxplusmorph: max-plus matrix algebra and morphology on bounded lattices.

Dilations and erosions on ``[a, b]^n`` are represented as max-plus matrix
products.  The package provides the semiring kernels, asticity
classification, adjunction/opening operators and granulometries, graph-path
oracles, the tropical spectral layer (metric matrix, eigen-nodes,
fundamental eigenvectors, eigenspace) and batch I/O plus a CLI for signals
and images.
"""
from .asticity import (
    AsticityReport,
    canonical_lower,
    canonical_upper,
    class_join,
    class_meet,
    classify,
    equivalent,
)
from .builders import StructuringFunction, build_matrix_adaptive, build_matrix_from_se
from .errors import (
    AsticityError,
    DimensionError,
    EnumerationBoundError,
    FormatError,
    NotDefiniteError,
)
from .graphview import (
    Path,
    WeightedDigraph,
    enumerate_paths,
    neighborhood,
    neighborhood_transform,
    opening_threshold_check,
    opening_via_threshold,
    oracle_integral_entry,
    oracle_power_entry,
)
from .iterated import (
    IteratedFamily,
    big_g_opening,
    check_granulometry,
    gamma_opening,
    integral_dilate,
    integral_erode,
    iterate_dilate,
    iterate_erode,
)
from .lattice import (
    NEG_INF,
    LatticeConfig,
    complement,
    impulse,
    lattice_leq,
    scalar_shift,
    vectors_equal,
)
from .matrix import (
    MaxPlusMatrix,
    mats_equal,
    mp_mat_join,
    mp_mat_mat,
    mp_mat_power,
    mp_mat_vec,
    mp_mat_vec_min,
    prune_keep_above,
    zero_tolerance,
)
from .operators import (
    adjoint_erosion,
    check_adjunction,
    check_dilation_representable,
    check_shift_invariance,
    closing,
    dilate,
    erode,
    matrix_from_dilation,
    opening,
)
from .spectral import (
    SpectralDecomposition,
    check_eigenproblem,
    check_symmetric_consequences,
    eigenspace_project,
    metric_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AsticityError",
    "AsticityReport",
    "DimensionError",
    "EnumerationBoundError",
    "FormatError",
    "IteratedFamily",
    "LatticeConfig",
    "MaxPlusMatrix",
    "NEG_INF",
    "NotDefiniteError",
    "Path",
    "SpectralDecomposition",
    "StructuringFunction",
    "WeightedDigraph",
    "adjoint_erosion",
    "big_g_opening",
    "build_matrix_adaptive",
    "build_matrix_from_se",
    "canonical_lower",
    "canonical_upper",
    "check_adjunction",
    "check_dilation_representable",
    "check_eigenproblem",
    "check_granulometry",
    "check_shift_invariance",
    "check_symmetric_consequences",
    "class_join",
    "class_meet",
    "classify",
    "closing",
    "complement",
    "dilate",
    "eigenspace_project",
    "enumerate_paths",
    "equivalent",
    "erode",
    "gamma_opening",
    "impulse",
    "integral_dilate",
    "integral_erode",
    "iterate_dilate",
    "iterate_erode",
    "lattice_leq",
    "mats_equal",
    "matrix_from_dilation",
    "metric_matrix",
    "mp_mat_join",
    "mp_mat_mat",
    "mp_mat_power",
    "mp_mat_vec",
    "mp_mat_vec_min",
    "neighborhood",
    "neighborhood_transform",
    "opening",
    "opening_threshold_check",
    "opening_via_threshold",
    "oracle_integral_entry",
    "oracle_power_entry",
    "prune_keep_above",
    "scalar_shift",
    "vectors_equal",
    "zero_tolerance",
]
