"""Packings of c-dimensional subspaces of real or complex d-space.

Compute subspace distances and principal angles, evaluate the classical
packing bounds (Welch, simplex, orthoplex, Gerzon), certify structure
(tight fusion frames, equi-chordal and equi-isoclinic arrangements,
equiangular tight frames), construct the known optimal packings, and
search numerically for new ones. A command-line interface lives in
``grasspack.cli``.
"""

from .bounds import (
    BoundReport,
    OrthoplexBound,
    bound_report,
    eitff_bound,
    gerzon_limit,
    orthoplex_bound,
    rankin_orthoplex_bound,
    rankin_simplex_bound,
    simplex_bound_chordal,
    simplex_bound_gram,
    traceless_space_dim,
    welch_bound,
)
from .certify import (
    Certificate,
    EquiangularResult,
    EquichordalResult,
    EquiisoclinicResult,
    TightnessResult,
    certify,
    is_equiangular,
    is_equichordal,
    is_equiisoclinic,
    is_etf,
    is_regular_simplex,
    is_tight_fusion_frame,
    is_unit_norm_tight_frame,
)
from .construct import (
    DifferenceSet,
    harmonic_etf,
    orthoplex,
    random_frame,
    regular_simplex,
    tensor_eitff,
)
from .linalg import (
    DEFAULT_TOL,
    FieldTag,
    Mat,
    NumericalError,
    adjoint,
    frobenius_inner,
    frobenius_norm,
    kron,
    matmul,
    orthonormalize,
    singular_values,
    spectral_norm,
)
from .metrics import (
    FusionFrame,
    PrincipalAngles,
    SubspaceBasis,
    chordal_distance_sq,
    coherence,
    cross_gramian,
    fusion_frame_operator,
    fusion_gram,
    geodesic_distance,
    min_chordal_packing,
    principal_angles,
    projection,
    spectral_distance_sq,
    traceless_embed,
)
from .optimize import (
    Criterion,
    PackConfig,
    PackResult,
    pack,
    polish,
    smoothed_objective,
    smoothed_objective_and_gradient,
    worst_overlap,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Certificate",
    "Criterion",
    "DEFAULT_TOL",
    "DifferenceSet",
    "EquiangularResult",
    "EquichordalResult",
    "EquiisoclinicResult",
    "FieldTag",
    "FusionFrame",
    "Mat",
    "NumericalError",
    "OrthoplexBound",
    "PackConfig",
    "PackResult",
    "PrincipalAngles",
    "SubspaceBasis",
    "TightnessResult",
    "adjoint",
    "bound_report",
    "certify",
    "chordal_distance_sq",
    "coherence",
    "cross_gramian",
    "eitff_bound",
    "frobenius_inner",
    "frobenius_norm",
    "fusion_frame_operator",
    "fusion_gram",
    "geodesic_distance",
    "gerzon_limit",
    "harmonic_etf",
    "is_equiangular",
    "is_equichordal",
    "is_equiisoclinic",
    "is_etf",
    "is_regular_simplex",
    "is_tight_fusion_frame",
    "is_unit_norm_tight_frame",
    "kron",
    "matmul",
    "min_chordal_packing",
    "orthonormalize",
    "orthoplex",
    "orthoplex_bound",
    "pack",
    "polish",
    "principal_angles",
    "projection",
    "random_frame",
    "rankin_orthoplex_bound",
    "rankin_simplex_bound",
    "regular_simplex",
    "simplex_bound_chordal",
    "simplex_bound_gram",
    "singular_values",
    "smoothed_objective",
    "smoothed_objective_and_gradient",
    "spectral_distance_sq",
    "spectral_norm",
    "tensor_eitff",
    "traceless_embed",
    "traceless_space_dim",
    "welch_bound",
    "worst_overlap",
]
