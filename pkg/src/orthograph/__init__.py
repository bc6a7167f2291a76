"""Strong Birkhoff-James orthogonality and orthographs of finite-dimensional C*-algebras."""

from .decide import (
    MutualDecision,
    OrthCertificate,
    OrthDecision,
    ideal_distance,
    is_isolated_vertex,
    m2_adjacent,
    m2_component,
    mutual_strong_orth,
    strong_orth_directsum,
    strong_orth_matrix,
    strong_orth_scalars,
)
from .errors import (
    ConstructionError,
    DegenerateInputError,
    InputError,
    NoPathError,
    NoWitnessError,
    OrthographError,
)
from .linalg import DEFAULT_TOL, DirectSumElement, ToleranceConfig, Tri, normalize_projective, operator_norm
from .witness import Case, PathWitness, annihilator_witness, route

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "Case",
    "ConstructionError",
    "DegenerateInputError",
    "DirectSumElement",
    "InputError",
    "MutualDecision",
    "NoPathError",
    "NoWitnessError",
    "OrthCertificate",
    "OrthDecision",
    "OrthographError",
    "PathWitness",
    "ToleranceConfig",
    "Tri",
    "annihilator_witness",
    "ideal_distance",
    "is_isolated_vertex",
    "m2_adjacent",
    "m2_component",
    "mutual_strong_orth",
    "normalize_projective",
    "operator_norm",
    "route",
    "strong_orth_directsum",
    "strong_orth_matrix",
    "strong_orth_scalars",
]
