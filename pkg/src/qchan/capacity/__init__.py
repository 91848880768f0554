"""Capacity candidates and their certification."""

from ..starts import random_start, random_start_vector, start_rng
from .classical import classical_capacity, cq_matrix
from .ensembles import (
    Candidate,
    Ensemble,
    capacity_candidate,
    dd_capacity_objective,
    diagonal_family_capacity,
    doubly_depol_optimal_ensemble,
    holevo_chi,
    qutrit_capacity_objective,
    qutrit_optimal_ensemble,
    tensor_square_candidate,
)
from .verify import (
    VERIFY_THRESHOLD,
    CapacityCertificate,
    StationaryReport,
    log2_full_support,
    capacity_ascent,
    verify_candidate,
)

__all__ = [
    "VERIFY_THRESHOLD",
    "Candidate",
    "CapacityCertificate",
    "Ensemble",
    "StationaryReport",
    "capacity_candidate",
    "classical_capacity",
    "cq_matrix",
    "dd_capacity_objective",
    "diagonal_family_capacity",
    "doubly_depol_optimal_ensemble",
    "holevo_chi",
    "log2_full_support",
    "qutrit_capacity_objective",
    "qutrit_optimal_ensemble",
    "random_start",
    "random_start_vector",
    "capacity_ascent",
    "start_rng",
    "tensor_square_candidate",
    "verify_candidate",
]
