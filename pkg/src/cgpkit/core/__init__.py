"""Numerical foundations: validated arrays, Hermitian eigensolver, simplex sampling, divided differences."""

from .arrays import (
    PROB_ATOL,
    as_square,
    check_hermitian,
    check_unitary,
    density_matrix,
    is_unitary,
    probability_vector,
)
from .divdiff import (
    NodeSet,
    Power,
    PowerLog,
    TabulatedFunction,
    cluster_nodes,
    confluent_divided_difference,
    quotient_divided_difference,
)
from .linalg import eigh, eigh_batch, eigvalsh_batch
from .simplex import SimplexSampler, sample_simplex

__all__ = [
    "PROB_ATOL",
    "as_square",
    "check_hermitian",
    "check_unitary",
    "density_matrix",
    "is_unitary",
    "probability_vector",
    "NodeSet",
    "Power",
    "PowerLog",
    "TabulatedFunction",
    "cluster_nodes",
    "confluent_divided_difference",
    "quotient_divided_difference",
    "eigh",
    "eigh_batch",
    "eigvalsh_batch",
    "SimplexSampler",
    "sample_simplex",
]
