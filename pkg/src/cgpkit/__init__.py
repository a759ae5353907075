"""cgpkit: coherence generating power of quantum channels.

The CGP of a channel is the average relative entropy of coherence it
produces from uniformly random incoherent (diagonal) states. For unitary
channels it has a closed form in terms of subentropy; for general channels
it is estimated by seeded Monte Carlo over the probability simplex.
"""
from .cgp import (
    CgpBoundReport,
    CgpEstimate,
    cgp_curve_partial_swap,
    cgp_curve_rotation,
    check_unital_bound,
    entropy_gain_slack,
    exact_cgp,
    is_max_cgp_unitary,
    max_cgp,
    mc_cgp,
    unital_bound,
)
from .channels import (
    GateSpec,
    KrausChannel,
    StochasticMatrix,
    apply,
    dual,
    kraus_matrix,
    make_gate,
    random_unital_channel,
    random_unitary,
)
from .core import SimplexSampler, confluent_divided_difference, eigh, sample_simplex
from .entropy import (
    harmonic,
    quantum_relative_entropy,
    relative_entropy,
    relative_entropy_of_coherence,
    shannon,
    subentropy,
    von_neumann,
    weighted_entropy,
    weighted_subentropy,
)
from .oracle import IdentityReport, run_identity_battery

__version__ = "0.1.0"
