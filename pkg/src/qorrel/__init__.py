"""Correlation dynamics of two qutrits under independent dephasing.

Closed-form evolution of rank-3 mixtures of maximally entangled qutrit
pairs, quantum mutual information and discord, classical correlations via a
deterministic measurement-angle search, and the analytic long-time limit
with its pointer basis.
"""

from qorrel.correlations import (
    CorrelationResult,
    MeasurementAngles,
    classical_correlations,
    conditional_entropy,
    discord,
    grid_classical_correlations,
    measurement_basis,
    mutual_information,
)
from qorrel.dynamics import (
    RatePoleError,
    ReservoirParams,
    decoherence_factor,
    effective_rate,
    evolve,
    evolve_markovian,
    first_coherence_zero,
    integrate_master_equation,
)
from qorrel.linalg import (
    InvalidStateError,
    NonHermitianError,
    hermitian_eigenvalues,
    partial_trace_A,
    partial_trace_B,
    shannon_entropy,
    validate_density_matrix,
    von_neumann_entropy,
)
from qorrel.states import MixtureWeights, bell_state, initial_state, qft_matrix, xor_gate
from qorrel.stationary import (
    CORNERS,
    StationarySearch,
    pointer_basis,
    stationary_classical,
    stationary_classical_at,
    stationary_classical_corner,
    stationary_discord,
    stationary_lambdas,
    stationary_map_batch,
    stationary_mutual_information,
)

__version__ = "0.1.0"
