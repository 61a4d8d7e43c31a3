"""Slow, obviously-correct reference routines the fast code is checked against."""

import numpy as np

from qorrel.correlations import measurement_basis
from qorrel.linalg import kron, partial_trace_B, von_neumann_entropy
from qorrel.states import MixtureWeights


def slow_conditional_entropy(rho, theta, phi, chi1, chi2):
    """Measured conditional entropy via explicit projectors and partial traces.

    Builds each rank-1 projector on B as a full 9x9 operator, applies it from
    both sides, and takes entropies with the Jacobi eigensolver. No batching,
    no eigenvalue shortcuts.
    """
    basis = measurement_basis(theta, phi, chi1, chi2)
    total = 0.0
    for row in basis:
        proj = kron(np.eye(3), np.outer(row, row.conj()))
        sub = proj @ rho @ proj
        p = np.trace(sub).real
        if p < 1e-12:
            continue
        total += p * von_neumann_entropy(partial_trace_B(sub) / p)
    return total


def random_density_matrix(rng, n=9):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_weights(rng):
    return MixtureWeights(*rng.dirichlet([1.0, 1.0, 1.0]))
