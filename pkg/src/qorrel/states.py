"""Maximally entangled qutrit-pair bases and the rank-3 mixtures studied here.

The nine entangled two-qutrit unit vectors are generated from |00> by a local
Fourier phase gate and a modular-subtraction gate. Mixing the three j=0
vectors with weights (p0, p1, p2) gives the initial state whose correlation
dynamics the rest of the package evolves and measures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MixtureWeights",
    "qft_matrix",
    "xor_gate",
    "bell_state",
    "initial_state",
]

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class MixtureWeights:
    """Probabilities of the three entangled vectors in the initial mixture."""

    p0: float
    p1: float
    p2: float

    def __post_init__(self) -> None:
        ps = (self.p0, self.p1, self.p2)
        for p in ps:
            if not -1e-12 <= p <= 1.0 + 1e-12:
                raise ValueError(f"weight {p} outside [0, 1]")
        if abs(sum(ps) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights {ps} sum to {sum(ps)}, not 1")

    @classmethod
    def normalized(cls, p0: float, p1: float, p2: float) -> "MixtureWeights":
        """Build weights, repairing rounding drift in the sum (up to 1e-6)."""
        total = p0 + p1 + p2
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"weights sum to {total}; too far from 1 to renormalize")
        return cls(p0 / total, p1 / total, p2 / total)

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2], dtype=float)


def qft_matrix(d: int = 3) -> np.ndarray:
    """Discrete Fourier transform matrix, F[k, j] = exp(2*pi*i*j*k/d)/sqrt(d)."""
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def xor_gate(d: int = 3) -> np.ndarray:
    """Two-qudit gate |j>|k> -> |j>|j - k mod d> (self-inverse)."""
    gate = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            gate[j * d + (j - k) % d, j * d + k] = 1.0
    return gate


def bell_state(j: int, k: int, d: int = 3) -> np.ndarray:
    """Entangled unit vector with Fourier index j and shift index k.

    |psi_jk> = (1/sqrt(d)) sum_q exp(2*pi*i*j*q/d) |q>|q - k mod d>
    """
    if not (0 <= j < d and 0 <= k < d):
        raise ValueError(f"indices ({j},{k}) outside [0,{d})")
    f = qft_matrix(d)
    vec = np.zeros(d * d, dtype=complex)
    for q in range(d):
        vec[q * d + (q - k) % d] = f[q, j]
    return vec


def initial_state(weights: MixtureWeights) -> np.ndarray:
    """Rank-3 mixture of the three j=0 entangled vectors, as a 9x9 matrix."""
    rho = np.zeros((9, 9), dtype=complex)
    for k, p in enumerate(weights.as_array()):
        v = bell_state(0, k)
        rho += p * np.outer(v, v.conj())
    return rho
