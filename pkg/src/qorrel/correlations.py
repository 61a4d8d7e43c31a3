"""Mutual information, classical correlations, and discord of two-qutrit states.

Classical correlations are extracted by rank-1 projective measurements on
subsystem B drawn from a four-angle family of orthonormal qutrit triples
(theta, phi in [0, pi/2]; chi1, chi2 in [0, 2pi)). The search for the best
measurement is a dense angle grid followed by Nelder-Mead refinement from
the few best grid points; it is fully deterministic.

Definitions (all in bits):
    I(rho)  = S(rho_A) + S(rho_B) - S(rho)
    C(rho)  = S(rho_A) - min_basis sum_i p_i S(rho_A | outcome i)
    D(rho)  = I(rho) - C(rho)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qorrel.linalg import (
    InvalidStateError,
    hermitian_eigenvalues_3,
    partial_trace_A,
    partial_trace_B,
    von_neumann_entropy,
)
from qorrel.optimize import nelder_mead

__all__ = [
    "MeasurementAngles",
    "CorrelationResult",
    "measurement_basis",
    "conditional_entropy",
    "mutual_information",
    "classical_correlations",
    "grid_classical_correlations",
    "discord",
]

HALF_PI = 0.5 * np.pi
TWO_PI = 2.0 * np.pi
# Outcome probabilities below this contribute nothing to the conditional
# entropy (their conditional states are numerically meaningless).
PROBABILITY_TINY = 1e-12
# How negative a correlation is allowed to drift through rounding before we
# treat it as a bug rather than noise.
NEGATIVE_TOL = 1e-7

GRID_THETA = 25
GRID_PHI = 25
GRID_CHI = 13
REFINE_STARTS = 5
REFINE_STEP = 0.1
REFINE_MAX_EVALS = 2000
REFINE_SPREAD_TOL = 1e-9
_CHUNK = 20_000


@dataclass(frozen=True)
class MeasurementAngles:
    """Angles selecting one orthonormal measurement triple on a qutrit."""

    theta: float
    phi: float
    chi1: float
    chi2: float

    def __post_init__(self) -> None:
        for name in ("theta", "phi"):
            v = getattr(self, name)
            if not -1e-12 <= v <= HALF_PI + 1e-12:
                raise ValueError(f"{name}={v} outside [0, pi/2]")
        for name in ("chi1", "chi2"):
            v = getattr(self, name)
            if not -1e-12 <= v < TWO_PI + 1e-12:
                raise ValueError(f"{name}={v} outside [0, 2pi)")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.theta, self.phi, self.chi1, self.chi2)


@dataclass(frozen=True)
class CorrelationResult:
    """Correlation triple of a state plus the measurement that realized C."""

    mutual_information: float
    classical: float
    discord: float
    argmax: MeasurementAngles
    optimizer_evaluations: int
    converged: bool


def _basis_batch(theta, phi, chi1, chi2) -> np.ndarray:
    """Measurement triples for broadcast angle arrays; shape (..., 3, 3).

    Rows are the three orthonormal vectors:
        V1 = (e^{i chi1} sin(t) cos(f), e^{i chi2} sin(t) sin(f), cos(t))
        V2 = (e^{i chi1} cos(t) cos(f), e^{i chi2} cos(t) sin(f), -sin(t))
        V3 = (-e^{i chi1} sin(f), e^{i chi2} cos(f), 0)
    """
    theta, phi, chi1, chi2 = np.broadcast_arrays(
        np.asarray(theta, dtype=float),
        np.asarray(phi, dtype=float),
        np.asarray(chi1, dtype=float),
        np.asarray(chi2, dtype=float),
    )
    st, ct = np.sin(theta), np.cos(theta)
    sf, cf = np.sin(phi), np.cos(phi)
    e1 = np.exp(1j * chi1)
    e2 = np.exp(1j * chi2)
    v = np.zeros(theta.shape + (3, 3), dtype=complex)
    v[..., 0, 0] = e1 * st * cf
    v[..., 0, 1] = e2 * st * sf
    v[..., 0, 2] = ct
    v[..., 1, 0] = e1 * ct * cf
    v[..., 1, 1] = e2 * ct * sf
    v[..., 1, 2] = -st
    v[..., 2, 0] = -e1 * sf
    v[..., 2, 1] = e2 * cf
    return v


def measurement_basis(
    theta: float, phi: float, chi1: float, chi2: float
) -> np.ndarray:
    """Single measurement triple as a (3, 3) array of row vectors."""
    return _basis_batch(
        np.float64(theta), np.float64(phi), np.float64(chi1), np.float64(chi2)
    )


def _coupling_matrix(rho: np.ndarray) -> np.ndarray:
    """Reindex rho_{n mu, n' k} as R[(n,n'), (mu,k)], returned transposed.

    With W[(mu,k)] = conj(V_mu) V_k for a measurement vector V on B, the
    unnormalized conditional state of A is M[(n,n')] = (W @ R^T)[(n,n')].
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (9, 9):
        raise ValueError(f"expected a 9x9 state, got {rho.shape}")
    r = rho.reshape(3, 3, 3, 3).transpose(0, 2, 1, 3).reshape(9, 9)
    return np.ascontiguousarray(r.T)


def _conditional_entropy_core(r_t: np.ndarray, bases: np.ndarray) -> np.ndarray:
    """Measured conditional entropy of A for each basis; shape bases.shape[:-2].

    bases has shape (..., 3, 3) with orthonormal rows. Uses the closed-form
    3x3 eigenvalue solver, so this is safe to call on large batches.
    """
    head = bases.shape[:-2]
    w = np.conj(bases)[..., :, :, None] * bases[..., :, None, :]
    m = (w.reshape(head + (3, 9)) @ r_t).reshape(head + (3, 3, 3))
    probs = np.trace(m, axis1=-2, axis2=-1).real
    lam = np.clip(hermitian_eigenvalues_3(m), 0.0, None)
    safe = np.where(probs > PROBABILITY_TINY, probs, 1.0)
    mu = lam / safe[..., None]
    logs = np.where(mu > 0.0, np.log2(np.where(mu > 0.0, mu, 1.0)), 0.0)
    outcome_entropy = -np.sum(mu * logs, axis=-1)
    return np.sum(np.where(probs > PROBABILITY_TINY, probs * outcome_entropy, 0.0), axis=-1)


def conditional_entropy(rho: np.ndarray, angles: MeasurementAngles) -> float:
    """Average post-measurement entropy of A when B is measured at `angles`."""
    r_t = _coupling_matrix(rho)
    basis = measurement_basis(*angles.as_tuple())
    return float(_conditional_entropy_core(r_t, basis))


def mutual_information(rho: np.ndarray) -> float:
    """Total correlations S(A) + S(B) - S(AB), in bits."""
    s_ab = von_neumann_entropy(rho)
    s_a = von_neumann_entropy(partial_trace_B(rho))
    s_b = von_neumann_entropy(partial_trace_A(rho))
    return s_a + s_b - s_ab


@lru_cache(maxsize=4)
def _angle_grid(n_theta: int, n_phi: int, n_chi: int):
    """Dense angle grid and its measurement bases, cached across calls.

    Grid points are generated in lexicographic (theta, phi, chi1, chi2) order
    so that stable sorts of grid values break ties toward smaller angles.
    """
    thetas = np.linspace(0.0, HALF_PI, n_theta)
    phis = np.linspace(0.0, HALF_PI, n_phi)
    chis = np.arange(n_chi) * (TWO_PI / n_chi)
    th, ph, c1, c2 = np.meshgrid(thetas, phis, chis, chis, indexing="ij")
    angles = np.stack([th.ravel(), ph.ravel(), c1.ravel(), c2.ravel()], axis=1)
    bases = _basis_batch(angles[:, 0], angles[:, 1], angles[:, 2], angles[:, 3])
    angles.setflags(write=False)
    bases.setflags(write=False)
    return angles, bases


def _grid_values(r_t: np.ndarray, bases: np.ndarray) -> np.ndarray:
    out = np.empty(bases.shape[0])
    for lo in range(0, bases.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, bases.shape[0])
        out[lo:hi] = _conditional_entropy_core(r_t, bases[lo:hi])
    return out


def _fold(x: np.ndarray) -> tuple[float, float, float, float]:
    """Map unconstrained optimizer coordinates back into the angle domain."""
    folded = []
    for v in x[:2]:
        r = float(v) % np.pi
        folded.append(np.pi - r if r > HALF_PI else r)
    for v in x[2:]:
        folded.append(float(v) % TWO_PI)
    return tuple(folded)


def _classical_search(rho: np.ndarray, grid=(GRID_THETA, GRID_PHI, GRID_CHI)):
    """Minimize the measured conditional entropy over the angle family.

    Returns (classical_bits, argmax_angles, n_evaluations, converged). Stage
    one scans a dense cached grid; stage two runs Nelder-Mead from the best
    few grid points in unconstrained coordinates, folding each trial point
    back into the domain. Ties resolve to the lexicographically smallest
    folded angle tuple, keeping the reported argmax reproducible.
    """
    r_t = _coupling_matrix(rho)
    angles, bases = _angle_grid(*grid)
    values = _grid_values(r_t, bases)
    order = np.argsort(values, kind="stable")
    n_evals = values.size

    def objective(x):
        return float(_conditional_entropy_core(r_t, _basis_batch(*_fold(x))))

    candidates = []
    converged_all = True
    for idx in order[:REFINE_STARTS]:
        x0 = angles[idx]
        x_best, f_best, evals, conv = nelder_mead(
            objective,
            x0,
            step=REFINE_STEP,
            max_evals=REFINE_MAX_EVALS,
            spread_tol=REFINE_SPREAD_TOL,
        )
        n_evals += evals
        converged_all = converged_all and conv
        candidates.append((f_best, _fold(x_best)))
    candidates.append((float(values[order[0]]), tuple(angles[order[0]])))

    best_ce, best_angles = min(candidates)
    s_a = von_neumann_entropy(partial_trace_B(rho))
    classical = s_a - best_ce
    if classical < 0.0:
        if classical < -NEGATIVE_TOL:
            raise InvalidStateError(
                f"classical correlations {classical:.3e} below -{NEGATIVE_TOL}"
            )
        classical = 0.0
    return classical, MeasurementAngles(*best_angles), n_evals, converged_all


def classical_correlations(
    rho: np.ndarray, grid=(GRID_THETA, GRID_PHI, GRID_CHI)
) -> tuple[float, MeasurementAngles]:
    """Classical correlations in bits and the measurement achieving them."""
    classical, argmax, _, _ = _classical_search(rho, grid=grid)
    return classical, argmax


def grid_classical_correlations(
    rho: np.ndarray, n_theta: int = 41, n_phi: int = 41, n_chi: int = 9
) -> tuple[float, MeasurementAngles]:
    """Brute-force grid maximum of S(A) - S(A|measurement), no refinement.

    A slow, simple cross-check of the staged search: its result can only be
    below (or equal to) the refined optimum.
    """
    r_t = _coupling_matrix(rho)
    angles, bases = _angle_grid(n_theta, n_phi, n_chi)
    values = _grid_values(r_t, bases)
    idx = int(np.argsort(values, kind="stable")[0])
    s_a = von_neumann_entropy(partial_trace_B(rho))
    return s_a - float(values[idx]), MeasurementAngles(*angles[idx])


def discord(rho: np.ndarray, grid=(GRID_THETA, GRID_PHI, GRID_CHI)) -> CorrelationResult:
    """Quantum discord D = I - C with the full search metadata."""
    info = mutual_information(rho)
    classical, argmax, n_evals, converged = _classical_search(rho, grid=grid)
    disc = info - classical
    if disc < 0.0:
        if disc < -NEGATIVE_TOL:
            raise InvalidStateError(f"discord {disc:.3e} below -{NEGATIVE_TOL}")
        disc = 0.0
    return CorrelationResult(
        mutual_information=info,
        classical=classical,
        discord=disc,
        argmax=argmax,
        optimizer_evaluations=n_evals,
        converged=converged,
    )
