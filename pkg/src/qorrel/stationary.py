"""Long-time limit: correlation plateau, optimal measurements, pointer basis.

Dephasing kills every coherence with n != m on either side, so the state
settles on the diagonal sum_{n,k} p_{(n-k) mod 3}/3 |nk><nk|. Measuring B
in the four-angle family then leaves A in a *diagonal* conditional state
whose entries depend only on (theta, phi) through the moduli of the
measurement rows -- the chi phases drop out. Everything here works with
those closed-form eigenvalue triples instead of 9x9 states.

Each of the three outcomes occurs with probability 1/3, and its normalized
conditional spectrum is K @ m_i, where K[n, k] = p_{(n-k) mod 3} is a
circulant (doubly stochastic) matrix and m_i the squared moduli of row i.
Because doubly stochastic mixing can only raise entropy, the measured
classical correlations are maximal exactly when each m_i is a basis vector:
the four corners of the (theta, phi) square, i.e. the computational
(pointer) basis up to relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qorrel.correlations import measurement_basis
from qorrel.optimize import nelder_mead
from qorrel.states import MixtureWeights
from qorrel.linalg import shannon_entropy

__all__ = [
    "StationarySearch",
    "CORNERS",
    "stationary_lambdas",
    "stationary_classical_at",
    "stationary_classical",
    "stationary_classical_corner",
    "stationary_map_batch",
    "stationary_mutual_information",
    "stationary_discord",
    "pointer_basis",
]

HALF_PI = 0.5 * np.pi
LOG2_3 = np.log2(3.0)

CORNERS = ((0.0, 0.0), (0.0, HALF_PI), (HALF_PI, 0.0), (HALF_PI, HALF_PI))

MATCH_TOL = 1e-9


@dataclass(frozen=True)
class StationarySearch:
    """Maximum of the long-time classical-correlation surface.

    `argmax` lists the maximizing (theta, phi) pairs: all four corners when
    they attain the maximum (they always should), otherwise the single
    refined interior point that beat them.
    """

    value: float
    argmax: tuple[tuple[float, float], ...]
    corner_attained: bool


def _moduli(theta, phi) -> np.ndarray:
    """Squared moduli |V_{ik}|^2 of the measurement rows; shape (..., 3, 3)."""
    theta, phi = np.broadcast_arrays(
        np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    )
    st2, ct2 = np.sin(theta) ** 2, np.cos(theta) ** 2
    sf2, cf2 = np.sin(phi) ** 2, np.cos(phi) ** 2
    m = np.empty(theta.shape + (3, 3))
    m[..., 0, 0] = st2 * cf2
    m[..., 0, 1] = st2 * sf2
    m[..., 0, 2] = ct2
    m[..., 1, 0] = ct2 * cf2
    m[..., 1, 1] = ct2 * sf2
    m[..., 1, 2] = st2
    m[..., 2, 0] = sf2
    m[..., 2, 1] = cf2
    m[..., 2, 2] = 0.0
    return m


def _class_matrix(weights: MixtureWeights) -> np.ndarray:
    """Circulant K[n, k] = p_{(n-k) mod 3}; columns and rows sum to 1."""
    p = weights.as_array()
    n, k = np.indices((3, 3))
    return p[(n - k) % 3]


def stationary_lambdas(weights: MixtureWeights, theta, phi) -> np.ndarray:
    """Normalized conditional spectra of A for all three outcomes.

    Shape (..., 9): outcome-major, three eigenvalues per outcome, each
    triple summing to 1. Valid for the settled (fully dephased) state.
    """
    m = _moduli(theta, phi)
    triples = np.einsum("nk,...ik->...in", _class_matrix(weights), m)
    return triples.reshape(triples.shape[:-2] + (9,))


def stationary_classical_at(weights: MixtureWeights, theta, phi):
    """Long-time classical correlations (bits) at fixed measurement angles.

    C_inf(theta, phi) = log2(3) + (1/3) sum over the nine conditional
    eigenvalues of lambda log2 lambda. Broadcasts over angle arrays.
    """
    lam = stationary_lambdas(weights, theta, phi)
    logs = np.where(lam > 0.0, np.log2(np.where(lam > 0.0, lam, 1.0)), 0.0)
    out = LOG2_3 + np.sum(lam * logs, axis=-1) / 3.0
    return float(out) if out.ndim == 0 else out


def stationary_classical_corner(weights: MixtureWeights) -> float:
    """Surface value shared by all four corners: log2(3) - H(p)."""
    return LOG2_3 - shannon_entropy(weights.as_array())


def stationary_mutual_information(weights: MixtureWeights) -> float:
    """Mutual information of the settled state: also log2(3) - H(p)."""
    return LOG2_3 - shannon_entropy(weights.as_array())


def stationary_classical(
    weights: MixtureWeights, grid_points: int = 201, refine: bool = True
) -> StationarySearch:
    """Maximize the long-time surface over the angle square.

    Grid scan plus optional Nelder-Mead refinement from the best grid point.
    The corners are part of the grid, so the reported value can never fall
    below log2(3) - H(p).
    """
    axis = np.linspace(0.0, HALF_PI, grid_points)
    th, ph = np.meshgrid(axis, axis, indexing="ij")
    surface = stationary_classical_at(weights, th, ph)
    flat = int(np.argsort(surface.ravel(), kind="stable")[-1])
    best = float(surface.ravel()[flat])
    best_at = (float(th.ravel()[flat]), float(ph.ravel()[flat]))

    if refine:

        def negated(x):
            t = x[0] % np.pi
            f = x[1] % np.pi
            t = np.pi - t if t > HALF_PI else t
            f = np.pi - f if f > HALF_PI else f
            return -stationary_classical_at(weights, t, f)

        x_best, f_best, _, _ = nelder_mead(
            negated, np.array(best_at), step=0.05, max_evals=500
        )
        if -f_best > best:
            best = -f_best
            t = x_best[0] % np.pi
            f = x_best[1] % np.pi
            best_at = (
                float(np.pi - t if t > HALF_PI else t),
                float(np.pi - f if f > HALF_PI else f),
            )

    corner = stationary_classical_corner(weights)
    if best <= corner + MATCH_TOL:
        return StationarySearch(value=corner, argmax=CORNERS, corner_attained=True)
    return StationarySearch(value=best, argmax=(best_at,), corner_attained=False)


def stationary_map_batch(weight_rows, grid_points: int = 41) -> np.ndarray:
    """Long-time classical correlations for many weight triples at once.

    weight_rows is (N, 3) on the simplex; returns (N,) bits. For every row
    the corner value log2(3) - H(p) is compared against a grid_points^2 scan
    of the surface and the larger wins, so a hypothetical interior maximum
    would show up in the output instead of being assumed away.
    """
    w = np.atleast_2d(np.asarray(weight_rows, dtype=float))
    axis = np.linspace(0.0, HALF_PI, grid_points)
    th, ph = np.meshgrid(axis, axis, indexing="ij")
    m = _moduli(th.ravel(), ph.ravel())
    idx = (np.arange(3)[:, None] - np.arange(3)[None, :]) % 3
    out = np.empty(len(w))
    for lo in range(0, len(w), 512):
        hi = min(lo + 512, len(w))
        block = w[lo:hi]
        lam = np.einsum("wnk,aik->wain", block[:, idx], m)
        logs = np.where(lam > 0.0, np.log2(np.where(lam > 0.0, lam, 1.0)), 0.0)
        f = LOG2_3 + np.sum(lam * logs, axis=(-2, -1)) / 3.0
        plogs = np.where(block > 0.0, np.log2(np.where(block > 0.0, block, 1.0)), 0.0)
        corner = LOG2_3 + np.sum(block * plogs, axis=1)
        out[lo:hi] = np.maximum(corner, f.max(axis=1))
    return out


def stationary_discord(weights: MixtureWeights, **kwargs) -> float:
    """Discord of the settled state: zero whenever the corners are optimal."""
    search = stationary_classical(weights, **kwargs)
    return stationary_mutual_information(weights) - search.value


def pointer_basis() -> np.ndarray:
    """Measurement triple at the (0, 0) corner: computational basis reordered.

    Rows are |2>, |0>, |1>; measuring B in it realizes the long-time optimum.
    """
    return measurement_basis(0.0, 0.0, 0.0, 0.0)
