"""Exact single-reservoir dephasing dynamics for the two-qutrit mixtures.

Each qutrit couples to its own reservoir characterized by a coupling rate
Gamma and a memory rate gamma (both > 0, same time units). Coherences decay
elementwise: rho_{nk,ml}(t) = rho_{nk,ml}(0) * P_A(t)^{(n-m)^2} * P_B(t)^{(k-l)^2}
with the scalar factor

    P(t) = exp(beta t) * (cos(eta t) - (beta/eta) sin(eta t)),
    beta = -gamma/2,   eta^2 = (Gamma - gamma/2) * gamma / 2.

eta^2 may be negative (overdamped reservoir), in which case the trig
functions continue analytically to hyperbolic ones; near eta^2 * t^2 = 0 a
series branch avoids 0/0. The time-local dephasing rate is
Q(t) = -2 P'(t)/P(t), which diverges at the isolated zeros of P.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qorrel.linalg import kron

__all__ = [
    "ReservoirParams",
    "RatePoleError",
    "decoherence_factor",
    "effective_rate",
    "first_coherence_zero",
    "evolve",
    "evolve_markovian",
    "integrate_master_equation",
]

# Below |eta^2| * t^2 = 1e-8 the closed forms lose digits to cancellation;
# a 4th-order series in eta^2 t^2 is exact to ~1e-17 there.
SERIES_THRESHOLD = 1e-8


@dataclass(frozen=True)
class ReservoirParams:
    """Dephasing reservoir: coupling rate Gamma, memory (cutoff) rate gamma."""

    Gamma: float
    gamma: float

    def __post_init__(self) -> None:
        if not self.Gamma > 0.0:
            raise ValueError(f"Gamma must be positive, got {self.Gamma}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    @property
    def beta(self) -> float:
        return -0.5 * self.gamma

    @property
    def eta_squared(self) -> float:
        return 0.5 * self.gamma * (self.Gamma - 0.5 * self.gamma)


class RatePoleError(ValueError):
    """The time-local rate Q(t) was evaluated at (or too close to) a pole."""


def decoherence_factor(res: ReservoirParams, t) -> np.ndarray | float:
    """Elementary coherence survival factor P(t). Vectorized over t.

    P(0) = 1, P'(0) = 0; sign changes are physical (coherence revivals with
    phase flips), so no clipping is applied.
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if np.any(t < 0.0):
        raise ValueError("t must be nonnegative")
    beta = res.beta
    eta2 = res.eta_squared
    x2 = eta2 * t * t
    out = np.empty_like(t)

    small = np.abs(x2) < SERIES_THRESHOLD
    if np.any(small):
        ts = t[small]
        xs = x2[small]
        even = 1.0 - xs / 2.0 + xs * xs / 24.0
        odd = 1.0 - xs / 6.0 + xs * xs / 120.0
        out[small] = np.exp(beta * ts) * (even - beta * ts * odd)

    big = ~small
    if np.any(big):
        tb = t[big]
        if eta2 > 0.0:
            eta = np.sqrt(eta2)
            out[big] = np.exp(beta * tb) * (
                np.cos(eta * tb) - (beta / eta) * np.sin(eta * tb)
            )
        else:
            # cos(i w t) = cosh(wt); expanding into exponentials keeps the
            # growing and decaying modes separate so large wt cannot overflow
            # through cosh alone.
            w = np.sqrt(-eta2)
            out[big] = 0.5 * (
                (1.0 - beta / w) * np.exp((beta + w) * tb)
                + (1.0 + beta / w) * np.exp((beta - w) * tb)
            )
    return float(out[0]) if scalar else out


def effective_rate(res: ReservoirParams, t) -> np.ndarray | float:
    """Time-local dephasing rate Q(t) = -2 P'(t) / P(t). Vectorized over t.

    Closed form: Q = Gamma*gamma*sin(eta t) / (eta cos(eta t) + (gamma/2) sin(eta t))
    for eta^2 > 0, with the hyperbolic analogue otherwise. Raises
    RatePoleError within ~1e-12 (relative) of a pole.
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if np.any(t < 0.0):
        raise ValueError("t must be nonnegative")
    eta2 = res.eta_squared
    gg = res.Gamma * res.gamma
    half_gamma = 0.5 * res.gamma
    if eta2 > 0.0:
        eta = np.sqrt(eta2)
        num = gg * np.sin(eta * t)
        den = eta * np.cos(eta * t) + half_gamma * np.sin(eta * t)
        scale = np.hypot(eta, half_gamma)
        if np.any(np.abs(den) <= 1e-12 * scale):
            raise RatePoleError("Q(t) evaluated at a zero of the coherence factor")
        out = num / den
    else:
        # tanh(wt)/w is bounded by t and by 1/w; the denominator
        # 1 + (gamma/2) r is then >= 1, so there are no poles here.
        w = np.sqrt(-eta2)
        if w == 0.0:
            r = t.copy()
        else:
            r = np.tanh(w * t) / w
        out = gg * r / (1.0 + half_gamma * r)
    return float(out[0]) if scalar else out


def first_coherence_zero(res: ReservoirParams) -> float | None:
    """Smallest t > 0 with P(t) = 0, or None when P never vanishes.

    Zeros exist only in the oscillatory regime eta^2 > 0, where
    tan(eta t) = eta / (-beta) first holds at
    t = (pi - arctan(2 eta / gamma)) / eta.
    """
    eta2 = res.eta_squared
    if eta2 <= 0.0:
        return None
    eta = np.sqrt(eta2)
    return float((np.pi - np.arctan(2.0 * eta / res.gamma)) / eta)


# Squared index distances |n - m|^2 for a single qutrit, and their lifts to
# the 9x9 two-qutrit lattice (A varies over blocks, B within blocks).
_EXPONENTS = np.array([[0, 1, 4], [1, 0, 1], [4, 1, 0]], dtype=int)
_EXPONENTS_A = kron(_EXPONENTS, np.ones((3, 3), dtype=int))
_EXPONENTS_B = kron(np.ones((3, 3), dtype=int), _EXPONENTS)


def evolve(
    rho0: np.ndarray,
    res_a: ReservoirParams,
    res_b: ReservoirParams,
    t: float,
) -> np.ndarray:
    """Closed-form dephased state at time t for independent reservoirs."""
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (9, 9):
        raise ValueError(f"expected a 9x9 state, got {rho0.shape}")
    pa = decoherence_factor(res_a, t)
    pb = decoherence_factor(res_b, t)
    return rho0 * np.power(pa, _EXPONENTS_A) * np.power(pb, _EXPONENTS_B)


def evolve_markovian(
    rho0: np.ndarray,
    Gamma_a: float,
    Gamma_b: float,
    t: float,
) -> np.ndarray:
    """Memoryless limit: exponential damping exp(-Gamma t (n-m)^2 / 2) per side."""
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (9, 9):
        raise ValueError(f"expected a 9x9 state, got {rho0.shape}")
    damp = np.exp(-0.5 * t * (Gamma_a * _EXPONENTS_A + Gamma_b * _EXPONENTS_B))
    return rho0 * damp


def integrate_master_equation(
    rho0: np.ndarray,
    res_a: ReservoirParams,
    res_b: ReservoirParams,
    t: float,
    steps: int = 10_000,
) -> np.ndarray:
    """RK4 integration of the time-local master equation up to time t.

    d rho_{nk,ml} / dt = -1/2 [Q_A(t) (n-m)^2 + Q_B(t) (k-l)^2] rho_{nk,ml}

    Serves as an independent check of the closed-form `evolve`; it is valid
    only while the rates stay finite, so integration past the first zero of
    either coherence factor is refused.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (9, 9):
        raise ValueError(f"expected a 9x9 state, got {rho0.shape}")
    if steps < 1000:
        raise ValueError("steps < 1000 gives unacceptable RK4 error here")
    for res in (res_a, res_b):
        t0 = first_coherence_zero(res)
        if t0 is not None and t0 <= t:
            raise RatePoleError(
                f"rate pole at t={t0:.6g} inside integration window [0, {t}]"
            )
    if t == 0.0:
        return rho0.copy()
    # Q is needed at step endpoints and midpoints: 2*steps + 1 grid times.
    grid = np.linspace(0.0, t, 2 * steps + 1)
    qa = np.asarray(effective_rate(res_a, grid))
    qb = np.asarray(effective_rate(res_b, grid))
    coeff = -0.5 * (
        _EXPONENTS_A[None, :, :] * qa[:, None, None]
        + _EXPONENTS_B[None, :, :] * qb[:, None, None]
    )
    h = t / steps
    rho = rho0.copy()
    for i in range(steps):
        c0 = coeff[2 * i]
        cm = coeff[2 * i + 1]
        c1 = coeff[2 * i + 2]
        k1 = c0 * rho
        k2 = cm * (rho + 0.5 * h * k1)
        k3 = cm * (rho + 0.5 * h * k2)
        k4 = c1 * (rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return rho
