"""Dense complex linear algebra for small Hermitian problems, plus entropies.

Matrices are plain complex numpy arrays. Bipartite 9x9 states use row-major
|nk> ordering with the first index belonging to subsystem A. All entropies
are in bits (log base 2).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "NonHermitianError",
    "InvalidStateError",
    "kron",
    "is_hermitian",
    "partial_trace_A",
    "partial_trace_B",
    "hermitian_eigenvalues",
    "hermitian_eigenvalues_3",
    "von_neumann_entropy",
    "shannon_entropy",
    "validate_density_matrix",
]

HERMITIAN_TOL = 1e-8
EIGENVALUE_FLOOR = -1e-9
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class NonHermitianError(ValueError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""


class InvalidStateError(ValueError):
    """Matrix fails the density-matrix requirements (Hermitian, unit trace, PSD)."""


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with A-major block ordering."""
    return np.kron(np.asarray(a), np.asarray(b))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def _as_bipartite(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    rho = np.asarray(rho)
    n = dim_a * dim_b
    if rho.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {rho.shape}")
    return rho.reshape(dim_a, dim_b, dim_a, dim_b)


def partial_trace_B(rho: np.ndarray, dim_a: int = 3, dim_b: int = 3) -> np.ndarray:
    """Reduced state of subsystem A: (rho_A)_{nm} = sum_k rho_{nk,mk}."""
    return np.einsum("nkmk->nm", _as_bipartite(rho, dim_a, dim_b))


def partial_trace_A(rho: np.ndarray, dim_a: int = 3, dim_b: int = 3) -> np.ndarray:
    """Reduced state of subsystem B: (rho_B)_{kl} = sum_n rho_{nk,nl}."""
    return np.einsum("nknl->kl", _as_bipartite(rho, dim_a, dim_b))


def _jacobi_eigenvalues_symmetric(sym: np.ndarray) -> np.ndarray:
    """Cyclic Jacobi sweeps for a real symmetric matrix; ascending eigenvalues."""
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    # Skipping pivots below this cannot keep the off-diagonal norm above the
    # convergence threshold.
    skip = JACOBI_OFF_TOL / (2 * n)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = a - np.diag(np.diag(a))
        if np.sqrt(np.sum(off * off)) < JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    return np.sort(np.diag(a))


def hermitian_eigenvalues(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Uses cyclic Jacobi rotations on the real-symmetric embedding
    [[X, -Y], [Y, X]] of H = X + iY, whose spectrum is that of H doubled.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    dev = np.max(np.abs(h - h.conj().T))
    if dev > tol:
        raise NonHermitianError(f"matrix deviates from Hermitian by {dev:.3e}")
    h = 0.5 * (h + h.conj().T)
    x, y = h.real, h.imag
    embedded = np.block([[x, -y], [y, x]])
    doubled = _jacobi_eigenvalues_symmetric(embedded)
    # Eigenvalues come in identical pairs; take one of each.
    return doubled[::2]


def hermitian_eigenvalues_3(m: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a batch (...,3,3) of Hermitian matrices.

    Trigonometric solution of the characteristic cubic; vectorized, no
    iteration. Returns (...,3) ascending. Intended for the measured
    conditional-entropy hot path; cross-checked against the Jacobi solver
    in the test suite.
    """
    m = np.asarray(m)
    a = m[..., 0, 0].real
    b = m[..., 1, 1].real
    c = m[..., 2, 2].real
    de = m[..., 0, 1]
    df = m[..., 0, 2]
    ef = m[..., 1, 2]
    q = (a + b + c) / 3.0
    p1 = np.abs(de) ** 2 + np.abs(df) ** 2 + np.abs(ef) ** 2
    p2 = (a - q) ** 2 + (b - q) ** 2 + (c - q) ** 2 + 2.0 * p1
    p = np.sqrt(np.maximum(p2, 0.0) / 6.0)
    safe = np.where(p > 0.0, p, 1.0)
    aa = (a - q) / safe
    bb = (b - q) / safe
    cc = (c - q) / safe
    sde = de / safe
    sdf = df / safe
    sef = ef / safe
    det = (
        aa * bb * cc
        + 2.0 * np.real(sde * sef * np.conj(sdf))
        - aa * np.abs(sef) ** 2
        - bb * np.abs(sdf) ** 2
        - cc * np.abs(sde) ** 2
    )
    angle = np.arccos(np.clip(det / 2.0, -1.0, 1.0)) / 3.0
    hi = q + 2.0 * p * np.cos(angle)
    lo = q + 2.0 * p * np.cos(angle + 2.0 * np.pi / 3.0)
    mid = 3.0 * q - hi - lo
    return np.stack([lo, mid, hi], axis=-1)


def shannon_entropy(probs: np.ndarray) -> float:
    """Shannon entropy in bits of a probability vector; 0*log0 = 0."""
    p = np.asarray(probs, dtype=float)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def von_neumann_entropy(rho: np.ndarray, tol: float = HERMITIAN_TOL) -> float:
    """Von Neumann entropy in bits of a unit-trace Hermitian PSD matrix.

    Eigenvalues in [-1e-9, 0) are clamped to 0; anything more negative
    signals an invalid state and raises.
    """
    ev = hermitian_eigenvalues(rho, tol=tol)
    tr = float(np.sum(ev))
    if abs(tr - 1.0) > 1e-6:
        raise InvalidStateError(f"trace {tr} is not 1")
    if ev[0] < EIGENVALUE_FLOOR:
        raise InvalidStateError(f"eigenvalue {ev[0]:.3e} below {EIGENVALUE_FLOOR}")
    # Clamped eigenvalues can leave the spectrum summing to 1 + O(floor),
    # which would show up as an entropy of about -1e-9; the true value is
    # provably nonnegative.
    return max(shannon_entropy(np.clip(ev, 0.0, None)), 0.0)


def validate_density_matrix(
    rho: np.ndarray,
    dim_a: int = 3,
    dim_b: int = 3,
    hermitian_tol: float = 1e-10,
    trace_tol: float = 1e-10,
    eigenvalue_floor: float = EIGENVALUE_FLOOR,
) -> None:
    """Raise InvalidStateError unless rho is a valid bipartite density matrix."""
    rho = np.asarray(rho)
    n = dim_a * dim_b
    if rho.shape != (n, n):
        raise InvalidStateError(f"expected shape ({n},{n}), got {rho.shape}")
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev > hermitian_tol:
        raise InvalidStateError(f"Hermiticity violated by {dev:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise InvalidStateError(f"trace {tr} differs from 1 beyond {trace_tol}")
    ev = hermitian_eigenvalues(rho, tol=max(hermitian_tol, 1e-12))
    if ev[0] < eigenvalue_floor:
        raise InvalidStateError(f"negative eigenvalue {ev[0]:.3e}")
