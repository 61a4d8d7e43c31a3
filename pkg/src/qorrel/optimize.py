"""Minimal deterministic Nelder-Mead for the measurement-angle search.

Hand-rolled rather than pulled in from a larger library because the search
contract here is unusual: a strict function-evaluation budget shared across
restarts, convergence on simplex *value* spread alone (the angle surface has
flat ridges where vertex coordinates never collapse), and no randomness so
CLI output is byte-reproducible. Standard simplex coefficients
(reflection 1, expansion 2, contraction 1/2, shrink 1/2).
"""

from __future__ import annotations

import numpy as np

__all__ = ["nelder_mead"]


def nelder_mead(
    fun,
    x0: np.ndarray,
    step: float,
    max_evals: int = 2000,
    spread_tol: float = 1e-9,
):
    """Minimize fun from x0. Returns (x_best, f_best, n_evals, converged).

    The initial simplex is x0 plus `step` along each coordinate. Stops when
    max(f) - min(f) over the simplex drops below spread_tol (converged=True)
    or when the evaluation budget is exhausted (converged=False). The best
    point ever evaluated is returned, not merely the best simplex vertex.
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    evals = 0

    best_x = x0.copy()
    best_f = np.inf

    def call(x):
        nonlocal evals, best_x, best_f
        evals += 1
        f = fun(x)
        if f < best_f:
            best_f = f
            best_x = x.copy()
        return f

    simplex = np.empty((n + 1, n))
    simplex[0] = x0
    for i in range(n):
        simplex[i + 1] = x0
        simplex[i + 1, i] += step
    values = np.array([call(simplex[i]) for i in range(n + 1)])

    while evals < max_evals:
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]
        if values[-1] - values[0] < spread_tol:
            return best_x, best_f, evals, True

        centroid = simplex[:-1].mean(axis=0)
        xr = centroid + (centroid - simplex[-1])
        fr = call(xr)
        if fr < values[0]:
            if evals >= max_evals:
                break
            xe = centroid + 2.0 * (centroid - simplex[-1])
            fe = call(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
        elif fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        else:
            if evals >= max_evals:
                break
            if fr < values[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (simplex[-1] - centroid)
            fc = call(xc)
            if fc < min(fr, values[-1]):
                simplex[-1], values[-1] = xc, fc
            else:
                for i in range(1, n + 1):
                    if evals >= max_evals:
                        break
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = call(simplex[i])

    return best_x, best_f, evals, False
