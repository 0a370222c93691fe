"""Independent reference computations used to freeze and cross-check expected values."""
from itertools import product

import numpy as np


def partial_trace_by_summation(amps, dims, k):
    """rho_k[a, b] = sum over all other indices of psi[.., a, ..] conj(psi[.., b, ..]) (k is 0-based)."""
    d = dims[k]
    rho = np.zeros((d, d), dtype=complex)
    others = [range(dims[j]) for j in range(len(dims)) if j != k]
    strides = [int(np.prod(dims[j + 1:])) for j in range(len(dims))]
    for rest in product(*others):
        for a in range(d):
            for b in range(d):
                ia = ib = 0
                r = iter(rest)
                for j in range(len(dims)):
                    if j == k:
                        ia += a * strides[j]
                        ib += b * strides[j]
                    else:
                        v = next(r)
                        ia += v * strides[j]
                        ib += v * strides[j]
                rho[a, b] += amps[ia] * np.conj(amps[ib])
    return rho


def zoom_grid_min(objective, inside, lo, hi, n=41, rounds=14):
    """Minimize a convex objective over {x in box : inside(x)} on repeatedly refined grids.

    ``objective`` and ``inside`` act row-wise on (M, d) arrays.
    """
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    best_x, best_v = None, np.inf
    for _ in range(rounds):
        axes = [np.linspace(l, h, n) for l, h in zip(lo, hi)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))
        ok = inside(pts)
        if ok.any():
            vals = objective(pts[ok])
            j = int(np.argmin(vals))
            if vals[j] < best_v:
                best_v, best_x = float(vals[j]), pts[ok][j]
        if best_x is None:
            raise RuntimeError("grid found no feasible point")
        width = (hi - lo) / (n - 1) * 2
        lo, hi = best_x - width, best_x + width
    return best_x, best_v


def inside_hrep(A, b, tol=1e-13):
    A, b = np.asarray(A, float), np.asarray(b, float)
    return lambda X: np.all(X @ A.T <= b + tol, axis=1)
