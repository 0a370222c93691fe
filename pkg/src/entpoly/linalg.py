"""Hermitian eigensolver (cyclic Jacobi) and helpers built on it."""
from __future__ import annotations

import numpy as np


def jacobi_eigh(h: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues sorted weakly decreasing and the
    corresponding eigenvectors in the columns of ``v``.
    """
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag phase fix followed by a real rotation in the (p, q) plane
                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[q, q] = c * phase.conjugate()
                j[p, q] = s
                j[q, p] = -s * phase.conjugate()
                a = j.conj().T @ a @ j
                a[p, q] = a[q, p] = 0.0
                v = v @ j
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.real(np.diag(a))
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eig2_closed_form(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 2x2 Hermitian matrix, decreasing."""
    a, d = h[0, 0].real, h[1, 1].real
    b = abs(h[0, 1])
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), b)
    return np.array([mean + rad, mean - rad])


def hermitian_expm(h: np.ndarray, t: float) -> np.ndarray:
    """exp(t * h) for Hermitian h, via the Jacobi eigenbasis."""
    w, v = jacobi_eigh(h)
    return (v * np.exp(t * w)) @ v.conj().T
