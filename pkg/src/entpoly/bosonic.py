"""N bosonic qubits in the Dicke basis.

``|D_k>`` is the normalized symmetric state with ``k`` spins down.  All
one-body reduced density matrices coincide, so a state is described by
one 2x2 matrix and its polytopes are intervals ``[gamma, 1]`` in the
largest-eigenvalue coordinate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, sqrt

import numpy as np

from .errors import DimensionMismatch, ZeroVector
from .linalg import hermitian_expm, jacobi_eigh
from .state import PureState, make_state
from .witness import IntervalPolytope

MIN_STEP = 1e-12
ACCEPT_SLACK = 1e-14
# below this direction norm, entropy gains drop under float resolution
CRITICAL_NORM = 1e-5


@dataclass(frozen=True, eq=False)
class BosonicState:
    n: int
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)


def make_bosonic(n: int, coefficients) -> BosonicState:
    c = np.asarray(coefficients, dtype=complex).reshape(-1)
    if n < 1 or c.size != n + 1:
        raise DimensionMismatch(f"{c.size} Dicke coefficients for N = {n}")
    if not np.all(np.isfinite(c)):
        raise DimensionMismatch("coefficients must be finite")
    norm = np.linalg.norm(c)
    if norm < 1e-14:
        raise ZeroVector("coefficient vector has zero norm")
    return BosonicState(n, c / norm)


def dicke(n: int, k_down: int) -> BosonicState:
    c = np.zeros(n + 1)
    c[k_down] = 1.0
    return make_bosonic(n, c)


def generalized_ghz(n: int) -> BosonicState:
    c = np.zeros(n + 1)
    c[0] = c[n] = 1.0
    return make_bosonic(n, c)


def random_bosonic(n: int, rng: np.random.Generator) -> BosonicState:
    return make_bosonic(n, rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1))


def expand(state: BosonicState) -> PureState:
    """The same state as a vector in (C^2)^(x N), site 1 most significant."""
    n = state.n
    amps = np.zeros(2 ** n, dtype=complex)
    for k, ck in enumerate(state.coefficients):
        if ck == 0:
            continue
        w = ck / sqrt(comb(n, k))
        for downs in combinations(range(n), k):
            amps[sum(1 << (n - 1 - s) for s in downs)] += w
    return make_state([2] * n, amps)


def _ladder(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.sqrt((k + 1) * (n - k))


def bosonic_rdm(state: BosonicState) -> np.ndarray:
    n, c = state.n, state.coefficients
    p = np.abs(c) ** 2
    k = np.arange(n + 1)
    up = float(np.sum(p * (n - k))) / n
    off = complex(np.sum(c[:-1] * np.conj(c[1:]) * _ladder(n))) / n
    return np.array([[up, off], [np.conj(off), 1.0 - up]])


def bosonic_lmax(state: BosonicState) -> float:
    w, _ = jacobi_eigh(bosonic_rdm(state))
    return float(w[0])


def bosonic_entropy(state: BosonicState) -> float:
    r = bosonic_rdm(state)
    return 1.0 - float(np.sum(np.abs(r) ** 2))


def bosonic_catalog(n: int) -> list[IntervalPolytope]:
    """Intervals [gamma, 1] with gamma in {1/2} u {(N - k)/N : k = 0..floor(N/2)}, sorted."""
    if n < 2:
        raise ValueError("need N >= 2")
    gammas = {Fraction(1, 2)} | {Fraction(n - k, n) for k in range(n // 2 + 1)}
    return [IntervalPolytope(g, label=f"gamma={g}") for g in sorted(gammas)]


def collective_matrix(n: int, op: np.ndarray) -> np.ndarray:
    """Matrix of sum_sites op_site on the Dicke basis (tridiagonal)."""
    k = np.arange(n + 1)
    m = np.diag(op[0, 0] * (n - k) + op[1, 1] * k).astype(complex)
    lad = _ladder(n)
    # op[0, 1] = <up|op|down> turns one down spin into an up spin: D_{k+1} -> D_k
    m[k[:-1], k[:-1] + 1] = op[0, 1] * lad
    m[k[:-1] + 1, k[:-1]] = op[1, 0] * lad
    return m


def symmetric_power(g: np.ndarray, n: int) -> np.ndarray:
    """Matrix of g applied to every particle, on the Dicke basis.

    Uses the binary-form picture: D_k carries x^(N-k) y^k with weight sqrt(C(N, k)),
    and g substitutes x -> g00 x + g10 y, y -> g01 x + g11 y.
    """
    w = np.sqrt([comb(n, k) for k in range(n + 1)])
    up, down = np.array([g[0, 0], g[1, 0]]), np.array([g[0, 1], g[1, 1]])
    m = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        poly = np.ones(1, dtype=complex)
        for _ in range(n - k):
            poly = np.convolve(poly, up)
        for _ in range(k):
            poly = np.convolve(poly, down)
        m[:, k] = poly * w[k] / w
    return m


def direction_norm(state: BosonicState) -> float:
    g = collective_matrix(state.n, bosonic_rdm(state))
    c = state.coefficients
    gc = g @ c
    return float(np.linalg.norm(gc - np.vdot(c, gc) * c))


def bosonic_flow_step(state: BosonicState, t: float) -> tuple[BosonicState, bool]:
    """Apply exp(-t rho) to every particle; accepted iff the entropy does not drop by more than 1e-14."""
    g = collective_matrix(state.n, bosonic_rdm(state))
    w, v = jacobi_eigh(g)
    new = (v * np.exp(-t * w)) @ (v.conj().T @ state.coefficients)
    cand = make_bosonic(state.n, new)
    if bosonic_entropy(cand) > bosonic_entropy(state) - ACCEPT_SLACK:
        return cand, True
    return state, False


def run_bosonic_flow(state: BosonicState, step: float = 0.1, backtrack: float = 0.5,
                     max_iter: int = 1000, tol: float = 1e-8):
    """Returns (final state, list of lmax values per accepted step, status).

    The accumulated 2x2 filter is tracked and re-applied to the input at every
    step, so the iterate never leaves the input's class through rounding.
    """
    n, c0 = state.n, state.coefficients
    g = np.eye(2, dtype=complex)
    history = [bosonic_lmax(state)]
    status = "MaxIterations"
    for _ in range(max_iter):
        if direction_norm(state) < tol:
            status = "Converged"
            break
        e0 = bosonic_entropy(state)
        t = step
        while t >= MIN_STEP:
            g_new = hermitian_expm(bosonic_rdm(state), -t) @ g
            v = symmetric_power(g_new, n) @ c0
            scale = float(np.linalg.norm(v))
            # keep g_new on the scale where it maps c0 to a unit vector
            g_new = g_new / scale ** (1.0 / n)
            cand = BosonicState(n, v / scale)
            if bosonic_entropy(cand) > e0 - ACCEPT_SLACK:
                break
            t *= backtrack
        else:
            status = "Converged" if direction_norm(state) < CRITICAL_NORM else "Stalled"
            break
        if bosonic_entropy(cand) < e0:
            status = "Converged" if direction_norm(state) < CRITICAL_NORM else "Stalled"
            break
        state, g = cand, g_new
        history.append(bosonic_lmax(state))
    return state, history, status
