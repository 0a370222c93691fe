"""Pure states, one-body reduced density matrices and local operators.

Basis convention: site 1 is the most significant digit, so the amplitude
of ``|b_1 b_2 ... b_N>`` sits at index ``sum_k b_k * prod_{l>k} d_l``.
For qubits, spin up is basis state 0 and spin down is basis state 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb, prod

import numpy as np

from .errors import (DimensionMismatch, InvalidArity, SiteOutOfRange,
                     UnknownSpec, ZeroVector)
from .linalg import jacobi_eigh

MAX_QUBITS = 20
_ZERO_NORM = 1e-14


@dataclass(frozen=True, eq=False)
class PureState:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def __repr__(self):
        return f"PureState(dims={list(self.dims)}, amplitudes={np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True)
class SpectrumPoint:
    """Local eigenvalue vectors, one per site, each sorted weakly decreasing."""
    spectra: tuple[tuple[float, ...], ...]

    @property
    def n_sites(self) -> int:
        return len(self.spectra)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.spectra)

    @property
    def lmax(self) -> tuple[float, ...]:
        return tuple(s[0] for s in self.spectra)

    @property
    def lmin(self) -> tuple[float, ...]:
        return tuple(s[-1] for s in self.spectra)

    @classmethod
    def from_lmax(cls, lmax) -> "SpectrumPoint":
        """Qubit spectra from their largest eigenvalues."""
        return cls(tuple((x, 1 - x) for x in lmax))

    @classmethod
    def from_lmin(cls, lmin) -> "SpectrumPoint":
        return cls(tuple((1 - x, x) for x in lmin))


@dataclass(frozen=True, eq=False)
class LocalOperatorTuple:
    ops: tuple[np.ndarray, ...]
    det_one: bool = False

    def __post_init__(self):
        ops = []
        for g in self.ops:
            g = np.array(g, dtype=complex)
            if g.ndim != 2 or g.shape[0] != g.shape[1]:
                raise DimensionMismatch(f"local operator must be square, got shape {g.shape}")
            if abs(np.linalg.det(g)) <= 1e-14:
                raise ZeroVector("local operator is not invertible")
            g.setflags(write=False)
            ops.append(g)
        object.__setattr__(self, "ops", tuple(ops))

    def normalized(self) -> "LocalOperatorTuple":
        """Rescale every factor to determinant one."""
        out = []
        for g in self.ops:
            d = g.shape[0]
            out.append(g / np.linalg.det(g) ** (1.0 / d))
        return LocalOperatorTuple(tuple(out), det_one=True)

    def compose(self, other: "LocalOperatorTuple") -> "LocalOperatorTuple":
        """Tuple acting as ``self`` after ``other``."""
        return LocalOperatorTuple(tuple(a @ b for a, b in zip(self.ops, other.ops)))


def make_state(dims, amplitudes) -> PureState:
    dims = tuple(int(d) for d in dims)
    if any(d < 2 for d in dims) or not dims:
        raise DimensionMismatch(f"site dimensions must be >= 2, got {list(dims)}")
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amps.size != prod(dims):
        raise DimensionMismatch(f"expected {prod(dims)} amplitudes for dims {list(dims)}, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise DimensionMismatch("amplitudes must be finite")
    norm = np.linalg.norm(amps)
    if norm < _ZERO_NORM:
        raise ZeroVector("amplitude vector has zero norm")
    return PureState(dims, amps / norm)


def random_state(dims, rng: np.random.Generator) -> PureState:
    """Haar-like random state from i.i.d. complex Gaussian amplitudes."""
    n = prod(dims)
    return make_state(dims, rng.normal(size=n) + 1j * rng.normal(size=n))


def dicke_amplitudes(n: int, k_down: int) -> np.ndarray:
    amps = np.zeros(2 ** n, dtype=complex)
    for downs in combinations(range(n), k_down):
        idx = sum(1 << (n - 1 - s) for s in downs)
        amps[idx] = 1.0
    return amps / np.sqrt(comb(n, k_down))


def _basis(bits: str) -> int:
    return int(bits.replace("u", "0").replace("d", "1"), 2)


def _from_terms(n: int, terms: dict[str, complex]) -> PureState:
    amps = np.zeros(2 ** n, dtype=complex)
    for bits, c in terms.items():
        amps[_basis(bits)] += c
    return make_state([2] * n, amps)


_NAMED_FIXED = {
    "B1": lambda: _from_terms(3, {"uud": 1, "udu": -1}),
    "B2": lambda: _from_terms(3, {"uud": 1, "duu": -1}),
    "B3": lambda: _from_terms(3, {"udu": 1, "duu": -1}),
    "EXAMPLE3Q": lambda: _from_terms(3, {"uuu": 1, "uud": 1, "duu": 1, "ddu": 2}),
    "CLUSTER4": lambda: _from_terms(4, {"uuuu": 1, "uudd": 1, "dduu": 1, "dddd": -1}),
}

_SPEC_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")


def named_state(spec: str) -> PureState:
    """Reference states: GHZ(N), W(N), Dicke(N,k_down), SEP(N), B1-B3, Example3Q, Cluster4."""
    m = _SPEC_RE.match(spec)
    if not m:
        raise UnknownSpec(f"cannot parse state spec {spec!r}")
    name = m.group(1).upper()
    args = [int(a) for a in m.group(2).split(",") if a.strip()] if m.group(2) else []
    if name in _NAMED_FIXED:
        if args:
            raise InvalidArity(f"{m.group(1)} takes no arguments")
        return _NAMED_FIXED[name]()
    if name in ("GHZ", "W", "SEP"):
        if len(args) != 1 or args[0] < 1 or (name != "SEP" and args[0] < 2):
            raise InvalidArity(f"{name} needs a single particle count")
        n = args[0]
        if n > MAX_QUBITS:
            raise InvalidArity(f"at most {MAX_QUBITS} qubits supported")
        if name == "GHZ":
            return _from_terms(n, {"u" * n: 1, "d" * n: 1})
        if name == "SEP":
            return _from_terms(n, {"u" * n: 1})
        return make_state([2] * n, dicke_amplitudes(n, 1))
    if name == "DICKE":
        if len(args) != 2 or not 0 <= args[1] <= args[0] or args[0] < 1 or args[0] > MAX_QUBITS:
            raise InvalidArity(f"Dicke needs (N, k_down) with 0 <= k_down <= N, got {args}")
        return make_state([2] * args[0], dicke_amplitudes(*args))
    raise UnknownSpec(f"unknown state {m.group(1)!r}")


def reduced_density_matrix(state: PureState, k: int) -> np.ndarray:
    """One-body reduced density matrix of site ``k`` (1-based)."""
    if not 1 <= k <= state.n_sites:
        raise SiteOutOfRange(f"site {k} out of range 1..{state.n_sites}")
    d = state.dims[k - 1]
    m = np.moveaxis(state.tensor, k - 1, 0).reshape(d, -1)
    rho = m @ m.conj().T
    return 0.5 * (rho + rho.conj().T)


def reduced_density_matrices(state: PureState) -> list[np.ndarray]:
    return [reduced_density_matrix(state, k) for k in range(1, state.n_sites + 1)]


def spectrum_of(rho: np.ndarray) -> tuple[float, ...]:
    w, _ = jacobi_eigh(rho)
    w = np.clip(w, 0.0, None)
    return tuple(float(x) for x in w)


def local_spectra(state: PureState) -> SpectrumPoint:
    return SpectrumPoint(tuple(spectrum_of(r) for r in reduced_density_matrices(state)))


def apply_local_ops(state: PureState, ops) -> tuple[PureState, float]:
    """Apply ``g_1 x ... x g_N`` and renormalize.

    Returns the new state and the squared norm of the unnormalized image.
    """
    if isinstance(ops, LocalOperatorTuple):
        ops = ops.ops
    if len(ops) != state.n_sites:
        raise DimensionMismatch(f"{len(ops)} operators for {state.n_sites} sites")
    t = state.tensor
    for k, g in enumerate(ops):
        g = np.asarray(g, dtype=complex)
        if g.shape != (state.dims[k], state.dims[k]):
            raise DimensionMismatch(f"operator {k + 1} has shape {g.shape}, site dimension {state.dims[k]}")
        t = np.moveaxis(np.tensordot(g, t, axes=([1], [k])), 0, k)
    amps = t.reshape(-1)
    norm2 = float(np.vdot(amps, amps).real)
    if norm2 < _ZERO_NORM ** 2:
        raise ZeroVector("local operators annihilate the state")
    return PureState(state.dims, amps / np.sqrt(norm2)), norm2


def purity_bound_from_spectra(spectra: SpectrumPoint):
    """Lower bound sum_k ||lambda_k||^2 - (N - 1) on the global purity.

    Exact (Fraction) if all eigenvalues are rational, float otherwise.
    Negative results are valid and mean the bound is vacuous.
    """
    total = sum(sum(x * x for x in s) for s in spectra.spectra)
    return total - (spectra.n_sites - 1)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_sl(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return g / np.linalg.det(g) ** (1.0 / d)
