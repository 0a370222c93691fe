"""Gradient-flow distillation of the linear entropy of entanglement.

Each step filters site ``k`` with ``A_k = exp(-t rho_k)``.  The sign matters:
``exp(-t rho_k)`` damps the dominant local eigenvector and increases the
entropy, whereas ``exp(+t rho_k)`` decreases it.  A backtracking line search
rejects any step that would lower the entropy.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import StepUnderflow
from .linalg import hermitian_expm, jacobi_eigh
from .state import (PureState, SpectrumPoint, apply_local_ops, local_spectra,
                    reduced_density_matrices)

MIN_STEP = 1e-12
ACCEPT_SLACK = 1e-14
# below this direction norm, entropy gains drop under float resolution
CRITICAL_NORM = 1e-5
REBASE_GAIN = 1e6


def linear_entropy(spectra: SpectrumPoint):
    """E = 1 - (1/N) sum_k ||lambda_k||^2; exact for rational spectra."""
    n = spectra.n_sites
    total = sum(sum(x * x for x in s) for s in spectra.spectra)
    return 1 - total / n


def state_entropy(state: PureState, rdms=None) -> float:
    rdms = reduced_density_matrices(state) if rdms is None else rdms
    return 1.0 - sum(float(np.sum(np.abs(r) ** 2)) for r in rdms) / len(rdms)


def distance_to_origin_sq(spectra: SpectrumPoint) -> float:
    """Squared Euclidean distance of the full eigenvalue vectors from the maximally mixed point."""
    return sum(sum((x - 1 / len(s)) ** 2 for x in s) for s in spectra.spectra)


@dataclass(frozen=True)
class FlowSettings:
    step: float = 0.1
    backtrack: float = 0.5
    max_iter: int = 1000
    tol: float = 1e-8
    snapshot_every: int = 0

    def __post_init__(self):
        if self.step <= 0 or self.max_iter <= 0 or self.tol <= 0 or self.snapshot_every < 0:
            raise ValueError("flow settings must be positive")
        if not 0 < self.backtrack < 1:
            raise ValueError("backtracking factor must lie in (0, 1)")


@dataclass(frozen=True, eq=False)
class FlowDirection:
    """Traceless Hermitian generators -rho_k + tr(rho_k)/d_k and the tangent-vector norm."""
    generators: tuple[np.ndarray, ...]
    norm: float


def _collective_action(state: PureState, ops) -> np.ndarray:
    """(sum_k O_k acting on site k) |psi>."""
    t = state.tensor
    out = np.zeros_like(t)
    for k, o in enumerate(ops):
        out += np.moveaxis(np.tensordot(o, t, axes=([1], [k])), 0, k)
    return out.reshape(-1)


def _tangent_norm(state: PureState, rdms) -> float:
    xpsi = _collective_action(state, rdms)
    mean = np.vdot(state.amplitudes, xpsi)
    return float(np.linalg.norm(xpsi - mean * state.amplitudes))


def flow_direction(state: PureState) -> FlowDirection:
    rdms = reduced_density_matrices(state)
    gens = tuple(-r + np.trace(r) / r.shape[0] * np.eye(r.shape[0]) for r in rdms)
    return FlowDirection(gens, _tangent_norm(state, rdms))


def entropy_derivative(state: PureState) -> float:
    """d/dt E along the flow at t = 0, which equals (4/N) * ||X psi - <X> psi||^2."""
    fd = flow_direction(state)
    return 4.0 / state.n_sites * fd.norm ** 2


def flow_operators(state: PureState, t: float, rdms=None) -> list[np.ndarray]:
    rdms = reduced_density_matrices(state) if rdms is None else rdms
    return [hermitian_expm(r, -t) for r in rdms]


def kraus_pair(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Success/failure Kraus operators for filter ``a``.

    ``p = 1 / lambda_max(a^dag a)`` so ``S = sqrt(p) a`` and
    ``F = sqrt(1 - p a^dag a)`` form a valid two-outcome measurement.
    """
    aa = a.conj().T @ a
    w, _ = jacobi_eigh(aa)
    p = 1.0 / w[0]
    s = np.sqrt(p) * a
    rest = np.eye(a.shape[0]) - p * aa
    wr, vr = jacobi_eigh(rest)
    f = (vr * np.sqrt(np.clip(wr, 0.0, None))) @ vr.conj().T
    return s, f, p


@dataclass(frozen=True, eq=False)
class StepResult:
    state: PureState
    accepted: bool
    success_prob: float
    step: float
    entropy: float


def distill_step(state: PureState, t: float, rdms=None, entropy: float | None = None) -> StepResult:
    """One filtering step with time ``t``; accepted iff the entropy does not drop by more than 1e-14."""
    if t <= 0:
        raise ValueError("step must be positive")
    rdms = reduced_density_matrices(state) if rdms is None else rdms
    e0 = state_entropy(state, rdms) if entropy is None else entropy
    ops = flow_operators(state, t, rdms)
    new, norm2 = apply_local_ops(state, ops)
    # p_k = 1 / lambda_max(A_k^dag A_k) = exp(2 t lambda_min(rho_k))
    p = 1.0
    for a in ops:
        p /= float(np.max(np.linalg.eigvalsh(a.conj().T @ a)))
    e1 = state_entropy(new)
    accepted = e1 > e0 - ACCEPT_SLACK
    return StepResult(new if accepted else state, accepted, p * norm2 if accepted else 1.0, t,
                      e1 if accepted else e0)


def line_search_step(state: PureState, settings: FlowSettings, rdms=None, entropy=None) -> StepResult:
    t = settings.step
    while True:
        res = distill_step(state, t, rdms, entropy)
        if res.accepted:
            return res
        t *= settings.backtrack
        if t < MIN_STEP:
            raise StepUnderflow(f"backtracking reduced the step below {MIN_STEP}")


def _tracked_step(psi0: PureState, acc, state: PureState, rdms, entropy: float,
                  settings: FlowSettings):
    """Backtracking step on the accumulated filters ``acc``.

    The candidate is always ``acc`` applied to the input ``psi0``, so rounding
    cannot push the iterate out of the input's class.
    Returns ``(state, acc, step, success_prob, entropy)``.
    """
    t = settings.step
    while t >= MIN_STEP:
        ops = flow_operators(state, t, rdms)
        new_acc = [a @ g for a, g in zip(ops, acc)]
        cand, n2 = apply_local_ops(psi0, new_acc)
        e1 = state_entropy(cand)
        if e1 > entropy - ACCEPT_SLACK:
            scale = n2 ** (0.5 / len(new_acc))
            p = 1.0
            for a in ops:
                p /= float(np.max(np.linalg.eigvalsh(a.conj().T @ a)))
            _, step_norm2 = apply_local_ops(state, ops)
            return cand, [g / scale for g in new_acc], t, p * step_norm2, e1
        t *= settings.backtrack
    raise StepUnderflow(f"backtracking reduced the step below {MIN_STEP}")


@dataclass(frozen=True, eq=False)
class TrajectoryStep:
    iteration: int
    spectra: SpectrumPoint
    entropy: float
    step: float
    success_prob: float
    state: PureState | None = None


@dataclass
class Trajectory:
    steps: list[TrajectoryStep] = field(default_factory=list)
    status: str = "MaxIterations"
    final_state: PureState | None = None
    final_direction_norm: float = float("nan")

    @property
    def entropies(self) -> list[float]:
        return [s.entropy for s in self.steps]

    @property
    def final_spectra(self) -> SpectrumPoint:
        return self.steps[-1].spectra

    @property
    def accepted_steps(self) -> int:
        return len(self.steps) - 1

    def to_csv(self) -> str:
        """Header ``step,E,succ_prob,lmax_1..lmax_N``; row 0 is the input state."""
        n = self.steps[0].spectra.n_sites
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "E", "succ_prob"] + [f"lmax_{k + 1}" for k in range(n)])
        for s in self.steps:
            w.writerow([s.iteration, repr(float(s.entropy)), repr(float(s.success_prob))]
                       + [repr(float(x)) for x in s.spectra.lmax])
        return buf.getvalue()


def run_flow(state: PureState, settings: FlowSettings | None = None, on_step=None) -> Trajectory:
    """Follow the entropy gradient flow until the tangent norm drops below ``settings.tol``.

    ``status`` is ``Converged`` (critical point reached, including step underflow
    at negligible direction), ``Stalled`` (underflow away from a critical point)
    or ``MaxIterations``.
    """
    settings = settings or FlowSettings()
    psi0 = state
    acc = [np.eye(d, dtype=complex) for d in state.dims]
    rdms = reduced_density_matrices(state)
    e = state_entropy(state, rdms)
    succ = 1.0
    traj = Trajectory()
    traj.steps.append(TrajectoryStep(0, local_spectra(state), e, 0.0, succ, state))
    for it in range(1, settings.max_iter + 1):
        norm = _tangent_norm(state, rdms)
        traj.final_direction_norm = norm
        if norm < settings.tol:
            traj.status = "Converged"
            break
        try:
            new, new_acc, t, p, e1 = _tracked_step(psi0, acc, state, rdms, e, settings)
        except StepUnderflow:
            traj.status = "Converged" if norm < CRITICAL_NORM else "Stalled"
            break
        if e1 < e:
            # accepted only within the slack: numerically at a critical point
            traj.status = "Converged" if norm < CRITICAL_NORM else "Stalled"
            break
        state, acc, e = new, new_acc, e1
        # acc maps psi0 to a unit vector, so rounding is amplified by prod ||g_k||
        if float(np.prod([np.linalg.norm(g, 2) for g in acc])) > REBASE_GAIN:
            # filters diverge (limit outside the orbit): restart tracking here
            psi0, acc = state, [np.eye(d, dtype=complex) for d in state.dims]
        succ *= p
        rdms = reduced_density_matrices(state)
        snap = state if settings.snapshot_every and it % settings.snapshot_every == 0 else None
        step = TrajectoryStep(it, local_spectra(state), e, t, succ, snap)
        traj.steps.append(step)
        if on_step is not None:
            on_step(step)
    else:
        traj.final_direction_norm = _tangent_norm(state, rdms)
        traj.status = "Converged" if traj.final_direction_norm < settings.tol else "MaxIterations"
    traj.final_state = state
    return traj
