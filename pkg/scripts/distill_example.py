"""Run the entropy gradient flow on a state and write the trajectory as CSV."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, fields
from pathlib import Path

from entpoly.covariants3 import classify3
from entpoly.distill import FlowSettings, run_flow
from entpoly.io import parse_state_file
from entpoly.state import named_state


@dataclass(frozen=True)
class Config:
    state: str = "Example3Q"  # named state or path to a state file
    step: float = 0.1
    backtrack: float = 0.5
    max_iter: int = 1000
    tol: float = 1e-8
    out: str = "trajectory.csv"


def run(cfg: Config):
    path = Path(cfg.state)
    st = parse_state_file(path) if path.suffix == ".json" else named_state(cfg.state)
    traj = run_flow(st, FlowSettings(cfg.step, cfg.backtrack, cfg.max_iter, cfg.tol))
    Path(cfg.out).write_text(traj.to_csv(), encoding="utf-8")
    return st, traj


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    cfg = Config(**vars(ap.parse_args()))
    st, traj = run(cfg)
    if st.dims == (2, 2, 2):
        print(f"class: {classify3(st)}")
    first, last = traj.steps[0], traj.steps[-1]
    print(f"{traj.status} after {traj.accepted_steps} steps; E {first.entropy:.6f} -> {last.entropy:.6f}")
    print("lmax", tuple(round(float(x), 6) for x in last.spectra.lmax))
    print(f"trajectory written to {cfg.out}")


if __name__ == "__main__":
    main()
