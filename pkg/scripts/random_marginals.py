"""Sample random pure qubit states and tabulate where their local spectra land.

For three qubits the spectra are binned by covariant class and by which
catalog polytopes contain them; for N qubits the marginal inequalities and
the genuine N-partite verdict are tallied.
"""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass, fields

import numpy as np

from entpoly.catalogs import catalog_3q, marginal_polytope_nqubits
from entpoly.covariants3 import classify3
from entpoly.state import local_spectra, random_state
from entpoly.witness import exclusion_report, genuine_multipartite_check, ghz_witness_3q


@dataclass(frozen=True)
class Config:
    n: int = 3
    samples: int = 2000
    seed: int = 0


def run(cfg: Config) -> dict:
    rng = np.random.default_rng(cfg.seed)
    system = marginal_polytope_nqubits(cfg.n)
    tally: Counter = Counter()
    worst = -np.inf
    for _ in range(cfg.samples):
        st = random_state([2] * cfg.n, rng)
        sp = local_spectra(st)
        lmin = np.asarray(sp.lmin)
        worst = max(worst, float(np.max(lmin - (lmin.sum() - lmin))))
        tally["in marginal polytope"] += system.contains(sp.lmin)
        tally[genuine_multipartite_check(sp, cfg.n).label] += 1
        if cfg.n == 3:
            tally[f"class {classify3(st)}"] += 1
            tally["GHZ witness fires"] += ghz_witness_3q(sp)
            tally[f"conclusion: {exclusion_report(sp, catalog_3q()).conclusion}"] += 1
    return {"tally": dict(sorted(tally.items())), "max violation": worst}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(Config):
        ap.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    cfg = Config(**vars(ap.parse_args()))
    res = run(cfg)
    print(f"{cfg.samples} random {cfg.n}-qubit states (seed {cfg.seed})")
    for k, v in res["tally"].items():
        print(f"  {k}: {v}")
    print(f"  largest lmin_i - sum_(j != i) lmin_j (<= 0 means satisfied): {res['max violation']:.3e}")


if __name__ == "__main__":
    main()
