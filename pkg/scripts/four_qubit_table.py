"""Rebuild the four-qubit polytope table: vertex/facet counts, permutation orbits, E_max."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from entpoly.catalogs import catalog_4q, four_qubit_base, genuine_labels, permutation_orbit
from entpoly.polytope import max_linear_entropy, min_norm_point


@dataclass(frozen=True)
class Config:
    show_min_norm_point: bool = False


def run(cfg: Config) -> list[dict]:
    rows = []
    for p in four_qubit_base():
        md = p.metadata
        row = {
            "no": md["number"],
            "family": md["family"],
            "vertices": len(p.vertices),
            "facets": len(p.facets),
            "perms": len(permutation_orbit(p)),
            "E": max_linear_entropy(p),
            "table": (md["table_vertices"], md["table_facets"], md["table_perms"], md["table_entropy"]),
        }
        if cfg.show_min_norm_point:
            row["x"] = tuple(round(float(v), 6) for v in min_norm_point(p)[0])
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show-min-norm-point", action="store_true")
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    print(f"{'no':>2} {'family':<18} {'V':>3} {'F':>3} {'perms':>5} {'E_max':>9}   table (V, F, perms, E)")
    for r in run(cfg):
        line = (f"{r['no']:>2} {r['family']:<18} {r['vertices']:>3} {r['facets']:>3} "
                f"{r['perms']:>5} {r['E']:>9.6f}   {r['table']}")
        if "x" in r:
            line += f"   x* = {r['x']}"
        print(line)
    cat = catalog_4q()
    print(f"with permutations: {len(genuine_labels(cat))} genuinely four-partite, {len(cat)} total")


if __name__ == "__main__":
    main()
