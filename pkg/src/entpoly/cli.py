"""Command-line front end.

    entpoly analyze STATE.json
    entpoly classify3 STATE.json
    entpoly witness --system 3q --spectra 0.6 0.6 0.6 [--purity 0.99]
    entpoly distill STATE.json --traj out.csv
    entpoly catalog --system 4q
    entpoly bosonic BOSONS.json

Exit status 0 on success, 2 on input errors (diagnostic on stderr).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bosonic import (BosonicState, bosonic_catalog, bosonic_entropy, bosonic_lmax,
                      bosonic_rdm, direction_norm, run_bosonic_flow)
from .catalogs import catalog_for_system
from .covariants3 import classify3, vanishing_pattern
from .distill import FlowSettings, distance_to_origin_sq, linear_entropy, run_flow
from .errors import EntPolyError
from .io import catalog_to_dict, dumps_machine, parse_state_file
from .state import MAX_QUBITS, PureState, local_spectra, purity_bound_from_spectra, random_state
from .witness import (exclusion_report, genuine_multipartite_check, ghz_witness_3q,
                      w4_facet_check)


class InputError(Exception):
    pass


def _system_tag(value: str) -> str:
    ok = value in ("3q", "4q") or (value.partition(":")[0] in ("nq", "boson")
                                    and value.partition(":")[2].isdigit()
                                    and int(value.partition(":")[2]) >= 2)
    if not ok:
        raise argparse.ArgumentTypeError(f"invalid system {value!r}; use 3q, 4q, nq:<N> or boson:<N>")
    return value


def _positive(kind):
    def conv(v):
        x = kind(v)
        if x <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {v}")
        return x
    return conv


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entpoly", description="Entanglement polytopes from local spectra.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for --random states")
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")

    state_in = argparse.ArgumentParser(add_help=False)
    state_in.add_argument("state", nargs="?", type=Path, help="state file (JSON)")
    state_in.add_argument("--random", metavar="DIMS", help="random state with comma-separated dims")

    sub = p.add_subparsers(dest="verb", required=True)

    a = sub.add_parser("analyze", parents=[common, state_in], help="spectra, entropy, purity bound, witnesses")
    a.add_argument("--tol", type=_positive(float), default=1e-9, help="membership tolerance")
    a.add_argument("--cov-tol", type=_positive(float), default=1e-10, help="covariant vanishing tolerance")

    c = sub.add_parser("classify3", parents=[common, state_in], help="three-qubit class from covariants")
    c.add_argument("--tol", type=_positive(float), default=1e-10)

    w = sub.add_parser("witness", parents=[common, state_in], help="class exclusion report")
    w.add_argument("--system", type=_system_tag, required=True)
    w.add_argument("--spectra", type=float, nargs="+", metavar="LMAX",
                   help="largest local eigenvalues instead of a state file")
    w.add_argument("--purity", type=float, help="lower bound on the global purity")
    w.add_argument("--tol", type=_positive(float), default=1e-9)

    d = sub.add_parser("distill", parents=[common, state_in], help="entropy gradient flow")
    d.add_argument("--step", type=_positive(float), default=0.1)
    d.add_argument("--max-iter", type=_positive(int), default=1000)
    d.add_argument("--tol", type=_positive(float), default=1e-8)
    d.add_argument("--traj", type=Path, help="trajectory CSV output")

    k = sub.add_parser("catalog", parents=[common], help="export a polytope catalog")
    k.add_argument("--system", type=_system_tag, required=True)

    b = sub.add_parser("bosonic", parents=[common, state_in], help="bosonic qubits in the Dicke basis")
    b.add_argument("--step", type=_positive(float), default=0.1)
    b.add_argument("--max-iter", type=_positive(int), default=1000)
    b.add_argument("--tol", type=_positive(float), default=1e-8)
    return p


def _load_state(args):
    if args.random:
        try:
            dims = [int(x) for x in args.random.split(",")]
        except ValueError:
            raise InputError(f"--random expects comma-separated integers, got {args.random!r}") from None
        return random_state(dims, np.random.default_rng(args.seed))
    if args.state is None:
        raise InputError("a state file or --random is required")
    st = parse_state_file(args.state)
    if isinstance(st, PureState) and st.n_sites > MAX_QUBITS:
        raise InputError(f"at most {MAX_QUBITS} sites supported")
    return st


def _require_pure(st):
    if not isinstance(st, PureState):
        raise InputError("this command needs a distinguishable-particle state file ('dims'/'amplitudes')")
    return st


def _fmt(xs) -> str:
    return "(" + ", ".join(f"{float(x):.6f}" for x in xs) + ")"


def _system_of(st: PureState) -> str | None:
    if set(st.dims) != {2}:
        return None
    return {3: "3q", 4: "4q"}.get(st.n_sites, f"nq:{st.n_sites}")


def cmd_analyze(args):
    st = _require_pure(_load_state(args))
    sp = local_spectra(st)
    e = float(linear_entropy(sp))
    out = {
        "dims": list(st.dims),
        "spectra": [list(s) for s in sp.spectra],
        "lmax": list(sp.lmax),
        "linear_entropy": e,
        "distance_to_origin": float(np.sqrt(distance_to_origin_sq(sp))),
        "purity_bound": float(purity_bound_from_spectra(sp)),
    }
    text = [f"dims: {list(st.dims)}", f"lmax: {_fmt(sp.lmax)}", f"linear entropy: {e:.6f}",
            f"purity bound from spectra: {out['purity_bound']:.6f}"]
    system = _system_of(st)
    if st.dims == (2, 2, 2):
        out["class3"] = classify3(st, args.cov_tol)
        out["covariants_nonzero"] = vanishing_pattern(st, args.cov_tol).as_dict()
        out["ghz_witness"] = ghz_witness_3q(sp, args.tol)
        text.append(f"three-qubit class (covariants): {out['class3']}")
        text.append(f"GHZ witness (sum lmax < 2): {out['ghz_witness']}")
    if st.dims == (2, 2, 2, 2):
        out["w4_facet"] = w4_facet_check(sp, args.tol)
        text.append(f"inside four-qubit W half-space (sum lmax >= 3): {out['w4_facet']}")
    if system in ("3q", "4q"):
        rep = exclusion_report(sp, catalog_for_system(system), tol=args.tol)
        out["excluded"] = rep.excluded
        out["conclusion"] = rep.conclusion
        text.append(f"excluded classes: {', '.join(rep.excluded) or 'none'}")
        text.append(f"conclusion: {rep.conclusion}")
    if system is not None and st.n_sites <= 16:
        v = genuine_multipartite_check(sp, st.n_sites, args.tol)
        out["genuine"] = v.label
        text.append(f"genuine {st.n_sites}-partite from spectra: {v.label}"
                    + (f" (e.g. {v.witness_partition})" if v.witness_partition else ""))
    return out, "\n".join(text)


def cmd_classify3(args):
    st = _require_pure(_load_state(args))
    label = classify3(st, args.tol)
    pat = vanishing_pattern(st, args.tol).as_dict()
    text = f"class: {label}\nnon-vanishing covariants: {', '.join(n for n, v in pat.items() if v)}"
    return {"class": label, "covariants_nonzero": pat, "tol": args.tol}, text


def cmd_witness(args):
    if args.spectra is not None:
        lmax = tuple(args.spectra)
    else:
        st = _load_state(args)
        lmax = (bosonic_lmax(st),) if isinstance(st, BosonicState) else local_spectra(st).lmax
    if any(not 0 <= x <= 1 for x in lmax):
        raise InputError("largest eigenvalues must lie in [0, 1]")
    rep = exclusion_report(lmax, catalog_for_system(args.system), purity=args.purity, tol=args.tol)
    text = [f"system: {rep.system}", f"point (lmax): {_fmt(rep.point)}",
            f"excluded: {', '.join(rep.excluded) or 'none'}", f"conclusion: {rep.conclusion}"]
    if rep.noise:
        nz = rep.noise
        text += [f"purity >= {nz['purity']}: delta = {nz['delta']:.6g}, fidelity radius = {nz['fidelity_radius']:.6g}",
                 f"robustly excluded: {', '.join(nz['robust_excluded']) or 'none'}",
                 f"robust conclusion: {nz['conclusion']}"]
    return rep.to_dict(), "\n".join(text)


def cmd_distill(args):
    st = _require_pure(_load_state(args))
    traj = run_flow(st, FlowSettings(step=args.step, max_iter=args.max_iter, tol=args.tol))
    if args.traj:
        args.traj.write_text(traj.to_csv(), encoding="utf-8")
    last = traj.steps[-1]
    out = {"status": traj.status, "accepted_steps": traj.accepted_steps,
           "initial_entropy": traj.steps[0].entropy, "final_entropy": last.entropy,
           "final_lmax": list(last.spectra.lmax), "success_probability": last.success_prob,
           "direction_norm": traj.final_direction_norm}
    text = (f"status: {traj.status} after {traj.accepted_steps} steps\n"
            f"E: {traj.steps[0].entropy:.6f} -> {last.entropy:.6f}\n"
            f"final lmax: {_fmt(last.spectra.lmax)}\n"
            f"success probability: {last.success_prob:.3e}")
    return out, text


def cmd_catalog(args):
    cat = catalog_for_system(args.system)
    data = catalog_to_dict(cat)
    lines = [f"system {cat.system}: {len(cat)} polytopes"]
    for p in data["polytopes"]:
        if "vertices" in p:
            lines.append(f"  {p['label']}: {len(p['vertices'])} vertices, {len(p['facets'])} facets, "
                         f"dim {p['dim']}, E_max = {p['max_linear_entropy']:.6f}")
        elif "gamma" in p:
            lines.append(f"  {p['label']}: [{p['gamma']}, 1], E_max = {p['max_linear_entropy']:.6f}")
        else:
            lines.append(f"  {p['label']}: {len(p['inequalities'])} inequalities ({p['coords']})")
    return data, "\n".join(lines)


def cmd_bosonic(args):
    st = _load_state(args)
    if not isinstance(st, BosonicState):
        raise InputError("bosonic needs a Dicke-basis state file ('n'/'dicke')")
    lm = bosonic_lmax(st)
    final, hist, status = run_bosonic_flow(st, args.step, max_iter=args.max_iter, tol=args.tol)
    cat = bosonic_catalog(st.n)
    compatible = [str(p.gamma) for p in cat if p.contains(lm)]
    rdm = bosonic_rdm(st)
    out = {"n": st.n, "rdm": [[[float(z.real), float(z.imag)] for z in row] for row in rdm],
           "lmax": lm, "linear_entropy": bosonic_entropy(st),
           "direction_norm": direction_norm(st), "compatible_gammas": compatible,
           "flow": {"status": status, "steps": len(hist) - 1, "final_lmax": hist[-1]}}
    text = (f"N = {st.n}, lmax = {lm:.6f}, E = {out['linear_entropy']:.6f}\n"
            f"compatible intervals [gamma, 1]: gamma in {{{', '.join(compatible)}}}\n"
            f"flow: {status} after {len(hist) - 1} steps, final lmax = {hist[-1]:.6f}")
    return out, text


COMMANDS = {"analyze": cmd_analyze, "classify3": cmd_classify3, "witness": cmd_witness,
            "distill": cmd_distill, "catalog": cmd_catalog, "bosonic": cmd_bosonic}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, text = COMMANDS[args.verb](args)
    except (InputError, EntPolyError, OSError) as e:
        print(f"entpoly {args.verb}: error: {e}", file=sys.stderr)
        return 2
    report = dumps_machine(out) if args.format == "machine" else text + "\n"
    if args.output:
        args.output.write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
