"""State files, machine-readable reports and catalog export.

State file (JSON, UTF-8)::

    {"dims": [2, 2, 2], "amplitudes": [[re, im], ...]}

Bosonic state file::

    {"n": 4, "dicke": [[re, im], ...]}      # k_down ascending
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bosonic import BosonicState, make_bosonic
from .catalogs import Catalog
from .errors import EntPolyError, ParseError
from .polytope import HalfspaceSystem, Polytope, max_linear_entropy
from .state import PureState, make_state
from .witness import IntervalPolytope


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} is not allowed")


def _complex_list(raw, field: str) -> list[complex]:
    if not isinstance(raw, list):
        raise ParseError(f"field {field!r}: expected a list of [re, im] pairs")
    out = []
    for i, pair in enumerate(raw):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise ParseError(f"field {field!r}, entry {i}: expected [re, im], got {pair!r}")
        if not all(math.isfinite(v) for v in pair):
            raise ParseError(f"field {field!r}, entry {i}: non-finite value")
        out.append(complex(pair[0], pair[1]))
    return out


def parse_state_text(text: str, source: str = "<string>") -> PureState | BosonicState:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    except ParseError as e:
        raise ParseError(f"{source}: {e}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be an object")
    try:
        if "dims" in obj:
            dims = obj["dims"]
            if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
                raise ParseError("field 'dims': expected a list of integers")
            return make_state(dims, _complex_list(obj.get("amplitudes"), "amplitudes"))
        if "n" in obj:
            if not isinstance(obj["n"], int):
                raise ParseError("field 'n': expected an integer")
            return make_bosonic(obj["n"], _complex_list(obj.get("dicke"), "dicke"))
    except ParseError as e:
        raise ParseError(f"{source}: {e}") from None
    except EntPolyError as e:
        raise ParseError(f"{source}: {type(e).__name__}: {e}") from None
    raise ParseError(f"{source}: expected 'dims'/'amplitudes' or 'n'/'dicke' fields")


def parse_state_file(path) -> PureState | BosonicState:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return parse_state_text(text, str(path))


def _pairs(v) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def state_to_dict(state) -> dict:
    if isinstance(state, BosonicState):
        return {"n": state.n, "dicke": _pairs(state.coefficients)}
    return {"dims": list(state.dims), "amplitudes": _pairs(state.amplitudes)}


def write_state_file(state, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state)) + "\n", encoding="utf-8")


def dumps_machine(obj) -> str:
    """Canonical machine format: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def loads_machine(text: str):
    return json.loads(text, parse_constant=_reject_constant)


def _q(x) -> str:
    return str(Fraction(x))


def polytope_to_dict(poly) -> dict:
    if isinstance(poly, IntervalPolytope):
        g = float(poly.gamma)
        return {"label": poly.label, "gamma": _q(poly.gamma),
                "max_linear_entropy": 1.0 - (g * g + (1 - g) ** 2)}
    if isinstance(poly, HalfspaceSystem):
        return {"label": poly.label, "coords": poly.coords,
                "inequalities": [{"a": [_q(x) for x in a], "b": _q(b)} for a, b in zip(poly.A, poly.b)]}
    return {
        "label": poly.label,
        "dim": poly.dim,
        "vertices": [[_q(x) for x in v] for v in poly.vertices],
        "facets": [{"a": list(a), "b": b} for a, b in poly.facets],
        "equalities": [{"a": list(a), "b": b} for a, b in poly.equalities],
        "max_linear_entropy": round(max_linear_entropy(poly), 12),
    }


def catalog_to_dict(catalog: Catalog) -> dict:
    return {"system": catalog.system, "polytopes": [polytope_to_dict(p) for p in catalog]}
