"""Entanglement statements from local spectra: class exclusion, facet witnesses,
genuine k-partite entanglement and purity-robust variants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, isqrt, sqrt
from typing import Sequence

from ._rational import frac, is_exact
from .catalogs import Catalog, partition_polytope, set_partitions
from .errors import ArityRange, DimensionMismatch, InvalidPurity, TooLarge
from .polytope import HalfspaceSystem, Polytope, contains, l1_distance
from .state import SpectrumPoint

MAX_BIPARTITION_SITES = 16
MAX_PARTITION_SITES = 12


def _exact_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return sqrt(q)


def _purity(p) -> Fraction:
    # decimal literal semantics, so 0.99 means 99/100
    q = Fraction(repr(p)) if isinstance(p, float) else Fraction(p)
    if not 0 < q <= 1:
        raise InvalidPurity(f"purity must lie in (0, 1], got {p}")
    return q


def noise_radius(purity, n_sites: int):
    """delta(p) = 4 N sqrt(1 - p); exact Fraction when 1 - p is a rational square."""
    return 4 * n_sites * _exact_sqrt(1 - _purity(purity))


def fidelity_radius(purity, n_sites: int):
    """2 N sqrt(1 - p): l1 spectral distance to the nearest high-fidelity pure state."""
    return 2 * n_sites * _exact_sqrt(1 - _purity(purity))


@dataclass(frozen=True)
class IntervalPolytope:
    """[gamma, 1] in lmax coordinates (bosonic qubits)."""
    gamma: Fraction
    label: str = ""

    ambient_dim = 1

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = x[0] if isinstance(x, (tuple, list)) else x
        if isinstance(x, (int, Fraction)):
            return self.gamma <= x <= 1
        return float(self.gamma) - tol <= float(x) <= 1 + tol

    def l1_distance(self, x) -> float:
        x = float(x[0] if isinstance(x, (tuple, list)) else x)
        return max(0.0, float(self.gamma) - x) + max(0.0, x - 1.0)


def _lmax_point(spectra) -> tuple:
    if isinstance(spectra, SpectrumPoint):
        return spectra.lmax
    return tuple(spectra)


def _member_and_distance(poly, lmax: tuple, tol: float):
    """Membership and spectral l1 distance (full eigenvalue vectors) for a qubit polytope.

    For a qubit, |(x, 1-x) - (y, 1-y)|_1 = 2 |x - y|, so spectral distances are
    twice the coordinate distances.
    """
    if isinstance(poly, IntervalPolytope):
        return poly.contains(lmax, tol), 2.0 * poly.l1_distance(lmax)
    point = tuple(1 - x for x in lmax) if isinstance(poly, HalfspaceSystem) else lmax
    inside = contains(poly, point, tol)
    return inside, 0.0 if inside else 2.0 * l1_distance(poly, point)


@dataclass
class WitnessReport:
    point: tuple[float, ...]
    system: str
    membership: dict[str, bool]
    excluded: list[str]
    conclusion: str
    noise: dict | None = None

    def to_dict(self) -> dict:
        return {
            "point": [float(x) for x in self.point],
            "system": self.system,
            "membership": dict(self.membership),
            "excluded": list(self.excluded),
            "conclusion": self.conclusion,
            "noise": self.noise,
        }


def _conclude(labels: list[str], excluded: list[str], system: str) -> str:
    remaining = [lab for lab in labels if lab not in excluded]
    if not remaining:
        return "inconsistent with every class (not a pure-state spectrum)"
    if not excluded:
        return "no class excluded"
    if len(remaining) == 1:
        return f"{remaining[0]} class"
    if system.startswith("nq") and remaining == ["marginal"]:
        return "genuinely multipartite entangled"
    if len(remaining) <= 6:
        return " or ".join(remaining)
    return f"one of {len(remaining)} classes"


def exclusion_report(spectra, catalog: Catalog, purity=None, tol: float = 1e-9) -> WitnessReport:
    """Exclude every class whose polytope cannot produce the observed spectra.

    Without ``purity`` a class is excluded when its polytope does not contain the
    point.  With a purity lower bound ``p`` a class is excluded only when, in
    addition, the spectral l1 distance to its polytope exceeds 4 N sqrt(1 - p).
    """
    lmax = _lmax_point(spectra)
    dim = catalog.polytopes[0].ambient_dim
    if len(lmax) != dim:
        raise DimensionMismatch(f"{len(lmax)} sites given for a {catalog.system} catalog")
    n = len(lmax) if not catalog.system.startswith("boson") else int(catalog.system.split(":")[1])
    labels = [p.label for p in catalog]
    membership, margins = {}, {}
    for poly in catalog:
        inside, dist = _member_and_distance(poly, lmax, tol)
        membership[poly.label] = inside
        margins[poly.label] = dist
    excluded = [lab for lab in labels if not membership[lab]]
    noise = None
    if purity is not None:
        delta = noise_radius(purity, n)
        robust = [lab for lab in excluded if margins[lab] > float(delta) + tol]
        noise = {
            "purity": float(purity),
            "delta": float(delta),
            "fidelity_radius": float(fidelity_radius(purity, n)),
            "margins": {lab: margins[lab] for lab in labels},
            "robust_excluded": robust,
            "conclusion": _conclude(labels, robust, catalog.system),
        }
    return WitnessReport(tuple(lmax), catalog.system, membership, excluded,
                         _conclude(labels, excluded, catalog.system), noise)


def ghz_witness_3q(spectra, tol: float = 1e-9) -> bool:
    """Sum of the three largest local eigenvalues strictly below 2 (lower GHZ pyramid)."""
    lmax = _lmax_point(spectra)
    if len(lmax) != 3:
        raise DimensionMismatch("three-qubit spectra required")
    if is_exact(lmax):
        return sum(frac(x) for x in lmax) < 2
    return sum(float(x) for x in lmax) < 2 - tol


def w4_facet_check(spectra, tol: float = 1e-9) -> bool:
    """True iff the four largest local eigenvalues sum to at least 3.

    A violation rules out the four-qubit W polytope and certifies that the
    state can be converted into one with linear entropy at least 0.45.
    """
    lmax = _lmax_point(spectra)
    if len(lmax) != 4:
        raise DimensionMismatch("four-qubit spectra required")
    if is_exact(lmax):
        return sum(frac(x) for x in lmax) >= 3
    return sum(float(x) for x in lmax) >= 3 - tol


@dataclass(frozen=True)
class GenuineVerdict:
    k: int
    genuine: bool
    witness_partition: tuple[tuple[int, ...], ...] | None
    in_lemma_range: bool
    partitions_checked: int = field(default=0, compare=False)

    @property
    def label(self) -> str:
        return f"GENUINE_{self.k}" if self.genuine else "COMPATIBLE"


def bipartitions(n: int):
    """All 2^(n-1) - 1 bipartitions of 1..n, with site 1 in the first part."""
    rest = list(range(2, n + 1))
    for mask in range(2 ** (n - 1)):
        a = [1] + [s for j, s in enumerate(rest) if not mask >> j & 1]
        b = [s for j, s in enumerate(rest) if mask >> j & 1]
        if b:
            yield [a, b]


def genuine_multipartite_check(lmin, k: int, tol: float = 1e-9) -> GenuineVerdict:
    """Decide whether smallest local eigenvalues require a factor spanning >= k sites.

    ``lmin`` is a sequence of smallest eigenvalues (or a :class:`SpectrumPoint`).
    Every partition with all parts smaller than ``k`` is tried; the spectra are
    GENUINE_k if none of the partition polytopes contains them.
    """
    if isinstance(lmin, SpectrumPoint):
        lmin = lmin.lmin
    lmin = tuple(lmin)
    n = len(lmin)
    if not 2 <= k <= n:
        raise ArityRange(f"k must lie in 2..{n}, got {k}")
    in_range = k >= ceil(n / 2)
    if k == n:
        if n > MAX_BIPARTITION_SITES:
            raise TooLarge(f"bipartition enumeration capped at {MAX_BIPARTITION_SITES} sites")
        candidates = bipartitions(n)
    else:
        if n > MAX_PARTITION_SITES:
            raise TooLarge(f"partition enumeration capped at {MAX_PARTITION_SITES} sites")
        candidates = set_partitions(list(range(1, n + 1)), max_part=k - 1)
    checked = 0
    for parts in candidates:
        checked += 1
        if contains(partition_polytope(n, parts), lmin, tol):
            return GenuineVerdict(k, False, tuple(tuple(p) for p in parts), in_range, checked)
    return GenuineVerdict(k, True, None, in_range, checked)


def gamma_family_point(n: int, k: int, gamma) -> tuple:
    """Smallest eigenvalues (gamma (k-1)/(N-1), gamma/(N-1), ..., gamma/(N-1))."""
    g = frac(gamma) if not isinstance(gamma, float) else gamma
    return (g * (k - 1) / (n - 1),) + (g / (n - 1),) * (n - 1)


def gamma_max(n: int, k: int) -> Fraction:
    return Fraction(n - 1, 2 * k)
