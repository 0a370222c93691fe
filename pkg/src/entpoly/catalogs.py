"""Built-in entanglement polytope catalogs and the Higuchi-type half-space systems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .errors import InvalidPartition
from .polytope import HalfspaceSystem, Polytope, contains

H = Fraction(1, 2)
Q3 = Fraction(3, 4)
ONE = Fraction(1)


@dataclass(frozen=True)
class Catalog:
    system: str
    polytopes: tuple[Polytope, ...]

    def __iter__(self):
        return iter(self.polytopes)

    def __len__(self):
        return len(self.polytopes)

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.polytopes]

    def get(self, label: str) -> Polytope:
        for p in self.polytopes:
            if p.label == label:
                return p
        raise KeyError(label)

    def containment(self) -> list[tuple[str, str]]:
        """Pairs (inner, outer) with inner a proper subset of outer, by vertex membership."""
        out = []
        for p in self.polytopes:
            for q in self.polytopes:
                if p is q or p.vertex_set() == q.vertex_set():
                    continue
                if all(contains(q, v) for v in p.vertices):
                    out.append((p.label, q.label))
        return out


# ------------------------------------------------------------------ three qubits

def _three_qubit_points():
    return {
        "f": (ONE, ONE, ONE),
        "Hx": (ONE, H, H),
        "Hy": (H, ONE, H),
        "Hz": (H, H, ONE),
        "Delta": (H, H, H),
    }


@lru_cache(maxsize=None)
def catalog_3q() -> Catalog:
    p = _three_qubit_points()
    spec = {
        "GHZ": ["f", "Hx", "Hy", "Hz", "Delta"],
        "W": ["f", "Hx", "Hy", "Hz"],
        "B1": ["f", "Hx"],
        "B2": ["f", "Hy"],
        "B3": ["f", "Hz"],
        "SEP": ["f"],
    }
    polys = tuple(Polytope.from_vertices([p[k] for k in keys], label=label,
                                         metadata={"system": "3q"})
                  for label, keys in spec.items())
    return Catalog("3q", polys)


# ------------------------------------------------------------------ four qubits

def full_4q_vertices() -> list[tuple[Fraction, ...]]:
    """The 12 vertices of the four-qubit marginal polytope in lmax coordinates."""
    verts = [(ONE,) * 4]
    for pair in combinations(range(4), 2):
        verts.append(tuple(H if i in pair else ONE for i in range(4)))
    for one in range(4):
        verts.append(tuple(ONE if i == one else H for i in range(4)))
    verts.append((H,) * 4)
    return verts


def _pt(*xs):
    return tuple(Fraction(x) for x in xs)


ORIGIN4 = (H,) * 4
# three-partite entangled vertices
T1, T2, T3, T4 = _pt(1, H, H, H), _pt(H, 1, H, H), _pt(H, H, 1, H), _pt(H, H, H, 1)

# (number, family, vertex count, facet count, perms, E, removed, added)
FOUR_QUBIT_TABLE = (
    (1, "L_0_{7+1}", 12, 13, 4, 0.482143, [ORIGIN4], [_pt(Q3, H, H, H)]),
    (2, "L_0_{5+3}", 10, 13, 4, 0.458333, [ORIGIN4, T1], []),
    (3, "L_a4 (a=0)", 9, 14, 6, 0.45, [ORIGIN4, T2, T4], []),
    (4, "L_ab3 (b=-a!=0)", 8, 16, 1, 0.5, [T1, T2, T3, T4], []),
    (5, "L_ab3 (a=b=0)", 7, 9, 1, 0.375, [ORIGIN4, T1, T2, T3, T4], []),
    (6, "L_a2b2 (b=-a!=0)", 10, 14, 6, 0.5, [T2, T4], []),
    (7, "G_abcd", 12, 12, 1, 0.5, [], []),
)

BISEPARABLE_4Q = (
    ("GHZxU", 4),
    ("WxU", 4),
    ("EPRxEPR", 3),
    ("EPRxUxU", 6),
    ("UxUxUxU", 1),
)


@lru_cache(maxsize=None)
def four_qubit_base() -> tuple[Polytope, ...]:
    """The seven genuinely four-partite polytopes, one representative each."""
    out = []
    for no, family, nv, nf, perms, e, removed, added in FOUR_QUBIT_TABLE:
        verts = [v for v in full_4q_vertices() if v not in removed] + added
        out.append(Polytope.from_vertices(verts, label=f"P{no}", metadata={
            "system": "4q", "number": no, "family": family, "table_vertices": nv,
            "table_facets": nf, "table_perms": perms, "table_entropy": e,
        }))
    return tuple(out)


def _embed3(poly3: Polytope, sites: tuple[int, int, int]) -> list[tuple[Fraction, ...]]:
    out = []
    for v in poly3.vertices:
        x = [ONE] * 4
        for s, c in zip(sites, v):
            x[s] = c
        out.append(tuple(x))
    return out


@lru_cache(maxsize=None)
def biseparable_4q() -> tuple[Polytope, ...]:
    c3 = catalog_3q()
    out = []
    for sites in combinations(range(4), 3):
        tag = "".join(str(s + 1) for s in sites)
        out.append(Polytope.from_vertices(_embed3(c3.get("GHZ"), sites), label=f"GHZxU[{tag}]",
                                          metadata={"system": "4q", "kind": "GHZxU", "sites": sites}))
    for sites in combinations(range(4), 3):
        tag = "".join(str(s + 1) for s in sites)
        out.append(Polytope.from_vertices(_embed3(c3.get("W"), sites), label=f"WxU[{tag}]",
                                          metadata={"system": "4q", "kind": "WxU", "sites": sites}))
    for a in ((0, 1), (0, 2), (0, 3)):
        b = tuple(i for i in range(4) if i not in a)
        verts = []
        for xa in (H, ONE):
            for xb in (H, ONE):
                verts.append(tuple(xa if i in a else xb for i in range(4)))
        tag = f"{a[0] + 1}{a[1] + 1}|{b[0] + 1}{b[1] + 1}"
        out.append(Polytope.from_vertices(verts, label=f"EPRxEPR[{tag}]",
                                          metadata={"system": "4q", "kind": "EPRxEPR", "sites": (a, b)}))
    for pair in combinations(range(4), 2):
        verts = [(ONE,) * 4, tuple(H if i in pair else ONE for i in range(4))]
        tag = "".join(str(s + 1) for s in pair)
        out.append(Polytope.from_vertices(verts, label=f"EPRxUxU[{tag}]",
                                          metadata={"system": "4q", "kind": "EPRxUxU", "sites": pair}))
    out.append(Polytope.from_vertices([(ONE,) * 4], label="UxUxUxU",
                                      metadata={"system": "4q", "kind": "UxUxUxU"}))
    return tuple(out)


def permutation_orbit(poly: Polytope) -> list[Polytope]:
    """Distinct images of ``poly`` under qubit permutations, in lexicographic permutation order."""
    seen, out = set(), []
    for perm in permutations(range(poly.ambient_dim)):
        q = poly.permuted(perm)
        key = q.vertex_set()
        if key in seen:
            continue
        seen.add(key)
        out.append(q)
    return out


@lru_cache(maxsize=None)
def catalog_4q(expand_permutations: bool = True) -> Catalog:
    """Four-qubit catalog: genuinely four-partite polytopes, then bi-separable embeddings."""
    polys = []
    for base in four_qubit_base():
        if expand_permutations:
            for j, q in enumerate(permutation_orbit(base)):
                polys.append(Polytope(f"{base.label}.{j + 1}", q.vertices, q.facets, q.equalities,
                                      q.dim, q.metadata))
        else:
            polys.append(base)
    bisep = biseparable_4q()
    if not expand_permutations:
        seen = set()
        bisep = tuple(p for p in bisep
                      if not (p.metadata["kind"] in seen or seen.add(p.metadata["kind"])))
    polys.extend(bisep)
    return Catalog("4q", tuple(polys))


def genuine_labels(catalog: Catalog) -> list[str]:
    return [p.label for p in catalog if p.label.startswith("P")]


# ------------------------------------------------------------------ N qubits (lmin coordinates)

def _box_rows(n: int):
    rows, rhs = [], []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(-1)
        rows.append(tuple(e)); rhs.append(Fraction(0))
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        rows.append(tuple(e)); rhs.append(H)
    return rows, rhs


def marginal_polytope_nqubits(n: int) -> HalfspaceSystem:
    """lmin_i <= sum_{j != i} lmin_j together with 0 <= lmin_i <= 1/2."""
    if n < 2:
        raise ValueError("need at least two qubits")
    return partition_polytope(n, [list(range(1, n + 1))], label=f"marginal[{n}]")


def _validate_partition(n: int, partition) -> list[list[int]]:
    parts = [sorted(int(i) for i in part) for part in partition]
    flat = [i for part in parts for i in part]
    if any(not part for part in parts) or sorted(flat) != list(range(1, n + 1)):
        raise InvalidPartition(f"{partition} is not a partition of 1..{n}")
    return parts


def partition_polytope(n: int, partition, label: str | None = None) -> HalfspaceSystem:
    """Spectra of states factorizing along ``partition`` (parts are 1-based site lists).

    Every part carries its own marginal inequalities; singleton parts force lmin = 0.
    """
    parts = _validate_partition(n, partition)
    return _partition_polytope(n, tuple(tuple(p) for p in parts), label)


@lru_cache(maxsize=4096)
def _partition_polytope(n: int, parts, label) -> HalfspaceSystem:
    rows: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []
    for part in parts:
        for i in part:
            row = [Fraction(0)] * n
            row[i - 1] = Fraction(1)
            for j in part:
                if j != i:
                    row[j - 1] = Fraction(-1)
            rows.append(tuple(row)); rhs.append(Fraction(0))
    box, box_rhs = _box_rows(n)
    if label is None:
        label = "|".join(",".join(str(i) for i in part) for part in parts)
    return HalfspaceSystem(tuple(rows + box), tuple(rhs + box_rhs), label=label, coords="lmin")


def set_partitions(items: list[int], max_part: int | None = None):
    """All set partitions of ``items`` with parts of size at most ``max_part``."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    limit = len(items) if max_part is None else max_part
    for size in range(0, min(limit, len(items)) ):
        for others in combinations(rest, size):
            block = [first, *others]
            remaining = [x for x in rest if x not in others]
            for sub in set_partitions(remaining, max_part):
                yield [block] + sub


@lru_cache(maxsize=None)
def catalog_nq(n: int) -> Catalog:
    """Marginal polytope plus one polytope per bipartition (lmin coordinates)."""
    from .witness import bipartitions

    polys = [marginal_polytope_nqubits(n)]
    polys += [partition_polytope(n, parts) for parts in bipartitions(n)]
    return Catalog(f"nq:{n}", tuple(polys))


def catalog_for_system(tag: str) -> Catalog:
    """Catalog for a system tag: ``3q``, ``4q``, ``nq:<N>`` or ``boson:<N>``."""
    if tag == "3q":
        return catalog_3q()
    if tag == "4q":
        return catalog_4q()
    kind, _, arg = tag.partition(":")
    if kind == "nq" and arg.isdigit():
        return catalog_nq(int(arg))
    if kind == "boson" and arg.isdigit():
        from .bosonic import bosonic_catalog

        return Catalog(tag, tuple(bosonic_catalog(int(arg))))
    raise ValueError(f"unknown system tag {tag!r}")
