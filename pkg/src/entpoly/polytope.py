"""Exact-rational convex polytopes and the LP/QP queries run against them.

Qubit catalogs use largest-eigenvalue (``lmax``) coordinates; the marginal
and partition systems use smallest-eigenvalue (``lmin``) coordinates.
``lmin = 1 - lmax``; :func:`lmax_to_lmin` and :func:`lmin_to_lmax` convert.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from ._rational import dot, frac, is_exact, nullspace, primitive, rank, solve, vec
from .errors import DimensionMismatch, Infeasible, NonConvergence, TooLarge

Point = tuple[Fraction, ...]
Halfspace = tuple[tuple[int, ...], int]  # a . x <= b with coprime integers

MAX_DIM = 6
MAX_VERTICES = 16
MAX_SUBSETS = 200_000
DEFAULT_TOL = 1e-9


def lmax_to_lmin(x):
    return tuple(1 - v for v in x)


lmin_to_lmax = lmax_to_lmin


def _affine_hull(points: list[Point]):
    """Return (base point, basis point indices, equalities) of the affine hull."""
    p0 = points[0]
    m = len(p0)
    basis = [0]
    rows: list[list[Fraction]] = []
    for i, p in enumerate(points[1:], start=1):
        d = [a - b for a, b in zip(p, p0)]
        if rank(rows + [d]) > len(rows):
            rows.append(d)
            basis.append(i)
    eqs = []
    for n in nullspace(rows, m) if rows else [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]:
        eqs.append(primitive(n, dot(n, p0)))
    return p0, basis, rows, eqs


def _facets_fulldim(pts: list[Point]) -> list[Halfspace]:
    """Brute-force facets of a full-dimensional point set in R^r."""
    r = len(pts[0])
    if r == 0:
        return []
    n_sub = comb(len(pts), r)
    if n_sub > MAX_SUBSETS:
        raise TooLarge(f"{n_sub} vertex subsets exceed the enumeration bound")
    found: set[Halfspace] = set()
    for sub in combinations(range(len(pts)), r):
        rows = [list(pts[i]) + [Fraction(-1)] for i in sub]
        ns = nullspace(rows, r + 1)
        if len(ns) != 1:
            continue
        a, b = ns[0][:r], ns[0][r]
        if all(x == 0 for x in a):
            continue
        side = [dot(a, p) - b for p in pts]
        if all(s <= 0 for s in side):
            found.add(primitive(a, b))
        elif all(s >= 0 for s in side):
            found.add(primitive([-x for x in a], -b))
    return sorted(found)


@dataclass(frozen=True)
class Polytope:
    """Convex hull of rational points with its derived H-representation.

    ``facets`` are inequalities ``a.x <= b`` in ambient coordinates, one per
    facet of the polytope within its affine hull; ``equalities`` (``a.x == b``)
    cut out the affine hull for lower-dimensional polytopes.
    """
    label: str
    vertices: tuple[Point, ...]
    facets: tuple[Halfspace, ...]
    equalities: tuple[Halfspace, ...]
    dim: int
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @classmethod
    def from_vertices(cls, points, label: str = "", metadata: dict | None = None) -> "Polytope":
        """Hull of ``points``: drops non-extreme points and enumerates facets exactly."""
        pts = sorted(set(vec(p) for p in points))
        if not pts:
            raise ValueError("need at least one point")
        m = len(pts[0])
        if any(len(p) != m for p in pts):
            raise DimensionMismatch("points of different dimensions")
        if m > MAX_DIM or len(pts) > MAX_VERTICES:
            raise TooLarge(f"{len(pts)} points in dimension {m} exceed the brute-force limits")
        p0, basis, dirs, eqs = _affine_hull(pts)
        r = len(dirs)
        facets: list[Halfspace] = []
        if r > 0:
            # local coordinates: y = B_I^{-1} (x - p0)_I on r pivot coordinates I
            cols = [[dirs[j][i] for j in range(r)] for i in range(m)]  # m x r
            rows_idx: list[int] = []
            for i in range(m):
                if rank([cols[k] for k in rows_idx + [i]]) > len(rows_idx):
                    rows_idx.append(i)
            bi = [cols[i] for i in rows_idx]
            inv = [solve(bi, [Fraction(int(j == k)) for j in range(r)]) for k in range(r)]
            # inv[k] is column k of B_I^{-1}
            def local(p):
                d = [p[i] - p0[i] for i in rows_idx]
                return tuple(sum(inv[k][j] * d[k] for k in range(r)) for j in range(r))
            loc = [local(p) for p in pts]
            for a_loc, b_loc in _facets_fulldim(loc):
                a = [Fraction(0)] * m
                for j in range(r):
                    for k in range(r):
                        a[rows_idx[k]] += a_loc[j] * inv[k][j]
                b = Fraction(b_loc) + sum(a[i] * p0[i] for i in range(m))
                facets.append(primitive(a, b))
        facets = sorted(set(facets))
        verts = [p for p in pts if _is_extreme(p, facets, eqs, m)]
        return cls(label, tuple(verts), tuple(facets), tuple(sorted(eqs)), r, dict(metadata or {}))

    def contains(self, point, tol: float = DEFAULT_TOL) -> bool:
        return contains(self, point, tol)

    def permuted(self, perm: Sequence[int], label: str | None = None) -> "Polytope":
        """Polytope with coordinates permuted: new coordinate i is old coordinate perm[i]."""
        pv = lambda v: tuple(v[j] for j in perm)
        meta = dict(self.metadata)
        meta["perm"] = tuple(perm)
        return Polytope(
            label if label is not None else self.label,
            tuple(sorted(pv(v) for v in self.vertices)),
            tuple(sorted((pv(a), b) for a, b in self.facets)),
            tuple(sorted((pv(a), b) for a, b in self.equalities)),
            self.dim,
            meta,
        )

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def halfspaces(self) -> "HalfspaceSystem":
        """All constraints as inequalities (equalities split in two)."""
        rows, rhs = [], []
        for a, b in self.facets:
            rows.append(a); rhs.append(b)
        for a, b in self.equalities:
            rows.append(a); rhs.append(b)
            rows.append(tuple(-x for x in a)); rhs.append(-b)
        return HalfspaceSystem(tuple(tuple(Fraction(x) for x in r) for r in rows),
                               tuple(Fraction(x) for x in rhs), label=self.label)


def _is_extreme(p: Point, facets, eqs, m: int) -> bool:
    normals = [list(a) for a, b in eqs]
    normals += [list(a) for a, b in facets if dot(a, p) == b]
    return rank(normals) == m if normals else m == 0


@dataclass(frozen=True)
class HalfspaceSystem:
    """{x : A x <= b} with rational data."""
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    label: str = ""
    coords: str = "lmin"

    def __post_init__(self):
        if not self.A:
            return
        if lp_feasible_point(self) is None:
            raise Infeasible(f"half-space system {self.label!r} is empty")

    @property
    def ambient_dim(self) -> int:
        return len(self.A[0])

    def contains(self, point, tol: float = DEFAULT_TOL) -> bool:
        return contains(self, point, tol)

    def vertices(self) -> list[Point]:
        """Brute-force vertex enumeration (small systems only)."""
        m = self.ambient_dim
        out = set()
        for sub in combinations(range(len(self.A)), m):
            x = solve([list(self.A[i]) for i in sub], [self.b[i] for i in sub])
            if x is not None and all(dot(a, x) <= bi for a, bi in zip(self.A, self.b)):
                out.add(tuple(x))
        return sorted(out)


def _check_dim(poly, point):
    if len(point) != poly.ambient_dim:
        raise DimensionMismatch(f"point has {len(point)} coordinates, polytope lives in {poly.ambient_dim}")


def contains(poly, point, tol: float = DEFAULT_TOL) -> bool:
    """Membership test; exact when every coordinate is an int or Fraction."""
    _check_dim(poly, point)
    exact = is_exact(point)
    if isinstance(poly, HalfspaceSystem):
        ineqs = list(zip(poly.A, poly.b))
        eqs = []
    else:
        ineqs, eqs = list(poly.facets), list(poly.equalities)
    if exact:
        x = vec(point)
        return (all(dot(a, x) <= b for a, b in ineqs)
                and all(dot(a, x) == b for a, b in eqs))
    x = np.asarray(point, dtype=float)
    for a, b in ineqs:
        if float(np.dot(np.asarray(a, dtype=float), x)) > float(b) + tol:
            return False
    for a, b in eqs:
        if abs(float(np.dot(np.asarray(a, dtype=float), x)) - float(b)) > tol:
            return False
    return True


# ---------------------------------------------------------------- simplex LP

def simplex(c, A_eq, b_eq, eps: float = 1e-11, max_iter: int = 10_000):
    """min c.x s.t. A_eq x = b_eq, x >= 0, by two-phase dense simplex with Bland's rule.

    Returns ``(x, value)``; raises :class:`Infeasible` if no feasible point exists.
    """
    A = np.array(A_eq, dtype=float)
    b = np.array(b_eq, dtype=float)
    c = np.array(c, dtype=float)
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1
    # tableau columns: n originals, m artificials, rhs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    basis = list(range(n, n + m))

    def pivot(r, col):
        T[r] /= T[r, col]
        for i in range(m + 1):
            if i != r and T[i, col] != 0.0:
                T[i] -= T[i, col] * T[r]
        basis[r] = col

    def run(allowed):
        for _ in range(max_iter):
            cand = [j for j in allowed if T[-1, j] < -eps]
            if not cand:
                return
            col = min(cand)
            best, r_best = None, None
            for i in range(m):
                if T[i, col] > eps:
                    ratio = T[i, -1] / T[i, col]
                    if best is None or ratio < best - eps or (abs(ratio - best) <= eps and basis[i] < basis[r_best]):
                        best, r_best = ratio, i
            if r_best is None:
                raise Infeasible("LP is unbounded")
            pivot(r_best, col)
        raise NonConvergence("simplex iteration cap reached")

    # phase 1: minimize the sum of artificials
    T[-1, :] = 0.0
    T[-1, n:n + m] = 1.0
    for i in range(m):
        T[-1] -= T[i]
    run(range(n + m))
    if -T[-1, -1] > 1e-9 * max(1.0, float(np.abs(b).max(initial=0.0))):
        raise Infeasible("LP has no feasible point")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if abs(T[i, j]) > eps), None)
            if col is not None:
                pivot(i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = np.vstack([T[keep], T[-1:]])
    basis = [basis[i] for i in keep]
    m = len(keep)
    # phase 2
    T[-1, :] = 0.0
    T[-1, :n] = c
    for i, j in enumerate(basis):
        if T[-1, j] != 0.0:
            T[-1] -= T[-1, j] * T[i]
    run(range(n))
    x = np.zeros(n)
    for i, j in enumerate(basis):
        x[j] = T[i, -1]
    return x, float(c @ x)


def lp_feasible_point(system: HalfspaceSystem):
    """Some x with A x <= b, or None."""
    A = np.array(system.A, dtype=float)
    b = np.array(system.b, dtype=float)
    k, m = A.shape
    # x = u - v, slack s: A u - A v + s = b
    Aeq = np.hstack([A, -A, np.eye(k)])
    try:
        z, _ = simplex(np.zeros(2 * m + k), Aeq, b)
    except Infeasible:
        return None
    return z[:m] - z[m:2 * m]


def l1_distance(poly, point) -> float:
    """min over mu in the polytope of sum_i |x_i - mu_i| (in the polytope's own coordinates).

    Contained points return exactly 0.
    """
    _check_dim(poly, point)
    if contains(poly, point):
        return 0.0
    x = np.asarray([float(v) for v in point])
    m = len(x)
    if isinstance(poly, Polytope):
        V = np.array([[float(v) for v in p] for p in poly.vertices])  # nv x m
        nv = len(V)
        # variables: w (nv), s+ (m), s- (m)
        Aeq = np.zeros((m + 1, nv + 2 * m))
        Aeq[:m, :nv] = V.T
        Aeq[:m, nv:nv + m] = np.eye(m)
        Aeq[:m, nv + m:] = -np.eye(m)
        Aeq[m, :nv] = 1.0
        beq = np.append(x, 1.0)
        c = np.concatenate([np.zeros(nv), np.ones(2 * m)])
    else:
        A = np.array(poly.A, dtype=float)
        b = np.array(poly.b, dtype=float)
        k = len(A)
        # variables: u, v (mu = u - v), s+, s-, slack
        nvar = 4 * m + k
        Aeq = np.zeros((k + m, nvar))
        Aeq[:k, :m] = A
        Aeq[:k, m:2 * m] = -A
        Aeq[:k, 4 * m:] = np.eye(k)
        Aeq[k:, :m] = np.eye(m)
        Aeq[k:, m:2 * m] = -np.eye(m)
        Aeq[k:, 2 * m:3 * m] = np.eye(m)
        Aeq[k:, 3 * m:4 * m] = -np.eye(m)
        beq = np.concatenate([b, x])
        c = np.concatenate([np.zeros(2 * m), np.ones(2 * m), np.zeros(k)])
    _, val = simplex(c, Aeq, beq)
    return max(val, 0.0)


# ---------------------------------------------------------------- min-norm point

def wolfe_min_norm(points: np.ndarray, tol: float = 1e-10, max_iter: int = 10_000):
    """Wolfe's algorithm: the point of conv(points) closest to the origin.

    Returns ``(x, weights)`` where ``weights`` maps point indices to convex weights.
    """
    P = np.asarray(points, dtype=float)
    scale = max(1.0, float(np.max(np.sum(P * P, axis=1))))
    j0 = int(np.argmin(np.sum(P * P, axis=1)))
    S = [j0]
    w = np.array([1.0])
    x = P[j0].copy()
    for _ in range(max_iter):
        j = int(np.argmin(P @ x))
        if x @ x - x @ P[j] <= tol * scale or j in S:
            return x, dict(zip(S, w))
        S.append(j)
        w = np.append(w, 0.0)
        for _ in range(max_iter):
            Q = P[S]
            k = len(S)
            # affine minimizer: [Q Q^T  1; 1^T 0] [a; mu] = [0; 1]
            M = np.zeros((k + 1, k + 1))
            M[:k, :k] = Q @ Q.T
            M[:k, k] = 1.0
            M[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            alpha = np.linalg.lstsq(M, rhs, rcond=None)[0][:k]
            if np.all(alpha > tol):
                w = alpha
                break
            mask = alpha <= tol
            theta = min(1.0, float(np.min(w[mask] / (w[mask] - alpha[mask]))))
            w = w + theta * (alpha - w)
            keep = w > tol
            S = [s for s, kp in zip(S, keep) if kp]
            w = w[keep]
            w = w / w.sum()
        x = w @ P[S]
    raise NonConvergence("min-norm point iteration cap reached")


def min_norm_point(poly: Polytope, origin=None, tol: float = 1e-10):
    """Closest point of ``poly`` to ``origin`` (default: 1/2 in every coordinate).

    Returns ``(point, euclidean_distance)``.
    """
    V = np.array([[float(v) for v in p] for p in poly.vertices])
    o = np.full(V.shape[1], 0.5) if origin is None else np.asarray(origin, dtype=float)
    x, _ = wolfe_min_norm(V - o, tol=tol)
    return x + o, float(np.linalg.norm(x))


def linear_entropy_lmax(lmax) -> float:
    """1 - (1/N) sum_k (l_k^2 + (1 - l_k)^2) for qubit largest eigenvalues."""
    lm = np.asarray(lmax, dtype=float)
    return float(1.0 - np.mean(lm ** 2 + (1.0 - lm) ** 2))


def max_linear_entropy(poly: Polytope) -> float:
    """Largest linear entropy of entanglement over a qubit polytope (lmax coordinates)."""
    x, _ = min_norm_point(poly)
    return linear_entropy_lmax(x)
