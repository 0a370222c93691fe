"""The six generating covariants of three qubits and the resulting classification.

The amplitude tensor ``a[i, j, k]`` is read as the trilinear form
``f(x, y, z) = sum a_ijk x_i y_j z_k``.  The remaining covariants are

* ``Hx = det(x0 A0 + x1 A1)`` with slices ``(A_i)_jk = a_ijk`` (``Hy``, ``Hz`` along sites 2, 3),
* ``T``, the first transvectant of ``f`` and ``Hx`` in the site-1 variable,
* ``Delta``, the discriminant of ``Hx`` (Cayley's hyperdeterminant).

Only vanishing versus non-vanishing carries meaning; overall constants are arbitrary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AmbiguousPattern, WrongArity, ZeroState
from .state import PureState

NAMES = ("f", "Hx", "Hy", "Hz", "T", "Delta")
DEGREES = {"f": 1, "Hx": 2, "Hy": 2, "Hz": 2, "T": 3, "Delta": 4}
WEIGHTS = {
    "f": (1, 1, 1),
    "Hx": (2, 1, 1),
    "Hy": (1, 2, 1),
    "Hz": (1, 1, 2),
    "T": (2, 2, 2),
    "Delta": (2, 2, 2),
}
CLASSES = ("GHZ", "W", "B1", "B2", "B3", "SEP")


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return GaussianRational(Fraction(x.real), Fraction(x.imag))
        return GaussianRational(x, 0)

    def __add__(self, o):
        o = self._lift(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        o = self._lift(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = self._lift(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __abs__(self):
        return float(self.re * self.re + self.im * self.im) ** 0.5

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


@dataclass(frozen=True, eq=False)
class CovariantValue:
    name: str
    degree: int
    weights: tuple[tuple[int, int], ...]
    normalized_point: tuple[Fraction, ...]
    coefficients: np.ndarray
    vanishing: bool


@dataclass(frozen=True)
class VanishingPattern:
    nonzero: tuple[tuple[str, bool], ...]
    tol: float | None

    @classmethod
    def from_dict(cls, d: dict[str, bool], tol=None) -> "VanishingPattern":
        return cls(tuple((n, bool(d[n])) for n in NAMES), tol)

    def __getitem__(self, name: str) -> bool:
        """True if the covariant does not vanish."""
        return dict(self.nonzero)[name]

    def as_dict(self) -> dict[str, bool]:
        return dict(self.nonzero)


# Vanishing table per class (True = non-vanishing), as in the classical result.
CLASS_PATTERNS = {
    "GHZ": VanishingPattern.from_dict(dict(f=1, Hx=1, Hy=1, Hz=1, T=1, Delta=1)),
    "W": VanishingPattern.from_dict(dict(f=1, Hx=1, Hy=1, Hz=1, T=1, Delta=0)),
    "B1": VanishingPattern.from_dict(dict(f=1, Hx=1, Hy=0, Hz=0, T=0, Delta=0)),
    "B2": VanishingPattern.from_dict(dict(f=1, Hx=0, Hy=1, Hz=0, T=0, Delta=0)),
    "B3": VanishingPattern.from_dict(dict(f=1, Hx=0, Hy=0, Hz=1, T=0, Delta=0)),
    "SEP": VanishingPattern.from_dict(dict(f=1, Hx=0, Hy=0, Hz=0, T=0, Delta=0)),
}


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def slice_form(a: np.ndarray, site: int) -> tuple:
    """Coefficients (q20, q11, q02) of det(x0 A0 + x1 A1) with slices along ``site`` (0-based)."""
    s = np.moveaxis(a, site, 0)
    a0, a1 = s[0], s[1]
    q20 = _det2(a0)
    q02 = _det2(a1)
    q11 = a0[0, 0] * a1[1, 1] + a1[0, 0] * a0[1, 1] - a0[0, 1] * a1[1, 0] - a1[0, 1] * a0[1, 0]
    return q20, q11, q02


def transvectant_t(a: np.ndarray, hx: tuple) -> np.ndarray:
    """(f, Hx)^(1) in the site-1 variable; a (1,1,1)-form returned as a 2x2x2 tensor."""
    q20, q11, q02 = hx
    t = np.empty((2, 2, 2), dtype=a.dtype)
    t[0] = a[0] * q11 - a[1] * (2 * q20)
    t[1] = a[0] * (2 * q02) - a[1] * q11
    return t


def discriminant(q: tuple):
    q20, q11, q02 = q
    return q11 * q11 - 4 * q20 * q02


def _as_tensor(state) -> tuple[np.ndarray, bool]:
    if isinstance(state, PureState):
        if state.dims != (2, 2, 2):
            raise WrongArity(f"three qubits required, got dims {list(state.dims)}")
        return state.tensor, False
    a = np.asarray(state, dtype=object)
    if a.size != 8:
        raise WrongArity(f"three qubits required, got {a.size} amplitudes")
    exact = all(isinstance(x, (int, Fraction, GaussianRational)) for x in a.reshape(-1))
    if exact:
        a = np.array([GaussianRational._lift(x) for x in a.reshape(-1)], dtype=object)
    else:
        a = np.array(a.reshape(-1), dtype=complex)
    return a.reshape(2, 2, 2), exact


def _vanishes(coeffs, exact: bool, tol: float) -> bool:
    flat = np.asarray(coeffs, dtype=object if exact else complex).reshape(-1)
    if exact:
        return all(c == 0 for c in flat)
    return float(np.max(np.abs(flat))) < tol


def eval_covariants(state, tol: float = 1e-10) -> list[CovariantValue]:
    """Evaluate f, Hx, Hy, Hz, T, Delta on a three-qubit state.

    ``state`` is a :class:`PureState` or, for exact vanishing decisions, a
    sequence of eight Gaussian-rational amplitudes (ints, Fractions or
    :class:`GaussianRational`; normalization is irrelevant there).
    """
    a, exact = _as_tensor(state)
    hx, hy, hz = (slice_form(a, s) for s in range(3))
    coeffs = {
        "f": a,
        "Hx": np.array(hx, dtype=a.dtype),
        "Hy": np.array(hy, dtype=a.dtype),
        "Hz": np.array(hz, dtype=a.dtype),
        "T": transvectant_t(a, hx),
        "Delta": np.array([discriminant(hx)], dtype=a.dtype),
    }
    out = []
    for name in NAMES:
        n = DEGREES[name]
        w = WEIGHTS[name]
        out.append(CovariantValue(
            name=name,
            degree=n,
            weights=tuple((wk, n - wk) for wk in w),
            normalized_point=tuple(Fraction(wk, n) for wk in w),
            coefficients=coeffs[name],
            vanishing=_vanishes(coeffs[name], exact, tol),
        ))
    return out


def vanishing_pattern(state, tol: float = 1e-10) -> VanishingPattern:
    covs = eval_covariants(state, tol)
    return VanishingPattern(tuple((c.name, not c.vanishing) for c in covs), tol)


def classify_pattern(pattern: VanishingPattern) -> str:
    p = pattern.as_dict()
    if not p["f"]:
        raise ZeroState("state vanishes identically")
    if p["Delta"]:
        label = "GHZ"
    elif p["T"]:
        label = "W"
    else:
        hs = [name for name in ("Hx", "Hy", "Hz") if p[name]]
        if len(hs) == 1:
            label = {"Hx": "B1", "Hy": "B2", "Hz": "B3"}[hs[0]]
        elif not hs:
            label = "SEP"
        else:
            raise AmbiguousPattern(f"pattern {p} matches no class")
    if CLASS_PATTERNS[label] != VanishingPattern(pattern.nonzero, None):
        raise AmbiguousPattern(f"pattern {p} is inconsistent with class {label}")
    return label


def classify3(state, tol: float = 1e-10) -> str:
    return classify_pattern(vanishing_pattern(state, tol))


def polytope_from_covariants(pattern: VanishingPattern):
    """Convex hull of normalized weights of the non-vanishing covariants."""
    from .polytope import Polytope

    p = pattern.as_dict()
    if not p["f"]:
        raise ZeroState("f vanishes; no polytope")
    pts = [tuple(Fraction(w, DEGREES[n]) for w in WEIGHTS[n]) for n in NAMES if p[n]]
    return Polytope.from_vertices(pts, label="covariants",
                                  metadata={"covariants": [n for n in NAMES if p[n]]})
