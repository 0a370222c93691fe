from fractions import Fraction as F
from math import ceil

import numpy as np
import pytest

from entpoly.bosonic import (bosonic_catalog, bosonic_entropy, bosonic_flow_step, bosonic_lmax,
                             bosonic_rdm, collective_matrix, dicke, direction_norm, expand,
                             generalized_ghz, make_bosonic, random_bosonic, run_bosonic_flow)
from entpoly.errors import DimensionMismatch, ZeroVector
from entpoly.state import named_state, reduced_density_matrix


def test_rdm_examples():
    np.testing.assert_allclose(bosonic_rdm(dicke(4, 1)), np.diag([0.75, 0.25]), atol=1e-15)
    np.testing.assert_allclose(bosonic_rdm(generalized_ghz(6)), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(bosonic_rdm(make_bosonic(2, [1, 0, 0])), np.diag([1, 0]), atol=1e-15)


def test_expand_matches_named_states():
    np.testing.assert_allclose(expand(dicke(4, 2)).amplitudes, named_state("Dicke(4,2)").amplitudes, atol=1e-15)
    np.testing.assert_allclose(expand(dicke(3, 1)).amplitudes, named_state("W(3)").amplitudes, atol=1e-15)


@pytest.mark.parametrize("n", range(1, 11))
def test_rdm_matches_full_partial_trace(rng, n):
    for _ in range(5):
        b = random_bosonic(n, rng)
        full = expand(b)
        for k in (1, n):
            np.testing.assert_allclose(bosonic_rdm(b), reduced_density_matrix(full, k), atol=1e-10)


def test_collective_matrix_matches_full_space(rng):
    n = 4
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = random_bosonic(n, rng)
    full = expand(b)
    t = full.tensor
    out = np.zeros_like(t)
    for k in range(n):
        out += np.moveaxis(np.tensordot(x, t, axes=([1], [k])), 0, k)
    gb = collective_matrix(n, x) @ b.coefficients
    np.testing.assert_allclose(expand(make_bosonic(n, gb)).amplitudes * np.linalg.norm(gb),
                               out.reshape(-1), atol=1e-12)


@pytest.mark.parametrize("n", range(2, 21))
def test_catalog_matches_formula(n):
    cat = bosonic_catalog(n)
    expected = sorted({F(1, 2)} | {F(n - k, n) for k in range(n // 2 + 1)})
    assert [p.gamma for p in cat] == expected
    assert len(cat) == ceil(n / 2) + 1
    assert all(F(1, 2) <= p.gamma <= 1 for p in cat)


def test_catalog_examples():
    assert [p.gamma for p in bosonic_catalog(4)] == [F(1, 2), F(3, 4), F(1)]
    assert [p.gamma for p in bosonic_catalog(5)] == [F(1, 2), F(3, 5), F(4, 5), F(1)]
    assert [p.gamma for p in bosonic_catalog(2)] == [F(1, 2), F(1)]


@pytest.mark.parametrize("n", range(2, 11))
def test_dicke_fixed_points(n):
    for k in range(n + 1):
        assert direction_norm(dicke(n, k)) <= 1e-10
    assert direction_norm(generalized_ghz(n)) <= 1e-10


def test_random_lmax_range(rng):
    for _ in range(200):
        lm = bosonic_lmax(random_bosonic(int(rng.integers(2, 12)), rng))
        assert 0.5 - 1e-12 <= lm <= 1 + 1e-12


def test_flow_step_monotone(rng):
    b = random_bosonic(6, rng)
    new, ok = bosonic_flow_step(b, 0.1)
    assert ok and bosonic_entropy(new) >= bosonic_entropy(b)


@pytest.mark.parametrize("n", [3, 4, 6, 8, 12, 16, 20])
def test_flow_reaches_w_like_endpoint(n):
    c = np.zeros(n + 1)
    c[0], c[1] = 2, 1
    final, hist, status = run_bosonic_flow(make_bosonic(n, c), max_iter=5000)
    assert status in ("Converged", "MaxIterations")
    assert abs(hist[-1] - (n - 1) / n) < 1e-4
    assert all(b <= a + 1e-12 for a, b in zip(hist, hist[1:]))


def test_flow_unstable_class_limit():
    # x^4 (x^2 + sqrt(15) y^2): a fourfold root on six particles flows to Dicke(6, 2)
    final, hist, status = run_bosonic_flow(make_bosonic(6, [1, 0, 1, 0, 0, 0, 0]), max_iter=5000)
    assert status == "Converged"
    assert abs(hist[-1] - 2 / 3) < 1e-6


def test_symmetric_power_matches_full_space(rng):
    from entpoly.bosonic import symmetric_power
    from entpoly.state import apply_local_ops
    for n in (1, 3, 5):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = random_bosonic(n, rng)
        full, _ = apply_local_ops(expand(b), [g] * n)
        mine = expand(make_bosonic(n, symmetric_power(g, n) @ b.coefficients))
        assert abs(abs(np.vdot(mine.amplitudes, full.amplitudes)) - 1) < 1e-12


def test_flow_converges_to_catalog_gamma(rng):
    for n in (3, 4, 5):
        gammas = [float(p.gamma) for p in bosonic_catalog(n)]
        for _ in range(3):
            final, hist, status = run_bosonic_flow(random_bosonic(n, rng), max_iter=5000)
            assert min(abs(hist[-1] - g) for g in gammas) < 1e-4


def test_ghz_fixed_under_flow():
    final, hist, status = run_bosonic_flow(generalized_ghz(5))
    assert status == "Converged" and len(hist) == 1


def test_make_bosonic_errors():
    with pytest.raises(DimensionMismatch):
        make_bosonic(3, [1, 0])
    with pytest.raises(ZeroVector):
        make_bosonic(2, [0, 0, 0])
