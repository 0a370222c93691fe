from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entpoly.errors import DimensionMismatch, InvalidArity, SiteOutOfRange, UnknownSpec, ZeroVector
from entpoly.linalg import eig2_closed_form, jacobi_eigh
from entpoly.state import (LocalOperatorTuple, SpectrumPoint, apply_local_ops, local_spectra,
                           make_state, named_state, purity_bound_from_spectra, random_sl,
                           random_state, random_unitary, reduced_density_matrix)

from oracles import partial_trace_by_summation


def test_make_state_normalizes_bell():
    s = make_state([2, 2], [1, 0, 0, 1])
    np.testing.assert_allclose(s.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15)


def test_make_state_example3q_matches_named():
    s = make_state([2, 2, 2], [1, 1, 0, 0, 1, 0, 2, 0])
    np.testing.assert_allclose(s.amplitudes, named_state("Example3Q").amplitudes, atol=1e-15)
    assert s.amplitudes[6] == pytest.approx(2 / np.sqrt(7))


def test_make_state_errors():
    with pytest.raises(ZeroVector):
        make_state([2], [0, 0])
    with pytest.raises(DimensionMismatch):
        make_state([2, 2], [1, 0, 0])


def test_index_convention_site_one_most_significant():
    # |up down> on two qubits is index 1, |down up> index 2
    s = make_state([2, 3], np.eye(6)[4])  # b1 = 1, b2 = 1
    assert reduced_density_matrix(s, 1)[1, 1] == pytest.approx(1.0)
    assert reduced_density_matrix(s, 2)[1, 1] == pytest.approx(1.0)
    w = named_state("W(4)")
    assert set(np.flatnonzero(np.abs(w.amplitudes) > 0)) == {1, 2, 4, 8}
    np.testing.assert_allclose(w.amplitudes[[1, 2, 4, 8]], 0.5)


@pytest.mark.parametrize("spec,nonzero", [
    ("GHZ(3)", {0: 1, 7: 1}),
    ("SEP(3)", {0: 1}),
    ("B1", {1: 1, 2: -1}),
    ("B2", {1: 1, 4: -1}),
    ("B3", {2: 1, 4: -1}),
    ("Dicke(4,2)", {3: 1, 5: 1, 6: 1, 9: 1, 10: 1, 12: 1}),
])
def test_named_states(spec, nonzero):
    s = named_state(spec)
    ref = np.zeros(s.amplitudes.size, dtype=complex)
    for i, c in nonzero.items():
        ref[i] = c
    ref /= np.linalg.norm(ref)
    np.testing.assert_allclose(s.amplitudes, ref, atol=1e-15)


def test_named_state_errors():
    with pytest.raises(UnknownSpec):
        named_state("Foo(3)")
    with pytest.raises(InvalidArity):
        named_state("Dicke(3,4)")
    with pytest.raises(InvalidArity):
        named_state("B1(3)")


def test_rdm_examples():
    np.testing.assert_allclose(reduced_density_matrix(named_state("GHZ(3)"), 1), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(reduced_density_matrix(named_state("W(3)"), 2), np.diag([2 / 3, 1 / 3]), atol=1e-15)
    np.testing.assert_allclose(reduced_density_matrix(named_state("B1"), 1), np.diag([1, 0]), atol=1e-15)
    with pytest.raises(SiteOutOfRange):
        reduced_density_matrix(named_state("B1"), 4)


@pytest.mark.parametrize("dims", [[2, 2], [2, 3], [3, 2, 2], [2, 2, 2, 2]])
def test_rdm_matches_index_summation(rng, dims):
    s = random_state(dims, rng)
    for k in range(len(dims)):
        np.testing.assert_allclose(reduced_density_matrix(s, k + 1),
                                   partial_trace_by_summation(s.amplitudes, dims, k), atol=1e-13)


def test_local_spectra_examples():
    lm = local_spectra(named_state("Example3Q")).lmax
    np.testing.assert_allclose(lm, (0.76, 0.79, 0.88), atol=0.01)
    np.testing.assert_allclose(local_spectra(named_state("GHZ(5)")).lmax, 0.5, atol=1e-14)
    np.testing.assert_allclose(local_spectra(named_state("W(3)")).lmax, 2 / 3, atol=1e-14)


def test_rdms_of_random_states_are_states(rng):
    for _ in range(1000):
        dims = [2, 2, 2] if rng.random() < 0.5 else [2, 3, 2]
        s = random_state(dims, rng)
        for k in range(1, len(dims) + 1):
            r = reduced_density_matrix(s, k)
            assert np.max(np.abs(r - r.conj().T)) < 1e-10
            assert abs(np.trace(r) - 1) < 1e-10
            assert np.min(np.linalg.eigvalsh(r)) > -1e-10


def test_jacobi_matches_closed_form_and_numpy(rng):
    for _ in range(200):
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        h = x + x.conj().T
        w, v = jacobi_eigh(h)
        np.testing.assert_allclose(w, eig2_closed_form(h), atol=1e-12)
        np.testing.assert_allclose(h @ v, v * w, atol=1e-12)
    for d in (3, 5, 8):
        x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        h = x + x.conj().T
        w, _ = jacobi_eigh(h)
        np.testing.assert_allclose(w, np.sort(np.linalg.eigvalsh(h))[::-1], atol=1e-12)


def test_spectra_invariant_under_local_unitaries(rng):
    for _ in range(50):
        dims = [2, 3, 2]
        s = random_state(dims, rng)
        u = [random_unitary(d, rng) for d in dims]
        s2, norm2 = apply_local_ops(s, u)
        assert norm2 == pytest.approx(1.0)
        for a, b in zip(local_spectra(s).spectra, local_spectra(s2).spectra):
            np.testing.assert_allclose(a, b, atol=1e-9)


def test_apply_identity_and_filtering():
    bell = named_state("GHZ(2)")
    same, n2 = apply_local_ops(bell, [np.eye(2), np.eye(2)])
    np.testing.assert_allclose(same.amplitudes, bell.amplitudes)
    assert n2 == pytest.approx(1.0)
    eps = 1e-4
    out, n2 = apply_local_ops(bell, [np.diag([1, eps]), np.eye(2)])
    assert n2 == pytest.approx(0.5 * (1 + eps ** 2))
    assert local_spectra(out).lmax[0] > 1 - 1e-7
    with pytest.raises(DimensionMismatch):
        apply_local_ops(bell, [np.eye(2)])


def test_apply_composes_up_to_phase(rng):
    for _ in range(50):
        s = random_state([2, 2, 2], rng)
        g = LocalOperatorTuple(tuple(random_sl(2, rng) for _ in range(3)))
        h = LocalOperatorTuple(tuple(random_sl(2, rng) for _ in range(3)))
        two, _ = apply_local_ops(apply_local_ops(s, g)[0], h)
        one, _ = apply_local_ops(s, h.compose(g))
        assert abs(abs(np.vdot(one.amplitudes, two.amplitudes)) - 1) < 1e-10


def test_operator_tuple_normalization(rng):
    g = LocalOperatorTuple((rng.normal(size=(2, 2)), 3 * np.eye(3))).normalized()
    assert g.det_one
    for m in g.ops:
        assert abs(np.linalg.det(m) - 1) < 1e-12
    with pytest.raises(ZeroVector):
        LocalOperatorTuple((np.zeros((2, 2)),))


def test_purity_bound_examples():
    one = Fraction(1)
    assert purity_bound_from_spectra(SpectrumPoint(((one, 0),) * 3)) == 1
    half = Fraction(1, 2)
    assert purity_bound_from_spectra(SpectrumPoint(((half, half),) * 2)) == 0
    w = SpectrumPoint(((Fraction(2, 3), Fraction(1, 3)),) * 3)
    assert purity_bound_from_spectra(w) == Fraction(-1, 3)
    assert purity_bound_from_spectra(local_spectra(named_state("W(3)"))) == pytest.approx(-1 / 3)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0.5, 1.0), min_size=1, max_size=8))
def test_purity_bound_at_most_one(lmax):
    p = purity_bound_from_spectra(SpectrumPoint.from_lmax(lmax))
    assert p <= 1 + 1e-12
    if all(x == 1.0 for x in lmax):
        assert p == 1
    elif any(x < 1.0 - 1e-6 for x in lmax):
        assert p < 1
