import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from luequiv import bipartite as bp
from luequiv.errors import BadShape, DimensionMismatch, NotNormalized, ZeroVector
from luequiv.sampling import random_state, random_unitary, rng_from

from conftest import oracle_apply, oracle_partial_trace

R2 = 1 / math.sqrt(2)
A, B = math.sqrt(0.8), math.sqrt(0.2)


def phi_plus():
    return bp.make_state(2, 2, [R2, 0, 0, R2])


def test_make_state_bell():
    psi = phi_plus()
    assert psi.dims == (2, 2)
    np.testing.assert_allclose(psi.coefficients, np.eye(2) * R2)


def test_make_state_renormalize():
    psi = bp.make_state(2, 2, [1, 0, 0, 1], renormalize=True)
    np.testing.assert_allclose(psi.amplitudes, phi_plus().amplitudes)


def test_make_state_strict_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        bp.make_state(2, 2, [1, 0, 0, 0.5])


def test_make_state_errors():
    with pytest.raises(BadShape):
        bp.make_state(2, 2, [1, 0, 0])
    with pytest.raises(ZeroVector):
        bp.make_state(2, 2, [0, 0, 0, 0], renormalize=True)
    with pytest.raises(BadShape):
        bp.make_state(0, 2, [])


def test_amplitudes_are_readonly():
    psi = phi_plus()
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0


def test_index_convention():
    # |0>_A |1>_B sits at index 0*dB + 1
    psi = bp.basis_state(2, 3, 0, 1)
    assert psi.amplitudes[1] == 1
    assert psi.coefficients[0, 1] == 1


def test_schmidt_already_in_schmidt_form():
    s = bp.schmidt(bp.make_state(2, 2, [A, 0, 0, B]))
    np.testing.assert_allclose(s.coefficients, [A, B], atol=1e-15)


def test_schmidt_product_state():
    s = bp.schmidt(bp.basis_state(2, 2, 0, 1))
    np.testing.assert_array_equal(s.coefficients, [1, 0])


def test_schmidt_uniform_superposition_is_product():
    s = bp.schmidt(bp.make_state(2, 2, [0.5, 0.5, 0.5, 0.5]))
    np.testing.assert_allclose(s.coefficients, [1, 0], atol=1e-15)
    assert s.coefficients[1] == 0.0
    assert s.rank == 1


@pytest.mark.parametrize("dims", [(1, 1), (1, 4), (2, 2), (3, 2), (2, 5), (6, 6), (6, 3)])
def test_schmidt_reconstruction(rng, dims):
    for _ in range(20):
        psi = random_state(rng, *dims)
        s = bp.schmidt(psi)
        assert s.coefficients.size == min(dims)
        assert abs(np.sum(s.coefficients**2) - 1) < 1e-9
        assert np.linalg.norm(s.reconstruct().amplitudes - psi.amplitudes) < 1e-9
        assert s.left.shape == (dims[0], dims[0]) and s.right.shape == (dims[1], dims[1])


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), da=st.integers(1, 5), db=st.integers(1, 5))
def test_schmidt_invariant_under_local_unitaries(seed, da, db):
    rng = rng_from(seed)
    psi = random_state(rng, da, db)
    moved = psi.apply_local(a=random_unitary(rng, da), b=random_unitary(rng, db))
    np.testing.assert_allclose(bp.schmidt_coefficients(moved), bp.schmidt_coefficients(psi), atol=1e-9)
    assert abs(bp.entanglement_entropy(moved) - bp.entanglement_entropy(psi)) < 1e-9


def test_apply_local_matches_kron(rng):
    psi = random_state(rng, 3, 2)
    a, b = random_unitary(rng, 3), random_unitary(rng, 2)
    np.testing.assert_allclose(psi.apply_local(a=a, b=b).amplitudes, oracle_apply(psi, a, b), atol=1e-14)


def test_entropy_values():
    assert abs(bp.entanglement_entropy(phi_plus()) - 1.0) < 1e-12
    assert bp.entanglement_entropy(bp.basis_state(2, 2, 0, 0)) == 0.0
    expected = -0.8 * math.log2(0.8) - 0.2 * math.log2(0.2)
    assert abs(expected - 0.721928) < 1e-6
    assert abs(bp.entanglement_entropy(bp.make_state(2, 2, [A, 0, 0, B])) - expected) < 1e-12


def test_entropy_bounds(rng):
    for da, db in [(2, 3), (4, 4), (5, 2)]:
        for _ in range(20):
            s = bp.entanglement_entropy(random_state(rng, da, db))
            assert 0 <= s <= math.log2(min(da, db)) + 1e-12


def test_max_entropy_iff_maximal(rng):
    for d in (2, 3, 4):
        phi = bp.max_entangled(d).apply_local(a=random_unitary(rng, d), b=random_unitary(rng, d))
        assert abs(bp.entanglement_entropy(phi) - math.log2(d)) < 1e-9
        assert bp.is_maximally_entangled(phi)
        psi = random_state(rng, d, d)
        assert abs(bp.entanglement_entropy(psi) - math.log2(d)) > 1e-9
        assert not bp.is_maximally_entangled(psi)


def test_partial_trace_examples():
    np.testing.assert_allclose(bp.partial_trace(phi_plus(), "B"), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(bp.partial_trace(bp.make_state(2, 2, [A, 0, 0, B]), "B"),
                               np.diag([0.8, 0.2]), atol=1e-15)


@pytest.mark.parametrize("keep", ["A", "B"])
def test_partial_trace_matches_index_oracle(rng, keep):
    for dims in [(3, 2), (2, 4), (3, 3)]:
        psi = random_state(rng, *dims)
        np.testing.assert_allclose(bp.partial_trace(psi, keep), oracle_partial_trace(psi, keep), atol=1e-14)


def test_partial_trace_spectra_agree(rng):
    for _ in range(20):
        psi = random_state(rng, 3, 2)
        ra, rb = bp.partial_trace(psi, "A"), bp.partial_trace(psi, "B")
        assert abs(np.trace(ra) - 1) < 1e-12 and abs(np.trace(rb) - 1) < 1e-12
        ea = np.sort(np.linalg.eigvalsh(ra))[::-1]
        eb = np.sort(np.linalg.eigvalsh(rb))[::-1]
        np.testing.assert_allclose(ea, np.concatenate([eb, [0.0]]), atol=1e-9)


def test_overlap_examples():
    assert abs(bp.overlap(phi_plus(), phi_plus()) - 1) < 1e-15
    psi1 = bp.make_state(2, 2, [A, 0, 0, B])
    psi2 = bp.make_state(2, 2, [B, 0, 0, -A])
    assert abs(bp.overlap(psi1, psi2)) < 1e-15
    assert abs(bp.overlap(bp.basis_state(2, 2, 0, 0), phi_plus()) - R2) < 1e-15


def test_overlap_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        bp.overlap(bp.basis_state(2, 2, 0, 0), bp.basis_state(2, 3, 0, 0))


def test_equal_up_to_phase(rng):
    psi = random_state(rng, 2, 3)
    rotated = bp.StateVector(2, 3, np.exp(1j * math.pi / 3) * psi.amplitudes)
    same, theta = bp.equal_up_to_phase(psi, rotated)
    assert same and abs(theta - math.pi / 3) < 1e-12
    assert bp.equal_up_to_phase(bp.basis_state(2, 2, 0, 0), bp.basis_state(2, 2, 1, 1)) == (False, None)
    noisy = bp.StateVector(2, 3, psi.amplitudes + 1e-12 * rng.standard_normal(6)).normalized()
    assert bp.equal_up_to_phase(psi, noisy, tol=1e-9)[0]
