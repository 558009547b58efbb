"""Brute-force dense oracles: stabilizer residuals, sampling, spectra."""
import math

import numpy as np
import pytest

from symmlu import classify, majorana, mixed, states, verify
from symmlu.classify import StabilizerClass
from symmlu.errors import DomainError


def tetrahedron_state():
    pts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)
    return majorana.points_to_state(pts)


# ---------------------------------------------------------------------------
# residual checks
# ---------------------------------------------------------------------------


def test_identity_stabilizes_everything():
    rng = np.random.default_rng(51)
    rho = states.random_symmetric_mixed(3, rng)
    w = verify.check_stabilizes(
        states.LocalUnitary.uniform(np.eye(2, dtype=np.complex128), 3), rho
    )
    assert w.residual == 0.0
    assert w.accepted(1e-12)


def test_two_pole_generator_with_flip_stabilizes_ghz():
    sampler = classify.stabilizer_generators(StabilizerClass("iia"), 3)
    u = sampler.unit((math.pi / 3, math.pi / 5), flip=True)
    rho = states.to_density(states.ghz(3))
    w = verify.check_stabilizes(u, rho)
    assert w.residual <= 1e-10


def test_identical_diagonal_stabilizes_dicke():
    g = np.diag([np.exp(1j * math.pi / 8), np.exp(-1j * math.pi / 8)])
    u = states.LocalUnitary.uniform(g.astype(np.complex128), 3)
    rho = states.to_density(states.dicke(3, 1))
    w = verify.check_stabilizes(u, rho)
    assert w.residual <= 1e-10


def test_singlet_is_stabilized_by_identical_pairs():
    rng = np.random.default_rng(52)
    rho = states.to_density(states.singlet())
    sampler = classify.stabilizer_generators(StabilizerClass("iii"), 2)
    for _ in range(100):
        u = sampler.unit((states.random_su2(rng),))
        assert verify.check_stabilizes(u, rho).residual <= 1e-10


def test_arity_mismatch_raises():
    u = states.LocalUnitary.uniform(np.eye(2, dtype=np.complex128), 3)
    with pytest.raises(DomainError):
        verify.check_stabilizes(u, states.to_density(states.ghz(4)))


def test_witness_rejects_negative_residual():
    u = states.LocalUnitary.uniform(np.eye(2, dtype=np.complex128), 2)
    with pytest.raises(DomainError):
        verify.StabilizerWitness(u, -1e-3)


# ---------------------------------------------------------------------------
# blind stabilizer sampling
# ---------------------------------------------------------------------------


def test_sample_stabilizer_on_ghz3_finds_both_families():
    rho = states.to_density(states.ghz(3))
    witnesses = verify.sample_stabilizer(rho)
    assert witnesses
    for w in witnesses:
        assert w.residual <= 1e-8
    # the compensating diagonal family must appear beyond the identity
    diag_found = 0
    for w in witnesses:
        mats = [np.asarray(f) for f in w.unitary.factors]
        if all(abs(m[0, 1]) + abs(m[1, 0]) < 1e-6 for m in mats):
            diag_found += 1
    assert diag_found > 1


def test_sample_stabilizer_tetrahedron_count():
    # the blind search over both families collapses to the 12 rotations
    rho = states.to_density(tetrahedron_state())
    witnesses = verify.sample_stabilizer(rho)
    assert len(witnesses) == 12


def test_sample_stabilizer_requires_permutation_invariance():
    vec = np.zeros(8, dtype=np.complex128)
    vec[1] = 1.0
    rho = states.DensityMatrix(3, np.outer(vec, vec.conj()))
    with pytest.raises(DomainError):
        verify.sample_stabilizer(rho)


def test_dense_cap_blocks_large_n():
    coeffs = np.zeros(12, dtype=np.complex128)
    coeffs[0] = 1.0
    psi = states.SymmetricPureState.from_unnormalized(coeffs)  # n = 11
    with pytest.raises(DomainError):
        verify.lu_equivalent_pure_bruteforce(psi, psi)


# ---------------------------------------------------------------------------
# membership and anomalies
# ---------------------------------------------------------------------------


def test_class_membership_distance_accepts_family_elements():
    rng = np.random.default_rng(53)
    sampler = classify.stabilizer_generators(StabilizerClass("iia"), 3)
    for _ in range(3):
        u = sampler.random(rng)
        assert verify.class_membership_distance(sampler, u) < 1e-6


def test_class_membership_distance_rejects_outsiders():
    sampler = classify.stabilizer_generators(StabilizerClass("ivb", k=1), 3)
    outsider = states.LocalUnitary.uniform(states.rx(1.0), 3)
    assert verify.class_membership_distance(sampler, outsider) > 1e-2


def test_membership_on_finite_group():
    res = classify.classify_state(tetrahedron_state())
    sampler = res.sampler
    inside = sampler.unit((3,))
    assert verify.class_membership_distance(sampler, inside) < 1e-9
    rng = np.random.default_rng(54)
    outsider = states.LocalUnitary.uniform(states.random_su2(rng), 4)
    assert verify.class_membership_distance(sampler, outsider) > 1e-3


def test_no_anomalies_for_ghz3():
    assert verify.stabilizer_anomalies(states.ghz(3)) == ()


def test_no_anomalies_for_random_trivial_state():
    rng = np.random.default_rng(55)
    psi = states.random_symmetric(3, rng)
    assert verify.stabilizer_anomalies(psi) == ()


# ---------------------------------------------------------------------------
# spectra and brute-force equivalence
# ---------------------------------------------------------------------------


def test_spectra_of_pure_state():
    rep = verify.spectra_report(states.to_density(states.ghz(3)))
    assert rep.global_spectrum[0] == pytest.approx(1.0, abs=1e-12)
    assert max(abs(v) for v in rep.global_spectrum[1:]) < 1e-12


def test_spectra_of_two_pole_forms():
    pure = verify.spectra_report(
        mixed.ghz_form_density(mixed.GhzForm(3, 0.5, 0.5))
    )
    assert pure.global_spectrum[0] == pytest.approx(1.0, abs=1e-12)

    rep = verify.spectra_report(
        mixed.ghz_form_density(mixed.GhzForm(3, 0.5, 0.25))
    )
    nonzero = [v for v in rep.global_spectrum if abs(v) > 1e-12]
    assert nonzero == pytest.approx([0.75, 0.25], abs=1e-12)
    assert rep.to_dict()["global_spectrum"][0] == pytest.approx(0.75)


def test_bruteforce_agrees_with_configuration_route():
    rng = np.random.default_rng(56)
    for _ in range(4):
        psi = states.random_symmetric(4, rng)
        g = states.random_su2(rng)
        phi = states.apply_diag_symmetric(g, psi)
        assert classify.lu_equivalent_pure(psi, phi) is not None
        assert verify.lu_equivalent_pure_bruteforce(psi, phi) is not None
    for _ in range(4):
        a = states.random_symmetric(4, rng)
        b = states.random_symmetric(4, rng)
        assert classify.lu_equivalent_pure(a, b) is None
        assert verify.lu_equivalent_pure_bruteforce(a, b) is None


def test_bruteforce_result_is_sound():
    rng = np.random.default_rng(57)
    psi = states.random_symmetric(3, rng)
    phi = states.apply_diag_symmetric(states.random_su2(rng), psi)
    g = verify.lu_equivalent_pure_bruteforce(psi, phi)
    assert g is not None
    rho = states.apply_lu(
        states.LocalUnitary.uniform(g, 3), states.to_density(psi)
    )
    assert np.linalg.norm(rho.mat - states.to_density(phi).mat) <= 1e-7
