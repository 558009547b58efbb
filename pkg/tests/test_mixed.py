"""Mixed-state equivalence decisions and the two-pole canonical form."""
import math

import numpy as np
import pytest

from symmlu import mixed, states
from symmlu.errors import DomainError, NotGhzFormError


def phase_layer(phi, n):
    return states.LocalUnitary.uniform(
        np.diag([1.0, np.exp(1j * phi)]).astype(np.complex128), n
    )


# ---------------------------------------------------------------------------
# equivalence search
# ---------------------------------------------------------------------------


def test_default_threshold_scales_with_dimension():
    assert mixed.default_threshold(3) == pytest.approx(1e-7 * 2**1.5)
    assert mixed.default_threshold(4) == pytest.approx(4e-7)


def test_search_config_validation():
    with pytest.raises(DomainError):
        mixed.EquivalenceSearchConfig(grid=3)
    with pytest.raises(DomainError):
        mixed.EquivalenceSearchConfig(threshold=0.0)
    with pytest.raises(DomainError):
        mixed.EquivalenceSearchConfig(restarts=-1)
    with pytest.raises(DomainError):
        mixed.EquivalenceSearchConfig(maxfev=10)


def test_constructed_pairs_are_recovered():
    rng = np.random.default_rng(41)
    for _ in range(4):
        rho = states.random_symmetric_mixed(3, rng)
        g = states.random_su2(rng)
        sigma = states.apply_lu(states.LocalUnitary.uniform(g, 3), rho)
        res = mixed.lu_equivalent_mixed(rho, sigma)
        assert res.status == "equivalent"
        assert bool(res)
        assert res.distance <= 1e-9
        # the reported unitary itself certifies the equivalence
        check = states.apply_lu(states.LocalUnitary.uniform(res.unitary, 3), rho)
        assert np.linalg.norm(check.mat - sigma.mat) <= 1e-9


def test_self_equivalence_returns_stabilizer_element():
    rng = np.random.default_rng(42)
    rho = states.random_symmetric_mixed(4, rng)
    res = mixed.lu_equivalent_mixed(rho, rho)
    assert res.status == "equivalent"
    assert res.distance <= 1e-9


def test_spectrum_prefilter_certifies_inequivalence():
    rng = np.random.default_rng(43)
    rho = states.random_symmetric_mixed(3, rng)
    d = rho.mat.shape[0]
    blurred = states.DensityMatrix(3, 0.97 * rho.mat + 0.03 * np.eye(d) / d)
    res = mixed.lu_equivalent_mixed(rho, blurred)
    assert res.status == "inequivalent_spectrum"
    assert not bool(res)
    assert res.unitary is None


def test_reduced_spectrum_prefilter():
    # same global eigenvalues {3/4, 1/4}, different 1-qubit reductions
    rho = mixed.ghz_form_density(mixed.GhzForm(3, 0.75, 0.0))
    sig = states.DensityMatrix(
        3,
        0.75 * states.to_density(states.dicke(3, 0)).mat
        + 0.25 * states.to_density(states.dicke(3, 1)).mat,
    )
    res = mixed.lu_equivalent_mixed(rho, sig)
    assert res.status == "inequivalent_spectrum"
    assert "reduced" in res.detail


def test_non_identical_diagonal_stabilizer_is_shadowed():
    # a two-sided diagonal twist fixes a two-pole state exactly, so the
    # identical-power search still answers with a (near-)identity element
    tau = mixed.ghz_form_density(mixed.GhzForm(3, 0.6, 0.3))
    t = 0.9
    u = states.LocalUnitary(
        (states.rz(t), states.rz(-t), np.eye(2, dtype=np.complex128))
    )
    tau2 = states.apply_lu(u, tau)
    assert np.max(np.abs(tau2.mat - tau.mat)) < 1e-15
    res = mixed.lu_equivalent_mixed(tau, tau2)
    assert res.status == "equivalent"
    assert res.distance <= 1e-9


def test_permutation_invariance_is_required():
    vec = np.zeros(8, dtype=np.complex128)
    vec[1] = 1.0  # |001> is not permutation invariant
    rho = states.DensityMatrix(3, np.outer(vec, vec.conj()))
    sym = states.random_symmetric_mixed(3, np.random.default_rng(44))
    with pytest.raises(DomainError, match="qubits"):
        mixed.lu_equivalent_mixed(rho, sym)
    with pytest.raises(DomainError, match="qubits"):
        mixed.lu_equivalent_mixed(sym, rho)


def test_small_n_is_rejected():
    rho = states.to_density(states.ghz(2))
    with pytest.raises(DomainError):
        mixed.lu_equivalent_mixed(rho, rho)
    with pytest.raises(DomainError):
        mixed.two_factor_search(
            states.to_density(states.ghz(3)), states.to_density(states.ghz(3))
        )


def test_qubit_count_mismatch():
    with pytest.raises(DomainError):
        mixed.lu_equivalent_mixed(
            states.to_density(states.ghz(3)), states.to_density(states.ghz(4))
        )


def test_two_factor_search_heuristic():
    rng = np.random.default_rng(45)
    rho = states.to_density(states.ghz(2))
    u = states.LocalUnitary((states.random_su2(rng), states.random_su2(rng)))
    sigma = states.apply_lu(u, rho)
    res = mixed.two_factor_search(rho, sigma)
    assert res.status == "equivalent"
    g1, g2 = res.unitary
    check = states.apply_lu(states.LocalUnitary((g1, g2)), rho)
    assert np.linalg.norm(check.mat - sigma.mat) <= mixed.default_threshold(2)

    blurred = states.DensityMatrix(2, 0.9 * rho.mat + 0.1 * np.eye(4) / 4)
    assert mixed.two_factor_search(rho, blurred).status == "inequivalent_spectrum"


# ---------------------------------------------------------------------------
# two-pole canonical form
# ---------------------------------------------------------------------------


def test_ghz_projector_canonical_form():
    form = mixed.canonical_ghz_form(states.to_density(states.ghz(3)))
    assert form.n == 3
    assert form.pole == 0
    assert abs(form.a - 0.5) < 1e-12
    assert abs(form.b - 0.5) < 1e-12


def test_complex_coherence_becomes_real_nonnegative():
    b = 0.25 * np.exp(1j * math.pi / 3)
    tau = mixed.ghz_form_density(mixed.GhzForm(3, 0.5, b))
    form = mixed.canonical_ghz_form(tau)
    assert abs(form.a - 0.5) < 1e-12
    assert abs(form.b - 0.25) < 1e-12
    assert form.b.imag == 0 if isinstance(form.b, complex) else True
    # the canonicalizing phase layer really does the job on the matrix
    rotated = states.apply_lu(phase_layer(math.pi / 9, 3), tau)
    entry = rotated.mat[0, 7]
    assert abs(entry.imag) < 1e-12 and entry.real > 0


def test_pure_pole_has_zero_coherence():
    tau = mixed.ghz_form_density(mixed.GhzForm(4, 1.0, 0.0))
    form = mixed.canonical_ghz_form(tau)
    assert form.a == 1.0
    assert abs(form.b) == 0.0


def test_population_flip_moves_weight_to_the_zero_pole():
    b = 0.2 * np.exp(1j * 1.1)
    tau = mixed.ghz_form_density(mixed.GhzForm(3, 0.3, b))
    form = mixed.canonical_ghz_form(tau)
    assert abs(form.a - 0.7) < 1e-12
    assert abs(form.b - 0.2) < 1e-12


def test_phase_layer_identity_on_coherence():
    # conjugating by diag(1, e^{i phi})^{(x)n} multiplies b by e^{-i n phi}
    rng = np.random.default_rng(46)
    for n in (3, 4, 6):
        b = 0.3 * np.exp(1j * rng.uniform(0, 2 * math.pi))
        tau = mixed.ghz_form_density(mixed.GhzForm(n, 0.55, b))
        phi = rng.uniform(0, 2 * math.pi)
        out = states.apply_lu(phase_layer(phi, n), tau)
        hi = (1 << n) - 1
        assert abs(out.mat[0, hi] - b * np.exp(-1j * n * phi)) < 1e-12


def test_equivalent_inputs_canonicalize_identically():
    rng = np.random.default_rng(47)
    for _ in range(5):
        n = 4
        a = rng.uniform(0.5, 0.9)
        bmax = math.sqrt(a * (1 - a))
        b = rng.uniform(0.1, 0.95) * bmax * np.exp(1j * rng.uniform(0, 2 * math.pi))
        tau = mixed.ghz_form_density(mixed.GhzForm(n, a, b))
        twisted = states.apply_lu(phase_layer(rng.uniform(0, 2 * math.pi), n), tau)
        flipped = states.apply_lu(
            states.LocalUnitary.uniform(states.PAULI_X.astype(np.complex128), n),
            twisted,
        )
        f0 = mixed.canonical_ghz_form(tau)
        f1 = mixed.canonical_ghz_form(twisted)
        f2 = mixed.canonical_ghz_form(flipped)
        for f in (f1, f2):
            assert abs(f.a - f0.a) < 1e-9
            assert abs(f.b - f0.b) < 1e-9


def test_off_support_entries_raise_with_witnesses():
    tau = states.to_density(states.dicke(3, 1))
    with pytest.raises(NotGhzFormError) as exc:
        mixed.canonical_ghz_form(tau)
    offending = exc.value.offending
    assert offending
    for i, j, val in offending:
        assert (i, j) not in ((0, 0), (0, 7), (7, 0), (7, 7))
        assert abs(val) > 1e-12


def test_ghz_form_psd_and_pole_validation():
    with pytest.raises(DomainError):
        mixed.GhzForm(3, 0.9, 0.5)  # |b|^2 > a(1-a)
    with pytest.raises(DomainError):
        mixed.GhzForm(3, 1.2, 0.0)
    with pytest.raises(DomainError):
        mixed.GhzForm(3, 0.6, 0.1, pole=3)
    top = mixed.GhzForm(3, 0.6, 0.1, pole=7)
    m = mixed.ghz_form_density(top).mat
    assert m[7, 7] == pytest.approx(0.6)
    assert m[0, 0] == pytest.approx(0.4)


# ---------------------------------------------------------------------------
# two-qubit diagonal support check
# ---------------------------------------------------------------------------


def test_support_check_passes_on_two_pole_state():
    tau = mixed.ghz_form_density(mixed.GhzForm(3, 0.6, 0.3))
    res = mixed.two_qubit_support_check(tau, 0, 1, math.pi / 4)
    assert res.applicable
    assert res.ok
    assert res.witness is None
    assert bool(res)


def test_support_check_not_applicable_when_phase_moves_the_state():
    tau = states.to_density(states.dicke(3, 1))
    res = mixed.two_qubit_support_check(tau, 0, 1, math.pi / 4)
    assert not res.applicable
    assert res.residual > 0.1
    assert res.ok is None
    assert not bool(res)


def test_support_check_flags_injected_coherence():
    # couple the zero string to a neighbor that differs only on qubit 2;
    # the (0, 1)-phase still stabilizes the state, the support test must fail
    m = np.zeros((8, 8), dtype=np.complex128)
    m[0, 0] = 0.6
    m[1, 1] = 0.4
    m[0, 1] = m[1, 0] = 0.1
    tau = states.DensityMatrix(3, m)
    res = mixed.two_qubit_support_check(tau, 0, 1, math.pi / 4)
    assert res.applicable
    assert res.ok is False
    assert res.witness == (0, 1)
    assert not bool(res)


def test_support_check_argument_validation():
    tau = mixed.ghz_form_density(mixed.GhzForm(3, 0.6, 0.3))
    with pytest.raises(DomainError):
        mixed.two_qubit_support_check(tau, 0, 0, math.pi / 4)
    with pytest.raises(DomainError):
        mixed.two_qubit_support_check(tau, 0, 3, math.pi / 4)
    with pytest.raises(DomainError):
        mixed.two_qubit_support_check(tau, 0, 1, math.pi)
