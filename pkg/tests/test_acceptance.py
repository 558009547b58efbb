"""Acceptance gate: one test per shipped claim, at the stated tolerances.

Each test prints a single 'criterion N: PASS' line on success; a failing
criterion fails its test, so `pytest -v` shows one pass/fail line per claim.
"""
import math
import time

import numpy as np

from symmlu import classify, majorana, mixed, rotmatch, states, verify
from symmlu.classify import StabilizerClass


def _report(num, detail=""):
    print(f"criterion {num}: PASS" + (f" ({detail})" if detail else ""))


def test_criterion_01_majorana_round_trip():
    rng = np.random.default_rng(101)
    worst = 0.0
    start = time.perf_counter()
    for i in range(200):
        n = 1 + i % 8
        psi = states.random_symmetric(n, rng)
        back = majorana.points_to_state(majorana.majorana_points(psi))
        worst = max(worst, psi.distance(back))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-8, f"worst round-trip distance {worst:.3e}"
    assert elapsed < 10.0, f"took {elapsed:.1f}s"
    _report(1, f"worst {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_balanced_two_pole_ngon():
    worst = 0.0
    for n in range(3, 9):
        cfg = majorana.majorana_points(states.ghz(n))
        assert cfg.points.shape[0] == n
        assert int(cfg.multiplicities.sum()) == n
        rows = cfg.as_angle_rows()
        phis = sorted(row[1] % (2 * math.pi) for row in rows)
        for theta, _, _ in rows:
            worst = max(worst, abs(theta - math.pi / 2))
        gaps = [b - a for a, b in zip(phis, phis[1:])]
        gaps.append(phis[0] + 2 * math.pi - phis[-1])
        for gap in gaps:
            worst = max(worst, abs(gap - 2 * math.pi / n))
    assert worst <= 1e-8, f"worst n-gon deviation {worst:.3e}"
    _report(2, f"worst deviation {worst:.2e}")


def test_criterion_03_pure_equivalence():
    rng = np.random.default_rng(103)
    worst = 0.0
    for i in range(100):
        n = 3 + i % 4
        psi = states.random_symmetric(n, rng)
        g = states.random_su2(rng)
        phi = states.apply_diag_symmetric(g, psi)
        got = classify.lu_equivalent_pure(psi, phi)
        assert got is not None, f"pair {i} (n={n}) missed"
        d = states.apply_diag_symmetric(got, psi).distance(phi)
        worst = max(worst, d)
        assert d <= 1e-7, f"pair {i}: returned map off by {d:.3e}"
    for i in range(100):
        n = 3 + i % 4
        a = states.random_symmetric(n, rng)
        b = states.random_symmetric(n, rng)
        assert classify.lu_equivalent_pure(a, b) is None, f"false positive at {i}"
    _report(3, f"100 hits (worst {worst:.2e}), 100 correct rejections")


def test_criterion_04_generator_soundness():
    rng = np.random.default_rng(104)
    cases = []
    for n in (3, 4, 5, 6):
        cases.append((StabilizerClass("i"), n))
        cases.append((StabilizerClass("iia"), n))
        cases.append((StabilizerClass("iib", t=0.5), n))
        cases.append((StabilizerClass("ivb", k=1), n))
        if n % 2 == 0:
            cases.append((StabilizerClass("iva"), n))
    cases.append((StabilizerClass("iii"), 2))
    worst = 0.0
    for sclass, n in cases:
        sampler = classify.stabilizer_generators(sclass, n)
        if sclass.tag == "iii":
            rho = states.to_density(states.singlet())
        else:
            rho = states.to_density(classify.canonical_state(sclass, n))
        for _ in range(100):
            u = sampler.random(rng)
            res = verify.check_stabilizes(u, rho).residual
            worst = max(worst, res)
            assert res <= 1e-9, f"{sclass} n={n}: residual {res:.3e}"
    _report(4, f"{100 * len(cases)} generators, worst residual {worst:.2e}")


def test_criterion_05_dicke_census():
    assert classify.lu_equivalent_pure(states.dicke(6, 1), states.dicke(6, 2)) is None
    g = classify.lu_equivalent_pure(states.dicke(6, 1), states.dicke(6, 5))
    assert g is not None
    assert np.allclose(np.abs(g), [[0, 1], [1, 0]], atol=1e-9), "map is not a bit flip"
    census = classify.class_census(6)
    assert census.dicke_general_ks == (1, 2)
    assert census.stated_dicke_general_count == 3
    assert census.dicke_count_discrepancy
    _report(5, "complement pair equivalent via X; census discrepancy flagged")


def test_criterion_06_finite_groups():
    def pts_state(raw):
        pts = np.asarray(raw, dtype=float)
        return pts / np.linalg.norm(pts, axis=1, keepdims=True)

    tetra = pts_state([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]])
    octa = pts_state(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    )
    phi = (1 + math.sqrt(5)) / 2
    ico = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            ico.extend([[0, a, b], [a, b, 0], [b, 0, a]])
    ico = pts_state(ico)

    for pts, tag, order in (
        (tetra, "Tetrahedral", 12),
        (octa, "Octahedral", 24),
        (ico, "Icosahedral", 60),
    ):
        grp = rotmatch.symmetry_group(majorana.config_from_points(pts))
        assert (grp.tag, grp.order) == (tag, order)
        assert len(rotmatch.closure(grp.generators)) == order

    for n in range(3, 9):
        ring = [
            [math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n), 0.0]
            for j in range(n)
        ]
        grp = rotmatch.symmetry_group(majorana.config_from_points(np.array(ring)))
        assert (grp.tag, grp.m, grp.order) == ("Dihedral", n, 2 * n)
        assert len(rotmatch.closure(grp.generators)) == 2 * n

    rng = np.random.default_rng(106)
    for _ in range(100):
        pts = rng.normal(size=(5, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        grp = rotmatch.symmetry_group(majorana.config_from_points(pts))
        assert (grp.tag, grp.order) == ("Trivial", 1)
    _report(6, "polyhedra 12/24/60, rings 2n, 100 random Trivial")


def test_criterion_07_mixed_equivalence():
    rng = np.random.default_rng(107)
    start = time.perf_counter()
    worst = 0.0
    for i in range(50):
        n = 3 + i % 2
        rho = states.random_symmetric_mixed(n, rng)
        g = states.random_su2(rng)
        sigma = states.apply_lu(states.LocalUnitary.uniform(g, n), rho)
        res = mixed.lu_equivalent_mixed(rho, sigma)
        bound = 1e-7 * 2 ** (n / 2)
        assert res.status == "equivalent", f"pair {i} (n={n}): {res.status}"
        assert res.distance <= bound, f"pair {i}: D={res.distance:.3e} > {bound:.1e}"
        worst = max(worst, res.distance)
    rejected = 0
    for i in range(50):
        n = 3 + i % 2
        d = 1 << n
        rho = states.random_symmetric_mixed(n, rng)
        blurred = states.DensityMatrix(n, 0.98 * rho.mat + 0.02 * np.eye(d) / d)
        res = mixed.lu_equivalent_mixed(rho, blurred)
        assert res.status == "inequivalent_spectrum", f"pair {i} not prefiltered"
        rejected += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"took {elapsed:.1f}s"
    _report(7, f"50 solved (worst {worst:.2e}), {rejected} prefiltered, {elapsed:.1f}s")


def test_criterion_08_two_pole_canonicalization():
    rng = np.random.default_rng(108)
    for i in range(50):
        n = 3 + i % 4
        a = rng.uniform(0.05, 0.95)
        bmax = math.sqrt(a * (1 - a))
        b = rng.uniform(0.0, 0.999) * bmax * np.exp(1j * rng.uniform(0, 2 * math.pi))
        tau = mixed.ghz_form_density(mixed.GhzForm(n, a, b))
        form = mixed.canonical_ghz_form(tau)
        assert form.b.imag == 0.0 if isinstance(form.b, complex) else form.b >= 0
        assert float(np.real(form.b)) >= 0.0
        assert form.pole in (0, (1 << n) - 1)
        assert form.a >= 0.5 - 1e-12

        phi_layer = states.LocalUnitary.uniform(
            np.diag([1.0, np.exp(1j * rng.uniform(0, 2 * math.pi))]).astype(
                np.complex128
            ),
            n,
        )
        twisted = states.apply_lu(phi_layer, tau)
        flipped = states.apply_lu(
            states.LocalUnitary.uniform(states.PAULI_X.astype(np.complex128), n),
            twisted,
        )
        for other in (twisted, flipped):
            f2 = mixed.canonical_ghz_form(other)
            assert abs(f2.a - form.a) <= 1e-9, f"case {i}: a differs"
            assert abs(f2.b - form.b) <= 1e-9, f"case {i}: b differs"
    _report(8, "50 canonical forms, equivalent inputs agree to 1e-9")


def test_criterion_09_singlet_stabilizer():
    rng = np.random.default_rng(109)
    rho = states.to_density(states.singlet())
    assert states.is_permutation_invariant(rho)
    sampler = classify.stabilizer_generators(StabilizerClass("iii"), 2)
    worst = 0.0
    for _ in range(100):
        u = sampler.unit((states.random_su2(rng),))
        res = verify.check_stabilizes(u, rho).residual
        worst = max(worst, res)
        assert res <= 1e-10, f"residual {res:.3e}"
    _report(9, f"100 identical pairs, worst residual {worst:.2e}")


def test_criterion_10_stabilizer_oracle_consistency():
    tetra = majorana.points_to_state(
        np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)
    )
    for name, psi in (
        ("ghz3", states.ghz(3)),
        ("dicke(4,2)", states.dicke(4, 2)),
        ("tetrahedron", tetra),
    ):
        anomalies = verify.stabilizer_anomalies(psi)
        assert anomalies == (), f"{name}: {len(anomalies)} unexplained witnesses"
    _report(10, "no anomalies for ghz3, dicke(4,2), tetrahedron")
