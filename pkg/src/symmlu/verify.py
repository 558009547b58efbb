"""Brute-force oracles over full 2^n-dimensional matrices.

Everything here validates the structured modules independently: residuals are
computed by dense conjugation, stabilizer elements are found by lattice
searches that know nothing about the classification, and equivalence is
re-decided by direct optimization.  Dense work is capped at n <= 10.

sample_stabilizer searches two families:
  * identical tuples g^{(x)n} over a ZYZ Euler lattice with descent, and
  * independent per-qubit diagonal phases diag(1, e^{i phi_k}).
It reports every accepted witness (projectively deduplicated) at the stated
lattice resolution; it cannot certify the absence of stabilizer elements
between lattice points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, classify, states
from .errors import DomainError
from .mixed import _euler_lattice, default_threshold, refine_minimum
from .tolerances import DEFAULT_TOLERANCES

__all__ = [
    "DENSE_ORACLE_CAP",
    "StabilizerWitness",
    "StabilizerSearchConfig",
    "SpectraReport",
    "check_stabilizes",
    "sample_stabilizer",
    "class_membership_distance",
    "stabilizer_anomalies",
    "spectra_report",
    "lu_equivalent_pure_bruteforce",
]

DENSE_ORACLE_CAP = 10


def _cap(n: int):
    if n > DENSE_ORACLE_CAP:
        raise DomainError(f"dense oracles are capped at n <= {DENSE_ORACLE_CAP}, got {n}")


@dataclass(frozen=True)
class StabilizerWitness:
    """A local unitary together with how far it moves the state."""

    unitary: states.LocalUnitary
    residual: float

    def __post_init__(self):
        if self.residual < 0:
            raise DomainError("residual must be nonnegative")

    def accepted(self, tol: float) -> bool:
        return self.residual <= tol


@dataclass(frozen=True)
class StabilizerSearchConfig:
    grid: int = 12
    diag_grid: int | None = None  # None: auto from n and matrix density
    tol: float = 1e-8
    dedupe: float = 1e-6
    max_descents: int = 400
    membership_tol: float = 1e-5
    maxfev: int = 4000


def check_stabilizes(
    u: states.LocalUnitary,
    rho: states.DensityMatrix,
    tol: float | None = None,
) -> StabilizerWitness:
    """Residual || U rho U+ - rho ||_F by dense conjugation."""
    if tol is None:
        tol = DEFAULT_TOLERANCES.equality
    if u.n != rho.n:
        raise DomainError(f"arity mismatch: unitary on {u.n} qubits, state on {rho.n}")
    moved = states.apply_lu(u, rho)
    return StabilizerWitness(u, float(np.linalg.norm(moved.mat - rho.mat)))


# ---------------------------------------------------------------------------
# stabilizer sampling
# ---------------------------------------------------------------------------


def _local_minima(vals: np.ndarray, wrap: tuple) -> np.ndarray:
    """Indices (flat) of lattice points no larger than any axis neighbor."""
    mask = np.ones(vals.shape, dtype=bool)
    for ax in range(vals.ndim):
        if ax in wrap:
            mask &= vals <= np.roll(vals, 1, axis=ax)
            mask &= vals <= np.roll(vals, -1, axis=ax)
        else:
            pad = np.full(vals.shape[:ax] + (1,) + vals.shape[ax + 1 :], np.inf)
            up = np.concatenate([pad, vals], axis=ax)
            down = np.concatenate([vals, pad], axis=ax)
            mask &= vals <= np.take(up, range(vals.shape[ax]), axis=ax)
            mask &= vals <= np.take(down, range(1, vals.shape[ax] + 1), axis=ax)
    return np.flatnonzero(mask.ravel())


def _projective_key(u: states.LocalUnitary, resolution: float):
    parts = []
    for f in u.factors:
        flat = f.ravel()
        scale = np.max(np.abs(flat))
        idx = int(np.argmax(np.abs(flat) > 0.5 * scale))
        phase = flat[idx] / abs(flat[idx])
        aligned = (f / phase).ravel().view(np.float64)  # interleaved re/im
        parts.append(tuple(np.round(aligned / resolution).astype(np.int64).tolist()))
    return tuple(parts)


def _identical_witnesses(rho, cfg):
    n = rho.n
    lattice = _euler_lattice(cfg.grid)
    dists = _kernels.conj_distance_batch(lattice, rho.mat, rho.mat, n)
    shape = (cfg.grid, cfg.grid, cfg.grid)
    minima = _local_minima(dists.reshape(shape), wrap=(0, 2))
    if minima.size > cfg.max_descents:
        minima = minima[np.argsort(dists[minima], kind="stable")[: cfg.max_descents]]

    def objective2(x):
        d = _kernels.conj_distance_single(x[0], x[1], x[2], rho.mat, rho.mat, n)
        return d * d

    out = []
    for idx in minima:
        x, f2 = refine_minimum(objective2, lattice[idx], cfg.maxfev)
        if math.sqrt(max(f2, 0.0)) <= cfg.tol:
            g = _kernels.euler_su2(*x)
            out.append(states.LocalUnitary.uniform(g, n))
    return out


def _entry_table(rho):
    """Significant entries as (squared moduli, per-qubit bit differences)."""
    n = rho.n
    d = 1 << n
    rows, cols = np.nonzero(np.abs(rho.mat) > 1e-14)
    vals = np.abs(rho.mat[rows, cols]) ** 2
    bits = ((np.arange(d)[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.float64)
    diffs = bits[rows] - bits[cols]
    return vals, diffs


def _diag_witnesses(rho, cfg):
    n = rho.n
    vals, diffs = _entry_table(rho)
    if vals.size == 0:
        return []
    p = cfg.diag_grid
    if p is None:
        p = 12
        while p > 3 and p**n * vals.size > 2e8:
            p -= 1
    axis = np.linspace(0.0, 2 * math.pi, p, endpoint=False)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    phis = np.stack([g.ravel() for g in grids], axis=1)
    res = _kernels.diag_phase_residual(phis, vals, diffs)
    minima = _local_minima(res.reshape((p,) * n), wrap=tuple(range(n)))
    if minima.size > cfg.max_descents:
        minima = minima[np.argsort(res[minima], kind="stable")[: cfg.max_descents]]

    def objective2(x):
        d = float(_kernels.diag_phase_residual(x[None, :], vals, diffs)[0])
        return d * d

    out = []
    for idx in minima:
        x, f2 = refine_minimum(objective2, phis[idx], cfg.maxfev)
        if math.sqrt(max(f2, 0.0)) <= cfg.tol:
            factors = tuple(
                np.array([[1.0, 0.0], [0.0, np.exp(1j * t)]], dtype=np.complex128) for t in x
            )
            out.append(states.LocalUnitary(factors))
    return out


def sample_stabilizer(
    rho: states.DensityMatrix,
    cfg: StabilizerSearchConfig | None = None,
) -> tuple[StabilizerWitness, ...]:
    """Search for stabilizer elements of a permutation-invariant state."""
    if cfg is None:
        cfg = StabilizerSearchConfig()
    _cap(rho.n)
    if not states.is_permutation_invariant(rho):
        raise DomainError("stabilizer sampling expects a permutation-invariant state")
    candidates = _identical_witnesses(rho, cfg) + _diag_witnesses(rho, cfg)
    seen = {}
    for u in candidates:
        w = check_stabilizes(u, rho)
        if w.residual > cfg.tol:
            continue
        key = _projective_key(u, cfg.dedupe)
        if key not in seen or w.residual < seen[key].residual:
            seen[key] = w
    return tuple(seen[k] for k in sorted(seen))


# ---------------------------------------------------------------------------
# membership in a classified stabilizer family
# ---------------------------------------------------------------------------


def _conjugated(u: states.LocalUnitary, g: np.ndarray) -> states.LocalUnitary:
    return states.LocalUnitary(tuple(g @ f @ g.conj().T for f in u.factors))


def class_membership_distance(
    sampler: classify.StabilizerSampler,
    u: states.LocalUnitary,
    grid: int = 16,
    maxfev: int = 4000,
) -> float:
    """Projective distance from u to the sampled class family."""
    tag = sampler.sclass.tag
    if tag == "finite":
        return min(
            u.projective_distance(sampler.unit((idx,)))
            for idx in range(len(sampler.sclass.group.elements))
        )
    if tag == "iii":

        def objective2(x):
            d = u.projective_distance(sampler.unit((_kernels.euler_su2(*x),)))
            return d * d

        lattice = _euler_lattice(grid)
        vals = np.array([objective2(x) for x in lattice])
        start = lattice[int(np.argmin(vals))]
        _, best = refine_minimum(objective2, start, maxfev)
        return math.sqrt(max(float(best), 0.0))

    dim = sampler.continuous_dim
    p = grid
    while p > 4 and p**dim > 70000:
        p -= 1
    axis = np.linspace(0.0, 2 * math.pi, p, endpoint=False)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    flips = (False, True) if sampler.has_flip else (False,)
    best2 = math.inf
    for flip in flips:

        def objective2(x, flip=flip):
            d = u.projective_distance(sampler.unit(tuple(x), flip))
            return d * d

        vals = np.array([objective2(x) for x in points])
        start = points[int(np.argmin(vals))]
        _, f2 = refine_minimum(objective2, start, maxfev)
        best2 = min(best2, float(f2))
    return math.sqrt(max(best2, 0.0))


def stabilizer_anomalies(
    psi: states.SymmetricPureState,
    result: classify.ClassificationResult | None = None,
    cfg: StabilizerSearchConfig | None = None,
) -> tuple:
    """Sampled stabilizer witnesses lying outside the classified family.

    An empty result means every witness found by the blind lattice search is
    explained (at lattice resolution) by the classification; each anomaly is
    returned as (witness, membership distance).
    """
    if cfg is None:
        cfg = StabilizerSearchConfig()
    if result is None:
        result = classify.classify_state(psi)
    rho = states.to_density(psi)
    anomalies = []
    for w in sample_stabilizer(rho, cfg):
        moved = _conjugated(w.unitary, result.transform)
        d = class_membership_distance(result.sampler, moved)
        if d > cfg.membership_tol:
            anomalies.append((w, d))
    return tuple(anomalies)


# ---------------------------------------------------------------------------
# spectra and brute-force equivalence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectraReport:
    """Sorted LU-invariant spectra used by the mixed-equivalence prefilter."""

    global_spectrum: tuple
    reduced_spectrum: tuple

    def to_dict(self):
        return {
            "global_spectrum": list(self.global_spectrum),
            "reduced_1qubit_spectrum": list(self.reduced_spectrum),
        }


def spectra_report(rho: states.DensityMatrix) -> SpectraReport:
    glob = np.sort(np.linalg.eigvalsh(rho.mat))[::-1]
    red = np.sort(np.linalg.eigvalsh(states.reduced_1qubit(rho, 0)))[::-1]
    return SpectraReport(tuple(float(v) for v in glob), tuple(float(v) for v in red))


def lu_equivalent_pure_bruteforce(
    psi: states.SymmetricPureState,
    phi: states.SymmetricPureState,
    grid: int = 12,
    threshold: float | None = None,
):
    """Direct identical-tuple search on the projectors; None when no g found.

    Independent of the point-configuration route: optimizes the Frobenius
    distance of the conjugated projector over an Euler lattice with descent.
    """
    if psi.n != phi.n:
        raise DomainError(f"qubit counts differ: {psi.n} vs {phi.n}")
    _cap(psi.n)
    n = psi.n
    if threshold is None:
        threshold = default_threshold(n)
    rho = states.to_density(psi).mat
    sigma = states.to_density(phi).mat
    lattice = _euler_lattice(grid)
    dists = _kernels.conj_distance_batch(lattice, rho, sigma, n)
    shape = (grid, grid, grid)
    minima = _local_minima(dists.reshape(shape), wrap=(0, 2))
    minima = minima[np.argsort(dists[minima], kind="stable")[:40]]

    def objective2(x):
        d = _kernels.conj_distance_single(x[0], x[1], x[2], rho, sigma, n)
        return d * d

    best_g, best_f = None, math.inf
    for idx in minima:
        x, f2 = refine_minimum(objective2, lattice[idx])
        fv = math.sqrt(max(f2, 0.0))
        if fv < best_f:
            best_g, best_f = _kernels.euler_su2(*x), fv
        if best_f <= 0.01 * threshold:
            break
    if best_f <= threshold:
        return best_g
    return None
