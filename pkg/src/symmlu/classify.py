"""Stabilizer classes of symmetric pure states and pure-state LU equivalence.

A symmetric state with an infinite local-unitary stabilizer falls into one of
a short list of families, named here by roman tags:

  i    product of identical 1-qubit states           (one point, mult n)
  iia  balanced two-pole superposition               (equatorial n-gon orbit)
  iib  unbalanced two-pole superposition, t in (0,1) (n-gon orbit off equator)
  iii  the 2-qubit antisymmetric state (density-matrix level carve-out)
  iva  balanced Dicke state, k = n/2                 (antipodal equal clusters)
  ivb  Dicke state with k != n/2                     (antipodal unequal clusters)

Everything else has a finite stabilizer described by the rotational symmetry
group of its point configuration.

Degenerate geometries are hypothesized from a coarse re-clustering of the
configuration (multiple roots of the underlying polynomial scatter far beyond
the fine cluster radius), but a branch is accepted only when the rotated
state's coefficients pass the strict algebraic test, so classification
decisions never rest on the coarse geometry alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import majorana, rotmatch, states
from .errors import AmbiguousClassificationError, DomainError
from .tolerances import DEFAULT_TOLERANCES

__all__ = [
    "StabilizerClass",
    "StabilizerSampler",
    "ClassificationResult",
    "ClassCensus",
    "classify_state",
    "lu_equivalent_pure",
    "stabilizer_generators",
    "canonical_state",
    "class_census",
]

# chordal radius used only to PROPOSE degenerate geometries; scattered
# multiple roots of an n <= 12 polynomial stay well inside this radius
_COARSE_CLUSTER = 0.15

_EZ = np.array([0.0, 0.0, 1.0])
_FLIP_X = np.array([[0, -1j], [-1j, 0]], dtype=np.complex128)  # exp(-i pi X / 2)


@dataclass(frozen=True)
class StabilizerClass:
    """Class tag plus its parameters (t for iib, k for iv, group for finite)."""

    tag: str
    t: float | None = None
    k: int | None = None
    group: rotmatch.PointGroup | None = None

    def __post_init__(self):
        if self.tag not in ("i", "iia", "iib", "iii", "iva", "ivb", "finite"):
            raise DomainError(f"unknown class tag {self.tag!r}")
        if self.tag == "iib" and not (self.t is not None and 0 < self.t < 1):
            raise DomainError("class iib needs a parameter t in (0, 1)")
        if self.tag == "ivb" and self.k is None:
            raise DomainError("class ivb needs an excitation number k")
        if self.tag == "finite" and self.group is None:
            raise DomainError("finite class needs its point group")

    def __str__(self):
        if self.tag == "iib":
            return f"iib(t={self.t:.6g})"
        if self.tag == "ivb":
            return f"ivb(k={self.k})"
        if self.tag == "finite":
            g = self.group
            return f"finite({g.tag}{'' if g.m is None else g.m})"
        return self.tag


def canonical_state(sclass: StabilizerClass, n: int) -> states.SymmetricPureState:
    """Canonical representative of a class for n qubits."""
    tag = sclass.tag
    if tag == "i":
        return states.dicke(n, 0)
    if tag == "iia":
        return states.ghz(n)
    if tag == "iib":
        return states.ghz(n, math.cos(math.pi * sclass.t / 4), math.sin(math.pi * sclass.t / 4))
    if tag == "iva":
        if n % 2:
            raise DomainError("balanced Dicke class needs even n")
        return states.dicke(n, n // 2)
    if tag == "ivb":
        return states.dicke(n, sclass.k)
    if tag == "iii":
        raise DomainError("the antisymmetric class has no symmetric-basis representative")
    raise DomainError(f"no canonical symmetric representative for {tag}")


# ---------------------------------------------------------------------------
# generator samplers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilizerSampler:
    """Produces stabilizer elements of the canonical state of a class.

    unit(params, flip) evaluates the class formula at a parameter tuple:
      i    params = (t_0 .. t_{n-1}), one free phase per qubit
      iia  params = (t_0 .. t_{n-2}); last qubit compensates with the
           opposite-sign phase; flip applies an X layer
      iib  as iia without the flip option
      iii  params = (g,) an arbitrary 2x2 unitary, applied to both qubits
      iva  params = (t,), identical phases; flip applies an X layer
      ivb  params = (t,), identical phases
      finite params = (index,), identical copies of the group element
    """

    sclass: StabilizerClass
    n: int

    @property
    def continuous_dim(self) -> int:
        return {
            "i": self.n,
            "iia": self.n - 1,
            "iib": self.n - 1,
            "iii": 3,
            "iva": 1,
            "ivb": 1,
            "finite": 0,
        }[self.sclass.tag]

    @property
    def has_flip(self) -> bool:
        return self.sclass.tag in ("iia", "iva")

    def unit(self, params=(), flip: bool = False) -> states.LocalUnitary:
        tag = self.sclass.tag
        n = self.n
        if flip and not self.has_flip:
            raise DomainError(f"class {tag} has no antidiagonal layer")
        if tag == "iii":
            (g,) = params
            if not states.is_unitary(np.asarray(g, dtype=np.complex128), 1e-9):
                raise DomainError("class iii parameter must be a 2x2 unitary")
            return states.LocalUnitary((g, g))
        if tag == "finite":
            (idx,) = params
            su2 = rotmatch.so3_to_su2(self.sclass.group.elements[int(idx)])
            return states.LocalUnitary.uniform(su2, n)
        ts = tuple(float(t) for t in params)
        if len(ts) != self.continuous_dim:
            raise DomainError(
                f"class {tag} expects {self.continuous_dim} parameters, got {len(ts)}"
            )
        if tag == "i":
            factors = [states.rz(t) for t in ts]
        elif tag in ("iia", "iib"):
            # the final factor carries the compensating opposite-sign phase,
            # which is what actually fixes the two-pole projector
            factors = [states.rz(t) for t in ts] + [states.rz(-sum(ts))]
        else:  # iva, ivb
            factors = [states.rz(ts[0])] * n
        if flip:
            factors = [f @ states.PAULI_X for f in factors]
        return states.LocalUnitary(tuple(factors))

    def random(self, rng: np.random.Generator) -> states.LocalUnitary:
        tag = self.sclass.tag
        if tag == "iii":
            return self.unit((states.random_su2(rng),))
        if tag == "finite":
            return self.unit((rng.integers(len(self.sclass.group.elements)),))
        params = tuple(rng.uniform(0, 2 * math.pi, size=self.continuous_dim))
        flip = bool(rng.integers(2)) if self.has_flip else False
        return self.unit(params, flip)

    def representative_generators(self) -> tuple:
        """One element per continuous direction plus any discrete layer."""
        tag = self.sclass.tag
        out = []
        if tag == "iii":
            out.append(self.unit((states.rx(2 * math.pi / 3),)))
            out.append(self.unit((states.rz(2 * math.pi / 3),)))
        elif tag == "finite":
            for g in self.sclass.group.generators:
                out.append(states.LocalUnitary.uniform(rotmatch.so3_to_su2(g), self.n))
            if not out:
                out.append(states.LocalUnitary.uniform(np.eye(2, dtype=complex), self.n))
        else:
            for d in range(self.continuous_dim):
                params = tuple(
                    2 * math.pi / 3 if j == d else 0.0 for j in range(self.continuous_dim)
                )
                out.append(self.unit(params))
            if self.has_flip:
                out.append(self.unit((0.0,) * self.continuous_dim, flip=True))
        return tuple(out)


def stabilizer_generators(sclass: StabilizerClass, n: int) -> StabilizerSampler:
    """Sampler for the stabilizer family of a class's canonical state."""
    if n < 1:
        raise DomainError("need n >= 1")
    if sclass.tag == "iii" and n != 2:
        raise DomainError("the antisymmetric class exists only for n = 2")
    if sclass.tag == "iva" and n % 2:
        raise DomainError("balanced Dicke class needs even n")
    if sclass.tag == "ivb" and not (0 < sclass.k < n and 2 * sclass.k != n):
        raise DomainError(f"class ivb needs 0 < k < n with k != n/2, got k={sclass.k}")
    if sclass.tag in ("iia", "iib") and n < 2:
        raise DomainError("two-pole classes need n >= 2")
    return StabilizerSampler(sclass, n)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationResult:
    sclass: StabilizerClass
    canonical: states.SymmetricPureState
    transform: np.ndarray  # g with g^{(x)n} psi ~ canonical up to phase
    generators: tuple = field(default=())
    sampler: StabilizerSampler | None = None
    residual: float = 0.0

    def __str__(self):
        return f"{self.sclass} (residual {self.residual:.2e})"


def _rotated_coeffs(psi, axis):
    g = rotmatch.so3_to_su2(rotmatch.rotation_between(axis, _EZ))
    return g, states.apply_diag_symmetric(g, psi)


def _dicke_check(psi, axis, tol):
    """Accept if rotating axis to the north pole leaves one basis coefficient."""
    g, rot = _rotated_coeffs(psi, axis)
    mags = np.abs(rot.coeffs)
    k = int(np.argmax(mags))
    rest = np.delete(mags, k)
    if rest.size and rest.max() > tol:
        return None
    return g, k


def _two_term_check(psi, axis, tol):
    """Accept if rotating axis to the pole kills all interior coefficients."""
    g, rot = _rotated_coeffs(psi, axis)
    mags = np.abs(rot.coeffs)
    if mags[1:-1].size and mags[1:-1].max() > tol:
        return None
    if mags[0] <= tol or mags[-1] <= tol:
        return None
    return g, rot


def _two_term_axes(cfg):
    axes = []
    mean = (cfg.points * cfg.multiplicities[:, None]).sum(axis=0)
    nm = np.linalg.norm(mean)
    if nm > 1e-9:
        axes.append(mean / nm)
    moment = np.einsum("i,ij,ik->jk", cfg.multiplicities.astype(float), cfg.points, cfg.points)
    w, v = np.linalg.eigh(moment)
    axes.append(v[:, 0])
    uniq = []
    for ax in axes:
        if all(abs(float(np.dot(ax, u))) < 1.0 - 1e-9 for u in uniq):
            uniq.append(ax)
    return uniq


def classify_state(psi: states.SymmetricPureState, tol: float | None = None) -> ClassificationResult:
    """Decide the stabilizer class of a symmetric pure state."""
    if tol is None:
        tol = DEFAULT_TOLERANCES.equality
    n = psi.n
    fine = majorana.majorana_points(psi)
    if n == 1:
        g = rotmatch.so3_to_su2(rotmatch.rotation_between(fine.points[0], _EZ))
        return _build_result(psi, StabilizerClass("i"), g, tol)

    accepted: dict[str, tuple] = {}

    coarse = majorana.majorana_points(psi, tol=_COARSE_CLUSTER)
    for axis in coarse.points:
        hit = _dicke_check(psi, axis, tol)
        if hit is None:
            continue
        g, k = hit
        if k == 0 or k == n:
            if k == n:
                g = _FLIP_X @ g
            accepted.setdefault("i", (StabilizerClass("i"), g))
        else:
            kc = min(k, n - k)
            if k != kc:
                g = _FLIP_X @ g
            if 2 * kc == n:
                accepted.setdefault("iva", (StabilizerClass("iva"), g))
            else:
                accepted.setdefault(f"ivb:{kc}", (StabilizerClass("ivb", k=kc), g))

    for axis in _two_term_axes(fine):
        hit = _two_term_check(psi, axis, tol)
        if hit is None:
            continue
        g, rot = hit
        if abs(rot.coeffs[0]) < abs(rot.coeffs[-1]):
            g = _FLIP_X @ g
            rot = states.apply_diag_symmetric(_FLIP_X, rot)
        a, b = abs(rot.coeffs[0]), abs(rot.coeffs[-1])
        phase = (np.angle(rot.coeffs[0]) - np.angle(rot.coeffs[-1])) / n
        g = np.array([[1, 0], [0, np.exp(1j * phase)]], dtype=np.complex128) @ g
        if abs(a - b) <= tol:
            accepted.setdefault("iia", (StabilizerClass("iia"), g))
        else:
            t = 4.0 / math.pi * math.atan2(b, a)
            accepted.setdefault(f"iib:{t:.6f}", (StabilizerClass("iib", t=float(t)), g))

    if len(accepted) > 1:
        raise AmbiguousClassificationError([str(v[0]) for v in accepted.values()])
    if accepted:
        sclass, g = next(iter(accepted.values()))
        return _build_result(psi, sclass, g, tol)

    group = rotmatch.symmetry_group(fine)
    sclass = StabilizerClass("finite", group=group)
    sampler = StabilizerSampler(sclass, n)
    return ClassificationResult(
        sclass=sclass,
        canonical=psi.phase_normalized(),
        transform=np.eye(2, dtype=np.complex128),
        generators=sampler.representative_generators(),
        sampler=sampler,
        residual=0.0,
    )


def _build_result(psi, sclass, g, tol):
    canon = canonical_state(sclass, psi.n)
    moved = states.apply_diag_symmetric(g, psi)
    residual = moved.distance(canon)
    if residual > 10 * tol:
        raise AmbiguousClassificationError(
            [f"{sclass} (canonical residual {residual:.3g} exceeds tolerance)"]
        )
    sampler = StabilizerSampler(sclass, psi.n)
    return ClassificationResult(
        sclass=sclass,
        canonical=canon,
        transform=g,
        generators=sampler.representative_generators(),
        sampler=sampler,
        residual=float(residual),
    )


# ---------------------------------------------------------------------------
# pure-state LU equivalence
# ---------------------------------------------------------------------------


def lu_equivalent_pure(
    psi: states.SymmetricPureState,
    phi: states.SymmetricPureState,
    tol: float | None = None,
):
    """A 2x2 unitary g with g^{(x)n} psi = phi up to phase, or None.

    Point configurations are matched by rotation; every matching rotation is
    lifted to SU(2) and checked directly on the states.
    """
    if tol is None:
        tol = DEFAULT_TOLERANCES.equality
    if psi.n != phi.n:
        raise DomainError(f"qubit counts differ: {psi.n} vs {phi.n}")
    ca = majorana.majorana_points(psi)
    cb = majorana.majorana_points(phi)
    best = None
    for r in rotmatch.all_matching_rotations(ca, cb):
        g = rotmatch.so3_to_su2(r)
        d = states.apply_diag_symmetric(g, psi).distance(phi)
        if best is None or d < best[1]:
            best = (g, d)
    if best is not None and best[1] <= tol:
        return best[0]
    return None


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassCensus:
    """Families with infinite stabilizer for a given n."""

    n: int
    product: bool
    balanced_two_pole: bool
    two_pole_family: str
    balanced_dicke: bool
    dicke_general_ks: tuple
    stated_dicke_general_count: int
    dicke_count_discrepancy: bool

    def to_dict(self):
        return {
            "n": self.n,
            "classes": {
                "i": {"count": 1},
                "iia": {"count": 1},
                "iib": {"family": self.two_pole_family},
                "iva": {"count": 1 if self.balanced_dicke else 0},
                "ivb": {
                    "canonical_k": list(self.dicke_general_ks),
                    "canonical_count": len(self.dicke_general_ks),
                    "stated_count": self.stated_dicke_general_count,
                    "count_discrepancy": self.dicke_count_discrepancy,
                },
            },
        }


def class_census(n: int) -> ClassCensus:
    """Enumerate the infinite-stabilizer classes for n >= 3 qubits.

    The general-Dicke classes are canonically k in {1 .. ceil(n/2) - 1}
    (complements identified, the balanced case carved out); the commonly
    stated count floor(n/2) disagrees for even n and is reported alongside
    with a discrepancy flag.
    """
    if n < 3:
        raise DomainError("census needs n >= 3")
    ks = tuple(k for k in range(1, n // 2 + 1) if 2 * k != n)
    stated = n // 2
    return ClassCensus(
        n=n,
        product=True,
        balanced_two_pole=True,
        two_pole_family="t in (0, 1)",
        balanced_dicke=(n % 2 == 0),
        dicke_general_ks=ks,
        stated_dicke_general_count=stated,
        dicke_count_discrepancy=(len(ks) != stated),
    )
