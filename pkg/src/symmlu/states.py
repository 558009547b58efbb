"""States of n qubits: symmetric pure states, full vectors, density matrices.

Conventions used across the package:

* Basis strings are integers whose binary digits are qubit values with
  qubit 0 as the most significant bit, matching the Kronecker order
  g_0 (x) g_1 (x) ... (x) g_{n-1}.
* A permutation-symmetric pure state is stored as its n+1 coefficients in
  the orthonormal symmetrized-weight basis: basis vector k is the normalized
  uniform superposition of all weight-k strings, so the amplitude of a
  weight-k string in the full vector is c_k / sqrt(C(n, k)).
* Global phase is normalized by making the first coefficient with modulus
  above the zero threshold real and positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NormalizationError
from .tolerances import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "SymmetricPureState",
    "PureState",
    "DensityMatrix",
    "LocalUnitary",
    "DENSE_QUBIT_CAP",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "weight",
    "complement",
    "phase_normalize",
    "phase_distance",
    "is_unitary",
    "rx",
    "ry",
    "rz",
    "dicke",
    "ghz",
    "singlet",
    "symmetrize",
    "expand",
    "to_density",
    "symmetric_power",
    "apply_diag_symmetric",
    "apply_lu",
    "permute_qubits",
    "is_permutation_invariant",
    "reduced_1qubit",
    "random_su2",
    "random_local_unitary",
    "random_symmetric",
    "random_symmetric_mixed",
]

# Full 2^n storage is reserved for small systems and oracle checks.
DENSE_QUBIT_CAP = 12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def weight(index: int) -> int:
    """Number of 1 bits in a basis-string index."""
    return int(index).bit_count()


def complement(index: int, n: int) -> int:
    """Bitwise complement of an n-bit string index (an involution)."""
    if not 0 <= index < (1 << n):
        raise DomainError(f"index {index} out of range for {n} qubits")
    return ((1 << n) - 1) ^ index


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


def phase_normalize(vec: np.ndarray, zero_tol: float | None = None) -> np.ndarray:
    """Multiply by a global phase making the first significant entry real > 0."""
    vec = np.asarray(vec, dtype=np.complex128)
    if zero_tol is None:
        zero_tol = DEFAULT_TOLERANCES.coeff_zero
    cutoff = zero_tol * max(np.linalg.norm(vec), 1e-300)
    for v in vec:
        if abs(v) > cutoff:
            return vec * np.exp(-1j * np.angle(v))
    return vec.copy()


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over global phase of ||u - e^{ia} v|| for unit vectors.

    Evaluated as the entrywise difference after aligning v's phase; the
    closed form sqrt(2 - 2|<v,u>|) would bottom out near sqrt(eps).
    """
    u = np.asarray(u).ravel()
    v = np.asarray(v).ravel()
    ip = np.vdot(v, u)
    if abs(ip) > 0:
        v = v * (ip / abs(ip))
    return float(np.linalg.norm(u - v))


def is_unitary(u: np.ndarray, tol: float | None = None) -> bool:
    u = np.asarray(u)
    if u.shape != (2, 2):
        return False
    if tol is None:
        tol = DEFAULT_TOLERANCES.equality
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(2))) <= tol)


def rx(t: float) -> np.ndarray:
    """exp(-i t X / 2)."""
    return math.cos(t / 2) * np.eye(2) - 1j * math.sin(t / 2) * PAULI_X


def ry(t: float) -> np.ndarray:
    """exp(-i t Y / 2)."""
    return math.cos(t / 2) * np.eye(2) - 1j * math.sin(t / 2) * PAULI_Y


def rz(t: float) -> np.ndarray:
    """exp(-i t Z / 2) = diag(e^{-it/2}, e^{+it/2})."""
    return np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class SymmetricPureState:
    """n-qubit permutation-symmetric pure state, n+1 weight-basis coefficients."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"need n >= 1 qubits, got {self.n}")
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.n + 1,):
            raise DomainError(
                f"expected {self.n + 1} coefficients for n={self.n}, got shape {c.shape}"
            )
        norm = np.linalg.norm(c)
        if abs(norm - 1.0) > 1e-9:
            raise NormalizationError(f"coefficient norm {norm} is not 1")
        # snap tiny drift so downstream norms stay within the strict tolerance
        object.__setattr__(self, "coeffs", _freeze(c / norm))

    @classmethod
    def from_unnormalized(cls, coeffs) -> "SymmetricPureState":
        c = np.asarray(coeffs, dtype=np.complex128)
        norm = np.linalg.norm(c)
        if norm == 0:
            raise NormalizationError("zero coefficient vector")
        return cls(len(c) - 1, c / norm)

    def phase_normalized(self) -> "SymmetricPureState":
        return SymmetricPureState(self.n, phase_normalize(self.coeffs))

    def distance(self, other: "SymmetricPureState") -> float:
        """Global-phase-invariant distance."""
        if self.n != other.n:
            raise DomainError("qubit counts differ")
        return phase_distance(self.coeffs, other.coeffs)


@dataclass(frozen=True, eq=False)
class PureState:
    """Full 2^n state vector."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=np.complex128)
        if self.n < 1 or a.shape != (1 << self.n,):
            raise DomainError(f"amplitude vector shape {a.shape} wrong for n={self.n}")
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > 1e-9:
            raise NormalizationError(f"state norm {norm} is not 1")
        object.__setattr__(self, "amps", _freeze(a / norm))

    def distance(self, other: "PureState") -> float:
        if self.n != other.n:
            raise DomainError("qubit counts differ")
        return phase_distance(self.amps, other.amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """2^n x 2^n density matrix (hermitian, unit trace, PSD within tolerance)."""

    n: int
    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=np.complex128)
        d = 1 << self.n
        if self.n < 1 or m.shape != (d, d):
            raise DomainError(f"matrix shape {m.shape} wrong for n={self.n}")
        tol = DEFAULT_TOLERANCES
        herm = np.max(np.abs(m - m.conj().T))
        if herm > tol.hermiticity:
            raise DomainError(f"matrix not hermitian: max |M - M^+| = {herm}")
        tr = m.trace().real
        if abs(tr - 1.0) > 1e-9:
            raise NormalizationError(f"trace {tr} is not 1")
        m = 0.5 * (m + m.conj().T) / tr
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -1e-9:
            raise DomainError(f"matrix not PSD: lowest eigenvalue {lo}")
        object.__setattr__(self, "mat", _freeze(m))


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    """Tuple of one single-qubit unitary per qubit."""

    factors: tuple

    def __post_init__(self):
        fs = tuple(np.asarray(f, dtype=np.complex128) for f in self.factors)
        if not fs:
            raise DomainError("need at least one factor")
        for k, f in enumerate(fs):
            if not is_unitary(f, 1e-9):
                raise DomainError(f"factor {k} is not a 2x2 unitary")
        object.__setattr__(self, "factors", tuple(_freeze(f) for f in fs))

    @classmethod
    def uniform(cls, g: np.ndarray, n: int) -> "LocalUnitary":
        return cls(tuple(g for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.factors)

    def matrix(self) -> np.ndarray:
        if self.n > DENSE_QUBIT_CAP:
            raise DomainError(f"dense matrix blocked for n={self.n} > {DENSE_QUBIT_CAP}")
        big = self.factors[0]
        for f in self.factors[1:]:
            big = np.kron(big, f)
        return big

    def compose(self, other: "LocalUnitary") -> "LocalUnitary":
        """Factor-wise product self . other (other acts first)."""
        if self.n != other.n:
            raise DomainError("arity mismatch")
        return LocalUnitary(tuple(a @ b for a, b in zip(self.factors, other.factors)))

    def projective_distance(self, other: "LocalUnitary") -> float:
        """Max over qubits of the phase-minimized factor distance.

        Computed entrywise after aligning each factor's phase; the closed
        form sqrt(4 - 2|tr(b^+ a)|) would bottom out near sqrt(eps).
        """
        if self.n != other.n:
            raise DomainError("arity mismatch")
        worst = 0.0
        for a, b in zip(self.factors, other.factors):
            ip = np.trace(b.conj().T @ a)
            if abs(ip) > 0:
                b = b * (ip / abs(ip))
            worst = max(worst, float(np.linalg.norm(a - b)))
        return worst

    def projectively_equal(self, other: "LocalUnitary", tol: float | None = None) -> bool:
        if tol is None:
            tol = DEFAULT_TOLERANCES.equality
        return self.projective_distance(other) <= tol


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def dicke(n: int, k: int) -> SymmetricPureState:
    """Uniform superposition of all weight-k strings of n qubits."""
    if not 0 <= k <= n:
        raise DomainError(f"excitation count k={k} out of range for n={n}")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[k] = 1.0
    return SymmetricPureState(n, c)


def ghz(n: int, a: complex = None, b: complex = None) -> SymmetricPureState:
    """a|0...0> + b|1...1>; balanced with a = b = 1/sqrt(2) by default."""
    if n < 2:
        raise DomainError(f"need n >= 2 for a two-pole state, got {n}")
    if a is None and b is None:
        a = b = 1.0 / math.sqrt(2.0)
    elif a is None or b is None:
        raise DomainError("give both amplitudes or neither")
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-9:
        raise NormalizationError(f"|a|^2+|b|^2 = {abs(a)**2 + abs(b)**2} is not 1")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0] = a
    c[n] = b
    return SymmetricPureState(n, c / np.linalg.norm(c))


def singlet() -> PureState:
    """(|01> - |10>) / sqrt(2), the antisymmetric 2-qubit state."""
    amps = np.zeros(4, dtype=np.complex128)
    amps[0b01] = 1.0 / math.sqrt(2.0)
    amps[0b10] = -1.0 / math.sqrt(2.0)
    return PureState(2, amps)


def symmetrize(vectors) -> SymmetricPureState:
    """Project the product of 1-qubit vectors onto the symmetric subspace.

    Each vector is a nonzero length-2 complex array; the result is normalized.
    The weight-basis coefficients come from the coefficient convolution of
    the linear factors (v0 + v1 z), divided by sqrt(C(n, k)).
    """
    vs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    n = len(vs)
    if n < 1:
        raise DomainError("need at least one vector")
    poly = np.ones(1, dtype=np.complex128)
    for v in vs:
        if v.shape != (2,):
            raise DomainError(f"expected length-2 vectors, got shape {v.shape}")
        nv = np.linalg.norm(v)
        if nv == 0:
            raise DomainError("zero single-qubit vector")
        poly = np.convolve(poly, v / nv)
    c = poly / np.sqrt([math.comb(n, k) for k in range(n + 1)])
    return SymmetricPureState.from_unnormalized(c)


# ---------------------------------------------------------------------------
# basis expansion and density matrices
# ---------------------------------------------------------------------------


def expand(state: SymmetricPureState, cap: int = DENSE_QUBIT_CAP) -> PureState:
    """Full 2^n vector of a symmetric state."""
    n = state.n
    if n > cap:
        raise DomainError(f"dense expansion blocked for n={n} > cap={cap}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    scale = np.array([1.0 / math.sqrt(math.comb(n, k)) for k in range(n + 1)])
    for idx in range(1 << n):
        k = weight(idx)
        amps[idx] = state.coeffs[k] * scale[k]
    return PureState(n, amps)


def to_density(state, cap: int = DENSE_QUBIT_CAP) -> DensityMatrix:
    """Projector |psi><psi| of a SymmetricPureState or PureState."""
    if isinstance(state, SymmetricPureState):
        state = expand(state, cap=cap)
    if not isinstance(state, PureState):
        raise DomainError(f"cannot build a density matrix from {type(state).__name__}")
    if state.n > cap:
        raise DomainError(f"dense density blocked for n={state.n} > cap={cap}")
    return DensityMatrix(state.n, np.outer(state.amps, state.amps.conj()))


def symmetric_power(g: np.ndarray, n: int) -> np.ndarray:
    """(n+1)x(n+1) action of g^{(x)n} on the symmetrized-weight basis.

    Entry [j, k] = sqrt(C(n,k)/C(n,j)) *
        sum_i C(k,i) C(n-k, j-i) g11^i g01^{k-i} g10^{j-i} g00^{n-k-j+i}.
    """
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got {g.shape}")
    s = np.zeros((n + 1, n + 1), dtype=np.complex128)
    for k in range(n + 1):
        for j in range(n + 1):
            acc = 0.0 + 0.0j
            for i in range(max(0, j - (n - k)), min(k, j) + 1):
                acc += (
                    math.comb(k, i)
                    * math.comb(n - k, j - i)
                    * g[1, 1] ** i
                    * g[0, 1] ** (k - i)
                    * g[1, 0] ** (j - i)
                    * g[0, 0] ** (n - k - j + i)
                )
            s[j, k] = acc * math.sqrt(math.comb(n, k) / math.comb(n, j))
    return s


def apply_diag_symmetric(g: np.ndarray, state: SymmetricPureState) -> SymmetricPureState:
    """Apply g^{(x)n} to a symmetric state without leaving the weight basis."""
    if not is_unitary(g, 1e-9):
        raise DomainError("g is not a 2x2 unitary")
    out = symmetric_power(g, state.n) @ state.coeffs
    return SymmetricPureState.from_unnormalized(out)


def apply_lu(u: LocalUnitary, rho: DensityMatrix) -> DensityMatrix:
    """Conjugate a density matrix by a local unitary tuple."""
    if u.n != rho.n:
        raise DomainError(f"arity mismatch: {u.n} factors vs {rho.n} qubits")
    big = u.matrix()
    return DensityMatrix(rho.n, big @ rho.mat @ big.conj().T)


# ---------------------------------------------------------------------------
# permutations and reductions
# ---------------------------------------------------------------------------


def permute_qubits(rho: DensityMatrix, perm) -> DensityMatrix:
    """Relabel qubits: output qubit i is input qubit perm[i]."""
    n = rho.n
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise DomainError(f"{perm} is not a permutation of 0..{n - 1}")
    t = rho.mat.reshape((2,) * (2 * n))
    axes = perm + [n + p for p in perm]
    out = np.transpose(t, axes).reshape(1 << n, 1 << n)
    return DensityMatrix(n, out)


def is_permutation_invariant(rho: DensityMatrix, tol: float | None = None) -> bool:
    """Check invariance under all adjacent transpositions (they generate S_n)."""
    if tol is None:
        tol = DEFAULT_TOLERANCES.equality
    n = rho.n
    for k in range(n - 1):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        if np.max(np.abs(permute_qubits(rho, perm).mat - rho.mat)) > tol:
            return False
    return True


def reduced_1qubit(rho: DensityMatrix, k: int) -> np.ndarray:
    """2x2 reduced density matrix of qubit k (0-based)."""
    n = rho.n
    if not 0 <= k < n:
        raise DomainError(f"qubit index {k} out of range for n={n}")
    t = rho.mat.reshape((2,) * (2 * n))
    row = list(range(n))
    col = list(range(n))
    col[k] = n
    return np.einsum(t, row + col, [k, n])


# ---------------------------------------------------------------------------
# random generators (deterministic given the passed rng)
# ---------------------------------------------------------------------------


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) element."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


def random_local_unitary(n: int, rng: np.random.Generator) -> LocalUnitary:
    return LocalUnitary(tuple(random_su2(rng) for _ in range(n)))


def random_symmetric(n: int, rng: np.random.Generator) -> SymmetricPureState:
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return SymmetricPureState.from_unnormalized(c)


def random_symmetric_mixed(n: int, rng: np.random.Generator, rank: int = 3) -> DensityMatrix:
    """Random mixture of symmetric pure states (permutation invariant)."""
    weights = rng.dirichlet(np.ones(rank))
    mat = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for w in weights:
        amps = expand(random_symmetric(n, rng)).amps
        mat += w * np.outer(amps, amps.conj())
    return DensityMatrix(n, mat)
