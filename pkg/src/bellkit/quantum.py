"""Complex linear algebra for two-level and bipartite two-level systems.

Basis order for the bipartite system is fixed as |00>, |01>, |10>, |11> with
the left tensor factor belonging to Alice.  All operations are pure functions
over immutable values; everything is plain double-precision arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .behavior import Behavior
from .errors import InternalConsistencyError, InvalidInputError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

UNIT_NORM_TOL = 1e-9  # reject beyond this; silently renormalize below it
STATE_NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
IMAG_PART_TOL = 1e-9


@dataclass(frozen=True)
class UnitVector3:
    """A direction in R^3, renormalized on construction.

    Norm deviations up to 1e-9 (accumulated float error, e.g. from optimizer
    loops) are corrected silently; larger deviations are rejected.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        v = (float(self.x), float(self.y), float(self.z))
        if not all(math.isfinite(c) for c in v):
            raise InvalidInputError(f"direction has non-finite components: {v}")
        norm = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise InvalidInputError(f"direction norm {norm:.12g} deviates from 1 beyond {UNIT_NORM_TOL:g}")
        object.__setattr__(self, "x", v[0] / norm)
        object.__setattr__(self, "y", v[1] / norm)
        object.__setattr__(self, "z", v[2] / norm)

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "UnitVector3":
        """Build from an arbitrary nonzero vector, normalizing first."""
        norm = math.sqrt(x * x + y * y + z * z)
        if norm < 1e-300 or not math.isfinite(norm):
            raise InvalidInputError("cannot normalize a zero or non-finite vector")
        return cls(x / norm, y / norm, z / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "UnitVector3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


@dataclass(frozen=True, eq=False)
class Observable2:
    """A traceless Hermitian 2x2 matrix with eigenvalues +/-1 (det = -1)."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidInputError(f"observable must be 2x2, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise InvalidInputError("observable is not Hermitian")
        if abs(np.trace(m)) > HERMITICITY_TOL:
            raise InvalidInputError("observable is not traceless")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det + 1.0) > HERMITICITY_TOL:
            raise InvalidInputError(f"observable determinant {det:.12g} is not -1")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Pure state of two qubits: 4 amplitudes over |00>, |01>, |10>, |11>."""

    amp: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amp, dtype=complex)
        if amp.shape != (4,):
            raise InvalidInputError(f"state needs 4 amplitudes, got shape {amp.shape}")
        if not np.all(np.isfinite(amp.view(float))):
            raise InvalidInputError("state amplitudes contain non-finite values")
        norm_sq = float(np.sum(np.abs(amp) ** 2))
        if abs(norm_sq - 1.0) > STATE_NORM_TOL:
            raise InvalidInputError(f"state norm^2 = {norm_sq:.12g} deviates from 1 beyond {STATE_NORM_TOL:g}")
        amp = amp / math.sqrt(norm_sq)
        amp.setflags(write=False)
        object.__setattr__(self, "amp", amp)

    @classmethod
    def from_amplitudes(cls, amp, tol: float = 1e-6) -> "TwoQubitState":
        """Build from possibly-unnormalized amplitudes, rejecting beyond ``tol``."""
        a = np.asarray(amp, dtype=complex)
        if a.shape != (4,):
            raise InvalidInputError(f"state needs 4 amplitudes, got shape {a.shape}")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > tol:
            raise InvalidInputError(f"amplitude norm {norm:.12g} deviates from 1 beyond {tol:g}")
        return cls(a / norm)


def singlet() -> TwoQubitState:
    """The two-qubit singlet (|01> - |10>)/sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return TwoQubitState(np.array([0.0, s, -s, 0.0], dtype=complex))


def basis_state(index: int) -> TwoQubitState:
    """Computational basis state |00>, |01>, |10>, or |11> by index 0..3."""
    if index not in (0, 1, 2, 3):
        raise InvalidInputError(f"basis index must be 0..3, got {index}")
    amp = np.zeros(4, dtype=complex)
    amp[index] = 1.0
    return TwoQubitState(amp)


def random_pure_state(rng: np.random.Generator) -> TwoQubitState:
    """Haar-ish random pure state: normalized complex Gaussian amplitudes."""
    amp = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return TwoQubitState(amp / np.linalg.norm(amp))


def random_unit_vector(rng: np.random.Generator) -> UnitVector3:
    """Uniformly distributed direction on the sphere."""
    while True:
        v = rng.standard_normal(3)
        n = np.linalg.norm(v)
        if n > 1e-12:
            return UnitVector3(*(v / n))


def pauli_dot(v: UnitVector3) -> Observable2:
    """Spin observable along ``v``: v.x*sigma_x + v.y*sigma_y + v.z*sigma_z."""
    m = v.x * PAULI_X + v.y * PAULI_Y + v.z * PAULI_Z
    return Observable2(m)


def tensor(m_a: Observable2 | np.ndarray, m_b: Observable2 | np.ndarray) -> np.ndarray:
    """Kronecker product in the fixed |00>,|01>,|10>,|11> basis, Alice left."""
    a = m_a.m if isinstance(m_a, Observable2) else np.asarray(m_a, dtype=complex)
    b = m_b.m if isinstance(m_b, Observable2) else np.asarray(m_b, dtype=complex)
    return np.kron(a, b)


def _expectation(psi: TwoQubitState, op4: np.ndarray) -> float:
    val = np.vdot(psi.amp, op4 @ psi.amp)
    if abs(val.imag) > IMAG_PART_TOL:
        raise InternalConsistencyError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def correlation(psi: TwoQubitState, u: UnitVector3, v: UnitVector3) -> float:
    """<psi| (u.sigma) (x) (v.sigma) |psi>, the expected product of outcomes."""
    val = _expectation(psi, tensor(pauli_dot(u), pauli_dot(v)))
    # expectation of a +/-1 observable product; clamp float overshoot
    return min(1.0, max(-1.0, val))


def _projectors(v: UnitVector3) -> tuple[np.ndarray, np.ndarray]:
    """Spectral projectors (Pi_plus, Pi_minus) of v.sigma."""
    m = pauli_dot(v).m
    eye = np.eye(2, dtype=complex)
    return (eye + m) / 2.0, (eye - m) / 2.0


def quantum_behavior(
    psi: TwoQubitState,
    settings: tuple[UnitVector3, UnitVector3, UnitVector3, UnitVector3],
) -> Behavior:
    """Outcome table P(A,B|x,y) from projective spin measurements.

    ``settings`` is (Alice's u, u', Bob's v, v'); entry [x, y, A, B] is
    <psi| Pi_A(x) (x) Pi_B(y) |psi>.
    """
    u, u_prime, v, v_prime = settings
    alice = [_projectors(u), _projectors(u_prime)]
    bob = [_projectors(v), _projectors(v_prime)]
    table = np.empty((2, 2, 2, 2))
    for x in range(2):
        for y in range(2):
            for i in range(2):
                for j in range(2):
                    table[x, y, i, j] = _expectation(psi, np.kron(alice[x][i], bob[y][j]))
    return Behavior(table)


def correlation_matrix(psi: TwoQubitState) -> np.ndarray:
    """3x3 matrix T with T[i, j] = <psi| sigma_i (x) sigma_j |psi>.

    Satisfies correlation(psi, u, v) = u^T T v for all unit u, v.
    """
    t = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            t[i, j] = _expectation(psi, np.kron(_PAULIS[i], _PAULIS[j]))
    return t
