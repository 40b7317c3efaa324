"""
State objects of a qubit pair: parametrized pure states of both sectors,
density matrices and weighted ensembles.

S0: cos(theta/2)|ud> + e^{i phi} sin(theta/2)|du>
S1: cos(theta/2)|uu> + e^{i phi} sin(theta/2)|dd>
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import math
import numpy as np

from qubit_geometry.models.errors import DomainError, InvalidDimensionError
from qubit_geometry.models.linalg import ComplexMatrix, hermitian_eig
from qubit_geometry.models.spinops import Sector, sector_indices, sz_squared

# Tolerances
NORM_TOLERANCE = 1e-12
DENSITY_TOLERANCE = 1e-12
WEIGHT_TOLERANCE = 1e-12
THETA_SLACK = 1e-12
RAW_SYMMETRY_TOLERANCE = 1e-10

TWO_PI = 2.0 * math.pi


def _reduce_phi(phi: float) -> float:
    reduced = math.fmod(phi, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    if reduced >= TWO_PI:
        reduced = 0.0
    return reduced


@dataclass(frozen=True)
class PureStateParams:
    """(sector, theta, phi); theta in [0, pi], phi stored reduced to [0, 2 pi)"""
    sector: Sector
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        sector = Sector(self.sector)
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise DomainError(f"theta and phi must be finite, got ({theta}, {phi})")
        if theta < -THETA_SLACK or theta > math.pi + THETA_SLACK:
            raise DomainError(f"theta must lie in [0, pi], got {theta}")
        object.__setattr__(self, 'sector', sector)
        object.__setattr__(self, 'theta', min(max(theta, 0.0), math.pi))
        object.__setattr__(self, 'phi', _reduce_phi(phi))

    def __str__(self):
        return f"{self.sector.value}(theta={self.theta:.6g}, phi={self.phi:.6g})"

    def to_dict(self) -> dict:
        return {'sector': self.sector.value, 'theta': self.theta, 'phi': self.phi}


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit vector over the basis (uu, ud, du, dd)"""
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (4,):
            raise InvalidDimensionError(f"State vector needs 4 amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise DomainError("Amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"State vector is not normalized (|v|^2 = {norm:.15g})")
        amps.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amps)

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex]) -> 'StateVector':
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise DomainError("Cannot normalize the zero vector")
        return cls(amps / norm)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def overlap(self, other: 'StateVector') -> complex:
        """<self|other>"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def same_state(self, other: 'StateVector', tol: float = 1e-12) -> bool:
        """Equality up to a global phase: |<a|b>| = 1"""
        return abs(abs(self.overlap(other)) - 1.0) <= tol


def _validate_density(matrix: ComplexMatrix, tol: float, check_spectrum: bool = True):
    if matrix.dim != 4:
        raise InvalidDimensionError(f"Density matrix must be 4x4, got {matrix.dim}")
    if not matrix.is_hermitian(tol):
        raise DomainError("Density matrix must be Hermitian")
    trace = matrix.trace()
    if abs(trace - 1.0) > tol:
        raise DomainError(f"Density matrix trace must be 1, got {trace.real:.15g}")
    if check_spectrum:
        lowest = float(hermitian_eig(matrix, tol).eigenvalues[-1])
        if lowest < -tol:
            raise DomainError(f"Density matrix has negative eigenvalue {lowest:.3e}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 4x4 matrix, checked on construction"""
    matrix: ComplexMatrix

    def __post_init__(self):
        _validate_density(self.matrix, DENSITY_TOLERANCE)

    @classmethod
    def from_matrix(cls, matrix: ComplexMatrix, tol: float = DENSITY_TOLERANCE) -> 'DensityMatrix':
        """Validating constructor: Hermitian, trace 1 and eigenvalues >= -tol"""
        _validate_density(matrix, tol)
        return cls._trusted(matrix)

    @classmethod
    def _checked(cls, matrix: ComplexMatrix, tol: float) -> 'DensityMatrix':
        """Hermiticity and trace checks only, for matrices that are PSD by construction"""
        _validate_density(matrix, tol, check_spectrum=False)
        return cls._trusted(matrix)

    @classmethod
    def _trusted(cls, matrix: ComplexMatrix) -> 'DensityMatrix':
        rho = object.__new__(cls)
        object.__setattr__(rho, 'matrix', matrix)
        return rho

    @classmethod
    def from_entries(cls, entries: Sequence[float], tol: float = DENSITY_TOLERANCE) -> 'DensityMatrix':
        """32 reals, row-major with real/imaginary parts interleaved"""
        values = np.asarray(entries, dtype=float)
        if values.shape != (32,):
            raise InvalidDimensionError(f"Expected 32 reals, got {values.size}")
        complex_entries = values[0::2] + 1j * values[1::2]
        return cls.from_matrix(ComplexMatrix(complex_entries.reshape(4, 4)), tol)

    def to_entries(self) -> List[float]:
        flat = self.matrix.data.ravel()
        interleaved = np.empty(32)
        interleaved[0::2] = flat.real
        interleaved[1::2] = flat.imag
        return interleaved.tolist()

    @property
    def data(self) -> np.ndarray:
        return self.matrix.data

    def purity(self) -> float:
        """Tr rho^2"""
        return float(np.real(np.trace(self.data @ self.data)))

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eig(self.matrix).eigenvalues


@dataclass(frozen=True)
class EnsembleTerm:
    weight: float
    params: PureStateParams

    def __post_init__(self):
        weight = float(self.weight)
        if not (0.0 < weight <= 1.0 + WEIGHT_TOLERANCE):
            raise DomainError(f"Ensemble weight must lie in (0, 1], got {weight}")
        object.__setattr__(self, 'weight', weight)

    def to_dict(self) -> dict:
        return {'weight': self.weight, **self.params.to_dict()}


@dataclass(frozen=True)
class Ensemble:
    """Weighted pure states of both sectors, weights summing to 1"""
    terms: Tuple[EnsembleTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise DomainError("Ensemble needs at least one term")
        total = sum(term.weight for term in terms)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise DomainError(f"Ensemble weights must sum to 1, got {total:.15g}")
        object.__setattr__(self, 'terms', terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return f"Ensemble of {len(self.terms)} term(s)"

    def to_dict(self) -> dict:
        return {'kind': 'ensemble', 'terms': [term.to_dict() for term in self.terms]}


def pure_state(params: PureStateParams) -> StateVector:
    """cos(theta/2)|a> + e^{i phi} sin(theta/2)|b> on the sector's basis pair (a, b)"""
    first, second = sector_indices(params.sector)
    amps = np.zeros(4, dtype=complex)
    amps[first] = math.cos(params.theta / 2.0)
    amps[second] = np.exp(1j * params.phi) * math.sin(params.theta / 2.0)
    return StateVector(amps)


def pure_s0(theta: float, phi: float = 0.0) -> StateVector:
    return pure_state(PureStateParams(Sector.S0, theta, phi))


def pure_s1(theta: float, phi: float = 0.0) -> StateVector:
    return pure_state(PureStateParams(Sector.S1, theta, phi))


def singlet() -> StateVector:
    """(|ud> - |du>)/sqrt 2"""
    return pure_s0(math.pi / 2, math.pi)


def triplet() -> StateVector:
    """(|ud> + |du>)/sqrt 2"""
    return pure_s0(math.pi / 2, 0.0)


def density_from_pure(v: StateVector) -> DensityMatrix:
    """|v><v|"""
    if abs(v.norm_squared() - 1.0) > NORM_TOLERANCE:
        raise DomainError("density_from_pure needs a unit vector")
    amps = v.amplitudes
    return DensityMatrix._checked(ComplexMatrix(np.outer(amps, amps.conj())), DENSITY_TOLERANCE)


def ensemble_density(e: Ensemble) -> DensityMatrix:
    """sum_i p_i |Psi_i><Psi_i|; block diagonal over the S0 and S1 spans"""
    total = sum(term.weight for term in e.terms)
    if abs(total - 1.0) > WEIGHT_TOLERANCE:
        raise DomainError(f"Ensemble weights must sum to 1, got {total:.15g}")
    rho = np.zeros((4, 4), dtype=complex)
    for term in e.terms:
        amps = pure_state(term.params).amplitudes
        rho += term.weight * np.outer(amps, amps.conj())
    return DensityMatrix._checked(ComplexMatrix(rho), DENSITY_TOLERANCE)


def werner_ensemble(p: float) -> Ensemble:
    """p on the singlet plus (1-p)/4 on each computational basis state"""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Werner parameter must lie in [0, 1], got {p}")
    terms = []
    if p > 0.0:
        terms.append(EnsembleTerm(p, PureStateParams(Sector.S0, math.pi / 2, math.pi)))
    rest = (1.0 - p) / 4.0
    if rest > 0.0:
        for sector in (Sector.S0, Sector.S1):
            for theta in (0.0, math.pi):
                terms.append(EnsembleTerm(rest, PureStateParams(sector, theta, 0.0)))
    return Ensemble(tuple(terms))


def validate_sz2_symmetry(rho: DensityMatrix, tol: float = RAW_SYMMETRY_TOLERANCE) -> bool:
    """True iff ||rho Sz^2 - Sz^2 rho||_max <= tol"""
    sz2 = sz_squared().data
    residual = rho.data @ sz2 - sz2 @ rho.data
    return float(np.max(np.abs(residual))) <= tol


def conjugate_density(rho: DensityMatrix, unitary: ComplexMatrix) -> DensityMatrix:
    """U rho U^dagger"""
    if not unitary.is_unitary(1e-12):
        raise DomainError("conjugate_density needs a unitary matrix")
    return DensityMatrix._checked(unitary @ rho.matrix @ unitary.dagger, DENSITY_TOLERANCE)
