"""
Dense complex linear algebra for the 2x2 and 4x4 matrices of a qubit pair.

Two-qubit matrices use the fixed basis order (uu, ud, du, dd), indices 0..3,
with qubit 1 as the left Kronecker factor. Scalars are Python/numpy complex
numbers; ComplexMatrix wraps a read-only numpy array.

The Hermitian eigensolver is a cyclic Jacobi method: each sweep visits every
off-diagonal pair (p, q) once and applies the unitary plane rotation that
zeroes it. Sweeps stop once the largest off-diagonal magnitude drops below
1e-13 (scaled by the matrix magnitude) or after 100 sweeps.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from qubit_geometry.models.errors import (
    ContractViolationError,
    InvalidDimensionError,
    NotPSDError,
)

# Constants
ALLOWED_DIMS = (2, 4)
HERMITIAN_TOLERANCE = 1e-12
PSD_CLAMP = 1e-12
JACOBI_TOLERANCE = 1e-13
JACOBI_MAX_SWEEPS = 100
_TINY = 1e-300

Scalar = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Immutable dense square complex matrix of dimension 2 or 4"""
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in ALLOWED_DIMS:
            raise InvalidDimensionError(
                f"Expected a square matrix of dimension {ALLOWED_DIMS}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ContractViolationError("Matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, 'data', arr)

    def __repr__(self):
        return f"ComplexMatrix(dim={self.dim}, entries={np.array2string(self.data, precision=4)})"

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def entries(self) -> Tuple[complex, ...]:
        """Row-major entries, length dim^2"""
        return tuple(complex(z) for z in self.data.ravel())

    def __getitem__(self, key) -> complex:
        return complex(self.data[key])

    def _check_same_dim(self, other: 'ComplexMatrix'):
        if self.dim != other.dim:
            raise InvalidDimensionError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: 'ComplexMatrix') -> 'ComplexMatrix':
        self._check_same_dim(other)
        return ComplexMatrix(self.data + other.data)

    def __sub__(self, other: 'ComplexMatrix') -> 'ComplexMatrix':
        self._check_same_dim(other)
        return ComplexMatrix(self.data - other.data)

    def __neg__(self) -> 'ComplexMatrix':
        return ComplexMatrix(-self.data)

    def __mul__(self, scalar: Scalar) -> 'ComplexMatrix':
        if isinstance(scalar, ComplexMatrix):
            raise TypeError("Use @ for matrix products")
        return ComplexMatrix(self.data * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: 'ComplexMatrix') -> 'ComplexMatrix':
        self._check_same_dim(other)
        return ComplexMatrix(self.data @ other.data)

    @property
    def dagger(self) -> 'ComplexMatrix':
        return ComplexMatrix(self.data.conj().T)

    @property
    def conj(self) -> 'ComplexMatrix':
        return ComplexMatrix(self.data.conj())

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def max_norm(self) -> float:
        """Largest entry magnitude"""
        return float(np.max(np.abs(self.data)))

    def is_hermitian(self, tol: float = HERMITIAN_TOLERANCE) -> bool:
        return float(np.max(np.abs(self.data - self.data.conj().T))) <= tol

    def is_unitary(self, tol: float = HERMITIAN_TOLERANCE) -> bool:
        product = self.data.conj().T @ self.data
        return float(np.max(np.abs(product - np.eye(self.dim)))) <= tol

    def apply(self, vector: Sequence[complex]) -> np.ndarray:
        """Matrix-vector product"""
        vec = np.asarray(vector, dtype=complex)
        if vec.shape != (self.dim,):
            raise InvalidDimensionError(f"Vector of length {vec.shape} does not fit dimension {self.dim}")
        return self.data @ vec

    def distance(self, other: 'ComplexMatrix') -> float:
        """Max-norm of the difference"""
        self._check_same_dim(other)
        return float(np.max(np.abs(self.data - other.data)))

    def allclose(self, other: 'ComplexMatrix', tol: float = HERMITIAN_TOLERANCE) -> bool:
        return self.distance(other) <= tol


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues sorted descending; eigenvectors are the matching unit columns"""
    eigenvalues: np.ndarray
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """V diag(lambda) V^dagger"""
        return _from_spectrum(self.eigenvectors.data, self.eigenvalues)

    def vector(self, k: int) -> np.ndarray:
        return np.array(self.eigenvectors.data[:, k])


def identity(dim: int = 4) -> ComplexMatrix:
    return ComplexMatrix(np.eye(dim, dtype=complex))


def zeros(dim: int = 4) -> ComplexMatrix:
    return ComplexMatrix(np.zeros((dim, dim), dtype=complex))


def diag(values: Iterable[Scalar]) -> ComplexMatrix:
    return ComplexMatrix(np.diag(np.asarray(list(values), dtype=complex)))


def from_rows(rows: Sequence[Sequence[Scalar]]) -> ComplexMatrix:
    return ComplexMatrix(np.asarray(rows, dtype=complex))


def tensor_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product of two single-qubit operators, qubit 1 = left factor"""
    if a.dim != 2 or b.dim != 2:
        raise InvalidDimensionError(f"tensor_product needs two 2x2 factors, got {a.dim} and {b.dim}")
    return ComplexMatrix(np.kron(a.data, b.data))


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """AB - BA"""
    if a.dim != b.dim:
        raise InvalidDimensionError(f"Dimension mismatch: {a.dim} vs {b.dim}")
    return ComplexMatrix(a.data @ b.data - b.data @ a.data)


def _max_off_diagonal(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - np.diag(np.diag(a)))))


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int):
    """Zero a[p, q] in place with a unitary plane rotation; accumulate it into v"""
    apq = a[p, q]
    magnitude = abs(apq)
    phase = apq / magnitude
    theta = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = (1.0 if theta >= 0.0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])

    pair = [p, q]
    a[:, pair] = a[:, pair] @ g
    a[pair, :] = g.conj().T @ a[pair, :]
    a[p, q] = 0.0
    a[q, p] = 0.0
    v[:, pair] = v[:, pair] @ g


def hermitian_eig(m: ComplexMatrix, tol: float = HERMITIAN_TOLERANCE) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        m: Hermitian matrix (checked against tol)
        tol: Hermiticity tolerance in max-norm

    Returns:
        EigenDecomposition with real eigenvalues sorted descending
    """
    if not m.is_hermitian(tol):
        raise ContractViolationError("hermitian_eig requires a Hermitian matrix")

    a = np.array(m.data, dtype=complex)
    a = 0.5 * (a + a.conj().T)
    n = m.dim
    v = np.eye(n, dtype=complex)
    threshold = JACOBI_TOLERANCE * max(1.0, float(np.max(np.abs(a))))

    for _ in range(JACOBI_MAX_SWEEPS):
        if _max_off_diagonal(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > _TINY:
                    _jacobi_rotate(a, v, p, q)

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(-eigenvalues, kind='stable')
    return EigenDecomposition(
        eigenvalues=eigenvalues[order],
        eigenvectors=ComplexMatrix(v[:, order]),
    )


def _from_spectrum(vectors: np.ndarray, values: np.ndarray) -> ComplexMatrix:
    result = (vectors * values) @ vectors.conj().T
    return ComplexMatrix(0.5 * (result + result.conj().T))


def _clamp_spectrum(values: np.ndarray, tol: float) -> np.ndarray:
    """Zero round-off negatives; anything below -tol means the input is not PSD"""
    lowest = float(np.min(values))
    if lowest < -tol:
        raise NotPSDError(f"Eigenvalue {lowest:.3e} is below -{tol:.1e}")
    return np.where(values < 0.0, 0.0, values)


def psd_sqrt(m: ComplexMatrix, tol: float = PSD_CLAMP) -> ComplexMatrix:
    """Hermitian PSD square root R with R @ R = m"""
    decomposition = hermitian_eig(m, max(tol, HERMITIAN_TOLERANCE))
    values = _clamp_spectrum(decomposition.eigenvalues, tol)
    return _from_spectrum(decomposition.eigenvectors.data, np.sqrt(values))


def inverse_sqrt_on_support(m: ComplexMatrix, tol: float = PSD_CLAMP) -> ComplexMatrix:
    """Pseudo-inverse square root: 1/sqrt(lambda) on the support, 0 on the kernel"""
    decomposition = hermitian_eig(m, max(tol, HERMITIAN_TOLERANCE))
    values = _clamp_spectrum(decomposition.eigenvalues, tol)
    inverted = np.zeros_like(values)
    support = values > tol
    inverted[support] = 1.0 / np.sqrt(values[support])
    return _from_spectrum(decomposition.eigenvectors.data, inverted)
