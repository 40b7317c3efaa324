import numpy as np
import pytest
from hypothesis import given, settings
from numpy import testing as npt

from qubit_geometry.models.errors import ContractViolationError, InvalidDimensionError, NotPSDError
from qubit_geometry.models.linalg import (
    ComplexMatrix,
    commutator,
    diag,
    from_rows,
    hermitian_eig,
    identity,
    inverse_sqrt_on_support,
    psd_sqrt,
    tensor_product,
    zeros,
)

from conftest import seeds


def _random_hermitian(seed, dim=4, scale=1.0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def test_constructors():
    assert identity(4).dim == 4
    assert identity(2).dim == 2
    npt.assert_array_equal(zeros(4).data, np.zeros((4, 4)))
    npt.assert_array_equal(diag([1, 2]).data, np.diag([1, 2]))
    assert from_rows([[0, 1j], [2, 3]])[0, 1] == 1j


@pytest.mark.parametrize("shape", [(3, 3), (2, 4), (4,), (8, 8)])
def test_rejects_bad_dimensions(shape):
    with pytest.raises(InvalidDimensionError):
        ComplexMatrix(np.zeros(shape))


def test_rejects_non_finite():
    with pytest.raises(ContractViolationError):
        ComplexMatrix(np.array([[np.nan, 0], [0, 1]]))


def test_matrix_is_read_only():
    m = identity(2)
    with pytest.raises(ValueError):
        m.data[0, 0] = 5


def test_arithmetic():
    a = from_rows([[1, 2j], [-2j, 3]])
    b = identity(2)
    npt.assert_array_equal((a + b).data, [[2, 2j], [-2j, 4]])
    npt.assert_array_equal((a - b).data, [[0, 2j], [-2j, 2]])
    npt.assert_array_equal((2 * a).data, (a * 2).data)
    npt.assert_array_equal((a @ b).data, a.data)
    assert a.is_hermitian()
    assert a.trace() == 4
    assert a.dagger.allclose(a)
    with pytest.raises(InvalidDimensionError):
        a + identity(4)


def test_tensor_product_order():
    z = from_rows([[1, 0], [0, -1]])
    npt.assert_array_equal(tensor_product(z, identity(2)).data, np.diag([1, 1, -1, -1]))
    npt.assert_array_equal(tensor_product(identity(2), z).data, np.diag([1, -1, 1, -1]))


def test_tensor_product_needs_single_qubit_factors():
    with pytest.raises(InvalidDimensionError):
        tensor_product(identity(4), identity(2))


def test_commutator_of_paulis():
    x = from_rows([[0, 1], [1, 0]])
    y = from_rows([[0, -1j], [1j, 0]])
    z = from_rows([[1, 0], [0, -1]])
    assert commutator(x, y).allclose(2j * z, 1e-15)
    assert commutator(x, x).allclose(zeros(2), 0.0)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_eig_matches_numpy(seed):
    m = _random_hermitian(seed)
    decomposition = hermitian_eig(ComplexMatrix(m))
    expected = np.linalg.eigvalsh(m)[::-1]
    npt.assert_allclose(decomposition.eigenvalues, expected, atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_eig_vectors(seed):
    m = _random_hermitian(seed)
    decomposition = hermitian_eig(ComplexMatrix(m))
    v = decomposition.eigenvectors.data

    npt.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-12)
    for k, value in enumerate(decomposition.eigenvalues):
        npt.assert_allclose(m @ v[:, k], value * v[:, k], atol=1e-10)
    npt.assert_allclose(decomposition.reconstruct().data, m, atol=1e-10)


def test_eig_sorted_descending():
    values = hermitian_eig(diag([0.5, 2.0, -1.0, 0.0])).eigenvalues
    npt.assert_array_equal(values, [2.0, 0.5, 0.0, -1.0])


def test_eig_degenerate_identity():
    decomposition = hermitian_eig(identity(4))
    npt.assert_array_equal(decomposition.eigenvalues, np.ones(4))
    npt.assert_allclose(decomposition.eigenvectors.data, np.eye(4))


def test_eig_two_by_two():
    y = from_rows([[0, -1j], [1j, 0]])
    decomposition = hermitian_eig(y)
    npt.assert_allclose(decomposition.eigenvalues, [1.0, -1.0], atol=1e-14)
    up = decomposition.vector(0)
    npt.assert_allclose(y.apply(up), up, atol=1e-14)


def test_eig_large_magnitudes_converge():
    m = _random_hermitian(7, scale=1e6)
    values = hermitian_eig(ComplexMatrix(m)).eigenvalues
    npt.assert_allclose(values, np.linalg.eigvalsh(m)[::-1], rtol=0, atol=1e-6)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ContractViolationError):
        hermitian_eig(from_rows([[0, 1], [0, 0]]))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_psd_sqrt_squares_back(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = ComplexMatrix(a @ a.conj().T)
    root = psd_sqrt(m)
    assert root.is_hermitian(1e-12)
    npt.assert_allclose((root @ root).data, m.data, atol=1e-9)
    assert hermitian_eig(root).eigenvalues[-1] >= -1e-12


def test_psd_sqrt_clamps_round_off():
    root = psd_sqrt(diag([1.0, -1e-14, 0.0, 0.25]))
    npt.assert_allclose(root.data, np.diag([1.0, 0.0, 0.0, 0.5]), atol=1e-15)


def test_psd_sqrt_keeps_small_positive_eigenvalues():
    root = psd_sqrt(diag([1.0, 1e-14, 0.0, 0.25]))
    assert root.data[1, 1].real == pytest.approx(1e-7, rel=1e-12)
    npt.assert_allclose((root @ root).data, np.diag([1.0, 1e-14, 0.0, 0.25]), atol=1e-28)


def test_psd_sqrt_rejects_negative_spectrum():
    with pytest.raises(NotPSDError):
        psd_sqrt(diag([1.0, -0.1, 0.0, 0.0]))


def test_inverse_sqrt_on_support():
    npt.assert_allclose(inverse_sqrt_on_support(0.25 * identity(4)).data, 2 * np.eye(4), atol=1e-15)
    npt.assert_allclose(
        inverse_sqrt_on_support(diag([4.0, 0.0, 1.0, 0.0])).data,
        np.diag([0.5, 0.0, 1.0, 0.0]),
        atol=1e-15,
    )
    # eigenvalues under the clamp count as kernel
    npt.assert_allclose(inverse_sqrt_on_support(diag([4.0, 1e-14, 1.0, 0.0])).data[1, 1], 0.0)
