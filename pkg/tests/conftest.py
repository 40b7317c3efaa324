import math

import numpy as np
import pytest
from hypothesis import strategies as st

from qubit_geometry.models.linalg import ComplexMatrix, identity
from qubit_geometry.models.states import DensityMatrix, density_from_pure, pure_s0, pure_s1
from qubit_geometry.services import logger as logger_module
from qubit_geometry.services.config import get_config

thetas = st.floats(min_value=0.0, max_value=math.pi, allow_nan=False)
phis = st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True, allow_nan=False)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@pytest.fixture(autouse=True)
def isolated_workspace(tmp_path, monkeypatch):
    """Run every test in its own folder with fresh singletons"""
    monkeypatch.chdir(tmp_path)
    get_config().reset()
    logger_module._logger = None
    yield
    get_config().reset()
    logger_module._logger = None


def rho_s0(theta: float, phi: float = 0.0) -> DensityMatrix:
    return density_from_pure(pure_s0(theta, phi))


def rho_s1(theta: float, phi: float = 0.0) -> DensityMatrix:
    return density_from_pure(pure_s1(theta, phi))


def rho_from_vector(amplitudes) -> DensityMatrix:
    amps = np.asarray(amplitudes, dtype=complex)
    amps = amps / np.linalg.norm(amps)
    return DensityMatrix.from_matrix(ComplexMatrix(np.outer(amps, amps.conj())))


@pytest.fixture
def maximally_mixed() -> DensityMatrix:
    return DensityMatrix.from_matrix(0.25 * identity(4))


