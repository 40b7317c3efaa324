"""
Entanglement Service

Expectations, variances and concurrences of qubit-pair states:
- geometric concurrence C = sqrt(<cos>^2 + <sin>^2) per sector
- the mixed-state formula for density matrices commuting with Sz^2
- the Wootters spin-flip concurrence, used as an independent oracle
- entanglement of formation from a concurrence value
"""

from dataclasses import dataclass
from typing import Dict, Optional

import math
import numpy as np

from qubit_geometry.models.errors import ContractViolationError, DomainError, NotInClassError
from qubit_geometry.models.linalg import (
    HERMITIAN_TOLERANCE,
    PSD_CLAMP,
    ComplexMatrix,
    psd_sqrt,
    tensor_product,
)
from qubit_geometry.models.spinops import (
    Axis,
    Sector,
    Spin,
    cos_big_phi,
    pauli,
    projector,
    trig_operators,
)
from qubit_geometry.models.states import (
    RAW_SYMMETRY_TOLERANCE,
    DensityMatrix,
    PureStateParams,
    validate_sz2_symmetry,
)

# Tolerances
IMAGINARY_TOLERANCE = 1e-12
VARIANCE_CLAMP = 1e-12


@dataclass(frozen=True)
class TrigExpectations:
    """Means and variances of a sector's cosine and sine operators"""
    sector: Sector
    cos_mean: float
    sin_mean: float
    cos_variance: float
    sin_variance: float

    @property
    def variance_sum(self) -> float:
        return self.cos_variance + self.sin_variance

    @property
    def concurrence(self) -> float:
        return math.sqrt(self.cos_mean ** 2 + self.sin_mean ** 2)

    def to_dict(self, prefix: str = "") -> Dict[str, float]:
        return {
            f"{prefix}cos_mean": self.cos_mean,
            f"{prefix}sin_mean": self.sin_mean,
            f"{prefix}cos_variance": self.cos_variance,
            f"{prefix}sin_variance": self.sin_variance,
        }


@dataclass(frozen=True)
class BigPhiStats:
    """Mean and variance of cos(Phi), Phi the angle between the two spins"""
    mean: float
    variance: float

    @property
    def angle_degrees(self) -> float:
        return math.degrees(math.acos(min(1.0, max(-1.0, self.mean))))


@dataclass(frozen=True)
class ProjectorExpectations:
    """<P1^m P2^m'> for the four spin-projection combinations"""
    uu: float
    dd: float
    ud: float
    du: float


@dataclass
class ConcurrenceReport:
    """All concurrence values for one state"""
    c_s0: float
    c_s1: float
    proj_uu: float
    proj_dd: float
    proj_ud: float
    proj_du: float
    c_mixed: Optional[float]
    c_wootters: float
    eof: float
    s0: TrigExpectations
    s1: TrigExpectations
    big_phi: BigPhiStats
    residual: Optional[float] = None
    c_mixed_reason: Optional[str] = None

    def __str__(self):
        mixed = f"{self.c_mixed:.6g}" if self.c_mixed is not None else "n/a"
        return f"C_S0={self.c_s0:.6g} C_S1={self.c_s1:.6g} C_rho={mixed} C_W={self.c_wootters:.6g}"

    def to_dict(self) -> dict:
        record = {
            'c_s0': self.c_s0,
            'c_s1': self.c_s1,
            'c_mixed': self.c_mixed,
            'c_mixed_reason': self.c_mixed_reason,
            'c_wootters': self.c_wootters,
            'residual': self.residual,
            'eof': self.eof,
            'proj_uu': self.proj_uu,
            'proj_dd': self.proj_dd,
            'proj_ud': self.proj_ud,
            'proj_du': self.proj_du,
        }
        record.update(self.s0.to_dict("s0_"))
        record.update(self.s1.to_dict("s1_"))
        record['big_phi_mean'] = self.big_phi.mean
        record['big_phi_variance'] = self.big_phi.variance
        record['big_phi_degrees'] = self.big_phi.angle_degrees
        return record


def expectation(rho: DensityMatrix, op: ComplexMatrix) -> float:
    """Re Tr(rho op); op must be Hermitian"""
    if op.dim != rho.matrix.dim:
        raise ContractViolationError(f"Operator dimension {op.dim} does not match the state")
    if not op.is_hermitian(HERMITIAN_TOLERANCE):
        raise ContractViolationError("Expectation values need a Hermitian operator")
    value = complex(np.trace(rho.data @ op.data))
    if abs(value.imag) > IMAGINARY_TOLERANCE:
        raise ContractViolationError(f"Expectation has imaginary residue {value.imag:.3e}")
    return value.real


def variance(rho: DensityMatrix, op: ComplexMatrix) -> float:
    """<op^2> - <op>^2, round-off below zero clamped within 1e-12"""
    mean = expectation(rho, op)
    value = expectation(rho, op @ op) - mean * mean
    if value < 0.0:
        if value < -VARIANCE_CLAMP:
            raise ContractViolationError(f"Negative variance {value:.3e}")
        return 0.0
    return value


def trig_expectations(rho: DensityMatrix, sector: Sector) -> TrigExpectations:
    trig = trig_operators(Sector(sector))
    return TrigExpectations(
        sector=trig.sector,
        cos_mean=expectation(rho, trig.cos_op),
        sin_mean=expectation(rho, trig.sin_op),
        cos_variance=variance(rho, trig.cos_op),
        sin_variance=variance(rho, trig.sin_op),
    )


def big_phi_stats(rho: DensityMatrix) -> BigPhiStats:
    op = cos_big_phi()
    return BigPhiStats(mean=expectation(rho, op), variance=variance(rho, op))


def geometric_concurrence(rho: DensityMatrix, sector: Sector) -> float:
    """sqrt(<cos>^2 + <sin>^2) for the sector's trig operators"""
    trig = trig_operators(Sector(sector))
    cos_mean = expectation(rho, trig.cos_op)
    sin_mean = expectation(rho, trig.sin_op)
    return min(1.0, math.sqrt(cos_mean * cos_mean + sin_mean * sin_mean))


def projector_expectations(rho: DensityMatrix) -> ProjectorExpectations:
    def joint(first: Spin, second: Spin) -> float:
        value = expectation(rho, projector(1, first) @ projector(2, second))
        return min(1.0, max(0.0, value))

    return ProjectorExpectations(
        uu=joint(Spin.UP, Spin.UP),
        dd=joint(Spin.DOWN, Spin.DOWN),
        ud=joint(Spin.UP, Spin.DOWN),
        du=joint(Spin.DOWN, Spin.UP),
    )


def _mixed_from_parts(c_s0: float, c_s1: float, proj: ProjectorExpectations) -> float:
    return max(
        0.0,
        c_s0 - 2.0 * math.sqrt(proj.uu * proj.dd),
        c_s1 - 2.0 * math.sqrt(proj.ud * proj.du),
    )


def mixed_concurrence(rho: DensityMatrix) -> float:
    """
    Concurrence of a density matrix commuting with Sz^2:

        max(0, C - 2 sqrt(<P1u P2u><P1d P2d>), C~ - 2 sqrt(<P1u P2d><P1d P2u>))
    """
    if not validate_sz2_symmetry(rho, RAW_SYMMETRY_TOLERANCE):
        raise NotInClassError("Density matrix does not commute with Sz^2")
    return _mixed_from_parts(
        geometric_concurrence(rho, Sector.S0),
        geometric_concurrence(rho, Sector.S1),
        projector_expectations(rho),
    )


def _flip(m: ComplexMatrix) -> ComplexMatrix:
    yy = tensor_product(pauli(Axis.Y), pauli(Axis.Y))
    return yy @ m.conj @ yy


def spin_flip(rho: DensityMatrix) -> ComplexMatrix:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)"""
    return _flip(rho.matrix)


def wootters_concurrence(rho: DensityMatrix) -> float:
    """
    max(0, l1 - l2 - l3 - l4), l_i the decreasing square roots of the
    eigenvalues of sqrt(rho) rho~ sqrt(rho).

    The l_i are taken as the singular values of sqrt(rho) sqrt(rho~), with
    sqrt(rho~) the spin flip of sqrt(rho).
    """
    root = psd_sqrt(rho.matrix, PSD_CLAMP)
    lambdas = np.linalg.svd((root @ _flip(root)).data, compute_uv=False)
    value = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]
    return float(min(1.0, max(0.0, value)))


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0"""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def entanglement_of_formation(c: float) -> float:
    """h((1 + sqrt(1 - c^2)) / 2)"""
    if not (math.isfinite(c) and 0.0 <= c <= 1.0):
        raise DomainError(f"Concurrence must lie in [0, 1], got {c}")
    if c == 1.0:
        return 1.0
    return min(1.0, binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0))


def closed_form_expectations(params: PureStateParams) -> Dict[str, float]:
    """
    Expected values for a parametrized pure state in its own sector.

    C = sin theta, <cos> = C cos phi, <sin> = C sin phi, and since cos^2 and
    sin^2 act as the identity on the sector, Var(cos) = 1 - <cos>^2 etc.
    The cos(Phi) entries hold for S0 states.
    """
    concurrence = math.sin(params.theta)
    cos_mean = concurrence * math.cos(params.phi)
    sin_mean = concurrence * math.sin(params.phi)
    flip = math.sin(params.theta) * math.cos(params.phi)
    return {
        'concurrence': concurrence,
        'cos_mean': cos_mean,
        'sin_mean': sin_mean,
        'cos_variance': 1.0 - cos_mean * cos_mean,
        'sin_variance': 1.0 - sin_mean * sin_mean,
        'variance_sum': 2.0 - concurrence * concurrence,
        'big_phi_mean': (2.0 * flip - 1.0) / 3.0,
        'big_phi_variance': (4.0 / 9.0) * (1.0 - flip * flip),
    }


def analyze(rho: DensityMatrix, symmetry_tol: float = RAW_SYMMETRY_TOLERANCE) -> ConcurrenceReport:
    """Every concurrence value for one density matrix"""
    s0 = trig_expectations(rho, Sector.S0)
    s1 = trig_expectations(rho, Sector.S1)
    c_s0 = min(1.0, s0.concurrence)
    c_s1 = min(1.0, s1.concurrence)
    proj = projector_expectations(rho)
    c_wootters = wootters_concurrence(rho)

    c_mixed = None
    residual = None
    reason = None
    if validate_sz2_symmetry(rho, symmetry_tol):
        c_mixed = _mixed_from_parts(c_s0, c_s1, proj)
        residual = abs(c_mixed - c_wootters)
    else:
        reason = "density matrix does not commute with Sz^2"

    return ConcurrenceReport(
        c_s0=c_s0,
        c_s1=c_s1,
        proj_uu=proj.uu,
        proj_dd=proj.dd,
        proj_ud=proj.ud,
        proj_du=proj.du,
        c_mixed=c_mixed,
        c_wootters=c_wootters,
        eof=entanglement_of_formation(c_wootters),
        s0=s0,
        s1=s1,
        big_phi=big_phi_stats(rho),
        residual=residual,
        c_mixed_reason=reason,
    )
