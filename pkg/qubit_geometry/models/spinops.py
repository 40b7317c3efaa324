"""
Spin-1/2 operators of a qubit pair as explicit 4x4 matrices.

Sector S0 spans {ud, du} (vanishing total spin projection), sector S1 spans
{uu, dd}. Each sector has its own cosine/sine operators of an azimuthal
angle: the difference phi1 - phi2 for S0, the sum phi1 + phi2 for S1.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Tuple

import math
import numpy as np

from qubit_geometry.models.errors import DomainError
from qubit_geometry.models.linalg import (
    ComplexMatrix,
    from_rows,
    identity,
    inverse_sqrt_on_support,
    tensor_product,
)


class Axis(Enum):
    X = "x"
    Y = "y"
    Z = "z"


class Spin(Enum):
    UP = "up"
    DOWN = "down"


class Sector(Enum):
    S0 = "s0"
    S1 = "s1"


# Basis indices spanned by each sector
SECTOR_INDICES: Dict[Sector, Tuple[int, int]] = {
    Sector.S0: (1, 2),
    Sector.S1: (0, 3),
}

_PAULI = {
    Axis.X: ((0, 1), (1, 0)),
    Axis.Y: ((0, -1j), (1j, 0)),
    Axis.Z: ((1, 0), (0, -1)),
}


@dataclass(frozen=True, eq=False)
class TrigOperatorSet:
    """Cosine and sine operators of one sector plus their conjugate momentum"""
    sector: Sector
    cos_op: ComplexMatrix
    sin_op: ComplexMatrix
    conjugate_momentum: ComplexMatrix


@dataclass(frozen=True, eq=False)
class AngleOperatorPair:
    """phi_c = (pi/2)(1 - cos), phi_s = (pi/2) sin"""
    phi_c: ComplexMatrix
    phi_s: ComplexMatrix


def _check_qubit(qubit: int):
    if qubit not in (1, 2):
        raise DomainError(f"Qubit must be 1 or 2, got {qubit}")


def sector_indices(sector: Sector) -> Tuple[int, int]:
    return SECTOR_INDICES[Sector(sector)]


@lru_cache(maxsize=None)
def pauli(axis: Axis) -> ComplexMatrix:
    """Pauli matrix in the {up, down} basis, sigma_z|up> = +|up>"""
    return from_rows(_PAULI[Axis(axis)])


@lru_cache(maxsize=None)
def spin_component(qubit: int, axis: Axis) -> ComplexMatrix:
    """S_{qubit,axis} = sigma_axis / 2 embedded in the two-qubit space"""
    _check_qubit(qubit)
    half = 0.5 * pauli(axis)
    if qubit == 1:
        return tensor_product(half, identity(2))
    return tensor_product(identity(2), half)


@lru_cache(maxsize=None)
def total_sz() -> ComplexMatrix:
    """Sz = S1z + S2z"""
    return spin_component(1, Axis.Z) + spin_component(2, Axis.Z)


@lru_cache(maxsize=None)
def relative_sz() -> ComplexMatrix:
    """delta Sz = S1z - S2z"""
    return spin_component(1, Axis.Z) - spin_component(2, Axis.Z)


@lru_cache(maxsize=None)
def sz_squared() -> ComplexMatrix:
    sz = total_sz()
    return sz @ sz


@lru_cache(maxsize=None)
def transverse_denominator() -> ComplexMatrix:
    """D = (S1x^2 + S1y^2)(S2x^2 + S2y^2); equals I/4 for spin-1/2"""
    s1x, s1y = spin_component(1, Axis.X), spin_component(1, Axis.Y)
    s2x, s2y = spin_component(2, Axis.X), spin_component(2, Axis.Y)
    return (s1x @ s1x + s1y @ s1y) @ (s2x @ s2x + s2y @ s2y)


@lru_cache(maxsize=None)
def trig_operators(sector: Sector) -> TrigOperatorSet:
    """
    Cosine and sine operators of the sector's azimuthal angle.

    S0: cos = (S1xS2x + S1yS2y) D^-1/2, sin = (S1yS2x - S1xS2y) D^-1/2
    S1: cos = (S1xS2x - S1yS2y) D^-1/2, sin = (S1yS2x + S1xS2y) D^-1/2

    The conjugate momentum is half the relative (S0) or total (S1) spin
    projection: a flip-flop changes delta Sz by 2, so [sin, delta Sz / 2] = i cos.
    """
    sector = Sector(sector)
    s1x, s1y = spin_component(1, Axis.X), spin_component(1, Axis.Y)
    s2x, s2y = spin_component(2, Axis.X), spin_component(2, Axis.Y)
    inv_root = inverse_sqrt_on_support(transverse_denominator())

    if sector is Sector.S0:
        cos_numerator = s1x @ s2x + s1y @ s2y
        sin_numerator = s1y @ s2x - s1x @ s2y
        momentum = 0.5 * relative_sz()
    else:
        cos_numerator = s1x @ s2x - s1y @ s2y
        sin_numerator = s1y @ s2x + s1x @ s2y
        momentum = 0.5 * total_sz()

    return TrigOperatorSet(
        sector=sector,
        cos_op=cos_numerator @ inv_root,
        sin_op=sin_numerator @ inv_root,
        conjugate_momentum=momentum,
    )


def angle_operators(trig: TrigOperatorSet) -> AngleOperatorPair:
    half_pi = math.pi / 2
    return AngleOperatorPair(
        phi_c=half_pi * (identity(4) - trig.cos_op),
        phi_s=half_pi * trig.sin_op,
    )


@lru_cache(maxsize=None)
def cos_big_phi() -> ComplexMatrix:
    """S1.S2 / sqrt(S1^2 S2^2) = (4/3) S1.S2, since S^2 = 3/4 for spin-1/2"""
    dot = sum(
        (spin_component(1, axis) @ spin_component(2, axis) for axis in Axis),
        start=0 * identity(4),
    )
    return (4.0 / 3.0) * dot


@lru_cache(maxsize=None)
def projector(qubit: int, spin: Spin) -> ComplexMatrix:
    """P^m = 1/2 +- S_z for the given qubit"""
    _check_qubit(qubit)
    sign = 1.0 if Spin(spin) is Spin.UP else -1.0
    return 0.5 * identity(4) + sign * spin_component(qubit, Axis.Z)


def rotation(qubit: int, axis: Axis, angle: float) -> ComplexMatrix:
    """exp(-i angle S_{qubit,axis}) in closed form cos(a/2) I - 2i sin(a/2) S"""
    if not math.isfinite(angle):
        raise DomainError(f"Rotation angle must be finite, got {angle}")
    half = 0.5 * angle
    return math.cos(half) * identity(4) - 2j * math.sin(half) * spin_component(qubit, axis)


def _unit(components: Dict[int, complex]) -> np.ndarray:
    vec = np.zeros(4, dtype=complex)
    for index, value in components.items():
        vec[index] = value
    return vec / np.linalg.norm(vec)


def eigenstates(sector: Sector) -> Dict[str, Tuple[np.ndarray, float]]:
    """
    The four named eigenvectors of a sector's trig operators.

    Keys are "cos+", "cos-", "sin+", "sin-"; values are (unit vector, eigenvalue).
    """
    first, second = sector_indices(sector)
    return {
        "cos+": (_unit({first: 1, second: 1}), 1.0),
        "cos-": (_unit({first: 1, second: -1}), -1.0),
        "sin+": (_unit({first: 1, second: 1j}), 1.0),
        "sin-": (_unit({first: 1, second: -1j}), -1.0),
    }


def sector_restriction(m: ComplexMatrix, sector: Sector) -> np.ndarray:
    """The 2x2 block of m on the sector's basis indices"""
    idx = list(sector_indices(sector))
    return np.array(m.data[np.ix_(idx, idx)])
