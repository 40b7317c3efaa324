"""
Verification Service

Runs every named property of the operator algebra and the concurrence
formulas and reports, per property, pass/fail and the largest residual seen.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import math
import numpy as np

from qubit_geometry.models.linalg import (
    ComplexMatrix,
    commutator,
    hermitian_eig,
    identity,
)
from qubit_geometry.models.spinops import (
    Axis,
    Sector,
    angle_operators,
    eigenstates,
    relative_sz,
    rotation,
    sector_indices,
    sector_restriction,
    transverse_denominator,
    trig_operators,
)
from qubit_geometry.models.states import (
    PureStateParams,
    conjugate_density,
    density_from_pure,
    ensemble_density,
    pure_state,
    singlet,
    triplet,
    werner_ensemble,
)
from qubit_geometry.services.entanglement import (
    big_phi_stats,
    closed_form_expectations,
    entanglement_of_formation,
    geometric_concurrence,
    mixed_concurrence,
    trig_expectations,
    wootters_concurrence,
)
from qubit_geometry.services.sampling import (
    ensemble_for_sample,
    phi_grid,
    random_pure_states,
    theta_grid,
)

# Tolerances per property family
OPERATOR_TOLERANCE = 1e-13
SPECTRUM_TOLERANCE = 1e-12
GRID_TOLERANCE = 1e-12
ORACLE_TOLERANCE = 1e-10
MIXED_TOLERANCE = 1e-9

PURE_SAMPLES = 1000
MIXED_SAMPLES = 500
ROTATION_ANGLES = (0.3, 1.0, math.pi / 2, 2.5, math.pi, -0.7)
WERNER_POINTS = tuple(k / 10 for k in range(11))


@dataclass
class PropertyResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'max_residual': self.max_residual,
            'tolerance': self.tolerance,
            'detail': self.detail,
        }


@dataclass
class VerificationReport:
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[PropertyResult]:
        return [result for result in self.results if not result.passed]

    def get(self, name: str) -> Optional[PropertyResult]:
        for result in self.results:
            if result.name == name:
                return result
        return None


def _result(name: str, residual: float, tolerance: float, detail: str = "") -> PropertyResult:
    residual = float(residual)
    return PropertyResult(
        name=name,
        passed=math.isfinite(residual) and residual <= tolerance,
        max_residual=residual,
        tolerance=tolerance,
        detail=detail,
    )


def _max_abs(values: Sequence[float]) -> float:
    return float(max((abs(v) for v in values), default=0.0))


def _grid(theta_steps: int, phi_steps: int, sector: Sector) -> List[PureStateParams]:
    return [
        PureStateParams(sector, theta, phi)
        for theta in theta_grid(theta_steps)
        for phi in phi_grid(phi_steps)
    ]


def _format_values(values: Sequence[float]) -> str:
    return "{" + ", ".join(f"{v:.12g}" for v in values) + "}"


# Operator algebra

def check_commutators(sector: Sector) -> List[PropertyResult]:
    """[sin, p] = i cos and [cos, p] = -i sin, p the sector's conjugate momentum"""
    trig = trig_operators(sector)
    sin_residual = commutator(trig.sin_op, trig.conjugate_momentum).distance(1j * trig.cos_op)
    cos_residual = commutator(trig.cos_op, trig.conjugate_momentum).distance(-1j * trig.sin_op)
    tag = sector.value
    return [
        _result(f"commutator_sin_{tag}", sin_residual, OPERATOR_TOLERANCE, "[sin, p] = i cos"),
        _result(f"commutator_cos_{tag}", cos_residual, OPERATOR_TOLERANCE, "[cos, p] = -i sin"),
    ]


def check_raw_relative_sz() -> PropertyResult:
    """With the unhalved relative projection the flip-flop relation carries a factor 2"""
    trig = trig_operators(Sector.S0)
    residual = commutator(trig.sin_op, relative_sz()).distance(2j * trig.cos_op)
    return _result("commutator_raw_delta_sz", residual, OPERATOR_TOLERANCE, "[sin, delta Sz] = 2i cos")


def check_hermiticity() -> PropertyResult:
    residual = 0.0
    for sector in Sector:
        trig = trig_operators(sector)
        for op in (trig.cos_op, trig.sin_op):
            residual = max(residual, op.distance(op.dagger))
    return _result("trig_hermitian", residual, OPERATOR_TOLERANCE)


def check_eigenstates(sector: Sector) -> PropertyResult:
    trig = trig_operators(sector)
    residual = 0.0
    for label, (vector, value) in eigenstates(sector).items():
        op = trig.cos_op if label.startswith("cos") else trig.sin_op
        residual = max(residual, float(np.max(np.abs(op.apply(vector) - value * vector))))
    return _result(f"eigenstates_{sector.value}", residual, OPERATOR_TOLERANCE, "cos+, cos-, sin+, sin-")


def check_trig_spectra() -> PropertyResult:
    expected = np.array([1.0, 0.0, 0.0, -1.0])
    residual = 0.0
    for sector in Sector:
        trig = trig_operators(sector)
        for op in (trig.cos_op, trig.sin_op):
            values = hermitian_eig(op).eigenvalues
            residual = max(residual, float(np.max(np.abs(values - expected))))
    return _result("trig_spectra", residual, SPECTRUM_TOLERANCE, "{1, 0, 0, -1}")


def check_angle_spectra() -> PropertyResult:
    """phi_c spectrum {pi, pi/2, pi/2, 0}, phi_s spectrum {pi/2, 0, 0, -pi/2}"""
    half_pi = math.pi / 2
    expected_c = np.array([math.pi, half_pi, half_pi, 0.0])
    expected_s = np.array([half_pi, 0.0, 0.0, -half_pi])
    residual = 0.0
    attained = set()
    for sector in Sector:
        pair = angle_operators(trig_operators(sector))
        values_c = hermitian_eig(pair.phi_c).eigenvalues
        values_s = hermitian_eig(pair.phi_s).eigenvalues
        residual = max(
            residual,
            float(np.max(np.abs(values_c - expected_c))),
            float(np.max(np.abs(values_s - expected_s))),
        )
        # eigenvalues carried by the sector's own eigenstates
        attained.update(round(float(v), 12) + 0.0 for v in (values_c[0], values_c[-1], values_s[0], values_s[-1]))
    return _result("angle_spectra", residual, SPECTRUM_TOLERANCE, _format_values(sorted(attained)))


def check_arccos_identity() -> PropertyResult:
    """phi_c equals arccos(cos) evaluated as a spectral function"""
    residual = 0.0
    for sector in Sector:
        trig = trig_operators(sector)
        decomposition = hermitian_eig(trig.cos_op)
        values = decomposition.eigenvalues
        snapped = np.round(values)
        residual = max(residual, float(np.max(np.abs(values - snapped))))
        vectors = decomposition.eigenvectors.data
        spectral = (vectors * np.arccos(snapped)) @ vectors.conj().T
        residual = max(residual, angle_operators(trig).phi_c.distance(ComplexMatrix(spectral)))
    return _result("arccos_spectral_identity", residual, SPECTRUM_TOLERANCE)


def check_annihilation() -> PropertyResult:
    """Each sector's trig operators annihilate the other sector's basis states"""
    residual = 0.0
    for sector in Sector:
        trig = trig_operators(sector)
        for index in range(4):
            if index in sector_indices(sector):
                continue
            basis = np.zeros(4, dtype=complex)
            basis[index] = 1.0
            for op in (trig.cos_op, trig.sin_op):
                residual = max(residual, float(np.max(np.abs(op.apply(basis)))))
    return _result("sector_annihilation", residual, OPERATOR_TOLERANCE)


def check_square_sum() -> PropertyResult:
    """cos^2 + sin^2 = 2 on the sector; the restricted commutator has max-norm 2"""
    residual = 0.0
    for sector in Sector:
        trig = trig_operators(sector)
        square_sum = sector_restriction(trig.cos_op @ trig.cos_op + trig.sin_op @ trig.sin_op, sector)
        residual = max(residual, float(np.max(np.abs(square_sum - 2.0 * np.eye(2)))))
        bracket = sector_restriction(commutator(trig.cos_op, trig.sin_op), sector)
        residual = max(residual, abs(float(np.max(np.abs(bracket))) - 2.0))
    return _result("sector_square_sum", residual, OPERATOR_TOLERANCE, "non-commuting, ||[cos, sin]|| = 2")


def check_denominator() -> PropertyResult:
    residual = transverse_denominator().distance(0.25 * identity(4))
    return _result("transverse_denominator", residual, OPERATOR_TOLERANCE, "D = I/4")


def check_rotation_unitarity() -> PropertyResult:
    residual = 0.0
    for qubit in (1, 2):
        for axis in Axis:
            for angle in ROTATION_ANGLES:
                forward = rotation(qubit, axis, angle)
                product = forward.dagger @ forward
                residual = max(residual, product.distance(identity(4)))
                residual = max(residual, (forward @ rotation(qubit, axis, -angle)).distance(identity(4)))
    return _result("rotation_unitarity", residual, OPERATOR_TOLERANCE)


# Closed forms on the (theta, phi) grid

def check_closed_forms(theta_steps: int, phi_steps: int) -> PropertyResult:
    residual = 0.0
    for params in _grid(theta_steps, phi_steps, Sector.S0):
        rho = density_from_pure(pure_state(params))
        trig = trig_expectations(rho, Sector.S0)
        expected = closed_form_expectations(params)
        residual = max(
            residual,
            abs(trig.cos_mean - expected['cos_mean']),
            abs(trig.sin_mean - expected['sin_mean']),
            abs(min(1.0, trig.concurrence) - expected['concurrence']),
        )
    return _result("closed_form_means", residual, GRID_TOLERANCE, f"{theta_steps}x{phi_steps} grid")


def check_big_phi(theta_steps: int, phi_steps: int) -> PropertyResult:
    residual = 0.0
    for params in _grid(theta_steps, phi_steps, Sector.S0):
        stats = big_phi_stats(density_from_pure(pure_state(params)))
        expected = closed_form_expectations(params)
        residual = max(
            residual,
            abs(stats.mean - expected['big_phi_mean']),
            abs(stats.variance - expected['big_phi_variance']),
        )

    singlet_stats = big_phi_stats(density_from_pure(singlet()))
    triplet_stats = big_phi_stats(density_from_pure(triplet()))
    residual = max(
        residual,
        abs(singlet_stats.mean + 1.0),
        abs(triplet_stats.mean - 1.0 / 3.0),
        singlet_stats.variance,
        triplet_stats.variance,
    )
    detail = f"triplet angle {triplet_stats.angle_degrees:.6f} deg, singlet {singlet_stats.angle_degrees:.6f} deg"
    return _result("big_phi_closed_form", residual, GRID_TOLERANCE, detail)


def check_variance_identity(theta_steps: int, phi_steps: int) -> PropertyResult:
    """Var(cos) + Var(sin) = 2 - C^2, equal to 1 for the triplet"""
    residual = 0.0
    for params in _grid(theta_steps, phi_steps, Sector.S0):
        trig = trig_expectations(density_from_pure(pure_state(params)), Sector.S0)
        concurrence = math.sin(params.theta)
        residual = max(residual, abs(trig.variance_sum - (2.0 - concurrence * concurrence)))
    maximal = trig_expectations(density_from_pure(triplet()), Sector.S0)
    residual = max(residual, abs(maximal.variance_sum - 1.0))
    return _result("variance_identity", residual, GRID_TOLERANCE, "2 - C^2")


# Oracle comparisons

def check_pure_oracle(sector: Sector, seed: int, count: int = PURE_SAMPLES) -> PropertyResult:
    residual = 0.0
    for _, vector in random_pure_states(seed, count, sector):
        rho = density_from_pure(vector)
        residual = max(residual, abs(geometric_concurrence(rho, sector) - wootters_concurrence(rho)))
    return _result(f"pure_oracle_{sector.value}", residual, ORACLE_TOLERANCE, f"{count} states")


def check_cross_sector_nulls(seed: int, count: int = 200) -> PropertyResult:
    residual = 0.0
    for sector, other in ((Sector.S0, Sector.S1), (Sector.S1, Sector.S0)):
        for _, vector in random_pure_states(seed, count, sector):
            residual = max(residual, geometric_concurrence(density_from_pure(vector), other))
    return _result("cross_sector_nulls", residual, OPERATOR_TOLERANCE)


def check_mixed_oracle(seed: int, count: int = MIXED_SAMPLES) -> PropertyResult:
    differences = []
    for index in range(count):
        rho = ensemble_density(ensemble_for_sample(seed, index))
        differences.append(mixed_concurrence(rho) - wootters_concurrence(rho))
    return _result("mixed_oracle", _max_abs(differences), MIXED_TOLERANCE, f"{count} ensembles")


def check_werner() -> PropertyResult:
    residual = 0.0
    for p in WERNER_POINTS:
        rho = ensemble_density(werner_ensemble(p))
        expected = max(0.0, (3.0 * p - 1.0) / 2.0)
        residual = max(
            residual,
            abs(mixed_concurrence(rho) - expected),
            abs(wootters_concurrence(rho) - expected),
        )
    boundary = ensemble_density(werner_ensemble(1.0 / 3.0))
    residual = max(residual, mixed_concurrence(boundary), wootters_concurrence(boundary))
    return _result("werner_family", residual, ORACLE_TOLERANCE, "max(0, (3p - 1)/2), separable at p = 1/3")


def check_rotation_covariance(seed: int, count: int = 50) -> PropertyResult:
    """Conjugating by exp(-i a S1z) rotates (<cos>, <sin>) by a and keeps C"""
    residual = 0.0
    for index in range(count):
        rho = ensemble_density(ensemble_for_sample(seed, index))
        before = trig_expectations(rho, Sector.S0)
        for angle in ROTATION_ANGLES:
            after = trig_expectations(conjugate_density(rho, rotation(1, Axis.Z, angle)), Sector.S0)
            cos_expected = before.cos_mean * math.cos(angle) - before.sin_mean * math.sin(angle)
            sin_expected = before.cos_mean * math.sin(angle) + before.sin_mean * math.cos(angle)
            residual = max(
                residual,
                abs(after.cos_mean - cos_expected),
                abs(after.sin_mean - sin_expected),
                abs(after.concurrence - before.concurrence),
            )
    return _result("rotation_covariance", residual, GRID_TOLERANCE)


def check_tilde_mapping(theta_steps: int, phi_steps: int) -> PropertyResult:
    """exp(-i pi S2y) carries the S0 state (theta, phi) to the S1 state (theta, phi + pi)"""
    flip = rotation(2, Axis.Y, math.pi)
    residual = 0.0
    for params in _grid(theta_steps, phi_steps, Sector.S0):
        image = flip.apply(pure_state(params).amplitudes)
        target = pure_state(PureStateParams(Sector.S1, params.theta, params.phi + math.pi))
        residual = max(residual, abs(abs(np.vdot(target.amplitudes, image)) - 1.0))
    return _result("tilde_mapping", residual, GRID_TOLERANCE)


def check_eof_monotone() -> PropertyResult:
    values = [entanglement_of_formation(k / 10) for k in range(11)]
    drops = [max(0.0, values[k] - values[k + 1]) for k in range(10)]
    residual = max(abs(values[0]), abs(values[-1] - 1.0), max(drops))
    return _result("eof_monotone", residual, 0.0, "endpoints 0 and 1")


def run_all(theta_steps: int = 50, phi_steps: int = 50, seed: int = 42,
            progress: Optional[Callable[[PropertyResult], None]] = None) -> VerificationReport:
    """
    Run the full property suite.

    Args:
        theta_steps, phi_steps: grid for the closed-form checks
        seed: master seed for the random pure states and ensembles
        progress: called with each result as soon as it is available
    """
    checks: List[Callable[[], object]] = [
        lambda: check_commutators(Sector.S0),
        lambda: check_commutators(Sector.S1),
        check_raw_relative_sz,
        check_hermiticity,
        lambda: check_eigenstates(Sector.S0),
        lambda: check_eigenstates(Sector.S1),
        check_trig_spectra,
        check_angle_spectra,
        check_arccos_identity,
        check_annihilation,
        check_square_sum,
        check_denominator,
        check_rotation_unitarity,
        lambda: check_closed_forms(theta_steps, phi_steps),
        lambda: check_big_phi(theta_steps, phi_steps),
        lambda: check_variance_identity(theta_steps, phi_steps),
        lambda: check_pure_oracle(Sector.S0, seed),
        lambda: check_pure_oracle(Sector.S1, seed),
        lambda: check_cross_sector_nulls(seed),
        lambda: check_mixed_oracle(seed),
        check_werner,
        lambda: check_rotation_covariance(seed),
        lambda: check_tilde_mapping(theta_steps, phi_steps),
        check_eof_monotone,
    ]

    report = VerificationReport()
    for check in checks:
        outcome = check()
        for result in (outcome if isinstance(outcome, list) else [outcome]):
            report.results.append(result)
            if progress is not None:
                progress(result)
    return report
