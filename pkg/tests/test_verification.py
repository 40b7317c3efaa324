import pytest

from qubit_geometry.models.spinops import Sector
from qubit_geometry.services import verification
from qubit_geometry.services.verification import PropertyResult, VerificationReport, run_all


@pytest.mark.parametrize("sector", list(Sector))
def test_commutator_checks(sector):
    results = verification.check_commutators(sector)
    assert [r.name for r in results] == [f"commutator_sin_{sector.value}", f"commutator_cos_{sector.value}"]
    assert all(r.passed for r in results)


@pytest.mark.parametrize("check", [
    verification.check_raw_relative_sz,
    verification.check_hermiticity,
    verification.check_trig_spectra,
    verification.check_arccos_identity,
    verification.check_annihilation,
    verification.check_square_sum,
    verification.check_denominator,
    verification.check_rotation_unitarity,
    verification.check_werner,
    verification.check_eof_monotone,
])
def test_operator_checks_pass(check):
    result = check()
    assert result.passed, result.to_dict()


def test_angle_spectra_detail():
    result = verification.check_angle_spectra()
    assert result.passed
    assert result.detail == "{-1.57079632679, 0, 1.57079632679, 3.14159265359}"


def test_grid_checks():
    for check in (verification.check_closed_forms, verification.check_big_phi,
                  verification.check_variance_identity, verification.check_tilde_mapping):
        result = check(7, 6)
        assert result.passed, result.to_dict()


def test_big_phi_detail_reports_triplet_angle():
    assert "triplet angle 70.528779 deg" in verification.check_big_phi(3, 3).detail


def test_sampled_checks():
    assert verification.check_pure_oracle(Sector.S0, seed=1, count=50).passed
    assert verification.check_pure_oracle(Sector.S1, seed=1, count=50).passed
    assert verification.check_cross_sector_nulls(seed=1, count=20).passed
    assert verification.check_mixed_oracle(seed=1, count=50).passed
    assert verification.check_rotation_covariance(seed=1, count=5).passed


def test_failure_is_reported():
    result = verification._result("demo", 1e-3, 1e-9)
    assert not result.passed
    assert not verification._result("demo", float('nan'), 1.0).passed
    report = VerificationReport([result, PropertyResult("ok", True, 0.0, 1e-9)])
    assert not report.passed
    assert [r.name for r in report.failures] == ["demo"]
    assert report.get("ok").passed
    assert report.get("missing") is None


def test_run_all_small_grid():
    seen = []
    report = run_all(5, 5, seed=3, progress=seen.append)
    assert report.passed, [r.to_dict() for r in report.failures]
    assert seen == report.results
    names = [r.name for r in report.results]
    assert len(names) == len(set(names))
    for name in ("werner_family", "mixed_oracle", "variance_identity", "commutator_raw_delta_sz", "eof_monotone"):
        assert report.get(name) is not None
