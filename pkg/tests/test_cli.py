import json
import math
from datetime import datetime
from pathlib import Path

import pytest
from openpyxl import load_workbook

from qubit_geometry.main import EXIT_FAILURE, EXIT_INPUT, EXIT_IO, EXIT_OK, main, parse_grid, InputError

SINGLET = json.dumps({"kind": "pure", "sector": "s0", "theta": math.pi / 2, "phi": math.pi})


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_eval_inline_singlet(capsys):
    assert main(['eval', '--inline', SINGLET]) == EXIT_OK
    document = _json_out(capsys)
    assert document['command'] == 'eval'
    assert document['kind'] == 'pure'
    record = document['report'][0]
    assert record['c_s0'] == 1
    assert record['c_mixed'] == 1
    assert record['c_wootters'] == 1
    assert record['big_phi_mean'] == -1


def test_eval_degrees(capsys):
    inline = json.dumps({"kind": "pure", "sector": "s1", "theta": 60, "phi": 0})
    assert main(['eval', '--inline', inline, '--degrees']) == EXIT_OK
    record = _json_out(capsys)['report'][0]
    assert record['c_s1'] == pytest.approx(math.sin(math.pi / 3), abs=1e-11)
    assert record['c_s0'] == pytest.approx(0.0, abs=1e-15)


def test_eval_state_file(tmp_path, capsys):
    path = tmp_path / "werner.json"
    path.write_text(json.dumps({"kind": "ensemble", "terms": [
        {"weight": 0.5, "sector": "s0", "theta": math.pi / 2, "phi": math.pi},
        {"weight": 0.125, "sector": "s0", "theta": 0, "phi": 0},
        {"weight": 0.125, "sector": "s0", "theta": math.pi, "phi": 0},
        {"weight": 0.125, "sector": "s1", "theta": 0, "phi": 0},
        {"weight": 0.125, "sector": "s1", "theta": math.pi, "phi": 0},
    ]}), encoding='utf-8')
    assert main(['eval', '--state', str(path)]) == EXIT_OK
    record = _json_out(capsys)['report'][0]
    assert record['c_mixed'] == pytest.approx(0.25, abs=1e-11)
    assert record['c_wootters'] == pytest.approx(0.25, abs=1e-11)


def test_eval_matrix_outside_symmetry_class(capsys):
    entries = [0.0] * 32
    for row, col, value in ((0, 0, 0.5), (0, 1, 0.5), (1, 0, 0.5), (1, 1, 0.5)):
        entries[2 * (4 * row + col)] = value
    assert main(['eval', '--inline', json.dumps({"kind": "matrix", "entries": entries})]) == EXIT_OK
    record = _json_out(capsys)['report'][0]
    assert record['c_mixed'] is None
    assert "Sz^2" in record['c_mixed_reason']


def test_eval_csv(capsys):
    assert main(['eval', '--inline', SINGLET, '--format', 'csv']) == EXIT_OK
    lines = capsys.readouterr().out.split('\n')
    assert lines[0].startswith("c_s0,c_s1,c_mixed")
    assert len(lines) == 3


@pytest.mark.parametrize("argv", [
    ['eval'],
    ['eval', '--inline', '{"kind": "pure"'],
    ['eval', '--inline', '{"kind": "pure", "sector": "s0", "theta": 9, "phi": 0}'],
    ['eval', '--state', 'missing.json'],
    ['eval', '--state', 'a.json', '--inline', '{}'],
    ['plot'],
    ['sweep', '--grid', '1x5'],
    ['sweep', '--grid', 'ten'],
    ['sweep', '--format', 'xlsx'],
    ['compare-random', '--samples', '0'],
    ['compare-random', '--samples', 'many'],
    ['compare-random', '--tolerance', '-1'],
])
def test_input_errors(argv, capsys):
    assert main(argv) == EXIT_INPUT
    assert capsys.readouterr().err


def test_input_error_messages(capsys):
    assert main(['eval', '--state', 'missing.json']) == EXIT_INPUT
    assert "[ERROR] File not found: missing.json" in capsys.readouterr().err


def test_parse_grid():
    assert parse_grid("50x50") == (50, 50)
    assert parse_grid(" 3 X 4 ") == (3, 4)
    with pytest.raises(InputError):
        parse_grid("3x")


def test_sweep_csv(capsys):
    assert main(['sweep', '--grid', '3x4', '--format', 'csv']) == EXIT_OK
    out = capsys.readouterr().out
    lines = out.split('\n')
    assert len(lines) == 14 and lines[-1] == ""
    assert lines[0] == "theta,phi,c_geometric,c_wootters,cos_mean,sin_mean,var_sum,big_phi_mean"
    assert lines[1].startswith("0,0,0,0,")
    assert "\r" not in out


def test_csv_and_json_carry_the_same_values(capsys):
    assert main(['sweep', '--grid', '3x4', '--format', 'csv']) == EXIT_OK
    header, *lines = capsys.readouterr().out.rstrip('\n').split('\n')
    assert main(['sweep', '--grid', '3x4']) == EXIT_OK
    rows = _json_out(capsys)['rows']
    columns = header.split(',')
    assert len(lines) == len(rows) == 12
    for line, row in zip(lines, rows):
        assert list(row) == columns
        for column, text in zip(columns, line.split(',')):
            assert float(text) == row[column], (column, text, row[column])


def test_sweep_json_metadata(capsys):
    assert main(['sweep', '--grid', '2x2', '--sector', 's1', '--workers', '2']) == EXIT_OK
    document = _json_out(capsys)
    assert document['sector'] == 's1'
    assert (document['theta_steps'], document['phi_steps']) == (2, 2)
    assert len(document['rows']) == 4


def test_output_to_missing_directory():
    assert main(['sweep', '--grid', '2x2', '--output', 'nowhere/rows.csv', '--format', 'csv']) == EXIT_IO


def test_output_file_matches_stdout(tmp_path, capsys):
    assert main(['sweep', '--grid', '3x3']) == EXIT_OK
    printed = capsys.readouterr().out
    target = tmp_path / "rows.json"
    assert main(['sweep', '--grid', '3x3', '--output', str(target)]) == EXIT_OK
    assert target.read_text(encoding='utf-8') == printed
    assert capsys.readouterr().out == ""


def test_xlsx_output(tmp_path):
    target = tmp_path / "rows.xlsx"
    assert main(['sweep', '--grid', '2x3', '--format', 'xlsx', '--output', str(target)]) == EXIT_OK
    ws = load_workbook(target)['rows']
    assert ws.max_row == 7
    assert ws['A1'].value == 'theta'


def test_compare_random_is_deterministic(tmp_path):
    outputs = []
    for run, workers in enumerate(('1', '1', '4')):
        target = tmp_path / f"run{run}.json"
        argv = ['compare-random', '--samples', '150', '--seed', '42', '--workers', workers, '--output', str(target)]
        assert main(argv) == EXIT_OK
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    summary = json.loads(outputs[0])['summary'][0]
    assert summary['count'] == 150
    assert summary['passed'] is True
    assert summary['worst_spec']['kind'] == 'ensemble'


def test_config_file_supplies_defaults(tmp_path, capsys):
    settings = tmp_path / "settings.json"
    settings.write_text(json.dumps({"format": "csv", "theta_steps": 2, "phi_steps": 2}), encoding='utf-8')
    assert main(['sweep', '--config', str(settings)]) == EXIT_OK
    assert len(capsys.readouterr().out.split('\n')) == 6
    assert main(['sweep', '--config', str(settings), '--format', 'json']) == EXIT_OK
    assert len(_json_out(capsys)['rows']) == 4


def test_bad_config_file(tmp_path, capsys):
    settings = tmp_path / "settings.json"
    settings.write_text(json.dumps({"seed": "x"}), encoding='utf-8')
    assert main(['sweep', '--config', str(settings)]) == EXIT_INPUT
    assert "wrong type" in capsys.readouterr().err


@pytest.mark.parametrize("digits", [-1, 0, 18])
def test_config_digits_out_of_range(tmp_path, capsys, digits):
    settings = tmp_path / "settings.json"
    settings.write_text(json.dumps({"digits": digits}), encoding='utf-8')
    assert main(['sweep', '--grid', '2x2', '--config', str(settings)]) == EXIT_INPUT
    captured = capsys.readouterr()
    assert "[ERROR] Setting 'digits' must be between 1 and 17" in captured.err
    assert captured.out == ""


def test_activity_log(tmp_path, capsys):
    log_dir = tmp_path / "logs"
    assert main(['eval', '--inline', SINGLET, '--log-dir', str(log_dir)]) == EXIT_OK
    log_file = log_dir / f"{datetime.now().strftime('%Y-%m-%d')}_activity.csv"
    text = log_file.read_text(encoding='utf-8')
    assert "Started eval" in text
    assert "Finished eval" in text


def test_unwritable_log_dir_keeps_output(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("x", encoding='utf-8')
    assert main(['eval', '--inline', SINGLET, '--log-dir', str(blocker / "logs")]) == EXIT_OK
    captured = capsys.readouterr()
    assert json.loads(captured.out)['report'][0]['c_s0'] == 1
    assert "[LOG]" in captured.err


def test_default_log_dir_is_relative():
    assert main(['sweep', '--grid', '2x2', '--output', 'rows.json']) == EXIT_OK
    assert Path('outputs/logs').is_dir()


@pytest.mark.slow
def test_verify_passes(capsys):
    assert main(['verify', '--grid', '5x5']) == EXIT_OK
    document = _json_out(capsys)
    assert document['passed'] is True
    assert {row['name'] for row in document['properties']} >= {'werner_family', 'mixed_oracle'}


def test_comparison_failure_exits_one(monkeypatch, capsys):
    from qubit_geometry import main as cli
    from qubit_geometry.services.sampling import ComparisonSummary, ensemble_for_sample

    def failing(samples, seed, tolerance, workers):
        return ComparisonSummary(samples, seed, 1e-3, 1e-4, 0, ensemble_for_sample(seed, 0), tolerance)

    monkeypatch.setattr(cli, 'compare_random', failing)
    assert main(['compare-random', '--samples', '5']) == EXIT_FAILURE
    captured = capsys.readouterr()
    assert json.loads(captured.out)['summary'][0]['passed'] is False
    assert "[COMPARE]" in captured.err


def test_unexpected_error_exits_one(monkeypatch, capsys):
    from qubit_geometry import main as cli

    def broken(*args):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, 'sweep', broken)
    assert main(['sweep', '--grid', '2x2']) == EXIT_FAILURE
    assert "Unexpected failure: boom" in capsys.readouterr().err
