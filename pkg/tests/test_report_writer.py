import json

import pytest
from openpyxl import load_workbook

from qubit_geometry.services.report_writer import (
    Report,
    ReportWriterService,
    Table,
    format_number,
    get_report_writer,
    normalize,
    render,
    render_csv,
    render_json,
)


@pytest.fixture
def report():
    table = Table(
        name='rows',
        columns=['theta', 'c', 'passed', 'note'],
        rows=[
            {'theta': 0.0, 'c': 1 / 3, 'passed': True, 'note': None},
            {'theta': 1.5707963267948966, 'c': -0.0, 'passed': False, 'note': {'kind': 'pure'}},
        ],
    )
    return Report(command='sweep', table=table, meta={'seed': 42, 'tolerance': 1e-9})


def test_format_number():
    assert format_number(0.0) == "0"
    assert format_number(-0.0) == "0"
    assert format_number(1 / 3) == "0.333333333333"
    assert format_number(1e-13) == "1e-13"
    assert format_number(2.5, digits=3) == "2.5"


def test_normalize_is_recursive():
    assert normalize({'a': [1 / 3, 2], 'b': None, 'c': True}) == {'a': [0.333333333333, 2], 'b': None, 'c': True}
    assert normalize(float('nan')) is None


def test_render_csv(report):
    text = render_csv(report.table)
    assert text.split('\n') == [
        "theta,c,passed,note",
        "0,0.333333333333,true,",
        '1.57079632679,0,false,"{""kind"":""pure""}"',
        "",
    ]


def test_render_json(report):
    document = json.loads(render_json(report))
    assert document['command'] == 'sweep'
    assert document['seed'] == 42
    assert document['tolerance'] == 1e-9
    assert document['rows'][0] == {'theta': 0, 'c': 0.333333333333, 'passed': True, 'note': None}
    assert render_json(report).endswith("}\n")


def test_render_is_deterministic(report):
    assert render(report, 'json') == render(report, 'json')
    with pytest.raises(ValueError):
        render(report, 'xlsx')


def test_write_to_stdout(report, capsys):
    assert ReportWriterService().write(report, 'csv') is None
    assert capsys.readouterr().out.startswith("theta,c,passed,note\n")


def test_write_to_file(report, tmp_path):
    path = tmp_path / "rows.json"
    assert ReportWriterService().write(report, 'json', str(path)) == str(path)
    assert path.read_text(encoding='utf-8') == render_json(report)


def test_write_xlsx(report, tmp_path):
    path = tmp_path / "rows.xlsx"
    ReportWriterService().write(report, 'xlsx', str(path))
    wb = load_workbook(path)
    ws = wb['rows']
    assert [cell.value for cell in ws[1]] == ['theta', 'c', 'passed', 'note']
    assert ws['A1'].font.bold
    assert ws['B2'].value == pytest.approx(0.333333333333)
    assert ws['D3'].value == '{"kind":"pure"}'
    meta = {row[0]: row[1] for row in wb['meta'].iter_rows(min_row=2, values_only=True)}
    assert meta['command'] == 'sweep'
    assert meta['seed'] == 42


def test_xlsx_needs_path(report):
    with pytest.raises(ValueError):
        ReportWriterService().write(report, 'xlsx')


def test_missing_directory_raises_os_error(report, tmp_path):
    with pytest.raises(OSError):
        ReportWriterService().write(report, 'csv', str(tmp_path / "missing" / "rows.csv"))
    with pytest.raises(OSError):
        ReportWriterService().write(report, 'xlsx', str(tmp_path / "missing" / "rows.xlsx"))


def test_writer_follows_digits():
    assert get_report_writer(12) is get_report_writer(12)
    assert get_report_writer(6).digits == 6
