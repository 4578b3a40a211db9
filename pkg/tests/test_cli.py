import json

import pytest

from hypersing.cli import Report, format_table, main, parse_job, run, run_document
from hypersing.corpus import fixture_paths
from hypersing.errors import ParseError

E6_JOB = """\
command = invariants
vars = x, y
f = x^3 + y^4
"""

EXPECTED_EXIT = {"invariants_nonisolated": 3}


def test_minimal_invariants_job():
    job = parse_job(E6_JOB)
    assert job.command == "invariants"
    assert job.ring.variables == ("x", "y")
    assert str(job.f) == "x^3 + y^4"


def test_sections_comments_and_continuations():
    job = parse_job("""\
[job]
command = verify-converse   # trailing comment
vars = x, y
[payload]
f = x^3 +
    y^4
phi = x + x^2*y,
    y
omega = (1 + x) dx^dy
omega_prime = (1 + x) dx^dy
""")
    assert str(job.f) == "x^3 + y^4"
    assert str(job.phi.components[0]) == "x + x^2*y"
    assert job.omega == job.omega_prime


def test_malformed_exponent_reports_position():
    with pytest.raises(ParseError) as info:
        parse_job("command = invariants\nvars = x, y\nf = x^^2\n")
    assert (info.value.line, info.value.column) == (3, 7)


@pytest.mark.parametrize("doc, message", [
    ("command = invariants\nvars = x, y\n", "missing required field 'f'"),
    ("command = invariants\nf = x^2\n", "missing required field 'vars'"),
    ("command = invariants\nvars = x, y\nf = x^2 + z\n", "unknown variable"),
    ("command = invariants\nvars = x, y\nf = x^2\ncolour = red\n", "unknown key"),
    ("command = dance\nvars = x\nf = x^2\n", "unknown or missing command"),
    ("command = class\nvars = x, y\nf = x^3 + y^4\nalpha = dx^dy\n", "must be a 1-form"),
])
def test_job_errors(doc, message):
    with pytest.raises(ParseError, match=message):
        parse_job(doc)


def test_t55_invariants():
    report, code = run(parse_job("command = invariants\nvars = x, y\nf = x^5 + y^5 + x^2*y^2\n"))
    assert code == 0
    assert {k: report.result[k] for k in ("mu", "tau", "d", "quasihomogeneous")} == \
        {"mu": 11, "tau": 10, "d": 1, "quasihomogeneous": False}


def test_non_isolated_exit_code():
    report = run_document("command = invariants\nvars = x, y\nf = x^2*y\n")
    assert report.exit_code == 3
    assert "non-isolated" in report.error


def test_input_error_exit_code():
    assert run_document("command = invariants\nvars = x, y\nf = x^^2\n").exit_code == 2
    # phi is not tangent to the identity
    doc = "command = interpolate\nvars = x, y\nphi = 2*x, y\n"
    assert run_document(doc).exit_code == 2


def test_inequivalent_pair_is_input_error():
    doc = """\
command = verify-converse
vars = x, y
f = x^3 + y^4
phi = x, y
omega = (1 + x) dx^dy
omega_prime = dx^dy
"""
    report = run_document(doc)
    assert report.exit_code == 2 and "NotEquivalent" in report.error


def test_truncation_exit_code():
    doc = """\
command = verify-converse
vars = x, y
f = x^3 + y^4
trunc = 2
phi = x, y
omega = dx^dy
omega_prime = dx^dy
"""
    assert run_document(doc).exit_code == 4


def test_report_json_round_trip():
    report = run_document(E6_JOB)
    again = Report.from_json(report.to_json())
    assert again == report
    assert json.loads(report.to_json())["schema"] == 1
    assert "timing" not in report.to_dict(timing=False)


def test_table_lists_result():
    table = format_table(run_document(E6_JOB))
    assert "mu" in table and "exit_code" in table


@pytest.mark.parametrize("path", fixture_paths(), ids=lambda p: p.stem)
def test_fixtures(path, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["run", str(path), "--json", str(out)])
    assert code == EXPECTED_EXIT.get(path.stem, 0)
    data = json.loads(out.read_text())
    assert data["schema"] == 1
    if data["command"] == "verify-converse":
        assert data["result"]["class_zero"] is True
    if data["command"] == "interpolate":
        assert all(data["result"]["checks"].values())
    assert "exit_code" in capsys.readouterr().out


def test_fixture_corpus_is_present():
    stems = {p.stem for p in fixture_paths()}
    assert {"invariants_e6", "invariants_t55", "cohomology_t55", "class_t55_kernel", "converse_t55"} <= stems


def test_subcommand_must_match_document(tmp_path):
    path = tmp_path / "job.job"
    path.write_text(E6_JOB)
    assert main(["cohomology", str(path), "--quiet"]) == 2
    assert main(["invariants", str(path), "--quiet"]) == 0
