import io
import json

import pytest

from beltrami_cert.certify.report import BoundReport, Status
from beltrami_cert.cli.cli_certifier import parse_point, run
from beltrami_cert.services.output import OutputWriter
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.utils import ConfigError, StageFailure


@pytest.fixture
def certified_report(tmp_path):
    g_star = LpStd.zero(RadialGrid((0.0, 1.0, 2.0, 4.0)), -1, 1, 2.1)
    path = OutputWriter(tmp_path).write_lpstd("g_star", g_star)
    report = BoundReport(
        status=Status.CERTIFIED,
        p=2.1,
        R=1.5,
        varrho=1e-2,
        A=(7.11, 7.12),
        eps_prime=(0.0, 1e-3),
        C=(0.5, 0.5),
        artifacts={"g_star": str(path)},
    )
    return report.dump(tmp_path / "report.json")


def write_config(tmp_path, **fields):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"output": {"dir": str(tmp_path / "out")}, "threads": 1, **fields}))
    return path


def test_parse_point():
    assert parse_point(" 1, 0\n") == ("1", "0", 1 + 0j)
    with pytest.raises(ConfigError):
        parse_point("1;0")
    with pytest.raises(ConfigError):
        parse_point("1,zero")


def test_certify_with_exponent_two(tmp_path, capsys):
    assert run(["certify", "--config", str(write_config(tmp_path, p=2.0))]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "failed" and report["stage"] == "const_A"


def test_config_errors_exit_with_two(tmp_path, capsys):
    assert run(["crescent", "--config", str(write_config(tmp_path, grid={"fourier_modes": 3}))]) == 2
    assert "beltrami-cert:" in capsys.readouterr().err
    assert run(["certify", "--config", str(tmp_path / "missing.json")]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as e:
        run(["renormalize"])
    assert e.value.code == 2


def test_bound_at_points(certified_report, capsys):
    assert run(["bound", "--report", str(certified_report), "--points", "1,0", "--points", "0.5,0.5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(",")[:2] for line in lines] == [["1", "0"], ["0.5", "0.5"]]
    assert all(float(line.split(",")[2]) > 0.0 for line in lines)


def test_bound_reads_points_from_stdin(certified_report, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1,0\n\n0.25,0\n"))
    assert run(["bound", "--report", str(certified_report)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and lines[1].startswith("0.25,0,")


def test_bound_outside_the_grid(certified_report, capsys):
    assert run(["bound", "--report", str(certified_report), "--points", "5,0"]) == 1
    assert json.loads(capsys.readouterr().out)["stage"] == "bound"


def test_bound_needs_a_certified_report(tmp_path, capsys):
    failed = BoundReport.failed(StageFailure("verify_ball", "no eps"), p=2.1, R=1.5, varrho=1e-2)
    path = failed.dump(tmp_path / "report.json")
    assert run(["bound", "--report", str(path), "--points", "1,0"]) == 1
    assert json.loads(capsys.readouterr().out)["stage"] == "verify_ball"
    assert run(["bound", "--report", str(tmp_path / "missing.json"), "--points", "1,0"]) == 2
