import math
import os
import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import pytest

from ctxsd import cli, config, harness
from ctxsd.bounds import NONCONTEXTUAL, QUANTUM
from ctxsd.errors import ContractError, DomainError
from ctxsd.harness import (
    FigureJob,
    SweepSpec,
    Target,
    emit_figure,
    run_sweep,
    table_cmd,
    verify_all,
)


def read_csv(path):
    lines = path.read_text(encoding="utf-8").split("\n")
    assert lines[-1] == ""  # trailing newline
    header = lines[0].split(",")
    rows = [[float(x) for x in line.split(",")] for line in lines[1:-1]]
    return header, rows


# ---------------------------------------------------------------------------
# sweeps


def test_sweep_mesd_guessing_monotone():
    spec = SweepSpec(
        variable="c",
        start=0.0,
        stop=1.0,
        points=11,
        fixed={},
        targets=(
            Target("MESD", "P_g", QUANTUM),
            Target("MESD", "P_g", NONCONTEXTUAL),
        ),
    )
    result = run_sweep(spec)
    assert result.header == ("c", "MESD_Pg_Q", "MESD_Pg_NC")
    assert len(result.rows) == 11
    for col in (1, 2):
        values = [row[col] for row in result.rows]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


def test_sweep_single_point():
    spec = SweepSpec(
        variable="c",
        start=0.5,
        stop=0.5,
        points=1,
        fixed={},
        targets=(Target("MESD", "P_g", QUANTUM),),
    )
    result = run_sweep(spec)
    assert len(result.rows) == 1
    assert result.rows[0] == (0.5, pytest.approx(0.8535533905932738))


def test_sweep_confidence_columns_cross_at_midpoint():
    spec = SweepSpec(
        variable="omega",
        start=0.0,
        stop=1.0,
        points=21,
        fixed={"c": 0.5},
        targets=(
            Target("MESD", "C", NONCONTEXTUAL, outcome=1),
            Target("MESD", "C", NONCONTEXTUAL, outcome=2),
        ),
    )
    result = run_sweep(spec)
    assert result.header == ("omega", "MESD_C1_NC", "MESD_C2_NC")
    mid = result.rows[10]
    assert mid[0] == pytest.approx(0.5)
    assert mid[1] == pytest.approx(0.75, abs=1e-12)
    assert mid[2] == pytest.approx(0.75, abs=1e-12)


def test_sweep_shifts_singular_endpoint_inward():
    # MCM confidence diverges at (c, p) = (1, 0); the endpoint moves in by
    # half a step instead of emitting NaN
    spec = SweepSpec(
        variable="c",
        start=0.0,
        stop=1.0,
        points=11,
        fixed={"p": 0.0},
        targets=(Target("MCM", "C", QUANTUM),),
    )
    result = run_sweep(spec)
    assert result.rows[-1][0] == pytest.approx(0.95)
    assert all(math.isfinite(v) for row in result.rows for v in row)


def test_sweep_validation():
    with pytest.raises(ContractError):
        SweepSpec("x", 0.0, 1.0, 5, {}, (Target("MESD", "P_g", QUANTUM),))
    with pytest.raises(DomainError):
        SweepSpec("c", 0.0, 1.5, 5, {}, (Target("MESD", "P_g", QUANTUM),))
    with pytest.raises(DomainError):
        SweepSpec("c", 0.0, 1.0, 0, {}, (Target("MESD", "P_g", QUANTUM),))
    with pytest.raises(ContractError):
        SweepSpec("c", 0.0, 1.0, 5, {}, ())


# ---------------------------------------------------------------------------
# figures


def test_emit_figure_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    emit_figure(FigureJob("fig2", a))
    emit_figure(FigureJob("fig2", b))
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()  # LF endings only


def test_fig2_contents(tmp_path):
    path = emit_figure(FigureJob("fig2", tmp_path / "fig2.csv"))
    header, rows = read_csv(path)
    assert header == ["omega", "C_Q", "C_NC_1", "C_NC_2"]
    assert len(rows) == 201
    for row in rows:
        assert row[1] == pytest.approx(0.853553391, abs=1e-6)
    # nc curves cross the quantum line near the window boundaries
    diffs = [row[2] - row[1] for row in rows]
    sign_changes = sum(
        1 for a, b in zip(diffs, diffs[1:]) if (a > 0) != (b > 0)
    )
    assert sign_changes == 1
    crossing = next(row[0] for row, a, b in zip(rows, diffs, diffs[1:]) if (a > 0) != (b > 0))
    assert abs(crossing - 0.2071068) < 0.006


def test_fig3b_endpoint_values(tmp_path):
    path = emit_figure(FigureJob("fig3b", tmp_path / "fig3b.csv"))
    header, rows = read_csv(path)
    assert header == ["c", "P0_Q", "P0_NC"]
    last = rows[-1]
    assert last[0] == 1.0
    assert last[1] == pytest.approx(0.25, abs=1e-9)
    assert last[2] == pytest.approx(0.625, abs=1e-9)


def test_fig4_endpoint_values(tmp_path):
    path = emit_figure(FigureJob("fig4", tmp_path / "fig4.csv"))
    header, rows = read_csv(path)
    assert header == ["c", "Pg_Q", "Pg_NC"]
    first = rows[0]
    assert first[1] == pytest.approx(0.75, abs=1e-9)
    assert first[2] == pytest.approx(0.375, abs=1e-9)


def test_all_figures_emit_finite_unit_interval_values(tmp_path):
    for figure_id in harness.FIGURE_IDS:
        path = emit_figure(FigureJob(figure_id, tmp_path / f"{figure_id}.csv"))
        _, rows = read_csv(path)
        assert len(rows) == 201
        for row in rows:
            for v in row:
                assert math.isfinite(v)
                assert -1e-12 <= v <= 1.0 + 1e-12


def test_figure_job_rejects_unknown_id(tmp_path):
    with pytest.raises(ContractError):
        FigureJob("fig9", tmp_path / "x.csv")


def test_csv_significant_digits(tmp_path):
    path = emit_figure(FigureJob("fig2", tmp_path / "fig2.csv"))
    text = path.read_text(encoding="utf-8")
    for token in text.split("\n")[1].split(","):
        mantissa = token.replace("-", "").replace(".", "").lstrip("0")
        assert len(mantissa.split("e")[0]) <= 9


# ---------------------------------------------------------------------------
# table rendering


def test_table_cmd_lists_all_cells():
    text = table_cmd(0.5, 0.5, 0.5)
    for needle in (
        "MESD",
        "USD",
        "MCM",
        "P_g",
        "P_0",
        "C(1)",
        "C(2)",
        "definitional",
        "advantage window",
    ):
        assert needle in text
    # stable figure order inside each scheme block
    mesd_lines = [ln for ln in text.split("\n") if ln.startswith("MESD")]
    assert [ln.split()[1] for ln in mesd_lines] == ["P_g", "P_0", "C(1)", "C(2)"]


def test_table_cmd_flags_impossible_usd():
    text = table_cmd(1.0, 0.5, 0.5)
    assert "impossible" in text


# ---------------------------------------------------------------------------
# verify


def test_verify_all_passes_at_low_density():
    report = verify_all(5)
    assert report.passed
    assert not report.missing_ops
    assert len(report.covered_ops) == 26
    names = {ch.name for ch in report.checks}
    assert "qtheory/povm-completeness" in names
    assert "ncmodel/oracle-max-confidence" in names
    assert "bounds/inequality-suite" in names


def test_verify_all_rejects_sparse_grid():
    with pytest.raises(DomainError):
        verify_all(4)


def test_verify_all_reports_failure_with_corrupted_tolerances():
    broken = replace(
        config.DEFAULTS, closed_form=1e-18, oracle=1e-18, exact=1e-18
    )
    report = verify_all(5, broken)
    assert not report.passed
    rendered = report.render()
    assert "FAIL" in rendered
    assert "check(s) failed" in rendered


def test_render_lists_every_check_once():
    report = verify_all(5)
    rendered = report.render()
    for ch in report.checks:
        assert rendered.count(f" {ch.name} ") == 1
    assert "operations exercised: 26/26" in rendered


# ---------------------------------------------------------------------------
# CLI


def test_cli_verify_exit_codes():
    assert cli.main(["verify", "--points", "5"]) == 0
    assert cli.main(["verify", "--points", "2"]) == 2  # usage error


def test_cli_table_and_bounds_run(capsys):
    assert cli.main(["table", "--c", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "MCM" in out
    assert cli.main(["bounds"]) == 0
    out = capsys.readouterr().out
    assert "0.853553391" in out


def test_cli_sweep_stdout_and_file(tmp_path, capsys):
    rc = cli.main(
        ["sweep", "--variable", "c", "--points", "3", "--target", "MESD:Pg:Q"]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "c,MESD_Pg_Q"
    path = tmp_path / "sweep.csv"
    rc = cli.main(
        [
            "sweep", "--variable", "p", "--points", "3",
            "--target", "MCM:P0:NC", "--c", "0.5", "--out", str(path),
        ]
    )
    assert rc == 0
    assert path.exists()


def test_cli_rejects_bad_target(capsys):
    rc = cli.main(["sweep", "--variable", "c", "--target", "nope"])
    assert rc == 2


def test_cli_figure_to_unwritable_path_exits_2(tmp_path):
    rc = cli.main(["figure", "--id", "fig2", "--out", str(tmp_path / "no" / "x.csv")])
    assert rc == 2


def subprocess_env():
    src = str(Path(__file__).resolve().parents[1] / "src")
    env = dict(os.environ)
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    return env


def test_cli_entry_point_subprocess(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ctxsd", "figure", "--id", "fig3a", "--out",
         str(tmp_path / "f.csv")],
        capture_output=True,
        text=True,
        env=subprocess_env(),
    )
    assert proc.returncode == 0
    assert (tmp_path / "f.csv").exists()


def test_env_tolerance_override(monkeypatch):
    monkeypatch.setenv(config.ENV_TOL, "1e-6")
    tols = config.from_env()
    assert tols.advantage == 1e-6
    assert tols.oracle == 1e-6
    assert tols.closed_form == 1e-6
    assert tols.norm == config.DEFAULTS.norm  # structural tolerances untouched
    monkeypatch.setenv(config.ENV_TOL, "junk")
    with pytest.raises(DomainError):
        config.from_env()
    monkeypatch.setenv(config.ENV_TOL, "-1")
    with pytest.raises(DomainError):
        config.from_env()


def test_env_tolerance_only_loosens(monkeypatch):
    monkeypatch.setenv(config.ENV_TOL, "1e-30")
    tols = config.from_env()
    assert tols == config.DEFAULTS


def test_cli_honours_env_tolerance(monkeypatch, capsys):
    # with a huge tolerance every gap is below threshold: no advantages
    monkeypatch.setenv(config.ENV_TOL, "0.5")
    assert cli.main(["table"]) == 0
    out = capsys.readouterr().out
    assert "yes" not in out.split("advantage window")[0].split("advantage\n")[-1]
