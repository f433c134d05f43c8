"""Tests of run orchestration and diagnostics."""
import json
from pathlib import Path

import numpy as np
import pytest

from fvbe.exact import linear_advection_profile
from fvbe.exceptions import ConfigurationError, HarnessError
from fvbe.grid import build_grid_1d
from fvbe.output import read_csv, read_csv_columns
from fvbe.run_config import OutputSpec, RunConfig
from fvbe.runner import (
    CaseRunner,
    detect_expansion_shock,
    format_summary,
    level_crossings,
    locate_fronts,
    study_summary,
)
from fvbe.scheme_kind import SchemeKind
from fvbe.verify import ConvergenceReport, ErrorRow


def test_level_crossings() -> None:
    x = np.array([0.0, 1.0, 2.0, 3.0])
    assert level_crossings(x, [0.0, 1.0, 1.0, 0.0], 0.5) == pytest.approx([0.5, 2.5])
    assert level_crossings(x, [0.0, 0.0, 0.0, 0.0], 0.5).size == 0


def test_fronts_of_the_translated_profile() -> None:
    grid = build_grid_1d(-1, 1, 100)
    u = linear_advection_profile(grid.centers, 0.3)
    fronts = locate_fronts(grid.centers, u)
    assert len(fronts) == 2
    assert abs(fronts[0] - (-1.0 / 3.0 + 0.3)) <= grid.dx
    assert abs(fronts[1] - (1.0 / 3.0 + 0.3)) <= grid.dx


def test_fronts_of_a_smeared_profile() -> None:
    x = np.linspace(-1.0, 1.0, 201)
    fronts = locate_fronts(x, np.tanh((x - 0.2) / 0.05))
    assert fronts == pytest.approx([0.2], abs=0.01)
    assert locate_fronts(x, np.ones_like(x)) == []


def test_expansion_shock_detection() -> None:
    assert detect_expansion_shock([-1.0, -1.0, 1.0, 1.0])
    assert not detect_expansion_shock([1.0, 1.0, -1.0, -1.0])
    assert not detect_expansion_shock(np.linspace(-1.0, 1.0, 50))
    assert not detect_expansion_shock(np.zeros(5))


def test_format_summary() -> None:
    line = format_summary(
        "tc3", "KFDS", "ce", (100,), 0.3, 47, (0.01, 0.02), [-0.1876, 0.3333], ["steady"]
    )
    assert line == (
        "tc3 KFDS mode=ce cells=100 t=0.3 steps=47 L1=1.000000e-02 L2=2.000000e-02 "
        "fronts=-0.1876,0.3333 flags=steady"
    )
    assert format_summary("tc15", "TVD-KFDS", "ce", (40, 40), 0.69, 12) == (
        "tc15 TVD-KFDS mode=ce cells=40x40 t=0.69 steps=12"
    )


def test_study_summary() -> None:
    report = ConvergenceReport(
        "smooth",
        "KFDS",
        [ErrorRow(20, 0.05, 0.0454781, 0.08), ErrorRow(40, 0.025, 0.02486742, 0.04)],
    )
    assert study_summary(report) == "smooth KFDS eoc grids=20,40 L1_EOC,L2_EOC=0.871,1.000"
    exact_rows = [ErrorRow(20, 0.1, 0.0, 0.0), ErrorRow(40, 0.05, 0.0, 0.0)]
    exact = ConvergenceReport("tc1", "KFDS", exact_rows)
    assert study_summary(exact).endswith("L1_EOC,L2_EOC=exact,exact")


def test_run_writes_norms(tmp_path: Path) -> None:
    spec = OutputSpec(tmp_path / "norms.csv", "csv", "norms")
    outcome = CaseRunner(RunConfig(case="tc1", cells=(50,), output=spec)).run()
    assert outcome.norms is not None
    rows = read_csv(spec.path)
    assert len(rows) == 1
    assert int(rows[0]["n"]) == 50
    assert float(rows[0]["L1"]) == pytest.approx(outcome.norms[0], rel=1e-15)
    metadata = json.loads(spec.meta_path.read_text(encoding="utf-8"))
    assert metadata["case"] == "tc1"
    assert metadata["L1"] == pytest.approx(outcome.norms[0])
    assert metadata["boundary"] == "extrapolation/extrapolation"
    assert outcome.written == [spec.path, spec.meta_path]


def test_run_flags_and_fronts() -> None:
    outcome = CaseRunner(RunConfig(case="tc5", scheme=SchemeKind.KFDS_PLUS, cells=(100,))).run()
    assert "expansion-shock" in outcome.flags
    assert outcome.summary.startswith("tc5 KFDS+ mode=rh cells=100 t=0.3 ")
    steady = CaseRunner(RunConfig(case="tc8a", cells=(40,))).run()
    assert "steady" in steady.flags
    assert steady.norms is not None


def test_swe_field_columns(tmp_path: Path) -> None:
    spec = OutputSpec(tmp_path / "dam.csv")
    CaseRunner(RunConfig(case="tc9", cells=(40,), output=spec)).run()
    columns = read_csv_columns(spec.path)
    assert list(columns) == ["x", "h", "hu", "bed", "surface"]
    assert np.all(columns["h"] >= 0.0)
    assert columns["x"].size == 40


def test_run_rejects_mismatched_artefacts(tmp_path: Path) -> None:
    with pytest.raises(HarnessError):
        norms = OutputSpec(tmp_path / "n.csv", "csv", "norms")
        CaseRunner(RunConfig(case="tc9", output=norms)).run()
    with pytest.raises(ConfigurationError):
        CaseRunner(RunConfig(case="tc1", output=OutputSpec(tmp_path / "f.bin", "bin"))).run()
    with pytest.raises(ConfigurationError):
        table = OutputSpec(tmp_path / "e.csv", "csv", "eoc-table")
        CaseRunner(RunConfig(case="tc1", output=table)).run()
    with pytest.raises(ConfigurationError):
        CaseRunner(RunConfig()).run()


def test_assumed_parameters_are_logged(recording_logger) -> None:
    config = RunConfig(case="tc15", cells=(8,), t_final=0.05)
    CaseRunner(config, logger=recording_logger).run()
    warnings = recording_logger.messages("warning")
    assert any("unpublished parameter inner_depth=10" in message for message in warnings)
    assert any("unpublished parameter tfinal=0.05" in message for message in warnings)
    assert recording_logger.messages("show") == []


def test_verbose_runner_reports_progress(recording_logger, tmp_path: Path) -> None:
    spec = OutputSpec(tmp_path / "tc1.csv")
    config = RunConfig(case="tc1", cells=(20,), t_final=0.05, output=spec)
    CaseRunner(config, verbose=True, debug=True, logger=recording_logger).run()
    shown = recording_logger.messages("show")
    assert shown[0].startswith("Case tc1: ")
    assert any(message.startswith("step=1 ") for message in shown)
    assert recording_logger.messages("success") == [f"Wrote {spec.path}.", f"Wrote {spec.meta_path}."]


def test_study_writes_the_table(tmp_path: Path) -> None:
    spec = OutputSpec(tmp_path / "eoc.json", "json", "eoc-table")
    config = RunConfig(case="smooth", scheme=SchemeKind.KLW, eoc=True, grids=(20, 40), output=spec)
    report, written = CaseRunner(config).study()
    assert [row.n_cells for row in report.rows] == [20, 40]
    document = json.loads(spec.path.read_text(encoding="utf-8"))
    assert [record["n"] for record in document["records"]] == [20, 40]
    assert document["records"][0]["L1_EOC"] == ""
    assert document["metadata"]["grids"] == [20, 40]
    assert written[1] == spec.meta_path
