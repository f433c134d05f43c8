"""Tests of the error norms and the convergence harness."""
import math

import numpy as np
import pytest

from fvbe import verify
from fvbe.exceptions import ConvergenceStudyError, DivergenceError, HarnessError
from fvbe.scheme_kind import SchemeKind
from fvbe.verify import (
    ConvergenceReport,
    ErrorRow,
    check_grids,
    convergence_study,
    eoc,
    error_norms,
    measure_errors,
)


def _report(case: str = "smooth", scheme: str = "KFDS") -> ConvergenceReport:
    return ConvergenceReport(
        case,
        scheme,
        [
            ErrorRow(20, 0.05, 0.0767, 0.1231),
            ErrorRow(40, 0.025, 0.0454781, 0.0747),
            ErrorRow(80, 0.0125, 0.02486742, 0.0416),
        ],
    )


def test_error_norms() -> None:
    assert error_norms([1.0, 1.0], [0.0, 0.0], 0.5) == pytest.approx((1.0, 1.0))
    l1, l2 = error_norms([2.0, 0.0, 0.0, 0.0], np.zeros(4), 0.1)
    assert l1 == pytest.approx(0.2)
    assert l2 == pytest.approx(math.sqrt(0.4))
    assert error_norms(np.ones((3, 3)), np.ones((3, 3)), 0.01) == (0.0, 0.0)
    with pytest.raises(HarnessError):
        error_norms([1.0, 2.0], [1.0], 0.1)
    with pytest.raises(HarnessError):
        error_norms([1.0], [1.0], 0.0)


def test_eoc() -> None:
    assert eoc(0.0454781, 0.02486742) == pytest.approx(0.871, abs=1e-3)
    assert eoc(0.3, 0.3) == 0.0
    assert eoc(0.4, 0.1) == pytest.approx(2.0)
    assert eoc(0.0, 0.1) is None
    assert eoc(0.1, 0.0) is None
    with pytest.raises(HarnessError):
        eoc(-0.1, 0.1)
    with pytest.raises(HarnessError):
        eoc(math.nan, 0.1)


def test_check_grids() -> None:
    assert check_grids([20, 40, 80]) == (20, 40, 80)
    with pytest.raises(HarnessError):
        check_grids([20])
    with pytest.raises(HarnessError):
        check_grids([20, 30])


def test_report_orders_and_table() -> None:
    report = _report()
    assert report.l1_eoc[1] == pytest.approx(0.871, abs=1e-3)
    assert report.terminal_eoc("l1") == report.l1_eoc[-1]
    assert report.terminal_eoc("l2") == report.l2_eoc[-1]
    rows = report.table()
    assert [row["n"] for row in rows] == [20, 40, 80]
    assert rows[0]["L1_EOC"] == "" and rows[0]["L2_EOC"] == ""
    assert rows[2]["L1_EOC"] == pytest.approx(0.871, abs=1e-3)
    assert list(rows[0]) == list(verify.REPORT_COLUMNS)


def test_report_marks_exact_pairs() -> None:
    exact_rows = [ErrorRow(20, 0.1, 0.0, 0.0), ErrorRow(40, 0.05, 0.0, 0.0)]
    report = ConvergenceReport("tc1", "KFDS", exact_rows)
    assert report.table()[1]["L1_EOC"] == "exact"
    assert report.terminal_eoc() is None
    assert "exact" in report.format_table()
    with pytest.raises(HarnessError):
        ConvergenceReport("tc1", "KFDS", [ErrorRow(20, 0.1, 0.1, 0.1)]).terminal_eoc()


def test_published_reference() -> None:
    report = _report()
    assert report.reference(40) == pytest.approx(0.04547810)
    assert report.reference(40, "l2") == pytest.approx(0.07466003)
    assert report.reference(20) is None
    assert _report(case="tc2b").reference(40) is None
    text = report.format_table()
    assert text.splitlines()[0] == "smooth KFDS"
    assert "0.04547810" in text


def test_cases_without_exact_solution_are_rejected() -> None:
    with pytest.raises(HarnessError):
        convergence_study("tc9", SchemeKind.KFDS, (20, 40))
    with pytest.raises(HarnessError):
        convergence_study("smooth", SchemeKind.KFDS, (20, 50))


def test_small_study_converges() -> None:
    report = convergence_study("smooth", SchemeKind.KLW, (20, 40, 80), jobs=2)
    assert report.case == "smooth"
    assert report.scheme == "KLW"
    assert [row.n_cells for row in report.rows] == [20, 40, 80]
    assert report.rows[0].l1 > report.rows[1].l1 > report.rows[2].l1
    assert report.terminal_eoc() > 1.0


def test_measure_errors_matches_the_norms() -> None:
    from fvbe.cases import CaseRegistry
    from fvbe.run_config import RunConfig

    setup = CaseRegistry.create_case("tc1", (40,))
    row = measure_errors(setup, RunConfig(case="tc1"))
    assert row.n_cells == 40
    assert row.dx == pytest.approx(0.05)
    assert 0.0 < row.l2 and 0.0 < row.l1 < 1.0


def test_failed_grid_keeps_the_finished_rows(monkeypatch: pytest.MonkeyPatch) -> None:
    def fake_measure(setup, config, logger=None):
        n = setup.cells[0]
        if n == 40:
            raise DivergenceError(3, 0.1, 0.05)
        return ErrorRow(n, setup.grid.dx, 1.0 / n, 1.0 / n)

    monkeypatch.setattr(verify, "measure_errors", fake_measure)
    with pytest.raises(ConvergenceStudyError) as error:
        convergence_study("smooth", SchemeKind.KFDS, (20, 40, 80))
    report = error.value.report
    assert [row.n_cells for row in report.rows] == [20]
    assert "grid 40" in str(error.value)
