#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Error norms, experimental order of convergence and grid-refinement studies.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pymate import LogIt

from fvbe.cases import CaseRegistry, CaseSetup
from fvbe.exceptions import (
    ConvergenceStudyError,
    DivergenceError,
    HarnessError,
    NonConvergenceError,
    StateError,
)
from fvbe.grid import Grid2D
from fvbe.run_config import DEFAULT_CFL, DEFAULT_GRIDS, FULL_GRIDS, RunConfig
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.wave_speed import WaveSpeedMode

REPORT_COLUMNS = ("n", "dx", "L1", "L1_EOC", "L2", "L2_EOC")

# Published errors of the smooth periodic Burgers study, keyed by scheme label and cell count
REFERENCE_L1: Dict[str, Dict[int, float]] = {
    "KFDS": dict(zip(FULL_GRIDS[1:], (
        0.07672597, 0.04547810, 0.02486742, 0.01303956, 0.00667554,
        0.00338401, 0.00170426, 0.00085504, 0.00042833,
    ))),
    "KFDS+": dict(zip(FULL_GRIDS[1:], (
        0.04876295, 0.02601692, 0.01562377, 0.00908054, 0.00501462,
        0.00265379, 0.00136685, 0.00069370, 0.00034948,
    ))),
    "KLW": dict(zip(FULL_GRIDS[1:], (
        0.01832800, 0.00610302, 0.00184254, 0.00050626, 0.00013075,
        0.00003308, 0.00000830, 0.00000208, 0.00000052,
    ))),
    "TVD-KFDS": dict(zip(FULL_GRIDS[1:], (
        0.02733510, 0.00865670, 0.00225355, 0.00059727, 0.00016656,
        0.00005211, 0.00001568, 0.00000454, 0.00000125,
    ))),
    "TVD-KFDS+": dict(zip(FULL_GRIDS[1:], (
        0.02678619, 0.00849075, 0.00237682, 0.00061311, 0.00016857,
        0.00004641, 0.00001221, 0.00000379, 0.00000125,
    ))),
}  # fmt: skip

REFERENCE_L2: Dict[str, Dict[int, float]] = {
    "KFDS": dict(zip(FULL_GRIDS[1:], (
        0.12308970, 0.07466003, 0.04161332, 0.02222377, 0.01151868,
        0.00589079, 0.00298164, 0.00149956, 0.00075224,
    ))),
    "KFDS+": dict(zip(FULL_GRIDS[1:], (
        0.06266486, 0.03410766, 0.02127948, 0.01448966, 0.00897774,
        0.00504854, 0.00267565, 0.00137548, 0.00069729,
    ))),
    "KLW": dict(zip(FULL_GRIDS[1:], (
        0.03394767, 0.01582174, 0.00543107, 0.00152566, 0.00039441,
        0.00010002, 0.00002513, 0.00000629, 0.00000157,
    ))),
    "TVD-KFDS": dict(zip(FULL_GRIDS[1:], (
        0.04456875, 0.01379576, 0.00378013, 0.00112373, 0.00035306,
        0.00011610, 0.00003360, 0.00000961, 0.00000266,
    ))),
    "TVD-KFDS+": dict(zip(FULL_GRIDS[1:], (
        0.03984737, 0.01341841, 0.00394625, 0.00114227, 0.00034483,
        0.00009851, 0.00002791, 0.00000756, 0.00000210,
    ))),
}  # fmt: skip

# Solver failures that end a study but keep its finished rows
_SOLVER_ERRORS = (DivergenceError, NonConvergenceError, StateError)


def error_norms(numerical, analytical, dx: float) -> Tuple[float, float]:
    """
    Discrete L1 and L2 norms of the error.
    :param numerical: Computed cell values.
    :param analytical: Exact cell values, same shape.
    :param dx: Cell measure (width in 1D, area in 2D).
    :return: (dx sum |e|, sqrt(dx sum e^2)).
    """
    numerical = np.asarray(numerical, dtype=float)
    analytical = np.asarray(analytical, dtype=float)
    if numerical.shape != analytical.shape:
        raise HarnessError(f"Cannot compare fields of shapes {numerical.shape} and {analytical.shape}.")
    if not dx > 0.0:
        raise HarnessError(f"Cell measure must be > 0, got {dx}.")
    diff = numerical - analytical
    return float(dx * np.sum(np.abs(diff))), float(math.sqrt(dx * np.sum(diff * diff)))


def eoc(error_coarse: float, error_fine: float) -> Optional[float]:
    """
    Experimental order log2(E_coarse / E_fine).
    :param error_coarse: Error on the grid of K/2 cells.
    :param error_fine: Error on the grid of K cells.
    :return: The order, or None when an error is exactly zero (exact solution).
    """
    if error_coarse < 0.0 or error_fine < 0.0 or not (math.isfinite(error_coarse) and math.isfinite(error_fine)):
        raise HarnessError(f"Errors must be finite and >= 0, got {error_coarse} and {error_fine}.")
    if error_coarse == 0.0 or error_fine == 0.0:
        return None
    return math.log2(error_coarse / error_fine)


def check_grids(grids: Sequence[int]) -> Tuple[int, ...]:
    """
    Grid sizes of a study must double from one to the next.
    :return: The sizes as a tuple.
    """
    grids = tuple(int(n) for n in grids)
    if len(grids) < 2:
        raise HarnessError(f"A convergence study needs at least two grids, got {grids}.")
    for coarse, fine in zip(grids, grids[1:]):
        if fine != 2 * coarse:
            raise HarnessError(f"Grids must refine by a factor of 2, got {coarse} then {fine}.")
    return grids


@dataclass(frozen=True)
class ErrorRow:
    """
    Errors of one grid.
    """

    n_cells: int = field(metadata={"help": "Cells along x."})
    dx: float = field(metadata={"help": "Cell width."})
    l1: float = field(metadata={"help": "L1 error."})
    l2: float = field(metadata={"help": "L2 error."})


@dataclass
class ConvergenceReport:
    """
    Errors and orders of a grid-refinement study.
    """

    # Attributes

    case: str = field(metadata={"help": "Case id."})
    scheme: str = field(metadata={"help": "Scheme label, e.g. TVD-KFDS+."})
    rows: List[ErrorRow] = field(default_factory=list, metadata={"help": "One row per grid, coarse to fine."})

    # Private methods

    def _orders(self, attribute: str) -> List[Optional[float]]:
        values = [getattr(row, attribute) for row in self.rows]
        return [eoc(coarse, fine) for coarse, fine in zip(values, values[1:])]

    # Public methods

    @property
    def l1_eoc(self) -> List[Optional[float]]:
        return self._orders("l1")

    @property
    def l2_eoc(self) -> List[Optional[float]]:
        return self._orders("l2")

    def terminal_eoc(self, norm: str = "l1") -> Optional[float]:
        """
        Order between the two finest grids.
        :param norm: l1 or l2.
        """
        orders = self.l1_eoc if norm == "l1" else self.l2_eoc
        if not orders:
            raise HarnessError("Report holds fewer than two grids.")
        return orders[-1]

    def reference(self, n_cells: int, norm: str = "l1") -> Optional[float]:
        """
        Published error of the smooth study for this scheme and grid, if tabulated.
        """
        if self.case != "smooth":
            return None
        table = REFERENCE_L1 if norm == "l1" else REFERENCE_L2
        return table.get(self.scheme, {}).get(n_cells)

    def table(self) -> List[Dict[str, object]]:
        """
        Report rows with the columns n, dx, L1, L1_EOC, L2, L2_EOC. The first row has no order,
        an exact pair of grids shows "exact".
        """
        l1_orders = [None] + self.l1_eoc
        l2_orders = [None] + self.l2_eoc
        records = []
        for index, row in enumerate(self.rows):
            records.append(
                {
                    "n": row.n_cells,
                    "dx": row.dx,
                    "L1": row.l1,
                    "L1_EOC": _order_cell(index, l1_orders[index]),
                    "L2": row.l2,
                    "L2_EOC": _order_cell(index, l2_orders[index]),
                }
            )
        return records

    def format_table(self) -> str:
        """
        Fixed-width text of the report, with the published L1 error beside each row when known.
        """
        lines = [f"{self.case} {self.scheme}"]
        lines.append(f"{'n':>6} {'dx':>12} {'L1':>12} {'EOC':>7} {'L2':>12} {'EOC':>7} {'L1 ref':>12}")
        for record in self.table():
            reference = self.reference(int(record["n"]))  # type: ignore[call-overload]
            lines.append(
                f"{record['n']:>6} {record['dx']:>12.6g} {record['L1']:>12.6e} {_text(record['L1_EOC']):>7}"
                f" {record['L2']:>12.6e} {_text(record['L2_EOC']):>7}"
                f" {'' if reference is None else f'{reference:.8f}':>12}"
            )
        return "\n".join(lines)


def _order_cell(index: int, order: Optional[float]):
    if index == 0:
        return ""
    return "exact" if order is None else order


def _text(value) -> str:
    return f"{value:.3f}" if isinstance(value, float) else str(value)


def _measure(setup: CaseSetup) -> float:
    if isinstance(setup.grid, Grid2D):
        return setup.grid.cell_area
    return setup.grid.dx


def measure_errors(setup: CaseSetup, config: RunConfig, logger: Optional[LogIt] = None) -> ErrorRow:
    """
    Run a case and compare with its exact solution at the final time.
    :return: The errors of the grid.
    """
    if not setup.has_oracle:
        raise HarnessError(f"Case {setup.case_id.value} has no exact solution to compare with.")
    result = setup.solve(config, logger)
    l1, l2 = error_norms(result.state.u, setup.exact_values(result.time), _measure(setup))
    return ErrorRow(setup.cells[0], setup.grid.dx, l1, l2)


def convergence_study(
    case: str = "smooth",
    scheme: SchemeKind = SchemeKind.KFDS,
    grids: Sequence[int] = DEFAULT_GRIDS,
    cfl: float = DEFAULT_CFL,
    mode: Optional[WaveSpeedMode] = None,
    tvd_split: TvdSplit = TvdSplit.PRINTED,
    jobs: int = 1,
    params: Optional[Dict[str, float]] = None,
    t_final: Optional[float] = None,
    logger: Optional[LogIt] = None,
    verbose: bool = False,
) -> ConvergenceReport:
    """
    Run a case on a sequence of doubling grids and collect errors and orders.
    :param case: Case id with an exact solution.
    :param scheme: Flux scheme.
    :param grids: Cell counts, each twice the previous one.
    :param cfl: Courant number.
    :param mode: Wave-speed mode, scheme default when None.
    :param tvd_split: TVD correction form.
    :param jobs: Grids run concurrently.
    :param params: Case parameter overrides.
    :param t_final: End time replacing the case default.
    :param logger: The logger.
    :param verbose: Report every finished grid.
    :return: The report, rows in grid order.
    """
    logger = logger or LogIt()
    grids = check_grids(grids)
    config = RunConfig(case=case, scheme=scheme, mode=mode, cfl=cfl, tvd_split=tvd_split, jobs=jobs)
    setups = [CaseRegistry.create_case(case, (n,), params, t_final) for n in grids]
    if not setups[0].has_oracle:
        raise HarnessError(f"Case {case} has no exact solution, a convergence study is not possible.")
    report = ConvergenceReport(setups[0].case_id.value, scheme.display_name(config.wave_speed_mode))
    logger.info(f"Convergence study of {report.case} with {report.scheme} on grids {list(grids)}.")
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(measure_errors, setup, config, logger) for setup in setups]
        for n, future in zip(grids, futures):
            try:
                row = future.result()
            except _SOLVER_ERRORS as error:
                for pending in futures:
                    pending.cancel()
                raise ConvergenceStudyError(f"Study stopped on grid {n}: {error}", report) from error
            report.rows.append(row)
            if verbose:
                logger.show(f"n={row.n_cells} L1={row.l1:.6e} L2={row.l2:.6e}")
    return report


__all__ = [
    "DEFAULT_GRIDS",
    "FULL_GRIDS",
    "REPORT_COLUMNS",
    "REFERENCE_L1",
    "REFERENCE_L2",
    "error_norms",
    "eoc",
    "check_grids",
    "ErrorRow",
    "ConvergenceReport",
    "measure_errors",
    "convergence_study",
]
