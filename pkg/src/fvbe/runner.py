#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Orchestration of single runs and convergence studies: case setup, solve, diagnostics,
artefacts and the one-line summary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pymate import LogIt

from fvbe._about import __version__
from fvbe.cases import CaseKind, CaseRegistry, CaseSetup
from fvbe.exceptions import ConfigurationError, HarnessError
from fvbe.field import Field2D
from fvbe.grid import Grid2D
from fvbe.output import columns_to_records, write_artifact
from fvbe.run_config import RunConfig
from fvbe.solver1d import MarchResult
from fvbe.verify import REPORT_COLUMNS, ConvergenceReport, convergence_study, error_norms

# Fraction of the largest cell jump that still counts as part of a front
FRONT_JUMP_FRACTION = 0.1
# Rising jump, relative to the solution range, flagged as an expansion shock
EXPANSION_SHOCK_FRACTION = 0.5


def level_crossings(x, u, level: float) -> np.ndarray:
    """
    Positions where the piecewise-linear interpolant of u crosses a level.
    :param x: Cell centres.
    :param u: Cell values.
    :param level: The level.
    :return: Crossing positions, left to right.
    """
    x = np.asarray(x, dtype=float)
    shifted = np.asarray(u, dtype=float) - level
    left, right = shifted[:-1], shifted[1:]
    index = np.flatnonzero((left * right < 0.0) | ((left == 0.0) & (right != 0.0)))
    weight = left[index] / (left[index] - right[index])
    return x[index] + weight * (x[index + 1] - x[index])


def locate_fronts(x, u, fraction: float = FRONT_JUMP_FRACTION) -> List[float]:
    """
    Positions of the discontinuities of a 1D profile.

    Consecutive interfaces whose jump exceeds a fraction of the largest jump, all with the same
    sign, form one front. Its position is where u crosses the mean of the states on either side.
    :param x: Cell centres.
    :param u: Cell values.
    :param fraction: Relative jump threshold.
    :return: Front positions, left to right.
    """
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    jumps = np.diff(u)
    largest = float(np.max(np.abs(jumps))) if jumps.size else 0.0
    if largest == 0.0:
        return []
    steep = np.abs(jumps) >= fraction * largest
    fronts: List[float] = []
    start = None
    for index in range(jumps.size + 1):
        inside = index < jumps.size and steep[index]
        if inside and start is not None and np.sign(jumps[index]) != np.sign(jumps[start]):
            fronts.extend(_front_position(x, u, start, index - 1))
            start = index
            continue
        if inside and start is None:
            start = index
        elif not inside and start is not None:
            fronts.extend(_front_position(x, u, start, index - 1))
            start = None
    return fronts


def _front_position(x: np.ndarray, u: np.ndarray, first: int, last: int) -> List[float]:
    segment = slice(first, last + 2)
    level = 0.5 * (u[first] + u[last + 1])
    crossings = level_crossings(x[segment], u[segment], level)
    return [float(crossings[0])] if crossings.size else [float(0.5 * (x[first] + x[last + 1]))]


def detect_expansion_shock(u, fraction: float = EXPANSION_SHOCK_FRACTION) -> bool:
    """
    Whether a convex-flux profile holds a rising jump across one interface, which no entropy
    solution has.
    :param u: Cell values.
    :param fraction: Jump threshold relative to max(u) - min(u).
    :return: True when such a jump exists.
    """
    u = np.asarray(u, dtype=float)
    spread = float(np.max(u) - np.min(u))
    if spread == 0.0:
        return False
    return bool(np.any(np.diff(u) > fraction * spread))


def _cells_text(cells: Sequence[int]) -> str:
    return "x".join(str(n) for n in cells)


def format_summary(
    case: str,
    scheme: str,
    mode: str,
    cells: Sequence[int],
    t: float,
    steps: int,
    norms: Optional[Tuple[float, float]] = None,
    fronts: Optional[Sequence[float]] = None,
    flags: Optional[Sequence[str]] = None,
) -> str:
    """
    The one-line run summary written to standard output.
    """
    parts = [case, scheme, f"mode={mode}", f"cells={_cells_text(cells)}", f"t={t:.6g}", f"steps={steps}"]
    if norms is not None:
        parts.append(f"L1={norms[0]:.6e} L2={norms[1]:.6e}")
    if fronts:
        parts.append("fronts=" + ",".join(f"{position:.4f}" for position in fronts))
    if flags:
        parts.append("flags=" + ",".join(flags))
    return " ".join(parts)


@dataclass
class RunOutcome:
    """
    Result of a single run.
    """

    # Attributes

    setup: CaseSetup = field(metadata={"help": "The case that ran."})
    result: MarchResult = field(metadata={"help": "Final state and step log."})
    norms: Optional[Tuple[float, float]] = field(default=None, metadata={"help": "(L1, L2) against the exact solution."})
    fronts: List[float] = field(default_factory=list, metadata={"help": "Front positions of 1D scalar runs."})
    flags: List[str] = field(default_factory=list, metadata={"help": "Diagnostic flags."})
    summary: str = field(default="", metadata={"help": "One-line summary."})
    written: List[Path] = field(default_factory=list, metadata={"help": "Artefacts on disk."})


@dataclass
class CaseRunner:
    """
    Runs the case or the convergence study a configuration describes.
    """

    # Attributes

    config: RunConfig = field(metadata={"help": "Run configuration."})
    verbose: bool = field(default=False, metadata={"help": "Verbose output."})
    debug: bool = field(default=False, metadata={"help": "One line per time step."})
    logger: LogIt = field(default_factory=LogIt, repr=False, metadata={"help": "The logger."})

    # Private methods

    def _create_setup(self, cells: Optional[Sequence[int]] = None) -> CaseSetup:
        if self.config.case is None:
            raise ConfigurationError("No case selected.")
        setup = CaseRegistry.create_case(
            self.config.case, cells or self.config.cells, self.config.params, self.config.t_final
        )
        case = setup.case_id.value
        if self.verbose:
            self.logger.show(f"Case {case}: {setup.title} on {_cells_text(setup.cells)} cells.")
        for name, value in setup.unpublished.items():
            self.logger.warning(f"Case {case} uses unpublished parameter {name}={value:g}.")
        return setup

    def _metadata(self, setup: CaseSetup, **extra: Any) -> Dict[str, Any]:
        config = self.config
        metadata: Dict[str, Any] = {
            "case": setup.case_id.value,
            "title": setup.title,
            "scheme": config.scheme.display_name(config.wave_speed_mode),
            "mode": config.wave_speed_mode.value,
            "tvd_split": config.tvd_split.value,
            "cfl": config.cfl,
            "cells": list(setup.cells),
            "domain": _domain(setup),
            "boundary": setup.bc.describe(),
            "params": dict(setup.params),
            "unpublished": dict(setup.unpublished),
            "version": __version__,
        }
        metadata.update(extra)
        return metadata

    def _field_records(self, setup: CaseSetup, state: Any) -> Tuple[List[str], List[Dict[str, Any]]]:
        columns: Dict[str, np.ndarray] = {}
        if isinstance(setup.grid, Grid2D):
            x, y = setup.grid.mesh()
            columns["x"], columns["y"] = x.ravel(), y.ravel()
            if setup.kind is CaseKind.SWE_2D:
                for name, values in zip(state.names, state.values):
                    columns[name] = values.ravel()
            else:
                columns["u_num"] = state.u.ravel()
        else:
            columns["x"] = setup.grid.centers
            if setup.kind is CaseKind.SWE_1D:
                columns.update(h=state.h, hu=state.hu, bed=state.bed, surface=state.surface)
            else:
                columns["u_num"] = state.u
        if setup.has_oracle:
            columns["u_exact"] = np.asarray(setup.exact_values(state.t)).ravel()
        return list(columns), columns_to_records(columns)

    def _diagnose(self, setup: CaseSetup, outcome: RunOutcome) -> None:
        state = outcome.result.state
        if setup.kind is CaseKind.SCALAR_1D:
            outcome.fronts = locate_fronts(setup.grid.centers, state.u)
            assert setup.model is not None
            if setup.model.name.startswith("burgers") and detect_expansion_shock(state.u):
                outcome.flags.append("expansion-shock")
                self.logger.warning(f"Entropy-violating rising jump in the {setup.case_id.value} solution.")
        if outcome.result.steady:
            outcome.flags.append("steady")
        if outcome.result.capped:
            outcome.flags.append("time-cap")

    # Public methods

    def run(self) -> RunOutcome:
        """
        Run one case, compare with its exact solution and write the requested artefact.
        :return: The outcome.
        """
        config = self.config
        setup = self._create_setup()
        output = config.output
        if output is not None:
            if output.what == "norms" and not setup.has_oracle:
                raise HarnessError(f"Case {setup.case_id.value} has no exact solution, no norms to write.")
            if output.format == "bin" and not setup.kind.is_2d:
                raise ConfigurationError("Binary output holds 2D fields only.")
            if output.what == "eoc-table":
                raise ConfigurationError("An EOC table needs --eoc.")
        result = setup.solve(config, self.logger, trace=self.debug)
        outcome = RunOutcome(setup, result)
        if setup.has_oracle and setup.kind in (CaseKind.SCALAR_1D, CaseKind.SCALAR_2D):
            measure = setup.grid.cell_area if isinstance(setup.grid, Grid2D) else setup.grid.dx
            outcome.norms = error_norms(result.state.u, setup.exact_values(result.time), measure)
        self._diagnose(setup, outcome)
        outcome.summary = format_summary(
            setup.case_id.value,
            config.scheme.display_name(config.wave_speed_mode),
            config.wave_speed_mode.value,
            setup.cells,
            result.time,
            result.steps,
            outcome.norms,
            outcome.fronts,
            outcome.flags,
        )
        if output is not None:
            metadata = self._metadata(setup, time=result.time, steps=result.steps, steady=result.steady)
            if outcome.norms is not None:
                metadata.update(L1=outcome.norms[0], L2=outcome.norms[1])
            if output.what == "norms":
                assert outcome.norms is not None
                header = ["n", "dx", "L1", "L2"]
                records = [dict(zip(header, (setup.cells[0], setup.grid.dx, *outcome.norms)))]
            else:
                header, records = self._field_records(setup, result.state)
            state = result.state if isinstance(result.state, Field2D) else None
            outcome.written = write_artifact(output, records, metadata, header, state)
            for path in outcome.written:
                self.logger.success(f"Wrote {path}.")
        return outcome

    def study(self) -> Tuple[ConvergenceReport, List[Path]]:
        """
        Run the convergence study of the configured case and write the EOC table.
        :return: The report and the written artefacts.
        """
        config = self.config
        setup = self._create_setup((config.grids[0],))
        if self.verbose:
            self.logger.separator()
        report = convergence_study(
            setup.case_id.value,
            config.scheme,
            config.grids,
            config.cfl,
            config.mode,
            config.tvd_split,
            config.jobs,
            config.params,
            config.t_final,
            self.logger,
            self.verbose,
        )
        written: List[Path] = []
        output = config.output
        if output is not None:
            metadata = self._metadata(setup, grids=list(config.grids), time=setup.t_final)
            written = write_artifact(output, report.table(), metadata, REPORT_COLUMNS)
            for path in written:
                self.logger.success(f"Wrote {path}.")
        return report, written


def _domain(setup: CaseSetup) -> List[float]:
    grid = setup.grid
    if isinstance(grid, Grid2D):
        return [grid.x_min, grid.x_max, grid.y_min, grid.y_max]
    return [grid.x_min, grid.x_max]


def study_summary(report: ConvergenceReport) -> str:
    """
    Summary line of a study: the terminal orders of both norms.
    """
    l1, l2 = report.terminal_eoc("l1"), report.terminal_eoc("l2")
    text = " ".join(f"{order:.3f}" if order is not None else "exact" for order in (l1, l2))
    grids = ",".join(str(row.n_cells) for row in report.rows)
    return f"{report.case} {report.scheme} eoc grids={grids} L1_EOC,L2_EOC={text.replace(' ', ',')}"


__all__ = [
    "level_crossings",
    "locate_fronts",
    "detect_expansion_shock",
    "format_summary",
    "study_summary",
    "RunOutcome",
    "CaseRunner",
]
