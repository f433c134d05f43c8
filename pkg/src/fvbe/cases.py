#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Registry of the benchmark test cases.

Every case binds a domain, initial data, boundary conditions, a model and an end condition. Case
parameters can be overridden; values that differ from the published setup, and values the
published setup leaves open, are reported as unpublished parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pymate import LogIt

from fvbe import exact
from fvbe.boundary import BoundaryCondition, BoundaryCondition2D, BoundarySide
from fvbe.exceptions import ConfigurationError
from fvbe.field import Field2D, ScalarField1D
from fvbe.flux_model import FluxModel
from fvbe.grid import Grid1D, Grid2D, build_grid_1d, build_grid_2d
from fvbe.run_config import RunConfig
from fvbe.solver1d import MarchResult, Solver1D, march
from fvbe.solver2d import Solver2D
from fvbe.swe1d import GRAVITY, SweSolver, SweState

Grid = Union[Grid1D, Grid2D]
State = Union[ScalarField1D, SweState, Field2D]
Oracle = Callable[[float], np.ndarray]

# Time at which steady runs give up when the residual has not dropped
STEADY_TIME_CAP = {"tc2": 50.0, "tc8": 50.0, "tc10": 10.0, "tc11": 10.0, "tc12": 10.0}


class CaseId(Enum):
    """
    Enum class for the registered cases.
    """

    TC1 = "tc1"
    TC2A = "tc2a"
    TC2B = "tc2b"
    TC3 = "tc3"
    TC4 = "tc4"
    TC5 = "tc5"
    TC6A = "tc6a"
    TC6B = "tc6b"
    TC7 = "tc7"
    TC8A = "tc8a"
    TC8B = "tc8b"
    TC9 = "tc9"
    TC10 = "tc10"
    TC11 = "tc11"
    TC12 = "tc12"
    TC13 = "tc13"
    TC14 = "tc14"
    TC15 = "tc15"
    SMOOTH = "smooth"

    @classmethod
    def from_flag(cls, flag: Union[str, "CaseId"]) -> "CaseId":
        if isinstance(flag, CaseId):
            return flag
        try:
            return cls(str(flag).strip().lower())
        except ValueError:
            names = ", ".join(case.value for case in cls)
            raise ConfigurationError(f"Unknown case {flag!r}, expected one of {names}.") from None

    @property
    def family(self) -> str:
        """
        Case number without the variant letter, e.g. tc8 for tc8a.
        """
        return self.value.rstrip("ab") if self.value.startswith("tc") else self.value


class CaseKind(Enum):
    """
    Enum class for the solver a case needs.
    """

    SCALAR_1D = "scalar1d"
    SWE_1D = "swe1d"
    SCALAR_2D = "scalar2d"
    SWE_2D = "swe2d"

    @property
    def is_2d(self) -> bool:
        return self in (CaseKind.SCALAR_2D, CaseKind.SWE_2D)


@dataclass
class CaseSetup:
    """
    Everything needed to run one case.
    """

    # Attributes

    case_id: CaseId = field(metadata={"help": "Case id."})
    kind: CaseKind = field(metadata={"help": "Solver family."})
    title: str = field(metadata={"help": "One-line description."})
    grid: Grid = field(metadata={"help": "Computational grid."})
    initial: State = field(metadata={"help": "Initial state."})
    bc: Union[BoundaryCondition, BoundaryCondition2D] = field(metadata={"help": "Boundary conditions."})
    model: Optional[FluxModel] = field(default=None, metadata={"help": "Scalar flux model, None for shallow water."})
    t_final: Optional[float] = field(default=None, metadata={"help": "End time, None for steady cases."})
    time_cap: Optional[float] = field(default=None, metadata={"help": "Time at which a steady run gives up."})
    oracle: Optional[Oracle] = field(default=None, repr=False, metadata={"help": "Exact cell values at time t."})
    gravity: float = field(default=GRAVITY, metadata={"help": "Gravity of shallow-water cases."})
    params: Dict[str, float] = field(default_factory=dict, metadata={"help": "Case parameters in use."})
    unpublished: Dict[str, float] = field(default_factory=dict, metadata={"help": "Parameters not from the published setup."})

    # Public methods

    @property
    def steady(self) -> bool:
        return self.t_final is None

    @property
    def has_oracle(self) -> bool:
        return self.oracle is not None

    @property
    def cells(self) -> Tuple[int, ...]:
        if isinstance(self.grid, Grid2D):
            return self.grid.shape
        return (self.grid.n_cells,)

    def exact_values(self, t: float) -> np.ndarray:
        """
        Exact cell-centre values at time t.
        :param t: Time, ignored by steady oracles.
        :return: Values shaped like the solution field.
        """
        if self.oracle is None:
            raise ConfigurationError(f"Case {self.case_id.value} has no exact solution.")
        return self.oracle(t)

    def solve(self, config: RunConfig, logger: Optional[LogIt] = None, trace: bool = False) -> MarchResult:
        """
        March the initial state with the scheme settings of a run configuration.
        :param config: Scheme, mode, cfl, TVD split, steady tolerance and step cap.
        :param logger: Logger of the solver.
        :param trace: Show one line per step.
        :return: The final state and the step log.
        """
        logger = logger or LogIt()
        common = dict(
            scheme=config.scheme, mode=config.mode, cfl=config.cfl, tvd_split=config.tvd_split, logger=logger
        )
        if self.kind is CaseKind.SCALAR_1D:
            assert self.model is not None
            solver = Solver1D(self.model, bc=self.bc, **common)  # type: ignore[arg-type]
        elif self.kind is CaseKind.SWE_1D:
            solver = SweSolver(bc=self.bc, **common)  # type: ignore[arg-type]
        else:
            solver = Solver2D(self.model, bc=self.bc, gravity=self.gravity, **common)  # type: ignore[arg-type]
        values = (lambda state: state.u) if self.kind is CaseKind.SCALAR_1D else (lambda state: state.values)
        return march(
            lambda state, stop: solver.step(state, t_final=stop),
            self.initial,
            t_final=self.t_final,
            steady_tol=config.steady_tol if self.steady else None,
            time_cap=self.time_cap,
            max_steps=config.max_steps,
            values=values,
            logger=solver.logger,
            trace=trace,
        )


# Private helpers


def _case_params(
    published: Mapping[str, float],
    assumed: Mapping[str, float],
    overrides: Optional[Mapping[str, float]],
) -> Tuple[Dict[str, float], Dict[str, float]]:
    """
    Merge overrides into the defaults of a case.
    :param published: Values stated by the published setup.
    :param assumed: Values the published setup leaves open.
    :param overrides: User values.
    :return: The parameters and the unpublished subset.
    """
    params = {**published, **assumed}
    overrides = dict(overrides or {})
    unknown = sorted(set(overrides) - set(params))
    if unknown:
        raise ConfigurationError(
            f"Unknown case parameters {', '.join(unknown)}, expected {', '.join(sorted(params)) or 'none'}."
        )
    params.update({key: float(value) for key, value in overrides.items()})
    unpublished = {key: params[key] for key in assumed}
    unpublished.update({key: params[key] for key in published if params[key] != published[key]})
    return params, unpublished


def _cells_1d(cells: Optional[Sequence[int]], default: int) -> int:
    if cells is None:
        return default
    if len(cells) != 1:
        raise ConfigurationError(f"One-dimensional case takes N cells, got {'x'.join(map(str, cells))}.")
    return int(cells[0])


def _cells_2d(cells: Optional[Sequence[int]], default: int) -> Tuple[int, int]:
    if cells is None:
        return default, default
    if len(cells) == 1:
        return int(cells[0]), int(cells[0])
    return int(cells[0]), int(cells[1])


def _positive(params: Mapping[str, float], *names: str) -> None:
    for name in names:
        if not params[name] > 0.0:
            raise ConfigurationError(f"Case parameter {name} must be > 0, got {params[name]}.")


def _three_states(left: float, middle: float, right: float) -> Callable[[np.ndarray], np.ndarray]:
    """
    Initial data with the middle state on [-1/3, 1/3].
    """

    def initial(x: np.ndarray) -> np.ndarray:
        return np.where(x < -1.0 / 3.0, left, np.where(x <= 1.0 / 3.0, middle, right))

    return initial


def cosine_bump(x) -> np.ndarray:
    """
    Bed b = (cos(10 pi (x - 1/2)) + 1) / 8 on [0.4, 0.6], flat elsewhere.
    """
    x = np.asarray(x, dtype=float)
    bump = 0.125 * (np.cos(10.0 * math.pi * (x - 0.5)) + 1.0)
    return np.where((x >= 0.4) & (x <= 0.6), bump, 0.0)


# Case builders


def _tc1(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"tfinal": 0.3}, {}, overrides)
    grid = build_grid_1d(-1.0, 1.0, _cells_1d(cells, 100))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        "Linear convection of a three-state profile",
        grid,
        ScalarField1D.from_function(grid, lambda x: exact.linear_advection_profile(x, 0.0)),
        BoundaryCondition.extrapolation(),
        model=FluxModel.linear_advection(1.0),
        t_final=params["tfinal"],
        oracle=lambda t: exact.linear_advection_profile(grid.centers, t),
        params=params,
        unpublished=unpublished,
    )


def _tc2(case_id: CaseId, cells, overrides) -> CaseSetup:
    pe = 1.0 if case_id is CaseId.TC2A else 50.0
    params, unpublished = _case_params({"pe": pe}, {}, overrides)
    _positive(params, "pe")
    grid = build_grid_1d(0.0, 1.0, _cells_1d(cells, 100))
    pe = params["pe"]
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        f"Steady convection-diffusion boundary layer, Pe={pe:g}",
        grid,
        ScalarField1D(grid, np.zeros(grid.n_cells)),
        BoundaryCondition.dirichlet(0.0, 1.0),
        model=FluxModel.linear_advection(1.0, nu=1.0 / pe),
        time_cap=STEADY_TIME_CAP[case_id.family],
        oracle=lambda t: exact.advection_diffusion_steady(grid.centers, pe),
        params=params,
        unpublished=unpublished,
    )


def _inviscid_burgers(case_id: CaseId, cells, overrides) -> CaseSetup:
    states = {CaseId.TC3: (0.0, 1.0, -1.0), CaseId.TC4: (0.0, 1.0, 0.0), CaseId.TC5: (-1.0, 1.0, -1.0)}
    left, middle, right = states[case_id]
    params, unpublished = _case_params({"tfinal": 0.3}, {}, overrides)
    grid = build_grid_1d(-1.0, 1.0, _cells_1d(cells, 100))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        f"Inviscid Burgers with states {left:g} / {middle:g} / {right:g}",
        grid,
        ScalarField1D.from_function(grid, _three_states(left, middle, right)),
        BoundaryCondition.extrapolation(),
        model=FluxModel.burgers(),
        t_final=params["tfinal"],
        oracle=lambda t: exact.two_jump_burgers(left, middle, right, -1.0 / 3.0, 1.0 / 3.0, grid.centers, t),
        params=params,
        unpublished=unpublished,
    )


def _tc6(case_id: CaseId, cells, overrides) -> CaseSetup:
    published = {"nu": 0.05, "tfinal": 3.0} if case_id is CaseId.TC6A else {"nu": 0.001, "tfinal": 1.0}
    params, unpublished = _case_params(published, {}, overrides)
    _positive(params, "nu")
    nu = params["nu"]
    grid = build_grid_1d(-2.0, 3.0, _cells_1d(cells, 100))
    if case_id is CaseId.TC6A:
        initial = ScalarField1D.from_function(grid, lambda x: exact.viscous_front(x, 0.0, nu))
    else:
        initial = ScalarField1D.from_function(grid, lambda x: np.where(x < 0.0, 1.0, 0.0))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        f"Viscous Burgers travelling front, nu={nu:g}",
        grid,
        initial,
        BoundaryCondition.dirichlet(1.0, 0.0),
        model=FluxModel.burgers(nu),
        t_final=params["tfinal"],
        oracle=lambda t: exact.viscous_front(grid.centers, t, nu),
        params=params,
        unpublished=unpublished,
    )


def _tc7(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"nu": 0.1, "tfinal": 2.55237}, {}, overrides)
    _positive(params, "nu")
    nu = params["nu"]
    grid = build_grid_1d(-1.0, 1.0, _cells_1d(cells, 100))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        f"Viscous Burgers decay of -sin(pi x), nu={nu:g}",
        grid,
        ScalarField1D.from_function(grid, lambda x: -np.sin(math.pi * x)),
        BoundaryCondition.dirichlet(0.0, 0.0),
        model=FluxModel.burgers(nu),
        t_final=params["tfinal"],
        oracle=lambda t: exact.viscous_sine_series(grid.centers, t, nu),
        params=params,
        unpublished=unpublished,
    )


def _tc8(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"nu": 0.1 if case_id is CaseId.TC8A else 0.001}, {}, overrides)
    _positive(params, "nu")
    nu = params["nu"]
    grid = build_grid_1d(-1.0, 1.0, _cells_1d(cells, 100))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        f"Steady viscous Burgers shock, nu={nu:g}",
        grid,
        ScalarField1D.from_function(grid, lambda x: np.where(x < 0.0, 1.0, -1.0)),
        BoundaryCondition.dirichlet(1.0, -1.0),
        model=FluxModel.burgers(nu),
        time_cap=STEADY_TIME_CAP[case_id.family],
        oracle=lambda t: exact.viscous_steady_shock(grid.centers, nu, 1.0, -1.0),
        params=params,
        unpublished=unpublished,
    )


def _tc9(case_id: CaseId, cells, overrides) -> CaseSetup:
    # The published domain [-1, 1] conflicts with data defined on [0, 1]
    params, unpublished = _case_params(
        {"tfinal": 0.1, "dam": 0.5, "upstream": 1.0, "downstream": 0.5},
        {"x_min": 0.0, "gravity": GRAVITY},
        overrides,
    )
    _positive(params, "gravity")
    grid = build_grid_1d(params["x_min"], 1.0, _cells_1d(cells, 100))
    bed = cosine_bump(grid.centers)
    surface = np.where(grid.centers <= params["dam"], params["upstream"], params["downstream"])
    return CaseSetup(
        case_id,
        CaseKind.SWE_1D,
        "Dam break over a cosine bump",
        grid,
        SweState.from_surface(grid, surface, bed, 0.0, params["gravity"]),
        BoundaryCondition.extrapolation(),
        t_final=params["tfinal"],
        gravity=params["gravity"],
        params=params,
        unpublished=unpublished,
    )


def _tc10(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"angle": 45.0}, {}, overrides)
    angle = params["angle"]
    grid = build_grid_2d(0.0, 1.0, 0.0, 1.0, *_cells_2d(cells, 64))
    bc = BoundaryCondition2D.from_sides(
        BoundarySide.dirichlet(1.0),
        BoundarySide.extrapolation(),
        BoundarySide.dirichlet(0.0),
        BoundarySide.extrapolation(),
    )
    x, y = grid.mesh()
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_2D,
        f"Steady linear convection of an inflow discontinuity at {angle:g} degrees",
        grid,
        Field2D.scalar(grid, lambda x, y: np.zeros_like(x)),
        bc,
        model=FluxModel.linear_advection_2d(angle),
        time_cap=STEADY_TIME_CAP[case_id.family],
        oracle=lambda t: exact.lce2d_diagonal(x, y, angle),
        params=params,
        unpublished=unpublished,
    )


def _steady_burgers_2d(case_id: CaseId, cells, overrides) -> CaseSetup:
    offset = 1.0 if case_id is CaseId.TC11 else 1.5
    params, unpublished = _case_params({}, {}, overrides)
    grid = build_grid_2d(0.0, 1.0, 0.0, 1.0, *_cells_2d(cells, 64))

    def ramp(x, y, t=0.0):
        return offset - 2.0 * np.asarray(x, dtype=float) + 0.0 * np.asarray(y, dtype=float)

    bc = BoundaryCondition2D.from_sides(
        BoundarySide.dirichlet(offset),
        BoundarySide.dirichlet(offset - 2.0),
        BoundarySide.dirichlet(ramp),
        BoundarySide.extrapolation(),
    )
    shape = "normal" if case_id is CaseId.TC11 else "oblique"
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_2D,
        f"Steady 2D Burgers with a {shape} shock",
        grid,
        Field2D.scalar(grid, ramp),
        bc,
        model=FluxModel.burgers_transport_2d(),
        time_cap=STEADY_TIME_CAP[case_id.family],
        params=params,
        unpublished=unpublished,
    )


def _tc13(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"nu": 0.01, "tfinal": 0.1}, {}, overrides)
    _positive(params, "nu")
    nu = params["nu"]
    grid = build_grid_2d(-0.5, 0.5, -0.5, 0.5, *_cells_2d(cells, 64))

    def front(x, y, t=0.0):
        return exact.burgers2d_front(x, y, t, nu)

    x, y = grid.mesh()
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_2D,
        f"Viscous 2D Burgers diagonal front, nu={nu:g}",
        grid,
        Field2D.scalar(grid, front),
        BoundaryCondition2D.uniform(BoundaryCondition.dirichlet(front, front)),
        model=FluxModel.burgers_2d(nu),
        t_final=params["tfinal"],
        oracle=lambda t: front(x, y, t),
        params=params,
        unpublished=unpublished,
    )


def _tc14(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"nu": 0.01, "tfinal": 0.1}, {}, overrides)
    _positive(params, "nu")
    grid = build_grid_2d(0.0, 1.0, 0.0, 1.0, *_cells_2d(cells, 64))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_2D,
        f"Viscous 2D Burgers periodic vortex pattern, nu={params['nu']:g}",
        grid,
        Field2D.scalar(grid, lambda x, y: np.sin(2.0 * math.pi * x) * np.cos(2.0 * math.pi * y)),
        BoundaryCondition2D.uniform(BoundaryCondition.periodic()),
        model=FluxModel.burgers_2d(params["nu"]),
        t_final=params["tfinal"],
        params=params,
        unpublished=unpublished,
    )


def _tc15(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params(
        {"radius": 11.0, "tfinal": 0.69},
        {"inner_depth": 10.0, "outer_depth": 1.0, "gravity": GRAVITY},
        overrides,
    )
    _positive(params, "radius", "inner_depth", "outer_depth", "gravity")
    grid = build_grid_2d(0.0, 50.0, 0.0, 50.0, *_cells_2d(cells, 40))
    x, y = grid.mesh()
    inside = (x - 25.0) ** 2 + (y - 25.0) ** 2 <= params["radius"] ** 2
    depth = np.where(inside, params["inner_depth"], params["outer_depth"])
    return CaseSetup(
        case_id,
        CaseKind.SWE_2D,
        "Circular dam break",
        grid,
        Field2D.shallow_water(grid, depth),
        BoundaryCondition2D.uniform(BoundaryCondition.reflective()),
        t_final=params["tfinal"],
        gravity=params["gravity"],
        params=params,
        unpublished=unpublished,
    )


def _smooth(case_id: CaseId, cells, overrides) -> CaseSetup:
    params, unpublished = _case_params({"tfinal": 0.4 / math.pi}, {}, overrides)
    grid = build_grid_1d(0.0, 1.0, _cells_1d(cells, 160))
    return CaseSetup(
        case_id,
        CaseKind.SCALAR_1D,
        "Smooth inviscid Burgers before shock formation",
        grid,
        ScalarField1D.from_function(grid, lambda x: np.sin(2.0 * math.pi * x)),
        BoundaryCondition.periodic(),
        model=FluxModel.burgers(),
        t_final=params["tfinal"],
        oracle=lambda t: exact.smooth_burgers(grid.centers, t),
        params=params,
        unpublished=unpublished,
    )


class CaseRegistry:
    """
    Lookup of the case builders.
    """

    # Attributes

    _builders: Dict[CaseId, Callable[..., CaseSetup]] = {
        CaseId.TC1: _tc1,
        CaseId.TC2A: _tc2,
        CaseId.TC2B: _tc2,
        CaseId.TC3: _inviscid_burgers,
        CaseId.TC4: _inviscid_burgers,
        CaseId.TC5: _inviscid_burgers,
        CaseId.TC6A: _tc6,
        CaseId.TC6B: _tc6,
        CaseId.TC7: _tc7,
        CaseId.TC8A: _tc8,
        CaseId.TC8B: _tc8,
        CaseId.TC9: _tc9,
        CaseId.TC10: _tc10,
        CaseId.TC11: _steady_burgers_2d,
        CaseId.TC12: _steady_burgers_2d,
        CaseId.TC13: _tc13,
        CaseId.TC14: _tc14,
        CaseId.TC15: _tc15,
        CaseId.SMOOTH: _smooth,
    }

    # Public methods

    @classmethod
    def create_case(
        cls,
        case: Union[str, CaseId],
        cells: Optional[Sequence[int]] = None,
        params: Optional[Mapping[str, float]] = None,
        t_final: Optional[float] = None,
    ) -> CaseSetup:
        """
        Build the setup of a case.
        :param case: Case id or its flag spelling.
        :param cells: (n,) or (n_x, n_y), the published grid when None.
        :param params: Parameter overrides.
        :param t_final: End time replacing the published one; turns a steady case transient.
        :return: The setup.
        """
        case_id = CaseId.from_flag(case)
        setup = cls._builders[case_id](case_id, cells, params)
        if t_final is not None and t_final != setup.t_final:
            setup.t_final = float(t_final)
            setup.params["tfinal"] = setup.t_final
            setup.unpublished["tfinal"] = setup.t_final
        return setup

    @classmethod
    def list_cases(cls) -> List[Tuple[str, str]]:
        """
        Id and title of every case, in registry order.
        """
        return [(case_id.value, cls.create_case(case_id).title) for case_id in CaseId]


__all__ = [
    "STEADY_TIME_CAP",
    "CaseId",
    "CaseKind",
    "CaseSetup",
    "CaseRegistry",
    "cosine_bump",
]
