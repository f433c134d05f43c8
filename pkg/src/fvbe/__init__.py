#!/usr/bin/env python
# -*- coding: utf-8 -*-

# Import key classes and functions for easier access
from ._about import __version__
from .boundary import BoundaryCondition, BoundaryCondition2D, BoundaryKind, BoundarySide
from .cases import CaseId, CaseKind, CaseRegistry, CaseSetup
from .exceptions import FvbeError
from .field import Field2D, ScalarField1D
from .flux_model import FluxModel
from .grid import Grid1D, Grid2D, build_grid_1d, build_grid_2d
from .run_config import OutputSpec, RunConfig
from .scheme_kind import SchemeKind, TvdSplit
from .solver1d import Solver1D, advance, march, run_to_time
from .solver2d import Solver2D, advance_2d_scalar, advance_2d_swe
from .swe1d import SweSolver, SweState, advance_swe
from .verify import ConvergenceReport, convergence_study, eoc, error_norms
from .wave_speed import WaveSpeedMode
