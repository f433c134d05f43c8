#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Error hierarchy of the solver package. """

from __future__ import annotations

from typing import Any


class FvbeError(Exception):
    """
    Base class of every error raised by the package.
    """


class ConfigurationError(FvbeError, ValueError):
    """
    Invalid grid, run configuration, flag combination or scheme/mode pairing.
    """


class UsageError(ConfigurationError):
    """
    Bad command line.
    """


class InvalidWaveSpeedError(FvbeError, ValueError):
    """
    A wave speed that must divide is not strictly positive.
    """


class StateError(FvbeError, ValueError):
    """
    Physically inadmissible state (negative depth, non-finite input).
    """


class PositivityError(StateError):
    """
    Depth became negative during a time step.
    """

    def __init__(self, cell: int, time: float, depth: float) -> None:
        """
        :param cell: Index of the first cell with negative depth.
        :param time: Time level reached by the failed step.
        :param depth: The offending depth.
        """
        self.cell = cell
        self.time = time
        self.depth = depth
        super().__init__(f"Negative depth {depth:.6g} in cell {cell} at t={time:.6g}.")


class DivergenceError(FvbeError, ArithmeticError):
    """
    A time step produced non-finite values.
    """

    def __init__(self, cell: int, x: Any, time: float) -> None:
        """
        :param cell: Flat index of the first non-finite cell.
        :param x: Coordinate(s) of that cell.
        :param time: Time level reached by the failed step.
        """
        self.cell = cell
        self.x = x
        self.time = time
        super().__init__(f"Solution diverged in cell {cell} (x={x}) at t={time:.6g}.")


class NonConvergenceError(FvbeError, RuntimeError):
    """
    The time loop exceeded its step budget.
    """


class NoEvolution(FvbeError):
    """
    Nothing propagates (zero wave speed and zero diffusion): the state is already steady.
    """


class EvaluationError(FvbeError, ArithmeticError):
    """
    An exact solution cannot be evaluated at the requested point.
    """


class HarnessError(FvbeError, ValueError):
    """
    Misuse of the verification harness.
    """


class ConvergenceStudyError(HarnessError):
    """
    A solver failed during a convergence study. The rows computed so far are kept.
    """

    def __init__(self, message: str, report: Any) -> None:
        """
        :param message: Description of the failure.
        :param report: The partial convergence report.
        """
        self.report = report
        super().__init__(message)


class OutputError(FvbeError, OSError):
    """
    An output artefact cannot be written or read.
    """


__all__ = [
    "FvbeError",
    "ConfigurationError",
    "UsageError",
    "InvalidWaveSpeedError",
    "StateError",
    "PositivityError",
    "DivergenceError",
    "NonConvergenceError",
    "NoEvolution",
    "EvaluationError",
    "HarnessError",
    "ConvergenceStudyError",
    "OutputError",
]
