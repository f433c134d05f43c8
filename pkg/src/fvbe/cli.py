#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Command-line entry point. """

from __future__ import annotations

import argparse
from typing import Any, Dict, Optional, Sequence, Union

from pymate import LogIt

from fvbe.cases import CaseRegistry
from fvbe.commandlinehelper import (
    ERROR,
    INFO,
    SUCCESS,
    check_args,
    parse_args,
    print_message,
    set_default_args_values,
    usage,
)
from fvbe.exceptions import (
    ConfigurationError,
    ConvergenceStudyError,
    DivergenceError,
    EvaluationError,
    FvbeError,
    HarnessError,
    NonConvergenceError,
    StateError,
    UsageError,
)
from fvbe.run_config import RunConfig, parse_params
from fvbe.runner import CaseRunner, RunOutcome, study_summary
from fvbe.verify import ConvergenceReport

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_IO = 4

# Namespace attribute -> configuration key
_FLAG_KEYS = {
    "case": "case",
    "scheme": "scheme",
    "wave_speed": "lambda",
    "tvd_split": "tvd_split",
    "cells": "cells",
    "cfl": "cfl",
    "tfinal": "tfinal",
    "eoc": "eoc",
    "grids": "grids",
    "full_range": "full_range",
    "jobs": "jobs",
    "out": "out",
    "format": "format",
    "what": "what",
}


def build_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge the configuration file, if any, with the flags. Flags win.
    :param args: Parsed and checked arguments.
    :return: The run configuration.
    """
    settings: Dict[str, Any] = dict(RunConfig.read_file(args.config)) if args.config else {}
    params = parse_params(settings.pop("params", None) or "")
    for attribute, key in _FLAG_KEYS.items():
        value = getattr(args, attribute, None)
        if value is not None:
            settings[key] = value
    if args.grids is not None:
        settings.pop("full_range", None)
    if "out" not in settings and ("format" in settings or "what" in settings):
        raise UsageError("--format and --what need --out.")
    params.update(parse_params(args.param or []))
    if params:
        settings["params"] = params
    if settings.get("eoc") in (True, "1", "true", "yes", "on") and not settings.get("case"):
        settings["case"] = "smooth"
    return RunConfig.from_settings(settings)


def run_case(
    config: RunConfig, logger: Optional[LogIt] = None, verbose: bool = False, debug: bool = False
) -> Union[RunOutcome, ConvergenceReport]:
    """
    Run a configuration and print its summary line on standard output.
    :param config: The run configuration.
    :param logger: The logger.
    :param verbose: Verbose output.
    :param debug: One line per time step.
    :return: The outcome of a run, or the report of a study.
    """
    runner = CaseRunner(config, verbose, debug, logger or LogIt())
    if config.eoc:
        report, _ = runner.study()
        print_message(report.format_table(), INFO)
        print_message(study_summary(report), SUCCESS)
        return report
    outcome = runner.run()
    print_message(outcome.summary, SUCCESS)
    return outcome


def list_cases() -> None:
    for case, title in CaseRegistry.list_cases():
        print_message(f"{case:<7} {title}", INFO)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse the command line, run and map failures to exit codes.
    :param argv: Arguments without the program name, sys.argv[1:] when None.
    :return: 0 on success, 2 on usage errors, 3 on solver failures, 4 on I/O errors.
    """
    try:
        args = parse_args(argv)
        args = check_args(args)
        args = set_default_args_values(args)
    except (argparse.ArgumentError, ValueError) as error:
        print_message(usage(), ERROR)
        print_message(f"Error: {error}", ERROR)
        return EXIT_USAGE

    logger = LogIt(console=True, format="%(message)s")
    if args.list_cases:
        list_cases()
        return EXIT_OK

    try:
        run_case(build_config(args), logger, args.verbose, args.debug)
    except ConvergenceStudyError as error:
        if error.report.rows:
            print_message(error.report.format_table(), INFO)
        print_message(f"Error: {error}", ERROR)
        return EXIT_SOLVER
    except (ConfigurationError, EvaluationError, HarnessError) as error:
        print_message(f"Error: {error}", ERROR)
        return EXIT_USAGE
    except (DivergenceError, NonConvergenceError, StateError) as error:
        print_message(f"Error: {error}", ERROR)
        return EXIT_SOLVER
    except OSError as error:
        print_message(f"Error: {error}", ERROR)
        return EXIT_IO
    except FvbeError as error:
        print_message(f"Error: {error}", ERROR)
        return EXIT_SOLVER
    return EXIT_OK


__all__ = ["EXIT_OK", "EXIT_USAGE", "EXIT_SOLVER", "EXIT_IO", "build_config", "run_case", "list_cases", "main"]
