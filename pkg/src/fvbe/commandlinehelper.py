#!/usr/bin/env python3
# -*- coding: utf-8 -*-
""" Helper utilities for command-line interface. """

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from termcolor import colored

from fvbe._about import __version__

# Console levels of the entry point, diagnostics go through LogIt
INFO = "info"
ERROR = "error"
SUCCESS = "success"
LEVEL_COLORS = {INFO: None, ERROR: "red", SUCCESS: "green"}

# Flag spellings accepted by --scheme and --lambda
SCHEME_CHOICES = ("kfds", "kfds+", "klw", "tvd", "tvd+")
LAMBDA_CHOICES = ("ce", "rh", "hybrid")
FORMAT_CHOICES = ("csv", "json", "bin")
WHAT_CHOICES = ("field", "norms")
TVD_SPLIT_CHOICES = ("printed", "upwind")


def print_message(text: str, level: str = INFO) -> None:
    """
    Print a result line on stdout, or an error on stderr. termcolor drops the colour under
    NO_COLOR or when stdout is not a terminal.
    Args:
        text: The text to print.
        level: INFO, SUCCESS or ERROR.
    """

    stream = sys.stderr if level == ERROR else sys.stdout
    print(colored(text, LEVEL_COLORS.get(level)), file=stream, flush=True)


class _RaisingArgumentParser(argparse.ArgumentParser):
    """
    ArgumentParser that raises instead of exiting, so the caller owns the exit code.
    """

    def error(self, message: str):  # type: ignore[override]
        """
        Raise a usage error carrying argparse's message.
        Args:
            message: The argparse error message.
        Raises:
            argparse.ArgumentError: Always.
        """

        raise argparse.ArgumentError(None, f"{self.prog}: error: {message}")


def build_arg_parser() -> argparse.ArgumentParser:
    """
    Build the command-line parser.
    Returns:
        The configured parser. Defaults are None so a config file can fill the gaps.
    """

    args_parser = _RaisingArgumentParser(
        prog="fvbe",
        description="fvbe - flexible-velocity Boltzmann finite-volume solver",
    )
    # Case selection
    args_parser.add_argument("--case", help="Test case id (tc1..tc15 with a/b variants, or smooth)")
    args_parser.add_argument("--list-cases", action="store_true", help="List registered cases and exit")
    args_parser.add_argument("--config", help="Flat key=value file with run settings")
    # Discretisation
    args_parser.add_argument("--scheme", choices=SCHEME_CHOICES, help="Interface flux scheme")
    args_parser.add_argument("--lambda", dest="wave_speed", choices=LAMBDA_CHOICES, help="Wave-speed mode")
    args_parser.add_argument("--tvd-split", choices=TVD_SPLIT_CHOICES, help="TVD correction form")
    args_parser.add_argument("--cells", help="Number of cells, N or NxM")
    args_parser.add_argument("--cfl", type=float, help="Courant number in (0, 1]")
    args_parser.add_argument("--tfinal", type=float, help="Final time (case default otherwise)")
    args_parser.add_argument(
        "--param", action="append", metavar="KEY=VALUE", help="Case parameter override (repeatable)"
    )
    # Convergence study
    args_parser.add_argument("--eoc", action="store_true", default=None, help="Run a convergence study")
    args_parser.add_argument("--grids", help="Comma separated grid sizes for --eoc")
    args_parser.add_argument("--full-range", action="store_true", default=None, help="Grids 10..5120")
    args_parser.add_argument("--jobs", type=int, help="Concurrent grid runs for --eoc")
    # Output
    args_parser.add_argument("--out", help="Output file path")
    args_parser.add_argument("--format", choices=FORMAT_CHOICES, help="Output format")
    args_parser.add_argument("--what", choices=WHAT_CHOICES, help="Artefact to write")
    # Verbosity
    args_parser.add_argument("--verbose", action="store_true", help="Enable verbose output")
    args_parser.add_argument("--debug", action="store_true", help="Show one line per time step")
    args_parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return args_parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """
    Parse command-line arguments.
    Args:
        argv: Argument list, sys.argv[1:] when None.
    Returns:
        Parsed arguments.
    Raises:
        argparse.ArgumentError: If parsing fails.
    """

    return build_arg_parser().parse_args(argv)


def check_args(args: argparse.Namespace) -> argparse.Namespace:
    """
    Validate command-line arguments.
    Args:
        args: Parsed arguments.
    Returns:
        Validated arguments.
    Raises:
        ValueError: If any argument is invalid.
    """

    if not args.list_cases and args.case is None and args.config is None and not args.eoc:
        raise ValueError("one of --case, --config or --eoc is required")

    if args.jobs is not None and args.jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {args.jobs}")
    if args.grids is not None and args.full_range:
        raise ValueError("--grids and --full-range are mutually exclusive")
    for item in args.param or []:
        if "=" not in item:
            raise ValueError(f"--param expects KEY=VALUE, got {item!r}")

    return args


def set_default_args_values(args: argparse.Namespace) -> argparse.Namespace:
    """
    Set default values for optional arguments if not provided.
    Args:
        args: Parsed arguments.
    Returns:
        Arguments with defaults set.
    """

    # The smooth study is the default convergence case
    if args.eoc and args.case is None and args.config is None:
        args.case = "smooth"

    return args


def usage() -> str:
    """
    Return the usage text.
    Returns:
        The parser's help text.
    """

    return build_arg_parser().format_help()


__all__ = [
    "INFO",
    "ERROR",
    "SUCCESS",
    "LEVEL_COLORS",
    "print_message",
    "build_arg_parser",
    "parse_args",
    "check_args",
    "set_default_args_values",
    "usage",
]
