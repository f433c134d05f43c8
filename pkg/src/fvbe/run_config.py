#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Run configuration, loadable from a flat key=value file. """

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

from dotenv import dotenv_values

from fvbe.exceptions import ConfigurationError, OutputError
from fvbe.grid import MIN_CELLS
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.wave_speed import WaveSpeedMode

DEFAULT_CFL = 0.8
DEFAULT_STEADY_TOLERANCE = 1e-10
MAX_STEPS = 10_000_000
DEFAULT_GRIDS = (20, 40, 80, 160, 320, 640, 1280)
FULL_GRIDS = (10, 20, 40, 80, 160, 320, 640, 1280, 2560, 5120)

OUTPUT_FORMATS = ("csv", "json", "bin")
OUTPUT_WHATS = ("field", "norms", "eoc-table")

# Config-file keys, dashes already folded to underscores
CONFIG_KEYS = (
    "case",
    "scheme",
    "cells",
    "cfl",
    "tfinal",
    "lambda",
    "tvd_split",
    "out",
    "format",
    "what",
    "eoc",
    "grids",
    "full_range",
    "jobs",
    "params",
)


@dataclass(frozen=True)
class OutputSpec:
    """
    Where and how a run writes its artefact.
    """

    # Attributes

    path: Path = field(metadata={"help": "Output file."})
    format: str = field(default="csv", metadata={"help": "csv, json or bin."})
    what: str = field(default="field", metadata={"help": "field, norms or eoc-table."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", Path(self.path))
        if self.format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"Unknown output format {self.format!r}.")
        if self.what not in OUTPUT_WHATS:
            raise ConfigurationError(f"Unknown output artefact {self.what!r}.")
        if self.format == "bin" and self.what != "field":
            raise ConfigurationError("Binary output holds fields only.")
        parent = self.path.parent
        if not parent.is_dir():
            raise OutputError(f"Output directory {str(parent)!r} does not exist.")

    # Public methods

    @property
    def meta_path(self) -> Path:
        return self.path.with_name(self.path.name + ".meta.json")


@dataclass
class RunConfig:
    """
    Settings of one run or one convergence study.
    """

    # Attributes

    case: Optional[str] = field(default=None, metadata={"help": "Case id, e.g. tc3 or smooth."})
    scheme: SchemeKind = field(default=SchemeKind.KFDS, metadata={"help": "Interface flux scheme."})
    mode: Optional[WaveSpeedMode] = field(default=None, metadata={"help": "Wave-speed mode, scheme default when None."})
    tvd_split: TvdSplit = field(default=TvdSplit.PRINTED, metadata={"help": "TVD correction form."})
    cells: Optional[Tuple[int, ...]] = field(default=None, metadata={"help": "(n,) or (n_x, n_y), case default when None."})
    cfl: float = field(default=DEFAULT_CFL, metadata={"help": "Courant number in (0, 1]."})
    t_final: Optional[float] = field(default=None, metadata={"help": "Final time, case default when None."})
    steady_tol: float = field(default=DEFAULT_STEADY_TOLERANCE, metadata={"help": "Residual that ends steady runs."})
    max_steps: int = field(default=MAX_STEPS, metadata={"help": "Step cap."})
    eoc: bool = field(default=False, metadata={"help": "Run a convergence study."})
    grids: Tuple[int, ...] = field(default=DEFAULT_GRIDS, metadata={"help": "Grid sizes of the study."})
    jobs: int = field(default=1, metadata={"help": "Concurrent grid runs of the study."})
    params: Dict[str, float] = field(default_factory=dict, metadata={"help": "Case parameter overrides."})
    output: Optional[OutputSpec] = field(default=None, metadata={"help": "Output artefact."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Validates the settings and resolves the wave-speed mode.
        """
        # Check the stability bound
        if not (math.isfinite(self.cfl) and 0.0 < self.cfl <= 1.0):
            raise ConfigurationError(f"CFL number must lie in (0, 1], got {self.cfl}.")
        # Check the time settings
        if self.t_final is not None and not (math.isfinite(self.t_final) and self.t_final >= 0.0):
            raise ConfigurationError(f"Final time must be finite and >= 0, got {self.t_final}.")
        if not self.steady_tol > 0.0:
            raise ConfigurationError(f"Steady tolerance must be > 0, got {self.steady_tol}.")
        if self.max_steps < 1:
            raise ConfigurationError(f"Step cap must be >= 1, got {self.max_steps}.")
        # Check the grids
        if self.cells is not None:
            self.cells = tuple(int(n) for n in self.cells)
            if len(self.cells) not in (1, 2) or min(self.cells) < MIN_CELLS:
                raise ConfigurationError(f"Cells must be N or NxM with N >= {MIN_CELLS}, got {self.cells}.")
        self.grids = tuple(int(n) for n in self.grids)
        if not self.grids or min(self.grids) < MIN_CELLS:
            raise ConfigurationError(f"Study grids must hold sizes >= {MIN_CELLS}, got {self.grids}.")
        if self.jobs < 1:
            raise ConfigurationError(f"Jobs must be >= 1, got {self.jobs}.")
        self.mode = self.scheme.resolve_mode(self.mode)

    # Public methods

    @property
    def wave_speed_mode(self) -> WaveSpeedMode:
        assert self.mode is not None
        return self.mode

    @classmethod
    def from_settings(cls, settings: Mapping[str, Any]) -> "RunConfig":
        """
        Build a configuration from flat settings, as read from a file or merged with flags.
        :param settings: Keys of CONFIG_KEYS, values as text or already typed. None values are skipped.
        :return: The configuration.
        """
        values = {_normalize_key(key): value for key, value in settings.items() if value is not None}
        unknown = sorted(set(values) - set(CONFIG_KEYS))
        if unknown:
            raise ConfigurationError(f"Unknown configuration keys: {', '.join(unknown)}.")
        kwargs: Dict[str, Any] = {}
        if "case" in values:
            kwargs["case"] = str(values["case"]).strip().lower()
        if "scheme" in values:
            kwargs["scheme"] = _as_enum(SchemeKind, values["scheme"])
        if "lambda" in values:
            kwargs["mode"] = _as_enum(WaveSpeedMode, values["lambda"])
        if "tvd_split" in values:
            kwargs["tvd_split"] = _as_enum(TvdSplit, values["tvd_split"])
        if "cells" in values:
            kwargs["cells"] = parse_cells(values["cells"])
        if "cfl" in values:
            kwargs["cfl"] = _as_float("cfl", values["cfl"])
        if "tfinal" in values:
            kwargs["t_final"] = _as_float("tfinal", values["tfinal"])
        if "eoc" in values:
            kwargs["eoc"] = _as_bool("eoc", values["eoc"])
        if "grids" in values:
            kwargs["grids"] = parse_grids(values["grids"])
        if _as_bool("full_range", values.get("full_range", False)):
            if "grids" in values:
                raise ConfigurationError("grids and full_range are mutually exclusive.")
            kwargs["grids"] = FULL_GRIDS
        if "jobs" in values:
            kwargs["jobs"] = int(_as_float("jobs", values["jobs"]))
        if "params" in values:
            kwargs["params"] = parse_params(values["params"])
        if "out" in values:
            eoc = kwargs.get("eoc", False)
            what = str(values.get("what", "eoc-table" if eoc else "field"))
            if eoc and what == "field":
                what = "eoc-table"
            kwargs["output"] = OutputSpec(Path(str(values["out"])), str(values.get("format", "csv")), what)
        return cls(**kwargs)

    @classmethod
    def read_file(cls, path) -> Dict[str, Optional[str]]:
        """
        Read the flat key=value settings of a file without touching the environment.
        :param path: The file.
        :return: Settings with normalised keys.
        """
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"Configuration file {str(path)!r} does not exist.")
        return {_normalize_key(key): value for key, value in dotenv_values(path).items()}

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        """
        Load a configuration file.
        :param path: The file.
        :return: The configuration.
        """
        return cls.from_settings(cls.read_file(path))


# Private helpers


def _normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_").lstrip("_")


def _as_enum(enum_class, value):
    if isinstance(value, enum_class):
        return value
    return enum_class.from_flag(str(value).strip())


def _as_float(name: str, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"Setting {name} expects a number, got {value!r}.") from None


def _as_bool(name: str, value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigurationError(f"Setting {name} expects a boolean, got {value!r}.")


def parse_cells(value) -> Tuple[int, ...]:
    """
    Parse N or NxM.
    """
    if isinstance(value, (tuple, list)):
        return tuple(int(n) for n in value)
    try:
        return tuple(int(part) for part in str(value).lower().split("x"))
    except ValueError:
        raise ConfigurationError(f"Cells must be N or NxM, got {value!r}.") from None


def parse_grids(value) -> Tuple[int, ...]:
    """
    Parse a comma separated list of grid sizes.
    """
    if isinstance(value, (tuple, list)):
        return tuple(int(n) for n in value)
    try:
        return tuple(int(part) for part in str(value).split(",") if part.strip())
    except ValueError:
        raise ConfigurationError(f"Grids must be comma separated integers, got {value!r}.") from None


def parse_params(value) -> Dict[str, float]:
    """
    Parse case parameters from a mapping, a list of key=value items or one text of
    key=value items separated by commas or semicolons.
    """
    if isinstance(value, Mapping):
        items = list(value.items())
    else:
        parts = value if isinstance(value, (list, tuple)) else str(value).replace(";", ",").split(",")
        items = []
        for part in parts:
            part = str(part).strip()
            if not part:
                continue
            if "=" not in part:
                raise ConfigurationError(f"Parameter expects key=value, got {part!r}.")
            key, text = part.split("=", 1)
            items.append((key, text))
    return {_normalize_key(str(key)): _as_float(str(key), text) for key, text in items}


__all__ = [
    "DEFAULT_CFL",
    "DEFAULT_GRIDS",
    "FULL_GRIDS",
    "MAX_STEPS",
    "OutputSpec",
    "RunConfig",
    "parse_cells",
    "parse_grids",
    "parse_params",
]
