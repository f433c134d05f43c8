"""Tests of the run configuration."""
from pathlib import Path

import pytest

from fvbe.exceptions import ConfigurationError, OutputError
from fvbe.run_config import (
    DEFAULT_GRIDS,
    FULL_GRIDS,
    OutputSpec,
    RunConfig,
    parse_cells,
    parse_grids,
    parse_params,
)
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.wave_speed import WaveSpeedMode


def test_defaults() -> None:
    config = RunConfig()
    assert config.scheme is SchemeKind.KFDS
    assert config.wave_speed_mode is WaveSpeedMode.CE
    assert config.cfl == 0.8
    assert config.grids == DEFAULT_GRIDS
    assert config.output is None
    assert config.tvd_split is TvdSplit.PRINTED
    assert RunConfig(scheme=SchemeKind.TVD_KFDS_PLUS).wave_speed_mode is WaveSpeedMode.HYBRID
    assert RunConfig(scheme=SchemeKind.KFDS_PLUS).wave_speed_mode is WaveSpeedMode.RH


@pytest.mark.parametrize(
    "kwargs",
    [
        {"cfl": 1.5},
        {"cfl": 0.0},
        {"t_final": -1.0},
        {"cells": (2,)},
        {"cells": (10, 10, 10)},
        {"jobs": 0},
        {"grids": ()},
        {"max_steps": 0},
        {"scheme": SchemeKind.KFDS, "mode": WaveSpeedMode.RH},
    ],
)
def test_invalid_settings(kwargs) -> None:
    with pytest.raises(ConfigurationError):
        RunConfig(**kwargs)


def test_from_settings() -> None:
    config = RunConfig.from_settings(
        {
            "case": "TC15",
            "scheme": "tvd+",
            "lambda": "rh",
            "cells": "40x20",
            "cfl": "0.5",
            "TVD-SPLIT": "printed",
        }
    )
    assert config.case == "tc15"
    assert config.scheme is SchemeKind.TVD_KFDS_PLUS
    assert config.mode is WaveSpeedMode.RH
    assert config.cells == (40, 20)
    assert config.cfl == 0.5
    assert config.tvd_split is TvdSplit.PRINTED


def test_from_settings_rejects_bad_values() -> None:
    with pytest.raises(ConfigurationError):
        RunConfig.from_settings({"colour": "red"})
    with pytest.raises(ConfigurationError):
        RunConfig.from_settings({"cfl": "fast"})
    with pytest.raises(ConfigurationError):
        RunConfig.from_settings({"eoc": "maybe"})
    with pytest.raises(ConfigurationError):
        RunConfig.from_settings({"scheme": "weno"})
    with pytest.raises(ConfigurationError):
        RunConfig.from_settings({"grids": "20,40", "full_range": "yes"})


def test_study_settings(tmp_path: Path) -> None:
    config = RunConfig.from_settings({"eoc": "true", "full_range": "1", "jobs": "3"})
    assert config.eoc
    assert config.grids == FULL_GRIDS
    assert config.jobs == 3
    study = RunConfig.from_settings({"eoc": True, "out": str(tmp_path / "eoc.csv")})
    assert study.output is not None and study.output.what == "eoc-table"
    plain = RunConfig.from_settings({"out": str(tmp_path / "run.json"), "format": "json"})
    assert plain.output is not None
    assert (plain.output.format, plain.output.what) == ("json", "field")


def test_from_file(tmp_path: Path) -> None:
    path = tmp_path / "run.env"
    path.write_text(
        "# Boundary layer\ncase=tc2b\nscheme=tvd\ncells=200\nparams=pe=50\n", encoding="utf-8"
    )
    config = RunConfig.from_file(path)
    assert config.case == "tc2b"
    assert config.scheme is SchemeKind.TVD_KFDS
    assert config.cells == (200,)
    assert config.params == {"pe": 50.0}
    with pytest.raises(ConfigurationError):
        RunConfig.from_file(tmp_path / "missing.env")


def test_parsers() -> None:
    assert parse_cells("100") == (100,)
    assert parse_cells("40X20") == (40, 20)
    assert parse_cells([8, 8]) == (8, 8)
    with pytest.raises(ConfigurationError):
        parse_cells("ten")
    assert parse_grids("20,40,80,") == (20, 40, 80)
    with pytest.raises(ConfigurationError):
        parse_grids("20;40")
    assert parse_params("pe=50; nu=0.1") == {"pe": 50.0, "nu": 0.1}
    assert parse_params(["inner-depth=5"]) == {"inner_depth": 5.0}
    assert parse_params({"radius": "8"}) == {"radius": 8.0}
    assert parse_params("") == {}
    with pytest.raises(ConfigurationError):
        parse_params("radius")


def test_output_spec(tmp_path: Path) -> None:
    spec = OutputSpec(tmp_path / "dam.bin", "bin")
    assert spec.meta_path == tmp_path / "dam.bin.meta.json"
    with pytest.raises(ConfigurationError):
        OutputSpec(tmp_path / "dam.bin", "bin", "norms")
    with pytest.raises(ConfigurationError):
        OutputSpec(tmp_path / "run.txt", "txt")
    with pytest.raises(ConfigurationError):
        OutputSpec(tmp_path / "run.csv", "csv", "everything")
    with pytest.raises(OutputError):
        OutputSpec(tmp_path / "missing" / "run.csv")
