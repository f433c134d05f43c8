"""Tests of the artefact writers and readers."""
import json
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from fvbe.exceptions import OutputError
from fvbe.field import Field2D
from fvbe.grid import build_grid_2d
from fvbe.output import (
    BIN_MAGIC,
    columns_to_records,
    read_csv,
    read_csv_columns,
    read_field_bin,
    read_json,
    write_artifact,
    write_csv,
    write_field_bin,
    write_json,
)
from fvbe.run_config import OutputSpec


def test_csv_keeps_every_bit(tmp_path: Path) -> None:
    rng = np.random.default_rng(7)
    x = np.linspace(-1.0, 1.0, 33)
    u = rng.normal(size=33) * 1e-3 + np.pi
    path = write_csv(tmp_path / "field.csv", columns_to_records({"x": x, "u_num": u}))
    columns = read_csv_columns(path)
    assert list(columns) == ["x", "u_num"]
    assert_array_equal(columns["x"], x)
    assert_array_equal(columns["u_num"], u)
    assert path.read_bytes().count(b"\r") == 0


def test_csv_header_order_and_text_cells(tmp_path: Path) -> None:
    records = [{"n": 20, "L1": 0.5, "L1_EOC": ""}, {"n": 40, "L1": 0.25, "L1_EOC": 1.0}]
    path = write_csv(tmp_path / "eoc.csv", records, ["n", "L1", "L1_EOC"])
    assert path.read_text(encoding="utf-8").splitlines()[0] == "n,L1,L1_EOC"
    rows = read_csv(path)
    assert rows[0] == {"n": "20", "L1": "0.5", "L1_EOC": ""}
    assert float(rows[1]["L1_EOC"]) == 1.0


def test_columns_must_match() -> None:
    with pytest.raises(OutputError):
        columns_to_records({"x": [1.0, 2.0], "u": [1.0]})
    assert columns_to_records({}) == []


def test_json(tmp_path: Path) -> None:
    metadata = {"case": "tc1", "cells": (np.int64(100),), "L1": np.float64(0.25)}
    path = write_json(tmp_path / "run.json", [{"x": np.float64(0.5), "u": 1.0}], metadata)
    document = read_json(path)
    assert document["metadata"] == {"case": "tc1", "cells": [100], "L1": 0.25}
    assert document["records"] == [{"x": 0.5, "u": 1.0}]
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    with pytest.raises(OutputError):
        read_json(tmp_path / "broken.json")


def test_binary_field(tmp_path: Path) -> None:
    grid = build_grid_2d(0.0, 50.0, 0.0, 25.0, 6, 4)
    x, y = grid.mesh()
    field = Field2D.shallow_water(grid, 1.0 + 0.1 * x, 0.01 * y, -0.2, t=0.69)
    path = write_field_bin(tmp_path / "dam.bin", field)
    assert path.read_bytes().startswith(BIN_MAGIC.encode("ascii"))
    back = read_field_bin(path)
    assert back.names == ("h", "hu", "hv")
    assert back.t == 0.69
    assert back.grid.shape == (6, 4)
    assert (back.grid.x_max, back.grid.y_max) == (50.0, 25.0)
    assert_array_equal(back.values, field.values)


def test_binary_field_errors(tmp_path: Path) -> None:
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOT-A-FIELD\n")
    with pytest.raises(OutputError):
        read_field_bin(bad)
    grid = build_grid_2d(0.0, 1.0, 0.0, 1.0, 4, 4)
    path = write_field_bin(tmp_path / "cut.bin", Field2D.scalar(grid, lambda x, y: x))
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(OutputError):
        read_field_bin(path)
    with pytest.raises(OutputError):
        read_field_bin(tmp_path / "absent.bin")


def test_write_artifact(tmp_path: Path) -> None:
    spec = OutputSpec(tmp_path / "norms.csv", "csv", "norms")
    written = write_artifact(spec, [{"n": 100, "L1": 0.1}], {"case": "tc1"}, ["n", "L1"])
    assert written == [tmp_path / "norms.csv", tmp_path / "norms.csv.meta.json"]
    assert json.loads(written[1].read_text(encoding="utf-8")) == {"case": "tc1"}
    with pytest.raises(OutputError):
        write_artifact(OutputSpec(tmp_path / "field.bin", "bin"), [], {})
