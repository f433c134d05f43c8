#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Writers and readers of run artefacts: CSV tables, JSON records and the binary 2D field format.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from fvbe.exceptions import OutputError
from fvbe.field import Field2D
from fvbe.grid import build_grid_2d
from fvbe.run_config import OutputSpec

BIN_MAGIC = "FVBE-FIELD"
# Significant digits that make a float64 survive the text round trip
CSV_DIGITS = 17


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{CSV_DIGITS}g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _plain(value: Any) -> Any:
    """
    JSON-compatible copy of numpy scalars and arrays.
    """
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def columns_to_records(columns: Mapping[str, Sequence[Any]]) -> List[Dict[str, Any]]:
    """
    Turn equal-length columns into a list of row records.
    """
    names = list(columns)
    lengths = {len(columns[name]) for name in names}
    if len(lengths) > 1:
        raise OutputError(f"Columns have different lengths: {sorted(lengths)}.")
    size = lengths.pop() if lengths else 0
    return [{name: _plain(columns[name][index]) for name in names} for index in range(size)]


def write_csv(path: Path, records: Sequence[Mapping[str, Any]], header: Optional[Sequence[str]] = None) -> Path:
    """
    Write records as CSV with a header row, ',' separator and LF line endings.
    :param path: Output file.
    :param records: Rows.
    :param header: Column order, the keys of the first record when None.
    :return: The path.
    """
    header = list(header if header is not None else (records[0].keys() if records else []))
    try:
        with open(path, "w", newline="", encoding="utf-8") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(header)
            for record in records:
                writer.writerow([_cell(record.get(name, "")) for name in header])
    except OSError as error:
        raise OutputError(f"Cannot write {str(path)!r}: {error}") from error
    return Path(path)


def read_csv(path: Path) -> List[Dict[str, str]]:
    """
    Read a CSV file written by write_csv.
    :return: Rows as text.
    """
    try:
        with open(path, newline="", encoding="utf-8") as stream:
            return list(csv.DictReader(stream))
    except OSError as error:
        raise OutputError(f"Cannot read {str(path)!r}: {error}") from error


def read_csv_columns(path: Path) -> Dict[str, np.ndarray]:
    """
    Read a numeric CSV table into float columns.
    """
    rows = read_csv(path)
    if not rows:
        return {}
    return {name: np.array([float(row[name]) for row in rows]) for name in rows[0]}


def write_json(path: Path, records: Sequence[Mapping[str, Any]], metadata: Mapping[str, Any]) -> Path:
    """
    Write {"metadata": ..., "records": [...]}.
    """
    document = {"metadata": _plain(dict(metadata)), "records": [_plain(dict(record)) for record in records]}
    try:
        with open(path, "w", encoding="utf-8") as stream:
            json.dump(document, stream, indent=2)
            stream.write("\n")
    except OSError as error:
        raise OutputError(f"Cannot write {str(path)!r}: {error}") from error
    return Path(path)


def read_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as stream:
            return json.load(stream)
    except (OSError, ValueError) as error:
        raise OutputError(f"Cannot read {str(path)!r}: {error}") from error


def write_field_bin(path: Path, field: Field2D) -> Path:
    """
    Write a 2D field: a text header closed by an "end" line, then the values as little-endian
    float64 in (n_vars, n_x, n_y) order.
    """
    grid = field.grid
    header = "\n".join(
        [
            BIN_MAGIC,
            f"shape {field.n_vars} {grid.n_x} {grid.n_y}",
            f"bounds {grid.x_min!r} {grid.x_max!r} {grid.y_min!r} {grid.y_max!r}",
            f"time {float(field.t)!r}",
            "names " + " ".join(field.names),
            "end",
            "",
        ]
    )
    try:
        with open(path, "wb") as stream:
            stream.write(header.encode("ascii"))
            stream.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())
    except OSError as error:
        raise OutputError(f"Cannot write {str(path)!r}: {error}") from error
    return Path(path)


def read_field_bin(path: Path) -> Field2D:
    """
    Read a field written by write_field_bin.
    """
    try:
        with open(path, "rb") as stream:
            header: Dict[str, List[str]] = {}
            magic = stream.readline().decode("ascii").strip()
            if magic != BIN_MAGIC:
                raise OutputError(f"{str(path)!r} is not a {BIN_MAGIC} file.")
            while True:
                line = stream.readline().decode("ascii").strip()
                if not line:
                    raise OutputError(f"{str(path)!r} has a truncated header.")
                if line == "end":
                    break
                key, *items = line.split()
                header[key] = items
            payload = stream.read()
    except OSError as error:
        raise OutputError(f"Cannot read {str(path)!r}: {error}") from error
    n_vars, n_x, n_y = (int(item) for item in header["shape"])
    x_min, x_max, y_min, y_max = (float(item) for item in header["bounds"])
    values = np.frombuffer(payload, dtype="<f8")
    if values.size != n_vars * n_x * n_y:
        raise OutputError(f"{str(path)!r} holds {values.size} values, header announces {n_vars * n_x * n_y}.")
    grid = build_grid_2d(x_min, x_max, y_min, y_max, n_x, n_y)
    return Field2D(grid, values.reshape(n_vars, n_x, n_y).copy(), float(header["time"][0]), header["names"])


def write_meta(spec: OutputSpec, metadata: Mapping[str, Any]) -> Path:
    """
    Write the <out>.meta.json sidecar.
    """
    try:
        with open(spec.meta_path, "w", encoding="utf-8") as stream:
            json.dump(_plain(dict(metadata)), stream, indent=2)
            stream.write("\n")
    except OSError as error:
        raise OutputError(f"Cannot write {str(spec.meta_path)!r}: {error}") from error
    return spec.meta_path


def write_artifact(
    spec: OutputSpec,
    records: Sequence[Mapping[str, Any]],
    metadata: Mapping[str, Any],
    header: Optional[Sequence[str]] = None,
    field: Optional[Field2D] = None,
) -> List[Path]:
    """
    Write an artefact in the requested format plus its metadata sidecar.
    :param spec: Path, format and artefact kind.
    :param records: Table rows (csv and json).
    :param metadata: Run description.
    :param header: CSV column order.
    :param field: 2D field, required by the bin format.
    :return: The written paths.
    """
    if spec.format == "bin":
        if field is None:
            raise OutputError("Binary output needs a 2D field.")
        written = write_field_bin(spec.path, field)
    elif spec.format == "json":
        written = write_json(spec.path, records, metadata)
    else:
        written = write_csv(spec.path, records, header)
    return [written, write_meta(spec, metadata)]


__all__ = [
    "BIN_MAGIC",
    "CSV_DIGITS",
    "columns_to_records",
    "write_csv",
    "read_csv",
    "read_csv_columns",
    "write_json",
    "read_json",
    "write_field_bin",
    "read_field_bin",
    "write_meta",
    "write_artifact",
]
