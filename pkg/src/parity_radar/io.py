"""CSV tables and their JSON envelopes."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

SCHEMA_VERSION = 1


class OutputError(OSError):
    pass


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    if value is None:
        return ""
    return str(value)


def write_table(path: Path, columns: list[str], rows) -> Path:
    """Write an RFC 4180 CSV; floats use ``repr`` so output is locale free and exact."""
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_table(path: Path) -> tuple[list[str], list[list[str]]]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_envelope(path: Path, config: dict, columns: list[str], rows_file: str,
                   **extra) -> Path:
    doc = {"schema_version": SCHEMA_VERSION, "config": config, "columns": columns,
           "rows_file": rows_file}
    doc.update(extra)
    path = Path(path)
    try:
        path.write_text(json.dumps(doc, indent=2, sort_keys=False, allow_nan=True) + "\n",
                        encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def write_dataset(out_dir: Path, stem: str, config: dict, columns: list[str], rows,
                  **extra) -> tuple[Path, Path]:
    """``<stem>.csv`` plus its ``<stem>.json`` envelope inside ``out_dir``."""
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create {out_dir}: {exc.strerror or exc}") from exc
    csv_path = write_table(out_dir / f"{stem}.csv", columns, rows)
    json_path = write_envelope(out_dir / f"{stem}.json", config, columns, csv_path.name, **extra)
    return csv_path, json_path
