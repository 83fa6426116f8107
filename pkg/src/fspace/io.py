"""Deterministic CSV, plot-data and JSON writers with atomic replacement."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .params import format_exponent

CSV_VERSION = "fspace-csv/1"
PLOT_VERSION = "fspace-plot/1"


def format_value(value) -> str:
    """Stable text for one cell: exact rationals as ``a/b``, floats with 12 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_exponent(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def render_csv(columns: Sequence[str], rows: Iterable[Sequence], meta: dict | None = None, version: str = CSV_VERSION) -> str:
    """CSV text (RFC 4180 quoting, ``\\r\\n`` line ends) preceded by one ``#`` version line."""
    buf = io.StringIO(newline="")
    tags = " ".join(f"{k}={format_value(v)}" for k, v in (meta or {}).items())
    buf.write(f"# {version}{' ' + tags if tags else ''}\r\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def atomic_write(path: str | os.PathLike, text: str) -> Path:
    """Write UTF-8 ``text`` to a sibling temporary file and rename it over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_outputs(files: dict[str, str], out_dir: str | os.PathLike) -> list[Path]:
    """Write every rendered file, only after all of them have been produced."""
    return [atomic_write(Path(out_dir) / name, text) for name, text in files.items()]


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=format_value) + "\n"
