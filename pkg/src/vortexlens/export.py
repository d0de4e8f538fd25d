"""CSV and JSON writers with a fixed, lossless number format.

Floats are written with 17 significant digits in scientific notation, rows
end with LF, and JSON keys are sorted, so identical inputs give
byte-identical files.
"""
from __future__ import annotations

import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import __version__


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.16e}"
    return str(v)


@dataclass
class Table:
    """A named table with column names and row tuples, plus free-form metadata."""

    name: str
    columns: Sequence[str]
    rows: List[tuple]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_value(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json_obj(self) -> dict:
        return {"name": self.name, "columns": list(self.columns),
                "rows": [[_jsonable(v) for v in row] for row in self.rows],
                "metadata": _jsonable(self.metadata)}


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        # JSON has no inf/nan; keep them as strings
        return v if math.isfinite(v) else format_value(v)
    return v


def run_metadata(command: str, parameters: dict, preset_id: Optional[str] = None) -> dict:
    from .presets import PRESET_TABLE_VERSION
    return {"program": "vortexlens", "version": __version__, "command": command,
            "preset_id": preset_id, "preset_table_version": PRESET_TABLE_VERSION,
            "parameters": _jsonable(parameters)}


def json_document(tables: Sequence[Table], metadata: dict) -> str:
    doc = {"metadata": _jsonable(metadata), "tables": [t.to_json_obj() for t in tables]}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_tables(tables: Sequence[Table], metadata: dict, out: Optional[str], *,
                 as_json: bool = False, stream=None, directory: bool = False) -> List[str]:
    """Write tables to ``out``.

    With ``directory`` the target is a folder receiving ``<name>.csv`` per
    table plus ``<command>_metadata.json`` (or one ``<command>.json`` in JSON
    mode).  Otherwise ``out`` is a single file, or the stream when None; in
    CSV mode only a single table is allowed there.
    """
    written = []
    if directory:
        os.makedirs(out, exist_ok=True)
        stem = metadata.get("command", "output")
        if as_json:
            path = os.path.join(out, f"{stem}.json")
            _write_text(path, json_document(tables, metadata))
            return [path]
        for t in tables:
            path = os.path.join(out, f"{t.name}.csv")
            _write_text(path, t.to_csv())
            written.append(path)
        meta = dict(metadata)
        meta["tables"] = {t.name: _jsonable(t.metadata) for t in tables}
        path = os.path.join(out, f"{stem}_metadata.json")
        _write_text(path, json.dumps(_jsonable(meta), sort_keys=True, indent=2) + "\n")
        written.append(path)
        return written
    if as_json:
        text = json_document(tables, metadata)
    else:
        text = "".join(t.to_csv() for t in tables)
    if out is None:
        stream.write(text)
        return []
    _write_text(out, text)
    return [out]
