"""Deterministic report documents and delimited output.

Identical inputs must produce byte-identical files, so every float is
rendered in scientific notation with 12 significant digits, JSON keys keep
their insertion order, and CSV uses LF line endings with a fixed header.
The JSON writer is local because the stdlib encoder cannot format floats;
the grammar emitted is plain JSON.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from json import dumps as _quote
from pathlib import Path

SCHEMA_VERSION = "1"


def fmt(value) -> str:
    """Render one cell: floats as 12-significant-digit scientific notation."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.11e}"
    return str(value)


def json_text(obj, indent: int = 0) -> str:
    """Serialize dicts/lists/scalars to JSON with deterministic float format."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f"{inner}{_quote(str(k))}: {json_text(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{inner}{json_text(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return f"{obj:.11e}"
    if isinstance(obj, int):
        return str(obj)
    return _quote(str(obj))


@dataclass
class ReportDocument:
    """Structured result of one CLI command.

    provenance says where numbers came from: "analytic" (closed forms and
    certified roots), "oracle" (dense sampling, uncertified), or "both"
    (verification runs comparing the two).
    """

    command: str
    inputs: dict
    provenance: str
    results: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "provenance": self.provenance,
            "inputs": self.inputs,
            "results": self.results,
        }

    def to_json(self) -> str:
        return json_text(self.to_dict()) + "\n"


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def write_csv(path: Path, header: list[str], rows) -> None:
    """Comma-separated, header row, LF endings, deterministic cell formats."""
    lines = [",".join(header)]
    lines.extend(",".join(fmt(cell) for cell in row) for row in rows)
    write_text(path, "\n".join(lines) + "\n")
