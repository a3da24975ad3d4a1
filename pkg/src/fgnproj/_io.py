"""CSV/JSON serialization shared by the analysis module and the CLI.

CSV: header row, comma separator, '.' decimal point, LF line endings.
JSON: ``{"meta": {...}, "rows": [...]}`` with full-precision floats.
"""
from importlib import resources
import json


def fmt_fixed(x, decimals=6):
    s = f"{x:.{decimals}f}"
    if s.startswith("-") and float(s) == 0.0:
        s = s[1:]
    return s


def fmt_raw(x):
    return f"{x:.17g}"


def fmt_short(x, decimals=6):
    """Fixed rounding with trailing zeros stripped (``1.000000`` -> ``1``)."""
    s = fmt_fixed(x, decimals)
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def format_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if c is None else str(c) for c in row))
    return "\n".join(lines) + "\n"


def parse_csv(text):
    """Return ``(header, rows)``; empty cells become None, others stay strings."""
    lines = text.rstrip("\n").split("\n")
    header = lines[0].split(",")
    rows = [[c if c != "" else None for c in line.split(",")] for line in lines[1:]]
    return header, rows


def format_json(meta, rows):
    return json.dumps({"meta": meta, "rows": rows}, indent=None, separators=(",", ":")) + "\n"


def decimals_of(cell):
    return len(cell.split(".", 1)[1]) if "." in cell else 0


def golden_text(name):
    return resources.files("fgnproj").joinpath("data", "golden", name).read_text()
