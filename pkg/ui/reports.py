"""
Report Rendering

Reports are plain dictionaries carrying a versioned `schema` field. They are
emitted as canonical JSON (sorted keys, two-space indent) or as text tables
built with pandas.
"""

import json
from typing import Any, Dict, List

import pandas as pd

FORMATS = ("json", "dot", "text")


def to_json_text(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in value):
            return "(" + ",".join(str(v) for v in value) + ")"
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def _table(rows: List[Any]) -> str:
    if all(isinstance(r, dict) for r in rows):
        frame = pd.DataFrame([{k: _cell(v) for k, v in r.items()} for r in rows])
    else:
        frame = pd.DataFrame([[_cell(v) for v in r] if isinstance(r, (list, tuple)) else [_cell(r)] for r in rows])
    return frame.to_string(index=False)


def to_text(report: Dict[str, Any]) -> str:
    """Scalars as a key/value listing, then one table per list field."""
    scalars = {k: _cell(v) for k, v in sorted(report.items()) if not isinstance(v, list) or not v}
    sections = []
    if scalars:
        sections.append(pd.Series(scalars, dtype=object).to_string())
    for key, value in sorted(report.items()):
        if isinstance(value, list) and value:
            sections.append(f"[{key}]\n{_table(value)}")
    return "\n\n".join(sections) + "\n"


def render(report: Dict[str, Any], fmt: str = "json", dot: str = "") -> str:
    """
    Render a report in one of json, dot or text.

    Args:
        report: Report dictionary
        fmt: Output format
        dot: DOT text used when fmt is "dot"; reports without a diagram fall back to JSON
    """
    if fmt == "dot" and dot:
        return dot
    if fmt == "text":
        return to_text(report)
    return to_json_text(report)
