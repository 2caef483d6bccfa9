# File: core/utils/formatting.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from __future__ import annotations
from typing import Iterable, List

import tablib

# Every float written to CSV/stdout uses this many significant digits
SIGNIFICANT_DIGITS = 17


def format_float(value) -> str:
    """
    Render a number with 17 significant digits.

    Examples:
        >>> format_float(0.1)
        '0.10000000000000001'
        >>> format_float(3)
        '3'
        >>> format_float(float("nan"))
        'nan'
    """
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return f"{float(value):.{SIGNIFICANT_DIGITS}g}"


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "pass" if value else "FAIL"
    if isinstance(value, (int, float)) or hasattr(value, "dtype"):
        return format_float(value.item() if hasattr(value, "item") else value)
    return str(value)


def build_dataset(headers: List[str], rows: Iterable[Iterable]) -> tablib.Dataset:
    """Dataset with every cell pre-formatted, so CSV output is byte-stable."""
    data = tablib.Dataset(headers=list(headers))
    for row in rows:
        data.append([format_cell(v) for v in row])
    return data


def export_csv(data: tablib.Dataset) -> str:
    # tablib writes \r\n; normalise for reproducible files across platforms
    return data.export("csv").replace("\r\n", "\n")
