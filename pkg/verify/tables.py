# File: verify/tables.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from __future__ import annotations
from pathlib import Path
from typing import Iterable, List, Optional

from django.core.management.base import BaseCommand, CommandError

from core.utils.formatting import build_dataset, export_csv


def emit_table(command: BaseCommand, headers: List[str], rows: Iterable, out: Optional[str] = None) -> str:
    """CSV of row.cells() to `out`, or to the command's stdout when no path is given."""
    rows = list(rows)
    text = export_csv(build_dataset(headers, (row.cells() for row in rows)))
    if not out:
        command.stdout.write(text, ending="")
        return text
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"Cannot write {path}: {exc}", returncode=2) from exc
    command.stdout.write(command.style.SUCCESS(f"Wrote {len(rows)} rows to {path}"))
    return text
