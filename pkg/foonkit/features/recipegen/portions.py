"""Portion tables: ``name<TAB>portion`` lines, or a JSON object of the same pairs."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict

from foonkit.errors import FoonkitError
from foonkit.logging import get_logger

from .models import PortionTable

logger = get_logger()


def parse_portions(text: str) -> PortionTable:
    entries: Dict[str, str] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, sep, portion = line.partition("\t")
        if not sep or not portion.strip():
            logger.warning("[PORTIONS] line %s has no portion column, skipped", line_number)
            continue
        entries[name] = portion
    return PortionTable(entries)


def load_portions(path: Path) -> PortionTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FoonkitError(f"cannot read portion table {path}: {exc}") from exc
    if path.suffix.lower() != ".json":
        return parse_portions(text)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FoonkitError(f"portion table {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise FoonkitError(f"portion table {path} must be a JSON object")
    return PortionTable({str(name): str(portion) for name, portion in raw.items()})


__all__ = ["parse_portions", "load_portions"]
