# File: core/utils/fixtures.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from pathlib import Path

import yaml
from django.conf import settings

from core.exceptions import SgcnnError


def get_fixture_path(filename):
    """Resolve a fixture file inside the configured fixtures directory."""
    return Path(settings.SGCNN_FIXTURES_DIR) / filename


def load_yaml(file_path) -> dict:
    file_path = Path(file_path)
    if not file_path.exists():
        raise SgcnnError(f"YAML file not found: {file_path}")
    return yaml.safe_load(file_path.read_text(encoding="utf-8")) or {}
