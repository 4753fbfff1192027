"""Environment-driven configuration."""

from __future__ import annotations

import os
from pathlib import Path


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, str(default)))
    except ValueError:
        return default


def _env_flag(name: str, default: str = "") -> bool:
    return os.environ.get(name, default).lower() in ("1", "true", "yes")


IDEAL_BOUND = _env_int("ALM_IDEAL_BOUND", 16)
PARTITION_BOUND = _env_int("ALM_PARTITION_BOUND", 8)
SEARCH_BOUND = _env_int("ALM_SEARCH_BOUND", 5)
PRODUCT_BOUND = _env_int("ALM_PRODUCT_BOUND", 64)

DEBUG = _env_flag("ALM_DEBUG")
DEBUG_LOG_PATH = Path(
    os.environ.get(
        "ALM_LOG_FILE", str(Path.home() / ".cache" / "alm-workbench" / "debug.log")
    )
)

OTEL_ENABLED = _env_flag("OTEL_ENABLED", "false")
OTEL_EXPORTER_ENDPOINT = os.environ.get("OTEL_EXPORTER_ENDPOINT", "http://localhost:4317")
