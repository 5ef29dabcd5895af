"""Runtime limits and worker configuration."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_VERTEX_LIMIT = 1 << 22
DEFAULT_REALIZE_LIMIT = 4096


@dataclass(frozen=True)
class Limits:
    vertices: int = DEFAULT_VERTEX_LIMIT
    realize_vertices: int = DEFAULT_REALIZE_LIMIT


def worker_count(default: int = 1) -> int:
    """Number of sweep workers; ``MGRAPH_THREADS`` overrides ``default``."""
    raw = os.environ.get("MGRAPH_THREADS")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return max(1, value)
