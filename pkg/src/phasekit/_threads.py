"""Worker-count control: PHASEKIT_THREADS caps parallel slice evaluation."""

import os

__all__ = ["worker_count"]


def worker_count():
    """Positive thread cap from PHASEKIT_THREADS (default 1, serial)."""
    raw = os.environ.get("PHASEKIT_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"PHASEKIT_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"PHASEKIT_THREADS must be a positive integer, got {raw!r}")
    return value
