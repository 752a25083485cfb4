import os
from pathlib import Path

import psutil

DEFAULT_CACHE = "particover-cache.jsonl"
DEFAULT_BUDGET_SECONDS = 60.0
DEFAULT_MAX_NODES = 50_000_000
DEFAULT_MAX_ORDER = 1000

_NUMERIC = {
    "PARTICOVER_BUDGET_SECONDS": float,
    "PARTICOVER_MAX_NODES": int,
    "PARTICOVER_THREADS": int,
    "PARTICOVER_MAX_ORDER": int,
}


def validate_environment(additional_required: list[str] = None):
    """Validate the toolkit's environment variables.

    Every PARTICOVER_* numeric variable that is set must parse and be
    positive; LOG_DIR must not point at a file.

    Args:
        additional_required: Optional list of env vars that must be present
    """
    problems = []
    for var, kind in _NUMERIC.items():
        raw = os.environ.get(var)
        if raw is None:
            continue
        try:
            ok = kind(raw) > 0
        except ValueError:
            ok = False
        if not ok:
            problems.append(f"{var}={raw!r}")

    log_dir = os.environ.get("LOG_DIR")
    if log_dir and Path(log_dir).is_file():
        problems.append(f"LOG_DIR={log_dir!r} (is a file)")

    missing = [var for var in additional_required or [] if var not in os.environ]
    if missing:
        problems.append(f"missing {missing}")

    if problems:
        raise ValueError(f"Invalid environment variables: {problems}")


def get_cache_path() -> Path:
    return Path(os.environ.get("PARTICOVER_CACHE", DEFAULT_CACHE))


def get_budget_seconds() -> float:
    return float(os.environ.get("PARTICOVER_BUDGET_SECONDS", DEFAULT_BUDGET_SECONDS))


def get_max_nodes() -> int:
    return int(os.environ.get("PARTICOVER_MAX_NODES", DEFAULT_MAX_NODES))


def get_threads() -> int:
    """Solver threads; defaults to the available CPU count."""
    if "PARTICOVER_THREADS" in os.environ:
        return int(os.environ["PARTICOVER_THREADS"])
    return psutil.cpu_count() or 1


def get_max_order() -> int:
    return int(os.environ.get("PARTICOVER_MAX_ORDER", DEFAULT_MAX_ORDER))


def get_run_id():
    return os.environ.get('RUN_ID', 'unknown')
