import os
import csv
from datetime import datetime
from pathlib import Path

from .environment import get_run_id

_log_dir = None
_run_timestamp = None


def _get_run_timestamp() -> str:
    global _run_timestamp
    if _run_timestamp is None:
        run_id = os.environ.get('RUN_ID', '')
        # run ids look like particover-YYYYMMDD-HHMMSS
        parts = run_id.rsplit('-', 2)
        if len(parts) >= 2 and len(parts[-2]) == 8 and len(parts[-1]) == 6:
            _run_timestamp = f"{parts[-2]}-{parts[-1]}"
        else:
            _run_timestamp = datetime.now().strftime('%Y%m%d-%H%M%S')
    return _run_timestamp


def _get_log_dir() -> Path:
    global _log_dir
    if _log_dir is None:
        # LOG_DIR is set by runner.py
        if os.environ.get('LOG_DIR'):
            _log_dir = Path(os.environ['LOG_DIR'])
        else:
            _log_dir = Path("logs") / _get_run_timestamp()
        _log_dir.mkdir(parents=True, exist_ok=True)
    return _log_dir


def _is_logging_enabled():
    return os.environ.get('ENABLE_LOGGING', '').lower() == 'true'


def _append_csv(filename: str, row: dict, fieldnames: list):
    if not _is_logging_enabled():
        return
    filepath = _get_log_dir() / filename
    file_exists = filepath.exists()
    with open(filepath, 'a', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames)
        if not file_exists:
            writer.writeheader()
        writer.writerow(row)


def log_search(kind, origin, order, value, exact, lower_bound, nodes, seconds, threads, **kwargs):
    _append_csv("searches.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "kind": kind,
        "origin": origin,
        "order": order,
        "value": value,
        "exact": exact,
        "lower_bound": lower_bound,
        "nodes": nodes,
        "seconds": round(seconds, 3),
        "threads": threads,
    }, ["timestamp", "run_id", "kind", "origin", "order", "value", "exact",
        "lower_bound", "nodes", "seconds", "threads"])


def log_cache_event(event, spec="", path="", detail=None):
    _append_csv("cache.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "event": event,
        "spec": spec,
        "path": str(path),
        "detail": detail or "",
    }, ["timestamp", "run_id", "event", "spec", "path", "detail"])


def log_run_start(command=""):
    _append_csv("runs.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "event": "start",
        "status": "",
        "command": command,
        "error": ""
    }, ["timestamp", "run_id", "event", "status", "command", "error"])


def log_run_end(status="completed", error=None, command=""):
    _append_csv("runs.csv", {
        "timestamp": datetime.now().isoformat(),
        "run_id": get_run_id(),
        "event": "end",
        "status": status,
        "command": command,
        "error": str(error) if error else ""
    }, ["timestamp", "run_id", "event", "status", "command", "error"])
