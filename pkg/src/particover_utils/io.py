"""Result cache, certificate sidecars and parquet export."""

import fcntl
import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path

import pyarrow as pa
import pyarrow.parquet as pq

from . import debug
from .environment import get_cache_path

RECORD_FIELDS = ("spec", "order", "sigma", "rho", "sigma_source", "rho_source",
                 "cert_digest", "version", "seconds")


# --- JSONL result cache ---

@contextmanager
def _locked(path: Path):
    lock_path = path.with_name(path.name + ".lock")
    with open(lock_path, "a") as lock:
        fcntl.flock(lock, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(lock, fcntl.LOCK_UN)


def _parse_line(line: str, lineno: int, path: Path) -> dict | None:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        record, reason = None, str(e)
    else:
        missing = [k for k in RECORD_FIELDS if not isinstance(record, dict) or k not in record]
        reason = f"missing fields {missing}" if missing else None
        if missing:
            record = None
    if record is None:
        print(f"Warning: skipping malformed cache line {lineno} in {path}: {reason}")
        debug.log_cache_event("skip", path=path, detail=f"line {lineno}: {reason}")
    return record


def load_records(path: Path = None) -> list[dict]:
    """All well-formed records in file order; malformed lines are skipped."""
    path = Path(path) if path else get_cache_path()
    if not path.exists():
        return []
    records = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            record = _parse_line(line, lineno, path)
            if record is not None:
                records.append(record)
    return records


def lookup_record(spec: str, version: str, path: Path = None) -> dict | None:
    """Latest record for (spec, version), or None on a miss."""
    path = Path(path) if path else get_cache_path()
    hit = None
    for record in load_records(path):
        if record["spec"] == spec and record["version"] == version:
            hit = record
    debug.log_cache_event("hit" if hit else "miss", spec=spec, path=path)
    return hit


def append_record(record: dict, path: Path = None) -> Path:
    """Append one record atomically: copy, extend, then os.replace."""
    missing = [k for k in RECORD_FIELDS if k not in record]
    if missing:
        raise ValueError(f"Record is missing fields: {missing}")
    path = Path(path) if path else get_cache_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    line = json.dumps({k: record[k] for k in RECORD_FIELDS}) + "\n"

    with _locked(path):
        existing = path.read_bytes() if path.exists() else b""
        if existing and not existing.endswith(b"\n"):
            existing += b"\n"
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(existing)
                f.write(line.encode("utf-8"))
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    debug.log_cache_event("append", spec=record["spec"], path=path)
    return path


# --- certificate sidecars ---

def certificate_path(digest: str, cache_path: Path = None) -> Path:
    cache_path = Path(cache_path) if cache_path else get_cache_path()
    return cache_path.parent / f"{digest}.cert"


def save_certificate(digest: str, members: list[list[int]], cache_path: Path = None) -> Path:
    """One member per line as sorted decimal element IDs."""
    path = certificate_path(digest, cache_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [" ".join(str(i) for i in sorted(ids)) for ids in members]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"  -> Certificate: Saved {path.name} ({len(members)} members)")
    return path


def load_certificate(path: Path) -> list[list[int]]:
    path = Path(path)
    members = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            members.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected decimal element IDs, got {line!r}") from None
    return members


# --- parquet ---

def save_parquet(data: pa.Table, path: Path, metadata: dict = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if metadata:
        existing = data.schema.metadata or {}
        existing[b'table_metadata'] = json.dumps(metadata).encode('utf-8')
        data = data.replace_schema_metadata(existing)
    pq.write_table(data, path)
    print(f"  -> Saved {path} ({data.num_rows:,} rows)")
    return path


def load_parquet(path: Path) -> pa.Table:
    return pq.read_table(path)
