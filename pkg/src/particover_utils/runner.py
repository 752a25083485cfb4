#!/usr/bin/env python3
"""
Supervisor for long toolkit runs.

Runs the CLI as a child process, tees its output into output.log, samples the
child's memory with psutil into memory.csv and records the outcome in runs.csv.
On a nonzero exit the tail of the output is kept as error.txt.

Usage:
    python -m particover_utils.runner table
    python -m particover_utils.runner compute "PSL2(7)" --rho --budget-seconds 7200
"""

import csv
import os
import signal
import subprocess
import sys
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from zoneinfo import ZoneInfo

import psutil

from . import debug

EXIT_STATUS = {
    0: ("completed", "Run completed successfully"),
    1: ("failed-check", "Run reported FAIL cells or a consistency error (exit code 1)"),
    2: ("usage", "Run rejected its arguments (exit code 2)"),
    137: ("oom", "Run killed by OOM (exit code 137)"),
    143: ("timeout", "Run terminated by SIGTERM (exit code 143)"),
}

MEMORY_FIELDS = ["timestamp", "rss_mb", "vms_mb", "pct"]


@dataclass(frozen=True)
class RunOutcome:
    exit_code: int
    status: str
    log_dir: Path
    peak_rss_mb: float


class MemoryProfiler:
    """Samples RSS/VMS of a child process tree into memory.csv."""

    def __init__(self, pid: int, log_dir: Path, interval: float = 10.0):
        self.pid = pid
        self.log_file = log_dir / "memory.csv"
        self.interval = interval
        self.peak_rss_mb = 0.0
        self._stop = threading.Event()
        self._thread = None

    def start(self):
        with open(self.log_file, 'w', newline='') as f:
            csv.writer(f).writerow(MEMORY_FIELDS)
        self._thread = threading.Thread(target=self._sample_loop, daemon=True)
        self._thread.start()

    def stop(self):
        self._stop.set()
        if self._thread:
            self._thread.join(timeout=2)

    def _sample(self, process: psutil.Process) -> list:
        info = process.memory_info()
        rss, vms, pct = info.rss, info.vms, process.memory_percent()
        for child in process.children(recursive=True):
            try:
                child_info = child.memory_info()
            except (psutil.NoSuchProcess, psutil.AccessDenied):
                continue
            rss += child_info.rss
            vms += child_info.vms
        rss_mb = round(rss / 1024 / 1024, 1)
        self.peak_rss_mb = max(self.peak_rss_mb, rss_mb)
        return [datetime.now().isoformat(), rss_mb, round(vms / 1024 / 1024, 1), round(pct, 1)]

    def _sample_loop(self):
        try:
            process = psutil.Process(self.pid)
        except psutil.NoSuchProcess:
            return
        while not self._stop.is_set():
            try:
                row = self._sample(process)
            except (psutil.NoSuchProcess, psutil.AccessDenied):
                break
            with open(self.log_file, 'a', newline='') as f:
                csv.writer(f).writerow(row)
            self._stop.wait(self.interval)


def write_error_log(log_dir: Path, exit_code: int, output_file: Path, tail_lines: int = 100):
    """Write the last N lines of output as error.txt."""
    lines = output_file.read_text().splitlines(keepends=True) if output_file.exists() else []
    tail = lines[-tail_lines:]
    with open(log_dir / "error.txt", 'w') as f:
        f.write(f"Exit code: {exit_code}\n")
        if not tail:
            f.write("No output captured.\n")
            return
        f.write(f"Last {len(tail)} lines of output:\n")
        f.write("-" * 60 + "\n")
        f.writelines(tail)


def _child_env(log_dir: Path) -> dict:
    # src on PYTHONPATH so the child resolves 'main' and the toolkit packages
    env = os.environ.copy()
    env["LOG_DIR"] = str(log_dir)
    src_path = str(Path(__file__).resolve().parent.parent)
    env["PYTHONPATH"] = src_path + (os.pathsep + env["PYTHONPATH"] if env.get("PYTHONPATH") else "")
    return env


def supervise(args: list[str], log_dir: Path, interval: float = 10.0) -> RunOutcome:
    """Run `main <args>` as a child, teeing output and profiling memory under log_dir."""
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    command = " ".join(args)
    debug.log_run_start(command=command)

    output_file = log_dir / "output.log"
    with open(output_file, 'w') as log_f:
        process = subprocess.Popen(
            [sys.executable, "-m", "main", *args],
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            env=_child_env(log_dir),
            text=True,
            bufsize=1,
        )
        profiler = MemoryProfiler(process.pid, log_dir, interval)
        profiler.start()
        try:
            for line in process.stdout:
                sys.stdout.write(line)
                sys.stdout.flush()
                log_f.write(line)
        except KeyboardInterrupt:
            print("\nInterrupted, terminating child...")
            process.terminate()
        exit_code = process.wait()
    profiler.stop()
    if exit_code < 0:
        exit_code = 128 - exit_code

    status, message = EXIT_STATUS.get(exit_code, ("failed", f"Run failed with exit code {exit_code}"))
    print(message)
    if exit_code == 0:
        debug.log_run_end(status=status, command=command)
    else:
        write_error_log(log_dir, exit_code, output_file)
        debug.log_run_end(status=status, error=message, command=command)
    return RunOutcome(exit_code, status, log_dir, profiler.peak_rss_mb)


def main(argv: list[str] = None) -> int:
    args = sys.argv[1:] if argv is None else argv

    run_id = os.environ.get('RUN_ID', datetime.now(ZoneInfo('UTC')).strftime('particover-%Y%m%d-%H%M%S'))
    os.environ['RUN_ID'] = run_id
    log_dir = Path(os.environ.get('LOG_DIR') or Path("logs") / run_id)
    os.environ['LOG_DIR'] = str(log_dir)

    print(f"Starting particover (RUN_ID: {run_id})")
    print(f"Log directory: {log_dir}")
    print("-" * 60)

    def handle_sigterm(signum, frame):
        raise KeyboardInterrupt

    signal.signal(signal.SIGTERM, handle_sigterm)
    outcome = supervise(args, log_dir)
    print("-" * 60)
    print(f"Peak RSS: {outcome.peak_rss_mb} MB")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
