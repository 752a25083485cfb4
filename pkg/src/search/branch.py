"""Depth-first branch and bound with a shared incumbent and a node/time budget.

Subclasses describe the tree; `BranchAndBound.run` explores it. The first two
levels are expanded up front and the resulting subtrees are searched either
in order (one thread, the reference for certificate determinism) or on a
thread pool sharing the incumbent.
"""
from __future__ import annotations

import itertools
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Generic, Iterable, TypeVar

from particover_utils import get_budget_seconds, get_max_nodes, get_threads

Node = TypeVar("Node")

FRONTIER_DEPTH = 2


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 50_000_000
    max_seconds: float = 60.0
    threads: int = 1

    def __post_init__(self):
        for name in ("max_nodes", "max_seconds", "threads"):
            if getattr(self, name) <= 0:
                raise ValueError(f"SearchBudget.{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_environment(cls, **overrides) -> "SearchBudget":
        values = {"max_nodes": get_max_nodes(), "max_seconds": get_budget_seconds(),
                  "threads": get_threads()}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Incumbent:
    """Best value and solution so far; only ever improves."""

    def __init__(self, value: float, solution: Any = None):
        self._lock = threading.Lock()
        self.value = value
        self.solution = solution

    def offer(self, value: float, solution: Any) -> bool:
        with self._lock:
            if value < self.value:
                self.value, self.solution = value, solution
                return True
            return False


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.started = time.monotonic()
        self.deadline = self.started + budget.max_seconds
        self._counter = itertools.count(1)
        self.nodes = 0
        self.exhausted = threading.Event()

    def tick(self):
        n = next(self._counter)
        self.nodes = n
        if self.exhausted.is_set():
            raise BudgetExhausted
        if n > self.budget.max_nodes or (n & 1023 == 0 and time.monotonic() > self.deadline):
            self.exhausted.set()
            raise BudgetExhausted

    @property
    def seconds(self) -> float:
        return time.monotonic() - self.started


@dataclass
class Outcome:
    value: float
    solution: Any
    exact: bool
    nodes: int
    seconds: float


class BranchAndBound(Generic[Node]):
    """Minimise `size(node)` over complete nodes of the tree under `root()`."""

    floor: float = 0

    def root(self) -> Node:
        raise NotImplementedError

    def complete(self, node: Node) -> bool:
        raise NotImplementedError

    def size(self, node: Node) -> int:
        raise NotImplementedError

    def bound(self, node: Node) -> float:
        """Lower bound on every completion of `node`."""
        raise NotImplementedError

    def branch(self, node: Node) -> Iterable[Node]:
        raise NotImplementedError

    # --- driver ---

    def _dfs(self, node: Node, incumbent: Incumbent, meter: _Meter, first_only: bool):
        meter.tick()
        if incumbent.value <= self.floor or (first_only and incumbent.solution is not None):
            return
        if self.complete(node):
            incumbent.offer(self.size(node), node)
            return
        if self.bound(node) >= incumbent.value:
            return
        for child in self.branch(node):
            self._dfs(child, incumbent, meter, first_only)

    def _frontier(self, node: Node, depth: int) -> list[Node]:
        if depth == 0 or self.complete(node):
            return [node]
        out = []
        for child in self.branch(node):
            out.extend(self._frontier(child, depth - 1))
        return out

    def run(self, incumbent: Incumbent, budget: SearchBudget, first_only: bool = False) -> Outcome:
        meter = _Meter(budget)
        exact = True
        tasks = self._frontier(self.root(), FRONTIER_DEPTH)

        def search(node):
            try:
                self._dfs(node, incumbent, meter, first_only)
            except BudgetExhausted:
                return False
            return True

        if budget.threads == 1 or len(tasks) == 1:
            for node in tasks:
                if not search(node):
                    exact = False
                    break
        else:
            with ThreadPoolExecutor(max_workers=budget.threads) as pool:
                exact = all(list(pool.map(search, tasks)))
        return Outcome(incumbent.value, incumbent.solution, exact, meter.nodes, meter.seconds)
