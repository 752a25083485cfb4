import os

import pytest

from search.branch import SearchBudget


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PARTICOVER_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set PARTICOVER_SLOW=1 to run long exact searches")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    monkeypatch.setenv("PARTICOVER_CACHE", str(tmp_path / "cache.jsonl"))
    monkeypatch.delenv("ENABLE_LOGGING", raising=False)
    monkeypatch.delenv("PARTICOVER_THREADS", raising=False)
    monkeypatch.delenv("PARTICOVER_MAX_ORDER", raising=False)


@pytest.fixture
def budget():
    return SearchBudget(max_nodes=20_000_000, max_seconds=120.0, threads=1)
