import pytest

from harness.table import PUBLISHED_VALUES, PublishedValue, _method_for, build_table, cmd_table
from particover_utils import load_parquet


def _row(table, spec, quantity):
    rows = [r for r in table.to_pylist() if r["spec"] == spec and r["quantity"] == quantity]
    assert len(rows) == 1
    return rows[0]


def test_published_table_has_no_failures(tmp_path, budget, capsys):
    output = tmp_path / "published.parquet"
    assert cmd_table(solver_max_order=12, budget=budget, output=output) == 0
    assert "0 FAIL" in capsys.readouterr().out

    table = load_parquet(output)
    assert table.num_rows == len(PUBLISHED_VALUES)
    assert set(table.column("status").to_pylist()) <= {"PASS", "INTERVAL"}

    psl9 = _row(table, "PSL2(9)", "rho")
    assert (psl9["status"], psl9["lower"], psl9["upper"]) == ("INTERVAL", 20, 82)
    assert psl9["method"] == "construction"

    assert _row(table, "C2^3", "rho")["status"] == "PASS"
    assert _row(table, "C2^3", "rho")["method"] == "solver"
    assert _row(table, "PSL2(7)", "rho")["method"] == "construction"
    assert _row(table, "S4", "sigma")["method"] == "formula"
    assert _row(table, "Sz(8)", "rho_lower")["computed"] == "2143"


def test_solver_rows_fall_back_above_the_order_limit():
    assert _method_for(PublishedValue("PGL2(5)", "rho", 26, "solver"), 60) == "construction"
    assert _method_for(PublishedValue("PGL2(5)", "rho", 26, "solver"), 120) == "solver"
    assert _method_for(PublishedValue("D30", "rho", 16, "solver"), 12) == "formula"
    assert _method_for(PublishedValue("PSL2(8)", "sigma", 36, "formula"), 1000) == "formula"


def test_published_rows_are_unique():
    keys = [(row.spec, row.quantity) for row in PUBLISHED_VALUES]
    assert len(keys) == len(set(keys))


@pytest.mark.slow
def test_published_table_with_default_solver_limit(budget):
    table = build_table(budget=budget)
    assert "FAIL" not in table.column("status").to_pylist()
