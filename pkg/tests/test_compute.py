import json

import pytest

from algebra.errors import ConsistencyError
from harness import __version__
from harness.certify import cmd_verify
from harness.compute import InexactResult, ResultRecord, cmd_compute, compute_report, construction_for
from harness.spec import build_group, parse_spec
from particover_utils import certificate_path, load_certificate, load_records
from search.branch import SearchBudget


@pytest.fixture
def small_budget():
    return SearchBudget(max_nodes=2_000, max_seconds=5.0, threads=1)


def test_compute_symmetric_four(tmp_path, budget):
    cache = tmp_path / "results.jsonl"
    record = cmd_compute("S4", budget=budget, cache_path=cache)
    assert record.spec == "S4"
    assert record.order == 24
    assert (record.sigma, record.rho) == (4, 10)
    assert (record.sigma_source, record.rho_source) == ("formula", "formula")
    assert record.version == __version__

    cert_file = certificate_path(record.cert_digest, cache)
    assert cert_file.exists()
    assert len(load_certificate(cert_file)) == 10
    assert cmd_verify("S4", cert_file)

    stored = [json.loads(line) for line in cache.read_text().splitlines()]
    assert stored == [record.to_dict()]


def test_second_compute_hits_the_cache(tmp_path, budget, capsys):
    cache = tmp_path / "results.jsonl"
    first = cmd_compute("S4", budget=budget, cache_path=cache)
    second = cmd_compute("S4", budget=budget, cache_path=cache)
    assert second == first
    assert "Cached" in capsys.readouterr().out
    assert len(load_records(cache)) == 1


def test_no_cache_recomputes(tmp_path, budget):
    cache = tmp_path / "results.jsonl"
    cmd_compute("C3^2", budget=budget, cache_path=cache)
    cmd_compute("C3^2", budget=budget, cache_path=cache, use_cache=False)
    assert len(load_records(cache)) == 2


def test_partial_record_is_not_reused_for_the_other_value(tmp_path, budget):
    cache = tmp_path / "results.jsonl"
    first = cmd_compute("S3", want_rho=False, budget=budget, cache_path=cache)
    assert first.rho is None
    second = cmd_compute("S3", budget=budget, cache_path=cache)
    assert (second.sigma, second.rho) == (4, 4)
    assert len(load_records(cache)) == 2


def test_cyclic_group(tmp_path, budget):
    cache = tmp_path / "results.jsonl"
    record = cmd_compute("C6", budget=budget, cache_path=cache)
    assert (record.sigma, record.rho) == ("inf", "none")
    assert record.cert_digest == ""
    assert not list(tmp_path.glob("*.cert"))


def test_suzuki_group_is_an_interval(tmp_path):
    record = cmd_compute("Sz(8)", cache_path=tmp_path / "results.jsonl")
    assert record.order == 29120
    assert record.sigma == 2080
    assert record.rho == "[2143,4161]"
    assert record.rho_source == "construction-upper"
    assert record.cert_digest == ""


def test_exact_only_refuses_intervals(tmp_path):
    with pytest.raises(InexactResult):
        cmd_compute("Sz(8)", exact_only=True, cache_path=tmp_path / "results.jsonl")
    record = cmd_compute("Sz(8)", want_rho=False, exact_only=True, cache_path=tmp_path / "results.jsonl")
    assert record.sigma == 2080


def test_formula_disagreeing_with_solver_is_fatal(monkeypatch, budget):
    monkeypatch.setattr("harness.compute.rho_formula", lambda spec, G=None: 11)
    with pytest.raises(ConsistencyError):
        compute_report(parse_spec("S4"), want_sigma=False, budget=budget)


def test_formula_value_survives_an_exhausted_search(tmp_path, small_budget):
    record = cmd_compute("PSL2(7)", want_sigma=False, budget=small_budget,
                         cache_path=tmp_path / "results.jsonl")
    assert record.rho == 50
    assert record.rho_source == "formula"
    assert record.sigma is None


def test_large_group_skips_the_solver(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("PARTICOVER_MAX_ORDER", "100")
    record = cmd_compute("PSL2(7)", cache_path=tmp_path / "results.jsonl")
    assert (record.sigma, record.rho) == (15, 50)
    assert "solver skipped" in capsys.readouterr().out


def test_constructions_match_the_built_group():
    for text, size in [("C2^3", 5), ("AGL1(7,3)", 8), ("PGL2(5)", 26), ("AGL1(5,4)", 6)]:
        spec = parse_spec(text)
        cert = construction_for(spec, build_group(spec), 1000)
        assert cert is not None and cert.size == size
    for text in ("C12", "PSL2(5)", "S4"):
        assert construction_for(parse_spec(text), build_group(parse_spec(text)), 1000) is None


def test_result_record_round_trip():
    record = ResultRecord(spec="S4", order=24, sigma=4, rho=10, sigma_source="formula",
                          rho_source="solver-exact", cert_digest="ab", version="0.1.0", seconds=0.5)
    assert ResultRecord.from_dict(json.loads(json.dumps(record.to_dict()))) == record
