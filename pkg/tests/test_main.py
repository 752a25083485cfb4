import pytest

from main import build_parser, main
from particover_utils import load_records, save_certificate
from search.constructions import elementary_abelian_partition


def test_compute(capsys):
    assert main(["compute", "C2^2", "--no-cache"]) == 0
    out = capsys.readouterr().out
    assert "=== C2^2 (order 4) ===" in out
    assert "sigma = 3 (formula), rho = 3 (formula)" in out
    assert len(load_records()) == 1


def test_compute_rho_only():
    assert main(["compute", "S3", "--rho"]) == 0
    [record] = load_records()
    assert record["sigma"] is None
    assert record["rho"] == 4


@pytest.mark.parametrize("text", ["C3^", "D7", "PSL2(6)"])
def test_bad_spec_is_a_usage_error(text, capsys):
    assert main(["compute", text]) == 2
    assert "Error:" in capsys.readouterr().out


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(["factor", "S4"])
    assert info.value.code == 2


def test_invalid_environment(monkeypatch):
    monkeypatch.setenv("PARTICOVER_THREADS", "0")
    assert main(["subgroups", "S3"]) == 2


def test_exact_only_interval_exits_one(capsys):
    assert main(["compute", "Sz(8)", "--exact-only"]) == 1
    assert "only known as an interval" in capsys.readouterr().out


def test_subgroups(capsys):
    assert main(["subgroups", "S3"]) == 0
    out = capsys.readouterr().out
    assert "6 subgroups" in out
    assert "order     3, index 2 (normal)" in out


def test_verify(tmp_path):
    cert = elementary_abelian_partition(2, 3)
    path = save_certificate(cert.digest(), cert.id_lists(), tmp_path / "results.jsonl")
    assert main(["verify", "C2^3", str(path)]) == 0
    assert main(["verify", "C3^2", str(path)]) == 1


def test_verify_missing_file(tmp_path):
    assert main(["verify", "C2^3", str(tmp_path / "missing.cert")]) == 1


def test_crosscheck_defaults_to_order_100():
    args = build_parser().parse_args(["crosscheck"])
    assert args.max_order == 100
    assert build_parser().parse_args(["crosscheck", "--max-order", "24"]).max_order == 24
