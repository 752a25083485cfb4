import math

import pytest

from algebra.constructors import (agl1_frobenius, alternating, cyclic, dihedral, direct_product,
                                  elementary_abelian, psl2, symmetric)
from algebra.errors import ConsistencyError, HypothesisError, NotSolvableError
from harness.spec import build_group, parse_spec
from theory.formulas import (Estimate, SigmaRhoReport, frobenius_rho_agreement, ht_rho,
                             ht_sigma_equals_rho, linear_partition_size, main_theorem_predicate,
                             nilpotent_sigma, rho_formula, sigma_formula, sigma_psl_formula,
                             suzuki_report, tomkinson_sigma)


@pytest.mark.parametrize("factory,expected", [
    (lambda: elementary_abelian(3, 2), 4),
    (lambda: symmetric(4), 4),
    (lambda: dihedral(12), 3),
    (lambda: dihedral(30), 4),
    (lambda: alternating(4), 5),
    (lambda: agl1_frobenius(9, 2), 4),
])
def test_tomkinson_sigma(factory, expected):
    assert tomkinson_sigma(factory()) == expected


def test_tomkinson_sigma_hypotheses():
    with pytest.raises(HypothesisError):
        tomkinson_sigma(cyclic(6))
    with pytest.raises(NotSolvableError):
        tomkinson_sigma(psl2(5))


@pytest.mark.parametrize("factory,expected", [
    (lambda: elementary_abelian(2, 3), 3),
    (lambda: direct_product(cyclic(4), elementary_abelian(3, 2)), 4),
    (lambda: elementary_abelian(5, 2), 6),
    (lambda: dihedral(8), 3),
])
def test_nilpotent_sigma(factory, expected):
    assert nilpotent_sigma(factory()) == expected


def test_nilpotent_sigma_hypotheses():
    with pytest.raises(HypothesisError):
        nilpotent_sigma(symmetric(3))
    with pytest.raises(HypothesisError):
        nilpotent_sigma(cyclic(9))


@pytest.mark.parametrize("q,variant,expected", [
    (7, "PSL", 15), (8, "PSL", 36), (7, "PGL", 29), (5, "PSL", 10), (9, "PSL", 16),
    (4, "PSL", 10), (11, "PSL", 67), (5, "PGL", 16), (16, "PSL", 136),
])
def test_sigma_psl_formula(q, variant, expected):
    assert sigma_psl_formula(q, variant) == expected


@pytest.mark.parametrize("q,variant", [(3, "PSL"), (6, "PSL"), (2, "PGL"), (7, "SL")])
def test_sigma_psl_formula_out_of_range(q, variant):
    with pytest.raises(HypothesisError):
        sigma_psl_formula(q, variant)


@pytest.mark.parametrize("text,expected", [
    ("C2^2", 3), ("C7", math.inf), ("C3^1", math.inf), ("D12", 3), ("S4", 4), ("S5", 16),
    ("A5", 10), ("PSL2(3)", 5), ("PGL2(3)", 4), ("PSL2(7)", 15), ("PGL2(8)", 36),
    ("Sz(8)", 2080), ("AGL1(7,3)", 8), ("AGL1(9,2)", None),
])
def test_sigma_formula_by_family(text, expected):
    assert sigma_formula(parse_spec(text)) == expected


def test_sigma_formula_falls_back_to_the_group():
    spec = parse_spec("C5 x C3^2")
    assert sigma_formula(spec) is None
    assert sigma_formula(spec, build_group(spec)) == 4
    spec = parse_spec("S3 x C3")
    assert sigma_formula(spec, build_group(spec)) == 4
    spec = parse_spec("A5 x C2")
    assert sigma_formula(spec, build_group(spec)) is None


@pytest.mark.parametrize("text,expected", [
    ("PGL2(3)", 10), ("C3^4", 10), ("PSL2(11)", 122), ("PSL2(9)", 82), ("PSL2(7)", 50),
    ("PGL2(5)", 26), ("PSL2(4)", 17), ("PSL2(5)", 17), ("C2^2", 3), ("C2^3", 5), ("S4", 10),
    ("D30", 16), ("AGL1(9,4)", 10), ("C7", None), ("Sz(8)", None), ("AGL1(9,2)", None),
])
def test_rho_formula_by_family(text, expected):
    assert rho_formula(parse_spec(text)) == expected


@pytest.mark.parametrize("text,expected", [
    ("C2 x S3", 7),
    ("C5 x D10", None),
    ("S3 x C3", None),
    ("C3^2 x C2", None),
])
def test_rho_formula_structural_fallback(text, expected):
    spec = parse_spec(text)
    assert rho_formula(spec, build_group(spec)) == expected


def test_ht_rho():
    assert ht_rho(dihedral(12), 2) == 7
    assert ht_rho(dihedral(30), 2) == 16


def test_ht_rho_rejects_groups_outside_its_hypotheses():
    G = build_group(parse_spec("S3 x C3"))
    for p in (2, 3):
        with pytest.raises(HypothesisError):
            ht_rho(G, p)
    with pytest.raises(HypothesisError):
        ht_rho(symmetric(4), 2)
    with pytest.raises(HypothesisError):
        ht_rho(elementary_abelian(2, 2), 2)
    with pytest.raises(HypothesisError):
        ht_rho(alternating(4), 3)


def test_ht_sigma_equals_rho():
    assert ht_sigma_equals_rho(alternating(4), 3)
    assert not ht_sigma_equals_rho(dihedral(12), 2)
    assert not ht_sigma_equals_rho(dihedral(30), 2)
    with pytest.raises(HypothesisError):
        ht_sigma_equals_rho(symmetric(4), 2)


@pytest.mark.parametrize("factory,expected", [
    (lambda: elementary_abelian(5, 2), True),
    (lambda: elementary_abelian(2, 2), True),
    (lambda: agl1_frobenius(7, 3), True),
    (lambda: alternating(4), True),
    (lambda: symmetric(4), False),
    (lambda: dihedral(12), False),
    (lambda: dihedral(30), False),
    (lambda: elementary_abelian(2, 3), False),
    (lambda: agl1_frobenius(9, 2), False),
])
def test_main_theorem_predicate(factory, expected):
    assert main_theorem_predicate(factory()) is expected


def test_main_theorem_predicate_needs_partitionable_group():
    with pytest.raises(HypothesisError):
        main_theorem_predicate(cyclic(10))
    with pytest.raises(HypothesisError):
        main_theorem_predicate(direct_product(cyclic(4), cyclic(2)))


@pytest.mark.parametrize("m", range(1, 9))
def test_suzuki_identities(m):
    report = suzuki_report(m)
    assert report.q == 2 ** (2 * m + 1)
    assert report.torus_identity
    assert report.partition_identity
    assert report.rho_lower == report.sigma + report.q ** 2 - 1
    assert report.rho_lower > report.sigma
    assert report.ok


def test_suzuki_eight():
    report = suzuki_report(1)
    assert (report.q, report.r, report.order) == (8, 4, 29120)
    assert report.sigma == 2080
    assert report.rho_lower == 2143
    assert report.psi_size == 4161
    assert (report.q + report.r + 1) * (report.q - report.r + 1) == 65
    with pytest.raises(HypothesisError):
        suzuki_report(0)


@pytest.mark.parametrize("q,variant", [
    (4, "PSL"), (8, "PSL"), (7, "PSL"), (9, "PSL"), (11, "PSL"), (13, "PSL"), (5, "PGL"), (7, "PGL"), (4, "PGL"),
])
def test_linear_partition_size(q, variant):
    assert linear_partition_size(q, variant) == q * q + 1


def test_linear_partition_size_out_of_range():
    with pytest.raises(HypothesisError):
        linear_partition_size(5, "PSL")


@pytest.mark.parametrize("factory,target", [
    (lambda: agl1_frobenius(5, 4), 6),
    (lambda: alternating(4), 5),
    (lambda: dihedral(30), 16),
    (lambda: agl1_frobenius(9, 2), 10),
])
def test_frobenius_rho_agreement(factory, target, budget):
    agreement = frobenius_rho_agreement(factory(), budget)
    assert agreement.kernel_plus_one == target
    assert agreement.exact
    assert agreement.agree is (agreement.rho == target)


def test_frobenius_rho_agreement_needs_frobenius_group(budget):
    with pytest.raises(HypothesisError):
        frobenius_rho_agreement(symmetric(4), budget)


def test_estimate_rendering():
    assert str(Estimate(math.inf, "formula")) == "inf"
    assert str(Estimate(None, "solver-exact")) == "none"
    assert str(Estimate(None, "solver-interval", (14, 50))) == "[14,50]"
    assert Estimate(10, "formula").to_json() == 10
    assert Estimate(math.inf, "formula").to_json() == "inf"
    with pytest.raises(ValueError):
        Estimate(3, "guess")
    with pytest.raises(ConsistencyError):
        Estimate(None, "solver-interval", (9, 8))


def test_report_rejects_sigma_above_rho():
    spec = parse_spec("S4")
    SigmaRhoReport(spec, 24, Estimate(4, "formula"), Estimate(10, "formula")).check()
    with pytest.raises(ConsistencyError):
        SigmaRhoReport(spec, 24, Estimate(11, "formula"), Estimate(10, "formula")).check()


def test_tomkinson_fallback_respects_the_order_guard(monkeypatch):
    spec = parse_spec("S4 x S3")
    G = build_group(spec)
    assert sigma_formula(spec, G) == 3
    monkeypatch.setenv("PARTICOVER_MAX_ORDER", "100")
    assert sigma_formula(spec, G) is None
    nilpotent = parse_spec("C2^3 x C3^2")
    assert sigma_formula(nilpotent, build_group(nilpotent)) == 3
