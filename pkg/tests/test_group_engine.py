import itertools
from collections import Counter

import numpy as np
import pytest
from sympy import divisor_count, divisor_sigma

from algebra.constructors import (agl1_frobenius, alternating, cyclic, dihedral, direct_product,
                                  elementary_abelian, pgl2, psl2, symmetric)
from algebra.errors import GuardExceeded, NotSolvableError
from algebra.group import Subgroup
from algebra.lattice import (all_subgroups, center, conjugacy_classes, conjugate, conjugates,
                             derived_subgroup, generate, is_normal, is_subgroup, lift,
                             maximal_subgroups, normalizer, project, quotient)
from algebra.structure import (PARTITION_TAGS, S4_ORDER_PROFILE, Partitionability, all_chief_series,
                               chief_series, complement_count_invariance_check, complements,
                               derived_series, intersection,
                               frobenius_witness, hughes_subgroup, hughes_thompson_prime,
                               is_abelian, is_cyclic, is_nilpotent, is_partitionable, is_solvable,
                               minimal_normal_subgroups, sylow_subgroup)
from harness.catalog import catalog
from harness.spec import build_group, group_order, parse_spec


def test_orders_of_standard_families():
    assert symmetric(4).order == 24
    assert alternating(5).order == 60
    assert dihedral(12).order == 12
    assert elementary_abelian(3, 3).order == 27
    assert agl1_frobenius(9, 4).order == 36
    assert psl2(7).order == 168
    assert psl2(8).order == 504
    assert pgl2(5).order == 120
    assert direct_product(cyclic(4), symmetric(3)).order == 24


def test_closure_guard():
    with pytest.raises(GuardExceeded):
        symmetric(7)


def test_multiplication_applies_left_factor_first():
    G = symmetric(3)
    a, b = G.index_of((1, 0, 2)), G.index_of((0, 2, 1))
    assert G.labels[G.mul(a, b)] == (2, 0, 1)


def test_inverses_and_powers():
    G = symmetric(4)
    for g in range(G.order):
        assert G.mul(g, G.inv(g)) == 0
        assert G.power(g, G.element_orders[g]) == 0
    assert Counter(G.element_orders) == S4_ORDER_PROFILE


def test_builds_are_deterministic():
    assert psl2(5).fingerprint() == psl2(5).fingerprint()


@pytest.mark.parametrize("factory,count", [
    (lambda: symmetric(4), 30),
    (lambda: alternating(4), 10),
    (lambda: psl2(5), 59),
    (lambda: elementary_abelian(2, 3), 16),
    (lambda: dihedral(8), 10),
    (lambda: cyclic(12), 6),
])
def test_subgroup_counts(factory, count):
    subgroups = all_subgroups(factory())
    assert len(subgroups) == count
    assert subgroups == sorted(subgroups, key=Subgroup.sort_key)


def test_lattice_guard():
    with pytest.raises(GuardExceeded):
        all_subgroups(psl2(7), max_order=100)


def test_maximal_subgroups_of_s4():
    orders = Counter(H.order for H in maximal_subgroups(symmetric(4)))
    assert orders == {12: 1, 8: 3, 6: 4}


def test_is_subgroup():
    G = cyclic(3)
    assert is_subgroup(G, G.whole)
    assert not is_subgroup(G, Subgroup(0b011))


def test_conjugation():
    G = symmetric(4)
    C3 = generate(G, [G.index_of((1, 2, 0, 3))])
    assert C3.order == 3
    assert len(conjugates(G, C3)) == 4
    assert normalizer(G, C3).order == 6
    assert not is_normal(G, C3)


def test_center_and_classes():
    assert center(dihedral(8)).order == 2
    assert center(symmetric(4)).is_trivial()
    assert len(conjugacy_classes(symmetric(4))) == 5
    assert len(conjugacy_classes(psl2(5))) == 5


def test_derived_series():
    G = symmetric(4)
    assert derived_subgroup(G).order == 12
    assert [H.order for H in derived_series(G)] == [24, 12, 4, 1]
    assert is_solvable(G)
    assert not is_solvable(psl2(5))


def test_quotient_lift_project():
    G = symmetric(4)
    V4 = minimal_normal_subgroups(G)[0]
    assert V4.order == 4
    Q = quotient(G, V4)
    assert Q.order == 6
    assert not is_abelian(Q)
    assert lift(G, Q, Q.trivial) == V4
    assert project(G, Q, G.whole) == Q.whole
    C3 = generate(G, [G.index_of((1, 2, 0, 3))])
    with pytest.raises(ValueError):
        quotient(G, C3)


def test_minimal_normal_subgroups_of_klein_group():
    assert [N.order for N in minimal_normal_subgroups(elementary_abelian(2, 2))] == [2, 2, 2]


def test_chief_series_of_s4():
    series = chief_series(symmetric(4))
    assert [K.order for K in series.terms] == [1, 4, 12, 24]
    assert series.profile() == [(2, 1), (3, 3), (4, 4)]
    assert series.smallest_complemented_order() == 3


@pytest.mark.parametrize("factory", [
    lambda: dihedral(12),
    lambda: elementary_abelian(2, 3),
    lambda: direct_product(cyclic(2), alternating(4)),
    lambda: agl1_frobenius(7, 6),
])
def test_complement_counts_do_not_depend_on_the_series(factory):
    G = factory()
    assert len(all_chief_series(G)) >= 1
    assert complement_count_invariance_check(G)


def test_chief_series_needs_solvable_group():
    with pytest.raises(NotSolvableError):
        chief_series(psl2(5))


def test_sylow_and_nilpotency():
    assert sylow_subgroup(symmetric(4), 2).order == 8
    G = direct_product(cyclic(4), elementary_abelian(3, 2))
    assert is_nilpotent(G)
    assert not is_nilpotent(symmetric(3))
    assert sylow_subgroup(G, 3).order == 9
    assert is_cyclic(cyclic(9))


def test_hughes_subgroups():
    assert hughes_subgroup(dihedral(12), 2).order == 6
    assert hughes_thompson_prime(dihedral(12)) == 2
    assert hughes_thompson_prime(symmetric(4)) is None
    assert hughes_subgroup(alternating(4), 3).order == 4
    with pytest.raises(ValueError):
        hughes_subgroup(symmetric(3), 5)


def test_frobenius_witness():
    w = frobenius_witness(agl1_frobenius(7, 3))
    assert (w.kernel.order, w.complement.order) == (7, 3)
    w = frobenius_witness(alternating(4))
    assert (w.kernel.order, w.complement.order) == (4, 3)
    assert frobenius_witness(dihedral(12)) is None
    assert frobenius_witness(psl2(7)) is None


@pytest.mark.parametrize("factory,tag", [
    (lambda: symmetric(4), "S4"),
    (lambda: elementary_abelian(2, 2), "p-group-with-proper-Hughes"),
    (lambda: dihedral(12), "Hughes-Thompson"),
    (lambda: agl1_frobenius(5, 4), "Frobenius"),
    (lambda: psl2(7), "PSL2"),
    (lambda: pgl2(5), "PGL2"),
])
def test_partitionable_families(factory, tag):
    verdict = is_partitionable(factory())
    assert verdict
    assert verdict.tag == tag


def test_unpartitionable_groups():
    assert not is_partitionable(cyclic(6))
    verdict = is_partitionable(direct_product(cyclic(4), cyclic(2)))
    assert not verdict
    assert verdict.tag is None


# --- catalog-wide properties --------------------------------------------------

def _catalog_texts(max_order, low=1):
    return [str(s) for s in catalog(max_order) if group_order(s) >= low]


def _group(text):
    return build_group(parse_spec(text))


@pytest.mark.parametrize("text", _catalog_texts(60))
def test_multiplication_tables_are_groups(text):
    G = _group(text)
    T = G.table
    n = G.order
    ids = np.arange(n)
    assert (T[0] == ids).all() and (T[:, 0] == ids).all()
    assert (T[ids, G.inverse] == 0).all()
    assert (np.sort(T, axis=1) == ids).all()
    # (ab)c == a(bc) on every triple
    assert (T[T] == T[:, T]).all()


def _closure(G, elements):
    members = {0, *elements}
    while True:
        grown = members | {G.mul(a, b) for a in members for b in members}
        if grown == members:
            return frozenset(members)
        members = grown


def _subgroups_by_joins(G):
    """Every subgroup, reached from {1} by adjoining one element at a time."""
    found = {frozenset([0])}
    queue = [frozenset([0])]
    while queue:
        H = queue.pop()
        for g in range(G.order):
            if g not in H:
                K = _closure(G, H | {g})
                if K not in found:
                    found.add(K)
                    queue.append(K)
    return found


@pytest.mark.parametrize("text", _catalog_texts(20))
def test_lattice_matches_subgroups_built_by_joins(text):
    G = _group(text)
    expected = {frozenset(H) for H in _subgroups_by_joins(G)}
    assert {frozenset(H.ids()) for H in all_subgroups(G)} == expected


def _gaussian_binomial(n, k, p):
    count = 1
    for i in range(k):
        count = count * (p ** (n - i) - 1) // (p ** (i + 1) - 1)
    return count


def _known_subgroup_count(spec):
    family, params = spec.family, spec.params
    if family == "C":
        return divisor_count(params[0])
    if family == "D":
        half = params[0] // 2
        return divisor_count(half) + divisor_sigma(half)
    if family == "Cp^n":
        p, n = params
        return sum(_gaussian_binomial(n, k, p) for k in range(n + 1))
    return None


@pytest.mark.parametrize("text", [str(s) for s in catalog(100) if _known_subgroup_count(s) is not None])
def test_subgroup_counts_match_closed_forms(text):
    spec = parse_spec(text)
    assert len(all_subgroups(build_group(spec))) == _known_subgroup_count(spec)


def _check_lattice_closure(text):
    G = _group(text)
    subgroups = all_subgroups(G)
    masks = {H.mask for H in subgroups}
    for H, K in itertools.combinations(subgroups, 2):
        assert intersection(H, K).mask in masks
    for H in subgroups:
        assert H.order and G.order % H.order == 0
        for g in G.generators:
            assert conjugate(G, H, g).mask in masks


@pytest.mark.parametrize("text", _catalog_texts(32))
def test_lattice_is_closed_under_intersection_and_conjugation(text):
    _check_lattice_closure(text)


@pytest.mark.slow
@pytest.mark.parametrize("text", _catalog_texts(100, low=33))
def test_lattice_closure_up_to_100(text):
    _check_lattice_closure(text)


def _check_complements_are_the_maximal_subgroups_missing_n(text):
    G = _group(text)
    subgroups = all_subgroups(G)
    maximals = {M.mask for M in maximal_subgroups(G, subgroups)}
    for N in minimal_normal_subgroups(G):
        found = {K.mask for K in complements(G, N, subgroups)}
        if found:
            assert found == {M for M in maximals if not N.issubset(Subgroup(M))}


@pytest.mark.parametrize("text", _catalog_texts(48))
def test_complements_of_minimal_normal_subgroups_are_maximal(text):
    _check_complements_are_the_maximal_subgroups_missing_n(text)


@pytest.mark.slow
@pytest.mark.parametrize("text", _catalog_texts(100, low=49))
def test_complements_of_minimal_normal_subgroups_up_to_100(text):
    _check_complements_are_the_maximal_subgroups_missing_n(text)


@pytest.mark.parametrize("text", _catalog_texts(60))
def test_cyclic_exactly_when_no_chief_factor_has_two_complements(text):
    G = _group(text)
    counts = [f.complements for f in chief_series(G).factors]
    assert is_cyclic(G) == all(c <= 1 for c in counts)


@pytest.mark.parametrize("text", _catalog_texts(24))
def test_complement_counts_agree_across_the_catalog(text):
    assert complement_count_invariance_check(_group(text))


@pytest.mark.slow
@pytest.mark.parametrize("text", _catalog_texts(60, low=25))
def test_complement_counts_agree_up_to_60(text):
    assert complement_count_invariance_check(_group(text))


def test_partition_tags_are_checked():
    with pytest.raises(ValueError):
        Partitionability(True, "Dedekind")
    with pytest.raises(ValueError):
        Partitionability(False, "S4")
    assert set(PARTITION_TAGS) >= {"S4", "Frobenius", "search"}
