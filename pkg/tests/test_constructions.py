from collections import Counter

import pytest

from algebra.constructors import agl1_frobenius, elementary_abelian, psl2
from algebra.structure import frobenius_witness
from search.certificates import verify_partition
from search.constructions import (EXCEPTIONAL, dihedral_intersection_checks,
                                  elementary_abelian_partition, exceptional_partitions,
                                  frobenius_partition, linear_partition_with_group,
                                  point_stabilizer, psl_pgl_partition, torus_orders,
                                  unipotent_subgroup)


@pytest.mark.parametrize("p,n,size", [
    (2, 2, 3), (2, 3, 5), (2, 4, 5), (2, 5, 9), (3, 2, 4), (3, 3, 10), (5, 2, 6),
])
def test_elementary_abelian_partition(p, n, size):
    cert = elementary_abelian_partition(p, n)
    assert cert.size == size
    assert verify_partition(elementary_abelian(p, n), cert)


def test_elementary_abelian_partition_needs_rank_two():
    with pytest.raises(ValueError):
        elementary_abelian_partition(3, 1)


@pytest.mark.parametrize("q,d", [
    (3, 2), (4, 3), (5, 2), (5, 4), (7, 2), (7, 3), (7, 6), (8, 7), (9, 2), (9, 4), (9, 8), (11, 5),
])
def test_frobenius_partition(q, d):
    G = agl1_frobenius(q, d)
    cert = frobenius_partition(G, frobenius_witness(G))
    assert cert.size == q + 1
    assert verify_partition(G, cert)


@pytest.mark.parametrize("q,variant", [
    (4, "PSL"), (8, "PSL"), (7, "PSL"), (9, "PSL"), (11, "PSL"), (5, "PGL"), (7, "PGL"), (4, "PGL"),
])
def test_linear_partition(q, variant):
    G, cert = linear_partition_with_group(q, variant)
    assert cert.size == q * q + 1
    assert verify_partition(G, cert)
    assert psl_pgl_partition(q, variant) is cert


@pytest.mark.parametrize("q,variant", [(5, "PSL"), (3, "PSL"), (3, "PGL"), (2, "PSL"), (6, "PSL"), (7, "SL")])
def test_linear_partition_out_of_range(q, variant):
    with pytest.raises(ValueError):
        psl_pgl_partition(q, variant)


@pytest.mark.parametrize("which", sorted(EXCEPTIONAL))
def test_exceptional_partitions(which):
    variant, q, histogram = EXCEPTIONAL[which]
    cert = exceptional_partitions(which)
    assert dict(Counter(H.order for H in cert.members)) == histogram
    assert cert.size == q * q + 1


def test_exceptional_sizes():
    assert [exceptional_partitions(w).size for w in ("PGL2_5", "PSL2_7", "PSL2_9", "PSL2_11")] == [26, 50, 82, 122]
    with pytest.raises(ValueError):
        exceptional_partitions("PSL2_13")


def test_linear_building_blocks():
    G = psl2(7)
    assert point_stabilizer(G).order == 21
    assert unipotent_subgroup(G).order == 7
    assert unipotent_subgroup(G).issubset(point_stabilizer(G))
    assert torus_orders(7, "PSL") == (3, 4)
    assert torus_orders(7, "PGL") == (6, 8)
    assert torus_orders(8, "PSL") == (7, 9)


@pytest.mark.parametrize("q", [4, 8])
def test_dihedral_intersections(q):
    report = dihedral_intersection_checks(q)
    assert report.split_claim
    assert report.singer_claim
    assert report.ok


def test_dihedral_checks_limited_to_small_q():
    with pytest.raises(ValueError):
        dihedral_intersection_checks(16)
