"""Explicit partitions: Frobenius, elementary abelian, PSL2/PGL2 and the four small exceptions.

Every builder verifies its family before returning it.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from algebra.constructors import elementary_abelian, field_of, pgl2, prime_power, psl2
from algebra.errors import InvalidCertificate
from algebra.finite_field import make_field
from algebra.group import Group, Subgroup
from algebra.lattice import conjugates, normalizer
from algebra.structure import FrobeniusWitness

from .certificates import PartitionCertificate, partition_problem

EXCEPTIONAL = {
    # which: (family, q, member-order histogram)
    "PGL2_5": ("PGL", 5, {20: 1, 5: 5, 4: 10, 6: 10}),
    "PSL2_7": ("PSL", 7, {21: 1, 3: 21, 7: 7, 4: 21}),
    "PSL2_9": ("PSL", 9, {36: 1, 4: 36, 9: 9, 5: 36}),
    "PSL2_11": ("PSL", 11, {55: 1, 5: 55, 11: 11, 6: 55}),
}


def _checked(G: Group, members, what: str) -> PartitionCertificate:
    cert = PartitionCertificate(members=tuple(members))
    problem = partition_problem(G, cert)
    if problem:
        raise InvalidCertificate(f"{what} is not a partition of {G!r}: {problem}")
    return cert


def frobenius_partition(G: Group, w: FrobeniusWitness) -> PartitionCertificate:
    """The kernel together with every conjugate of the complement; |K| + 1 members."""
    members = [w.kernel] + conjugates(G, w.complement)
    cert = _checked(G, members, "Frobenius kernel and complements")
    if cert.size != w.kernel.order + 1:
        raise InvalidCertificate(f"Frobenius partition has {cert.size} members, expected {w.kernel.order + 1}")
    return cert


# --- elementary abelian -------------------------------------------------------

def _line_points(p: int, k: int):
    """1-dimensional subspaces of GF(p^k)^2 as lists of coordinate tuples over GF(p)."""
    F = make_field(p, k)
    units = [a for a in F.elements() if not a.is_zero()]
    reps = [(F.zero, F.one)] + [(F.one, b) for b in F.elements()]
    for a, b in reps:
        yield [(lam * a).coeffs + (lam * b).coeffs for lam in units]


def elementary_abelian_partition(p: int, n: int) -> PartitionCertificate:
    """A partition of elementary_abelian(p, n) with 1 + p^ceil(n/2) members.

    Even n uses the lines of GF(p^(n/2))^2. Odd n cuts the rank n+1 lines with
    the hyperplane whose last coordinate is zero.
    """
    if n < 2:
        raise ValueError(f"Elementary abelian partitions need rank n >= 2, got {n}")
    G = elementary_abelian(p, n)
    k = (n + 1) // 2
    members = []
    for points in _line_points(p, k):
        if n % 2:
            points = [v[:-1] for v in points if v[-1] == 0]
        mask = 1
        for v in points:
            mask |= 1 << G.index_of(v)
        if mask != 1:
            members.append(Subgroup(mask))
    cert = _checked(G, members, f"Subspace family of C{p}^{n}")
    assert cert.size == 1 + p ** k
    return cert


# --- PSL2 / PGL2 ---------------------------------------------------------------

def point_stabilizer(G: Group) -> Subgroup:
    """Stabilizer of the projective point [0:1] under the row-vector action: entry c == 0."""
    mask = 0
    for g, (_, _, c, _) in enumerate(G.labels):
        if c == 0:
            mask |= 1 << g
    return Subgroup(mask)


def unipotent_subgroup(G: Group) -> Subgroup:
    mask = 0
    for g, (a, _, c, d) in enumerate(G.labels):
        if a == 1 and c == 0 and d == 1:
            mask |= 1 << g
    return Subgroup(mask)


def cyclic_subgroups_of_order(G: Group, k: int) -> list[Subgroup]:
    """Distinct <x> over the elements x of order k, by smallest generator."""
    seen: dict[int, None] = {}
    for x, order in enumerate(G.element_orders):
        if order == k:
            seen.setdefault(G.cyclic_masks[x])
    return [Subgroup(m) for m in seen]


def torus_orders(q: int, variant: str) -> tuple[int, int]:
    """(split, nonsplit) torus orders: q -+ 1, halved in PSL2(q) for odd q."""
    if variant == "PSL" and q % 2:
        return (q - 1) // 2, (q + 1) // 2
    return q - 1, q + 1


def check_linear_params(q: int, variant: str) -> None:
    """Range of (q, variant) for which the torus family is a minimum-size partition."""
    if variant not in ("PSL", "PGL"):
        raise ValueError(f"Variant must be PSL or PGL, got {variant!r}")
    pf = prime_power(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    if q % 2 == 0:
        if q < 4:
            raise ValueError(f"Even q must be at least 4, got {q}")
    elif variant == "PGL" and q < 5:
        raise ValueError(f"PGL2 partitions need odd q >= 5, got {q}")
    elif variant == "PSL" and q < 7:
        raise ValueError(f"PSL2 partitions need odd q >= 7, got {q}")


def _linear_group(q: int, variant: str) -> Group:
    check_linear_params(q, variant)
    return psl2(q) if variant == "PSL" else pgl2(q)


def psl_pgl_partition(q: int, variant: str) -> PartitionCertificate:
    """Point stabilizer H, the split tori outside H, every nonsplit torus and the
    Sylow p-subgroups outside H: q^2 + 1 members."""
    return _cached_linear(q, variant)[1]


@lru_cache(maxsize=None)
def _cached_linear(q: int, variant: str) -> tuple[Group, PartitionCertificate]:
    G = _linear_group(q, variant)
    return G, _linear_partition(G, q, variant)


def linear_partition_with_group(q: int, variant: str) -> tuple[Group, PartitionCertificate]:
    """The group together with its partition, so callers share element IDs."""
    return _cached_linear(q, variant)


def _linear_partition(G: Group, q: int, variant: str) -> PartitionCertificate:
    H = point_stabilizer(G)
    split, nonsplit = torus_orders(q, variant)
    members = [H]
    members += [T for T in cyclic_subgroups_of_order(G, split) if not T.issubset(H)]
    members += cyclic_subgroups_of_order(G, nonsplit)
    members += [P for P in conjugates(G, unipotent_subgroup(G)) if not P.issubset(H)]
    cert = _checked(G, members, f"{variant}2({q}) torus family")
    assert cert.size == q * q + 1, f"{variant}2({q}) family has {cert.size} members"
    return cert


def exceptional_partitions(which: str) -> PartitionCertificate:
    """The explicit partitions of PGL2(5), PSL2(7), PSL2(9) and PSL2(11)."""
    if which not in EXCEPTIONAL:
        raise ValueError(f"Unknown exceptional group {which!r}; expected one of {sorted(EXCEPTIONAL)}")
    variant, q, histogram = EXCEPTIONAL[which]
    _, cert = _cached_linear(q, variant)
    found = dict(Counter(H.order for H in cert.members))
    if found != histogram:
        raise InvalidCertificate(f"{which} member orders {found}, expected {histogram}")
    return cert


# --- dihedral normalizers in PSL2(2^f) -------------------------------------------

@dataclass(frozen=True)
class DihedralReport:
    q: int
    split_pair: tuple[Subgroup, Subgroup] | None
    singer_histogram: dict[int, int] = field(default_factory=dict)

    @property
    def split_claim(self) -> bool:
        """Some conjugate of D_2(q-1) differs from it and meets it nontrivially."""
        return self.split_pair is not None

    @property
    def singer_claim(self) -> bool:
        """Any two distinct D_2(q+1) meet in a subgroup of order 2."""
        return set(self.singer_histogram) == {2}

    @property
    def ok(self) -> bool:
        return self.split_claim and self.singer_claim


def dihedral_intersection_checks(q: int) -> DihedralReport:
    if q not in (4, 8):
        raise ValueError(f"Dihedral intersection checks run for q in (4, 8), got {q}")
    G = psl2(q)
    assert field_of(G).order == q

    D = normalizer(G, cyclic_subgroups_of_order(G, q - 1)[0])
    assert D.order == 2 * (q - 1)
    split_pair = next(((D, E) for E in conjugates(G, D) if E != D and not (D & E).is_trivial()), None)

    singers = conjugates(G, normalizer(G, cyclic_subgroups_of_order(G, q + 1)[0]))
    histogram = Counter((A & B).order for A, B in combinations(singers, 2))
    return DihedralReport(q=q, split_pair=split_pair, singer_histogram=dict(sorted(histogram.items())))
