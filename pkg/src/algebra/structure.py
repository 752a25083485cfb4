"""Structural predicates, chief series and the partitionability decision."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd, lcm

from sympy import factorint

from .errors import GuardExceeded, NotSolvableError
from .group import Group, Subgroup
from .lattice import (
    DEFAULT_MAX_ORDER,
    all_subgroups,
    conjugacy_classes,
    conjugates,
    derived_subgroup,
    generate,
    is_normal,
    is_subgroup,
    lift,
    normal_closure,
    normalizer,
    quotient,
)

S4_ORDER_PROFILE = {1: 1, 2: 9, 3: 8, 4: 6}


def element_orders(G: Group) -> list[int]:
    return list(G.element_orders)


def intersection(*subgroups: Subgroup) -> Subgroup:
    mask = -1
    for H in subgroups:
        mask &= H.mask
    return Subgroup(mask)


def is_cyclic(G: Group) -> bool:
    return G.order in G.element_orders


def is_abelian(G: Group) -> bool:
    return bool((G.table == G.table.T).all())


def exponent(G: Group) -> int:
    return lcm(*G.element_orders)


def is_pgroup(G: Group) -> bool:
    """True for nontrivial groups of prime-power order."""
    return len(factorint(G.order)) == 1


def _p_elements(G: Group, p: int) -> list[int]:
    return [x for x, k in enumerate(G.element_orders) if set(factorint(k)) <= {p}]


def is_nilpotent(G: Group) -> bool:
    # every Sylow subgroup is normal iff the p-elements number exactly p^a for each p
    return all(len(_p_elements(G, p)) == p ** a for p, a in factorint(G.order).items())


def derived_series(G: Group) -> list[Subgroup]:
    series = [G.whole]
    while True:
        D = derived_subgroup(G, series[-1])
        if D == series[-1]:
            return series
        series.append(D)


def is_solvable(G: Group) -> bool:
    return derived_series(G)[-1].is_trivial()


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup; the unique one when G is nilpotent."""
    a = factorint(G.order).get(p, 0)
    if a == 0:
        return G.trivial
    if is_nilpotent(G):
        return generate(G, _p_elements(G, p))
    for H in all_subgroups(G):
        if H.order == p ** a:
            return H
    raise AssertionError(f"No Sylow {p}-subgroup found in {G!r}")


def minimal_normal_subgroups(G: Group) -> list[Subgroup]:
    """Minimal normal subgroups sorted by (order, member IDs).

    Every minimal normal subgroup is the normal closure of any of its
    nonidentity elements, so closing one representative per conjugacy class
    finds them all.
    """
    closures: dict[int, Subgroup] = {}
    for cls in conjugacy_classes(G)[1:]:
        rep = (cls & -cls).bit_length() - 1
        N = normal_closure(G, [rep])
        closures.setdefault(N.mask, N)
    candidates = list(closures.values())
    minimal = [N for N in candidates
               if not any(M.mask != N.mask and M.issubset(N) for M in candidates)]
    return sorted(minimal, key=Subgroup.sort_key)


def complements(G: Group, N: Subgroup, subgroups: list[Subgroup] | None = None) -> list[Subgroup]:
    """Every subgroup K with K N = G and K meeting N trivially."""
    subgroups = all_subgroups(G) if subgroups is None else subgroups
    target = G.order // N.order
    return [K for K in subgroups if K.order == target and (K & N).is_trivial()]


# --- chief series -----------------------------------------------------------

@dataclass(frozen=True)
class ChiefFactor:
    order: int
    complements: int


@dataclass(frozen=True)
class ChiefSeries:
    """{1} = K_0 < K_1 < ... < K_t = G with one factor record per step."""
    terms: tuple[Subgroup, ...]
    factors: tuple[ChiefFactor, ...]

    def profile(self) -> list[tuple[int, int]]:
        """The (factor order, complement count) multiset, sorted."""
        return sorted((f.order, f.complements) for f in self.factors)

    def smallest_complemented_order(self) -> int | None:
        orders = [f.order for f in self.factors if f.complements >= 2]
        return min(orders) if orders else None


class _ChiefWalker:
    """Shares quotients and lattices between the steps of one or many series."""

    def __init__(self, G: Group, max_order: int):
        if G.order > max_order:
            raise GuardExceeded(f"Chief series of {G!r} exceeds the order guard {max_order}")
        if not is_solvable(G):
            raise NotSolvableError(f"{G!r} is not solvable")
        self.G = G
        self.max_order = max_order
        self._steps: dict[int, list[tuple[Subgroup, ChiefFactor]]] = {}

    def steps(self, K: Subgroup) -> list[tuple[Subgroup, ChiefFactor]]:
        """Every K' with K'/K minimal normal in G/K, with its factor record."""
        if K.mask not in self._steps:
            Q = quotient(self.G, K)
            lattice = all_subgroups(Q, self.max_order)
            out = []
            for N in minimal_normal_subgroups(Q):
                count = len(complements(Q, N, lattice))
                out.append((lift(self.G, Q, N), ChiefFactor(N.order, count)))
            self._steps[K.mask] = out
        return self._steps[K.mask]

    def first(self) -> ChiefSeries:
        terms, factors = [self.G.trivial], []
        while terms[-1].order < self.G.order:
            K, factor = self.steps(terms[-1])[0]
            terms.append(K)
            factors.append(factor)
        return ChiefSeries(tuple(terms), tuple(factors))

    def every(self) -> list[ChiefSeries]:
        found = []
        stack = [((self.G.trivial,), ())]
        while stack:
            terms, factors = stack.pop()
            if terms[-1].order == self.G.order:
                found.append(ChiefSeries(terms, factors))
                continue
            for K, factor in reversed(self.steps(terms[-1])):
                stack.append((terms + (K,), factors + (factor,)))
        return found


def chief_series(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> ChiefSeries:
    """One chief series, choosing at each step the minimal normal subgroup of
    the current quotient with the smallest (order, member IDs) key."""
    return _ChiefWalker(G, max_order).first()


def all_chief_series(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> list[ChiefSeries]:
    return _ChiefWalker(G, max_order).every()


def complement_count_invariance_check(G: Group) -> bool:
    profiles = {tuple(s.profile()) for s in all_chief_series(G)}
    return len(profiles) == 1


# --- Hughes and Frobenius ---------------------------------------------------

def hughes_subgroup(G: Group, p: int) -> Subgroup:
    """H_p(G): generated by the elements x with x^p != 1."""
    if G.order % p:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    return generate(G, [x for x, k in enumerate(G.element_orders) if k not in (1, p)])


def hughes_thompson_prime(G: Group) -> int | None:
    """The prime p for which G is of Hughes-Thompson type, if any."""
    primes = factorint(G.order)
    if len(primes) < 2:
        return None
    for p in sorted(primes):
        if hughes_subgroup(G, p).order < G.order:
            return p
    return None


@dataclass(frozen=True)
class FrobeniusWitness:
    kernel: Subgroup
    complement: Subgroup


def frobenius_witness(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> FrobeniusWitness | None:
    n = G.order
    for H in all_subgroups(G, max_order):
        h = H.order
        if h == 1 or h == n:
            continue
        index = n // h
        if gcd(h, index) != 1 or (index - 1) % h:
            continue
        if normalizer(G, H) != H:
            continue
        union = 0
        for C in conjugates(G, H):
            union |= C.mask
        if union.bit_count() != 1 + index * (h - 1):
            continue
        kernel = Subgroup((G.full_mask ^ union) | 1)
        if kernel.order * h == n and is_subgroup(G, kernel) and is_normal(G, kernel):
            return FrobeniusWitness(kernel=kernel, complement=H)
    return None


# --- partitionability ---------------------------------------------------------

# "search": no structural test matched and the exhaustive search found a partition
PARTITION_TAGS = ("S4", "p-group-with-proper-Hughes", "Hughes-Thompson", "Frobenius",
                  "PSL2", "PGL2", "Suzuki", "search")


@dataclass(frozen=True)
class Partitionability:
    partitionable: bool
    tag: str | None = None

    def __post_init__(self):
        if self.partitionable and self.tag not in PARTITION_TAGS:
            raise ValueError(f"Unknown partition tag {self.tag!r}; expected one of {PARTITION_TAGS}")
        if not self.partitionable and self.tag is not None:
            raise ValueError(f"An unpartitionable group carries no tag, got {self.tag!r}")

    def __bool__(self) -> bool:
        return self.partitionable


def has_s4_profile(G: Group) -> bool:
    return G.order == 24 and Counter(G.element_orders) == S4_ORDER_PROFILE


def is_partitionable(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> Partitionability:
    """Decide partitionability, reporting the first matching family.

    Structural tests run in classification order; the solver's exhaustive
    search settles whatever they leave open.
    """
    family, params = G.origin
    if G.order == 1 or is_cyclic(G):
        return Partitionability(False)
    if has_s4_profile(G) or family == "S" and params == (4,) or family == "PGL2" and params == (3,):
        return Partitionability(True, "S4")
    if is_pgroup(G):
        p = next(iter(factorint(G.order)))
        if hughes_subgroup(G, p).order < G.order:
            return Partitionability(True, "p-group-with-proper-Hughes")
    elif hughes_thompson_prime(G) is not None:
        return Partitionability(True, "Hughes-Thompson")
    if G.order <= max_order and frobenius_witness(G, max_order) is not None:
        return Partitionability(True, "Frobenius")
    if family == "PSL2" and params[0] >= 4:
        return Partitionability(True, "PSL2")
    if family == "PGL2" and params[0] >= 4:
        return Partitionability(True, "PGL2")
    if family == "Sz":
        return Partitionability(True, "Suzuki")
    if G.order > max_order:
        raise GuardExceeded(f"No structural match for {G!r} and it exceeds the search guard {max_order}")

    from search.solver import has_partition
    return Partitionability(True, "search") if has_partition(G) else Partitionability(False)
