"""Exact sigma (minimum cover) and rho (minimum partition) by branch and bound.

sigma covers the maximal cyclic subgroups with maximal subgroups. rho is a
minimum-cardinality exact cover of the power-closed atoms by the nontrivial
proper subgroups that are unions of atoms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import isprime

from algebra.errors import GuardExceeded
from algebra.group import Group, Subgroup
from algebra.lattice import all_subgroups, cyclic_subgroups, is_normal, maximal_subgroups
from algebra.structure import is_cyclic
from particover_utils import debug, get_max_order

from .branch import BranchAndBound, Incumbent, SearchBudget
from .certificates import (CoverCertificate, PartitionCertificate, cover_problem,
                           partition_problem)


@dataclass(frozen=True)
class SearchResult:
    """value is math.inf for sigma of a cyclic group and None when rho does not exist.

    When `exact` is False, `value` is the best certified upper bound found
    (or None) and `lower_bound` is what the search proved.
    """
    value: int | float | None
    certificate: CoverCertificate | PartitionCertificate | None
    exact: bool
    lower_bound: int | float
    nodes: int = 0
    seconds: float = 0.0


def rho_lower_bound(G: Group | int) -> int:
    """1 + ceil(sqrt(|G|))."""
    n = G if isinstance(G, int) else G.order
    return 1 + math.isqrt(n - 1) + 1 if n > 1 else 2


def power_closed_atoms(G: Group) -> list[int]:
    """Classes of nonidentity elements under x ~ y iff <x> and <y> share a nonidentity element.

    Every partition member is a union of these classes.
    """
    parent = list(range(G.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, mask in enumerate(G.cyclic_masks):
        mask &= ~1
        while mask:
            low = mask & -mask
            y = low.bit_length() - 1
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
            mask ^= low

    atoms: dict[int, int] = {}
    for x in range(1, G.order):
        r = find(x)
        atoms[r] = atoms.get(r, 0) | 1 << x
    return [atoms[r] for r in sorted(atoms)]


def normal_cyclic_prime_index(G: Group) -> Subgroup | None:
    """A normal cyclic subgroup of prime index, if G has one."""
    for mask in sorted(cyclic_subgroups(G), key=lambda m: (-m.bit_count(), m)):
        N = Subgroup(mask)
        if N.order < G.order and G.order % N.order == 0 and isprime(G.order // N.order) \
                and is_normal(G, N):
            return N
    return None


def _log(kind: str, G: Group, result: SearchResult, budget: SearchBudget):
    value = "none" if result.value is None else result.value
    debug.log_search(kind, repr(G), G.order, value, result.exact, result.lower_bound,
                     result.nodes, result.seconds, budget.threads)


def _lattice(G: Group, subgroups):
    return all_subgroups(G, get_max_order()) if subgroups is None else subgroups


# --- rho -------------------------------------------------------------------

class _PartitionSearch(BranchAndBound):
    """Nodes are (covered atoms, chosen candidates, uncovered element count, largest chosen order)."""

    def __init__(self, G: Group, subgroups: list[Subgroup]):
        self.n = G.order
        atoms = power_closed_atoms(G)
        atom_of = [-1] * G.order
        for a, mask in enumerate(atoms):
            for x in Subgroup(mask).ids():
                atom_of[x] = a
        self.full = (1 << len(atoms)) - 1

        found = []
        for index, H in enumerate(subgroups):
            if H.order in (1, G.order):
                continue
            amask = 0
            for x in H.ids()[1:]:
                amask |= 1 << atom_of[x]
            weight = sum(atoms[a].bit_count() for a in Subgroup(amask).ids())
            if weight == H.order - 1:
                found.append((-H.order, index, amask))
        found.sort()
        self.lattice_index = [index for _, index, _ in found]
        self.cand_mask = [amask for _, _, amask in found]
        self.cand_order = [-neg for neg, _, _ in found]
        self.max_order = max(self.cand_order, default=1)
        self.per_atom: list[list[int]] = [[] for _ in atoms]
        for c, amask in enumerate(self.cand_mask):
            for a in Subgroup(amask).ids():
                self.per_atom[a].append(c)
        self._position = {subgroups[i].mask: c for c, i in enumerate(self.lattice_index)}

        self.forced = None
        N = normal_cyclic_prime_index(G)
        if N is not None and N.mask in self._position:
            self.forced = self._position[N.mask]
        self.floor = rho_lower_bound(G)

    def _choose(self, node, c):
        covered, chosen, left, top = node
        return (covered | self.cand_mask[c], chosen + (c,), left - (self.cand_order[c] - 1),
                max(top, self.cand_order[c]))

    def root(self):
        node = (0, (), self.n - 1, 0)
        return self._choose(node, self.forced) if self.forced is not None else node

    def node_for(self, members: tuple[Subgroup, ...]):
        """The complete node for a known partition, or None if a member is not a candidate."""
        node = (0, (), self.n - 1, 0)
        for H in members:
            c = self._position.get(H.mask)
            if c is None:
                return None
            node = self._choose(node, c)
        return node if node[0] == self.full and node[2] == 0 else None

    def complete(self, node) -> bool:
        return node[0] == self.full

    def size(self, node) -> int:
        return len(node[1])

    def _cap(self, top: int) -> int:
        # distinct members H, K of a partition satisfy |H||K| <= |G|
        return min(self.n // top, self.max_order) if top else self.max_order

    def bound(self, node) -> float:
        _, chosen, left, top = node
        cap = self._cap(top)
        if cap < 2:
            return math.inf
        return max(len(chosen) + -(-left // (cap - 1)), 1 + top, self.floor)

    def branch(self, node):
        covered, _, _, top = node
        cap = self._cap(top)
        best = None
        uncovered = self.full & ~covered
        while uncovered:
            low = uncovered & -uncovered
            a = low.bit_length() - 1
            uncovered ^= low
            options = [c for c in self.per_atom[a]
                       if not self.cand_mask[c] & covered and self.cand_order[c] <= cap]
            if best is None or len(options) < len(best):
                best = options
                if len(options) <= 1:
                    break
        return [self._choose(node, c) for c in best or []]


def _partition_certificate(search: _PartitionSearch, subgroups, node) -> PartitionCertificate:
    indices = sorted(search.lattice_index[c] for c in node[1])
    return PartitionCertificate.from_indices(subgroups, indices)


def rho(G: Group, budget: SearchBudget | None = None, subgroups: list[Subgroup] | None = None,
        seed: PartitionCertificate | None = None) -> SearchResult:
    """Minimum partition size of G, with a certificate.

    `seed` is a known partition used as the starting incumbent.
    """
    budget = budget or SearchBudget.from_environment()
    if is_cyclic(G):
        result = SearchResult(None, None, True, rho_lower_bound(G))
        _log("rho", G, result, budget)
        return result

    subgroups = _lattice(G, subgroups)
    search = _PartitionSearch(G, subgroups)
    incumbent = Incumbent(G.order)
    if seed is not None and not partition_problem(G, seed):
        node = search.node_for(seed.members)
        if node is not None:
            incumbent.offer(len(node[1]), node)

    root_bound = search.bound(search.root())
    outcome = search.run(incumbent, budget)
    cert = None
    if outcome.solution is not None:
        cert = _partition_certificate(search, subgroups, outcome.solution)
        problem = partition_problem(G, cert)
        assert problem is None, f"rho search produced an invalid partition: {problem}"

    value = cert.size if cert else None
    lower = value if outcome.exact and value is not None else min(root_bound, value or math.inf)
    result = SearchResult(value, cert, outcome.exact, lower, outcome.nodes, outcome.seconds)
    _log("rho", G, result, budget)
    return result


def has_partition(G: Group, subgroups: list[Subgroup] | None = None,
                  budget: SearchBudget | None = None) -> bool:
    """Whether any partition exists; stops at the first one found."""
    if is_cyclic(G):
        return False
    budget = budget or SearchBudget.from_environment()
    search = _PartitionSearch(G, _lattice(G, subgroups))
    outcome = search.run(Incumbent(G.order), budget, first_only=True)
    if outcome.solution is None and not outcome.exact:
        raise GuardExceeded(f"Partition search on {G!r} ran out of budget undecided")
    return outcome.solution is not None


# --- sigma -----------------------------------------------------------------

class _CoverSearch(BranchAndBound):
    """Nodes are (covered universe bits, chosen candidates, forbidden candidates)."""

    def __init__(self, G: Group, maximals: list[Subgroup]):
        cyclics = cyclic_subgroups(G)
        tops = [m for m in cyclics if not any(m != o and m & ~o == 0 for o in cyclics)]
        self.universe = sorted(cyclics[m] for m in tops)
        self.full = (1 << len(self.universe)) - 1
        self.maximals = maximals
        self.cand_mask = []
        for M in maximals:
            mask = 0
            for u, x in enumerate(self.universe):
                if x in M:
                    mask |= 1 << u
            self.cand_mask.append(mask)
        order = sorted(range(len(maximals)), key=lambda c: (-self.cand_mask[c].bit_count(), c))
        self.per_elem: list[list[int]] = [[c for c in order if self.cand_mask[c] >> u & 1]
                                          for u in range(len(self.universe))]
        self.floor = max(3, self.clique_bound(), self.bound(self.root()))

    def clique_bound(self) -> int:
        """Size of a greedy set of universe elements no two of which share a maximal subgroup."""
        share = [0] * len(self.universe)
        for u, cands in enumerate(self.per_elem):
            for c in cands:
                share[u] |= self.cand_mask[c]
        clique: list[int] = []
        for u in sorted(range(len(self.universe)), key=lambda u: (len(self.per_elem[u]), u)):
            if all(not share[u] >> v & 1 for v in clique):
                clique.append(u)
        return len(clique)

    def greedy(self):
        node = self.root()
        while node[0] != self.full:
            rem = self.full & ~node[0]
            c = max(range(len(self.cand_mask)), key=lambda c: ((self.cand_mask[c] & rem).bit_count(), -c))
            node = (node[0] | self.cand_mask[c], node[1] + (c,), 0)
        return node

    def root(self):
        return 0, (), 0

    def complete(self, node) -> bool:
        return node[0] == self.full

    def size(self, node) -> int:
        return len(node[1])

    def bound(self, node) -> float:
        covered, chosen, forbidden = node
        rem = self.full & ~covered
        if not rem:
            return len(chosen)
        cover = max((m & rem).bit_count() for c, m in enumerate(self.cand_mask) if not forbidden >> c & 1)
        if cover == 0:
            return math.inf
        return len(chosen) + -(-rem.bit_count() // cover)

    def branch(self, node):
        covered, chosen, forbidden = node
        best = None
        rem = self.full & ~covered
        while rem:
            low = rem & -rem
            u = low.bit_length() - 1
            rem ^= low
            options = [c for c in self.per_elem[u] if not forbidden >> c & 1]
            if best is None or len(options) < len(best):
                best = options
                if len(options) <= 1:
                    break
        children = []
        for c in best or []:
            children.append((covered | self.cand_mask[c], chosen + (c,), forbidden))
            forbidden |= 1 << c
        return children


def sigma(G: Group, budget: SearchBudget | None = None,
          subgroups: list[Subgroup] | None = None) -> SearchResult:
    """Minimum cover size of G by proper subgroups; math.inf for cyclic G."""
    budget = budget or SearchBudget.from_environment()
    if is_cyclic(G):
        result = SearchResult(math.inf, None, True, math.inf)
        _log("sigma", G, result, budget)
        return result

    subgroups = _lattice(G, subgroups)
    maximals = maximal_subgroups(G, subgroups)
    search = _CoverSearch(G, maximals)
    greedy = search.greedy()
    incumbent = Incumbent(len(greedy[1]), greedy)
    outcome = search.run(incumbent, budget)

    position = {H.mask: i for i, H in enumerate(subgroups)}
    indices = sorted(position[maximals[c].mask] for c in outcome.solution[1])
    cert = CoverCertificate.from_indices(subgroups, indices)
    problem = cover_problem(G, cert)
    assert problem is None, f"sigma search produced an invalid cover: {problem}"

    lower = cert.size if outcome.exact else min(search.floor, cert.size)
    result = SearchResult(cert.size, cert, outcome.exact, lower, outcome.nodes, outcome.seconds)
    _log("sigma", G, result, budget)
    return result
