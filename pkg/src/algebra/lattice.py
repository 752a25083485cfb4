"""Subgroups of a tabulated group: closure, lattice enumeration, conjugation
and quotients."""
from __future__ import annotations

from collections import deque

import numpy as np

from .bitset import from_bool, to_bool
from .errors import GuardExceeded
from .group import Group, Subgroup

DEFAULT_MAX_ORDER = 1000


def _close(G: Group, gens, start_mask: int = 1) -> int:
    inside = to_bool(start_mask, G.order)
    inside[0] = True
    gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
    if gens.size == 0:
        return from_bool(inside)
    frontier = np.flatnonzero(inside)
    while frontier.size:
        products = G.table[np.ix_(frontier, gens)].ravel()
        fresh = np.unique(products[~inside[products]])
        inside[fresh] = True
        frontier = fresh
    return from_bool(inside)


def generate(G: Group, elements) -> Subgroup:
    """The subgroup generated by the given element IDs."""
    return Subgroup(_close(G, elements))


def is_subgroup(G: Group, H: Subgroup) -> bool:
    if not H.mask & 1 or H.mask >> G.order:
        return False
    ids = G.members(H)
    inside = to_bool(H.mask, G.order)
    return bool(inside[G.table[np.ix_(ids, ids)]].all())


def _require_subgroup(G: Group, H: Subgroup) -> None:
    if not is_subgroup(G, H):
        raise ValueError(f"{H} is not a subgroup of {G!r}")


def cyclic_subgroups(G: Group) -> dict[int, int]:
    """Distinct cyclic subgroups as {mask: smallest generating element}."""
    found: dict[int, int] = {}
    for x, mask in enumerate(G.cyclic_masks):
        found.setdefault(mask, x)
    return found


def all_subgroups(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> list[Subgroup]:
    """Every subgroup of G, sorted by (order, member IDs).

    Seeds with the cyclic subgroups and joins each known subgroup with each
    cyclic subgroup outside it until nothing new appears.
    """
    if G.order > max_order:
        raise GuardExceeded(f"Subgroup lattice of {G!r} exceeds the order guard {max_order}")
    cyclics = sorted(cyclic_subgroups(G).items(), key=lambda kv: (kv[0].bit_count(), kv[1]))
    known: dict[int, tuple[int, ...]] = {mask: (x,) for mask, x in cyclics}
    queue = deque(known.items())
    joined: set[int] = set()
    while queue:
        mask, gens = queue.popleft()
        for cmask, x in cyclics:
            if cmask & ~mask == 0:
                continue
            key = mask | cmask
            if key in joined:
                continue
            joined.add(key)
            result = _close(G, gens + (x,), mask | cmask)
            if result not in known:
                known[result] = gens + (x,)
                queue.append((result, gens + (x,)))
    return sorted((Subgroup(m) for m in known), key=Subgroup.sort_key)


def maximal_subgroups(G: Group, subgroups: list[Subgroup] | None = None) -> list[Subgroup]:
    subgroups = all_subgroups(G) if subgroups is None else subgroups
    proper = [H for H in subgroups if H.order < G.order]
    maximal = []
    for H in proper:
        if not any(H.mask != K.mask and H.issubset(K) for K in proper if K.order > H.order):
            maximal.append(H)
    return maximal


def conjugate(G: Group, H: Subgroup, g: int) -> Subgroup:
    """g^-1 H g."""
    ids = G.members(H)
    image = G.table[G.table[G.inverse[g], ids], g]
    flags = np.zeros(G.order, dtype=bool)
    flags[image] = True
    return Subgroup(from_bool(flags))


def _conjugation_images(G: Group, ids: np.ndarray) -> np.ndarray:
    """Row g holds g^-1 x g for each x in ids."""
    g = np.arange(G.order)
    return G.table[G.table[G.inverse[g][:, None], ids[None, :]], g[:, None]]


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    _require_subgroup(G, H)
    inside = to_bool(H.mask, G.order)
    images = _conjugation_images(G, G.members(H))
    return Subgroup(from_bool(inside[images].all(axis=1)))


def is_normal(G: Group, H: Subgroup) -> bool:
    _require_subgroup(G, H)
    return all(conjugate(G, H, g) == H for g in G.generators)


def conjugates(G: Group, H: Subgroup) -> list[Subgroup]:
    """Distinct conjugates of H in order of first appearance over g = 0, 1, ..."""
    _require_subgroup(G, H)
    images = _conjugation_images(G, G.members(H))
    seen: dict[int, None] = {}
    for row in images:
        flags = np.zeros(G.order, dtype=bool)
        flags[row] = True
        seen.setdefault(from_bool(flags))
    return [Subgroup(m) for m in seen]


def center(G: Group) -> Subgroup:
    return Subgroup(from_bool((G.table == G.table.T).all(axis=1)))


def conjugacy_classes(G: Group) -> list[int]:
    """Conjugacy classes as bitsets, ordered by smallest member."""
    classes, covered = [], 0
    for x in range(G.order):
        if covered >> x & 1:
            continue
        flags = np.zeros(G.order, dtype=bool)
        flags[_conjugation_images(G, np.array([x]))[:, 0]] = True
        cls = from_bool(flags)
        classes.append(cls)
        covered |= cls
    return classes


def normal_closure(G: Group, elements) -> Subgroup:
    ids = np.asarray(list(elements), dtype=np.int64)
    if ids.size == 0:
        return G.trivial
    orbit = np.unique(_conjugation_images(G, ids))
    return generate(G, orbit.tolist())


def derived_subgroup(G: Group, H: Subgroup | None = None) -> Subgroup:
    ids = G.members(H if H is not None else G.whole)
    inv = G.inverse[ids]
    t = G.table
    commutators = t[t[t[inv[:, None], inv[None, :]], ids[:, None]], ids[None, :]]
    return generate(G, np.unique(commutators).tolist())


def quotient(G: Group, N: Subgroup) -> Group:
    """G/N on coset IDs ordered by smallest coset member; the identity coset is 0.

    The result's `projection` maps each element of G to its coset ID.
    """
    if not is_normal(G, N):
        raise ValueError(f"{N} is not normal in {G!r}")
    ids = G.members(N)
    cosets = G.table[np.arange(G.order)[:, None], ids[None, :]]
    leaders = cosets.min(axis=1)
    reps = np.unique(leaders)
    coset_id = np.full(G.order, -1, dtype=np.int64)
    coset_id[reps] = np.arange(reps.size)
    projection = coset_id[leaders]
    table = projection[G.table[np.ix_(reps, reps)]].astype(np.int32)
    gens: list[int] = []
    for g in G.generators:
        image = int(projection[g])
        if image and image not in gens:
            gens.append(image)
    return Group(table=table, generators=tuple(gens), labels=tuple(int(r) for r in reps),
                 origin=("Quotient", (G.order, N.order)), projection=projection)


def lift(G: Group, Q: Group, K: Subgroup) -> Subgroup:
    """Preimage in G of a subgroup of the quotient Q = G/N."""
    inside = to_bool(K.mask, Q.order)
    return Subgroup(from_bool(inside[Q.projection]))


def project(G: Group, Q: Group, H: Subgroup) -> Subgroup:
    flags = np.zeros(Q.order, dtype=bool)
    flags[Q.projection[G.members(H)]] = True
    return Subgroup(from_bool(flags))
