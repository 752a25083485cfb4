"""Covers and partitions as explicit, independently checkable families."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

from algebra.errors import InvalidCertificate
from algebra.group import Group, Subgroup
from algebra.lattice import is_subgroup


@dataclass(frozen=True)
class _Family:
    members: tuple[Subgroup, ...]
    indices: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return self.size

    @classmethod
    def from_indices(cls, subgroups: list[Subgroup], indices):
        indices = tuple(int(i) for i in indices)
        bad = [i for i in indices if not 0 <= i < len(subgroups)]
        if bad:
            raise InvalidCertificate(f"Subgroup indices out of range 0..{len(subgroups) - 1}: {bad}")
        return cls(members=tuple(subgroups[i] for i in indices), indices=indices)

    @classmethod
    def from_id_lists(cls, G: Group, members: list[list[int]]):
        masks = []
        for ids in members:
            bad = [i for i in ids if not 0 <= i < G.order]
            if bad:
                raise InvalidCertificate(f"Element IDs out of range for {G!r}: {bad[:5]}")
            mask = 0
            for i in ids:
                mask |= 1 << i
            masks.append(Subgroup(mask))
        return cls(members=tuple(masks))

    def digest(self) -> str:
        """sha256 over the sorted hex member bitsets."""
        text = "\n".join(sorted(format(H.mask, "x") for H in self.members))
        return hashlib.sha256(text.encode("ascii")).hexdigest()

    def id_lists(self) -> list[list[int]]:
        return [H.ids() for H in sorted(self.members, key=Subgroup.sort_key)]

    def max_member_order(self) -> int:
        return max((H.order for H in self.members), default=0)


class CoverCertificate(_Family):
    """Proper subgroups whose union is the whole group."""


class PartitionCertificate(_Family):
    """Nontrivial proper subgroups meeting pairwise in the identity and covering the group."""


def cover_problem(G: Group, cert: _Family) -> str | None:
    """Why `cert` is not a cover of G, or None when it is."""
    union = 0
    for k, H in enumerate(cert.members):
        if not is_subgroup(G, H):
            return f"member {k} is not a subgroup"
        if H.order == G.order:
            return f"member {k} is the whole group"
        union |= H.mask
    if union != G.full_mask:
        missing = (G.full_mask & ~union).bit_count()
        return f"union misses {missing} elements"
    return None


def partition_problem(G: Group, cert: _Family) -> str | None:
    """Why `cert` is not a partition of G, or None when it is."""
    problem = cover_problem(G, cert)
    if problem:
        return problem
    seen = 0
    for k, H in enumerate(cert.members):
        if H.is_trivial():
            return f"member {k} is trivial"
        overlap = H.mask & seen & ~1
        if overlap:
            return f"member {k} meets an earlier member outside the identity"
        seen |= H.mask
    return None


def verify_cover(G: Group, cert: _Family) -> bool:
    return cover_problem(G, cert) is None


def verify_partition(G: Group, cert: _Family) -> bool:
    return partition_problem(G, cert) is None
