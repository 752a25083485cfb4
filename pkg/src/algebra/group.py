"""Finite groups as Cayley tables over canonical element IDs.

Element IDs come from a breadth-first closure over the declared generator
sequence: ID 0 is the identity and every other element is numbered in the
shortlex order of the first word reaching it. Multiplication `mul(a, b)`
applies `a` first, then `b`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from .bitset import iter_bits, to_ids
from .errors import GuardExceeded

TABLE_LIMIT = 4096

Origin = tuple[str, tuple[int, ...]]


@dataclass(frozen=True)
class Subgroup:
    """A set of element IDs closed under the group operation, as a bitset."""
    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, element: int) -> bool:
        return bool(self.mask >> element & 1)

    def ids(self) -> list[int]:
        return list(iter_bits(self.mask))

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.mask & other.mask)

    def is_trivial(self) -> bool:
        return self.mask == 1

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return self.order, tuple(self.ids())


@dataclass(frozen=True, eq=False)
class Group:
    table: np.ndarray
    generators: tuple[int, ...]
    labels: tuple = ()
    origin: Origin = ("", ())
    projection: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        family, params = self.origin
        tag = f"{family}{params}" if family else "group"
        return f"<{tag} of order {self.order}>"

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)

    @cached_property
    def _label_index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        k %= self.element_orders[a]
        result = 0
        row = self.rows
        for _ in range(k):
            result = row[result][a]
        return result

    def index_of(self, label: Hashable) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError(f"{label!r} is not an element of {self!r}") from None

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self.full_mask)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(1)

    @cached_property
    def cyclic_masks(self) -> list[int]:
        """Bitset of <x> for every element x."""
        rows = self.rows
        masks = []
        for x in range(self.order):
            mask, y = 1, x
            while y:
                mask |= 1 << y
                y = rows[y][x]
            masks.append(mask)
        return masks

    @cached_property
    def element_orders(self) -> list[int]:
        return [m.bit_count() for m in self.cyclic_masks]

    def members(self, H: Subgroup) -> np.ndarray:
        return to_ids(H.mask, self.order)

    def fingerprint(self) -> bytes:
        return self.table.astype(np.int32).tobytes()


def build_from_generators(
    generators: Sequence[Hashable],
    compose: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    *,
    origin: Origin = ("", ()),
    max_order: int = TABLE_LIMIT,
) -> Group:
    """Close `generators` under `compose` and tabulate the result.

    Raises GuardExceeded once the closure passes `max_order` elements.
    """
    gens = list(generators)
    for g in gens:
        try:
            hash(g)
            compose(identity, g)
        except (TypeError, ValueError, IndexError, KeyError) as e:
            raise ValueError(f"Malformed generator {g!r}: {e}") from e

    labels = [identity]
    index = {identity: 0}
    right: list[list[int]] = []
    parent: list[tuple[int, int]] = [(0, -1)]
    limit = min(max_order, TABLE_LIMIT)

    i = 0
    while i < len(labels):
        x = labels[i]
        row = []
        for k, g in enumerate(gens):
            y = compose(x, g)
            j = index.get(y)
            if j is None:
                if len(labels) >= limit:
                    raise GuardExceeded(f"Closure exceeds {limit} elements")
                j = len(labels)
                index[y] = j
                labels.append(y)
                parent.append((i, k))
            row.append(j)
        right.append(row)
        i += 1

    n = len(labels)
    actions = np.array(right, dtype=np.int32).reshape(n, len(gens)).T if gens else np.zeros((0, n), np.int32)
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n, dtype=np.int32)
    # x * (p * g) = (x * p) * g
    for j in range(1, n):
        p, k = parent[j]
        table[:, j] = actions[k][table[:, p]]

    generator_ids = tuple(index[g] for g in gens)
    return Group(table=table, generators=generator_ids, labels=tuple(labels), origin=origin)
