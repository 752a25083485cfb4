"""The cross-validation catalog: small cyclic, elementary abelian, dihedral,
symmetric, alternating and affine groups, plus direct products of two of them."""
from __future__ import annotations

from math import gcd

from sympy import divisors, primerange

from algebra.constructors import prime_power

from .spec import GroupSpec, group_order


def _base_specs(max_order: int) -> list[GroupSpec]:
    specs = [GroupSpec("C", (n,)) for n in range(2, max_order + 1)]
    for p in primerange(2, max_order + 1):
        n = 2
        while p ** n <= max_order:
            specs.append(GroupSpec("Cp^n", (p, n)))
            n += 1
    # D4 is C2^2
    specs += [GroupSpec("D", (order,)) for order in range(6, max_order + 1, 2)]
    specs += [s for s in (GroupSpec("S", (3,)), GroupSpec("A", (4,)), GroupSpec("S", (4,)))
              if group_order(s) <= max_order]
    for q in range(3, max_order + 1):
        if prime_power(q) is None:
            continue
        for d in divisors(q - 1):
            if d > 1 and q * d <= max_order:
                specs.append(GroupSpec("AGL1", (q, d)))
    return specs


def catalog(max_order: int) -> list[GroupSpec]:
    """Catalog specs of order at most `max_order`, sorted by (order, text).

    Products of two cyclic groups of coprime orders are left out since they
    are cyclic and already listed.
    """
    base = _base_specs(max_order)
    specs = list(base)
    for i, left in enumerate(base):
        a = group_order(left)
        for right in base[i:]:
            b = group_order(right)
            if a * b > max_order:
                continue
            if left.family == "C" and right.family == "C" and gcd(a, b) == 1:
                continue
            specs.append(GroupSpec("DirectProduct", factors=(left, right)))
    return sorted(specs, key=lambda s: (group_order(s), str(s)))
