"""Subgroup lattice summary for one spec."""
from __future__ import annotations

from collections import Counter

from algebra.lattice import all_subgroups, is_normal, maximal_subgroups
from particover_utils import get_max_order

from .spec import build_group, format_spec, parse_spec


def cmd_subgroups(text: str) -> None:
    spec = parse_spec(text)
    G = build_group(spec)
    subgroups = all_subgroups(G, get_max_order())
    print(f"\n=== Subgroups of {format_spec(spec)} (order {G.order}) ===")
    print(f"  {len(subgroups):,} subgroups")
    for order, count in sorted(Counter(H.order for H in subgroups).items()):
        print(f"    order {order:>5}: {count:,}")

    maximals = maximal_subgroups(G, subgroups)
    print(f"  {len(maximals)} maximal subgroups")
    for H in maximals:
        tag = " (normal)" if is_normal(G, H) else ""
        print(f"    order {H.order:>5}, index {G.order // H.order}{tag}")
