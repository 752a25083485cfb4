"""Formulas against the solver over the catalog."""
from __future__ import annotations

from sympy import isprime

from algebra.errors import GuardExceeded
from algebra.lattice import all_subgroups
from algebra.structure import (exponent, frobenius_witness, is_cyclic, is_nilpotent,
                               is_partitionable, is_solvable)
from particover_utils import get_max_order
from search.branch import SearchBudget
from search.certificates import verify_cover, verify_partition
from search.solver import rho, rho_lower_bound, sigma
from theory.formulas import (frobenius_rho_agreement, main_theorem_predicate, rho_formula,
                             tomkinson_sigma)

from .catalog import catalog
from .compute import construction_for
from .spec import GroupSpec, build_group


def check_group(spec: GroupSpec, budget: SearchBudget, max_order: int) -> tuple[list[str], list[str]]:
    """(failures, notes) for one catalog group."""
    G = build_group(spec)
    failures, notes = [], []
    subgroups = all_subgroups(G, max_order)

    s = sigma(G, budget, subgroups)
    if not verify_cover(G, s.certificate):
        failures.append("sigma certificate does not verify")
    if s.exact and is_solvable(G):
        t = tomkinson_sigma(G, max_order)
        if t != s.value:
            failures.append(f"tomkinson {t} != solver sigma {s.value}")
    notes.append(f"sigma {s.value}" if s.exact else f"sigma [{s.lower_bound},{s.value}]")

    if not is_partitionable(G, max_order):
        notes.append("not partitionable")
        return failures, notes

    r = rho(G, budget, subgroups, seed=construction_for(spec, G, max_order))
    if r.certificate is None or not verify_partition(G, r.certificate):
        failures.append("rho certificate missing or invalid")
        return failures, notes
    notes.append(f"rho {r.value}" if r.exact else f"rho [{r.lower_bound},{r.value}]")

    if r.value < max(rho_lower_bound(G), 1 + r.certificate.max_member_order()):
        failures.append(f"rho {r.value} below the counting bounds")
    if s.exact and s.value > r.value:
        failures.append(f"sigma {s.value} > rho {r.value}")

    if r.exact:
        f = rho_formula(spec, G)
        if f is not None and f != r.value:
            failures.append(f"rho formula {f} != solver {r.value}")
        is_klein = G.order == 4
        if (r.value == G.order - 1) != is_klein:
            failures.append(f"rho = |G| - 1 = {r.value} outside C2^2" if not is_klein
                            else f"rho {r.value} != 3 on C2^2")
        if s.exact:
            predicate = main_theorem_predicate(G, max_order)
            if predicate != (s.value == r.value):
                failures.append(f"main predicate {predicate} but sigma {s.value}, rho {r.value}")
            e = exponent(G)
            if is_nilpotent(G) and (s.value == r.value) != (isprime(e) and G.order == e * e):
                failures.append("nilpotent sigma = rho outside C_p x C_p")

    if frobenius_witness(G, max_order) is not None:
        agreement = frobenius_rho_agreement(G, budget, subgroups)
        verdict = {True: "agrees", False: "disagrees", None: "undecided"}[agreement.agree]
        notes.append(f"Frobenius |K|+1 = {agreement.kernel_plus_one} {verdict}")
    return failures, notes


def cmd_crosscheck(max_order: int, budget: SearchBudget | None = None) -> int:
    """Print one PASS/FAIL line per noncyclic catalog group; return the FAIL count."""
    budget = budget or SearchBudget.from_environment()
    print(f"\n=== Crosscheck: catalog up to order {max_order} ===")
    failed = 0
    for spec in catalog(max_order):
        G = build_group(spec)
        if is_cyclic(G):
            continue
        try:
            failures, notes = check_group(spec, budget, get_max_order())
        except GuardExceeded as e:
            print(f"  Warning: {spec} skipped: {e}")
            continue
        status = "FAIL" if failures else "PASS"
        failed += bool(failures)
        print(f"  {status} {spec} (order {G.order}): {', '.join(failures or notes)}")
    print(f"\n  {failed} group(s) failed")
    return failed
