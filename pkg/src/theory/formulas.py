"""Closed-form sigma and rho values, bounds and the decision predicates that go with them.

Dispatch is by spec family tag. Functions that take a Group are used as the
fallback when a spec's family has no closed form of its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from sympy import factorint, n_order, primefactors

from algebra.errors import ConsistencyError, GuardExceeded, HypothesisError
from algebra.group import Group, Subgroup
from algebra.lattice import DEFAULT_MAX_ORDER
from algebra.structure import (
    chief_series,
    exponent,
    frobenius_witness,
    hughes_subgroup,
    hughes_thompson_prime,
    is_cyclic,
    is_nilpotent,
    is_partitionable,
    is_pgroup,
    is_solvable,
    minimal_normal_subgroups,
    sylow_subgroup,
)
from particover_utils import get_max_order
from search.branch import SearchBudget
from search.certificates import CoverCertificate, PartitionCertificate
from search.constructions import check_linear_params, frobenius_partition, torus_orders
from search.solver import normal_cyclic_prime_index, rho

if TYPE_CHECKING:
    from harness.spec import GroupSpec

SOURCES = ("formula", "solver-exact", "solver-interval", "construction-upper")

# the three PSL2 exceptions to the half q(q+1) rule
_PSL_SIGMA_EXCEPTIONS = {5: 10, 7: 15, 9: 16}

# small symmetric and alternating groups by their linear-group isomorphism
_SYMMETRIC_SIGMA = {3: 4, 4: 4, 5: 16}
_ALTERNATING_SIGMA = {4: 5, 5: 10, 6: 16}
_SYMMETRIC_RHO = {3: 4, 4: 10, 5: 26}
_ALTERNATING_RHO = {4: 5, 5: 17, 6: 82}


# --- reports ----------------------------------------------------------------

@dataclass(frozen=True)
class Estimate:
    """One sigma or rho value with its provenance.

    Exact values carry `value` (math.inf for sigma of a cyclic group, None for
    rho of a group with no partition); inexact ones carry `interval`.
    """
    value: int | float | None
    source: str
    interval: tuple[int, int] | None = None

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"Unknown source {self.source!r}; expected one of {SOURCES}")
        if self.interval is not None and self.interval[0] > self.interval[1]:
            raise ConsistencyError(f"Empty interval {self.interval} from {self.source}")

    @property
    def exact(self) -> bool:
        return self.interval is None

    def __str__(self) -> str:
        if self.interval is not None:
            return f"[{self.interval[0]},{self.interval[1]}]"
        if self.value is None:
            return "none"
        if self.value == math.inf:
            return "inf"
        return str(int(self.value))

    def to_json(self) -> int | str:
        return int(self.value) if self.exact and self.value not in (None, math.inf) else str(self)


@dataclass(frozen=True)
class SigmaRhoReport:
    spec: "GroupSpec"
    order: int
    sigma: Estimate | None = None
    rho: Estimate | None = None
    cover: CoverCertificate | None = None
    partition: PartitionCertificate | None = None

    def check(self) -> None:
        """Raise ConsistencyError unless sigma <= rho wherever both are known."""
        if self.sigma is None or self.rho is None:
            return
        sigma_low = self.sigma.value if self.sigma.exact else self.sigma.interval[0]
        rho_high = self.rho.value if self.rho.exact else self.rho.interval[1]
        if sigma_low is None or rho_high is None:
            return
        if sigma_low > rho_high:
            raise ConsistencyError(f"{self.spec}: sigma {self.sigma} exceeds rho {self.rho}")

    @property
    def certificate(self) -> PartitionCertificate | CoverCertificate | None:
        return self.partition or self.cover


# --- small helpers --------------------------------------------------------------

def _subgroup_is_cyclic(G: Group, H: Subgroup) -> bool:
    orders = G.element_orders
    return max(orders[x] for x in H.ids()) == H.order


def _subgroup_is_abelian(G: Group, H: Subgroup) -> bool:
    ids = G.members(H)
    block = G.table[np.ix_(ids, ids)]
    return bool((block == block.T).all())


def _smallest_prime(n: int) -> int:
    return min(primefactors(n))


# --- sigma ------------------------------------------------------------------

def tomkinson_sigma(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """q + 1 for the smallest chief factor order q with at least two complements."""
    if is_cyclic(G):
        raise HypothesisError(f"{G!r} is cyclic; its covering number is infinite")
    q = chief_series(G, max_order).smallest_complemented_order()
    if q is None:
        raise ConsistencyError(f"No chief factor of the noncyclic solvable group {G!r} has two complements")
    return q + 1


def nilpotent_sigma(G: Group) -> int:
    """p + 1 for the smallest prime p whose Sylow subgroup is noncyclic."""
    if is_cyclic(G):
        raise HypothesisError(f"{G!r} is cyclic")
    if not is_nilpotent(G):
        raise HypothesisError(f"{G!r} is not nilpotent")
    for p in sorted(factorint(G.order)):
        if not _subgroup_is_cyclic(G, sylow_subgroup(G, p)):
            return p + 1
    raise ConsistencyError(f"Every Sylow subgroup of the noncyclic nilpotent group {G!r} is cyclic")


def sigma_psl_formula(q: int, variant: str) -> int:
    """sigma(PSL2(q)) for q >= 4 and sigma(PGL2(q)) for q >= 4."""
    if variant not in ("PSL", "PGL"):
        raise HypothesisError(f"Variant must be PSL or PGL, got {variant!r}")
    check = factorint(q)
    if len(check) != 1 or q < 4:
        raise HypothesisError(f"{variant}2(q) sigma formula needs a prime power q >= 4, got {q}")
    if variant == "PSL" and q in _PSL_SIGMA_EXCEPTIONS:
        return _PSL_SIGMA_EXCEPTIONS[q]
    return q * (q + 1) // 2 + (q % 2)


def _linear_sigma(family: str, q: int) -> int:
    if q == 2:
        return 4
    if q == 3:
        return 5 if family == "PSL2" else 4
    return sigma_psl_formula(q, "PSL" if family == "PSL2" or q % 2 == 0 else "PGL")


def _agl1_kernel_minimal(q: int, d: int) -> bool:
    # the kernel GF(q) is irreducible under multiplication by the order-d subgroup
    # exactly when p has multiplicative order f modulo d
    p, f = next(iter(factorint(q).items()))
    return n_order(p, d) == f


def sigma_formula(spec: "GroupSpec", G: Group | None = None) -> int | float | None:
    """Closed-form sigma for the group's family, math.inf when cyclic, None when unknown.

    Family formulas need no group. The group fallback runs the nilpotent rule
    unguarded and Tomkinson's chief-series rule under PARTICOVER_MAX_ORDER.
    """
    family, params = spec.family, spec.params
    if family == "C" or family == "Cp^n" and params[1] == 1:
        return math.inf
    if family == "Cp^n":
        return params[0] + 1
    if family == "D":
        return _smallest_prime(params[0] // 2) + 1
    if family == "S" and params[0] < 3 or family == "A" and params[0] < 4:
        return math.inf
    if family == "S" and params[0] in _SYMMETRIC_SIGMA:
        return _SYMMETRIC_SIGMA[params[0]]
    if family == "A" and params[0] in _ALTERNATING_SIGMA:
        return _ALTERNATING_SIGMA[params[0]]
    if family in ("PSL2", "PGL2"):
        return _linear_sigma(family, params[0])
    if family == "Sz":
        return suzuki_report(_suzuki_m(params[0])).sigma
    if family == "AGL1" and _agl1_kernel_minimal(*params):
        return params[0] + 1

    if G is None:
        return None
    if is_cyclic(G):
        return math.inf
    if is_nilpotent(G):
        return nilpotent_sigma(G)
    if is_solvable(G):
        try:
            return tomkinson_sigma(G, get_max_order())
        except GuardExceeded:
            return None
    return None


# --- rho --------------------------------------------------------------------

def _linear_rho(family: str, q: int) -> int:
    if q == 2:
        return 4
    if q == 3:
        return 5 if family == "PSL2" else 10
    if family == "PSL2" and q == 5:
        return 17
    return q * q + 1


def ht_rho(G: Group, p: int) -> int:
    """|H_p(G)| + 1 for a group of Hughes-Thompson type relative to p.

    Frobenius groups are accepted only when H_p(G) is cyclic, where the
    prime-index corollary gives the same value.
    """
    if G.order % p or is_pgroup(G):
        raise HypothesisError(f"{G!r} is not of Hughes-Thompson type for {p}: it must be a non-{p}-group of order divisible by {p}")
    H = hughes_subgroup(G, p)
    if H.order == G.order:
        raise HypothesisError(f"H_{p}({G!r}) is the whole group")
    if not _subgroup_is_cyclic(G, H) and frobenius_witness(G) is not None:
        raise HypothesisError(f"{G!r} is a Frobenius group with noncyclic H_{p}")
    return H.order + 1


def _frobenius_closed_form(G: Group) -> int | None:
    w = frobenius_witness(G)
    if w is None:
        return None
    minimal = {N.mask for N in minimal_normal_subgroups(G)}
    if w.kernel.mask in minimal and _subgroup_is_cyclic(G, w.complement):
        return w.kernel.order + 1
    return None


def _structural_rho(G: Group) -> int | None:
    if is_cyclic(G):
        return None
    N = normal_cyclic_prime_index(G)
    if N is not None and is_partitionable(G):
        return N.order + 1
    p = hughes_thompson_prime(G)
    if p is not None:
        H = hughes_subgroup(G, p)
        if _subgroup_is_cyclic(G, H) or frobenius_witness(G) is None:
            return H.order + 1
    return _frobenius_closed_form(G)


def rho_formula(spec: "GroupSpec", G: Group | None = None) -> int | None:
    """Closed-form rho for the group's family, or None when no formula covers it."""
    family, params = spec.family, spec.params
    if family == "C" or family == "Cp^n" and params[1] == 1:
        return None
    if family == "Cp^n":
        p, n = params
        return 1 + p ** -(-n // 2)
    if family in ("PSL2", "PGL2"):
        return _linear_rho(family, params[0])
    if family == "S" and params[0] in _SYMMETRIC_RHO:
        return _SYMMETRIC_RHO[params[0]]
    if family == "A" and params[0] in _ALTERNATING_RHO:
        return _ALTERNATING_RHO[params[0]]
    if family == "D":
        return params[0] // 2 + 1
    if family == "AGL1" and _agl1_kernel_minimal(*params):
        return params[0] + 1
    if family == "Sz" or G is None:
        return None
    try:
        return _structural_rho(G)
    except GuardExceeded:
        return None


def linear_partition_size(q: int, variant: str) -> int:
    """Member count of the torus partition of PSL2(q) or PGL2(q), from group orders alone."""
    try:
        check_linear_params(q, variant)
    except ValueError as e:
        raise HypothesisError(str(e)) from None
    order = q * (q * q - 1)
    if variant == "PSL" and q % 2:
        order //= 2
    split, nonsplit = torus_orders(q, variant)
    split_tori = order // (2 * split)
    nonsplit_tori = order // (2 * nonsplit)
    # q split tori and no Sylow p-subgroup but the unipotent one lie inside the point stabilizer
    return 1 + (split_tori - q) + nonsplit_tori + q


# --- Suzuki -----------------------------------------------------------------

def _suzuki_m(q: int) -> int:
    f = q.bit_length() - 1
    if q != 1 << f or f % 2 == 0 or f < 3:
        raise HypothesisError(f"Sz(q) needs q = 2^(2m+1) with m >= 1, got {q}")
    return (f - 1) // 2


@dataclass(frozen=True)
class SuzukiReport:
    m: int
    q: int
    r: int
    order: int
    sigma: int
    psi_size: int
    rho_lower: int
    torus_identity: bool
    partition_identity: bool

    @property
    def ok(self) -> bool:
        return self.torus_identity and self.partition_identity and self.rho_lower > self.sigma


def suzuki_report(m: int) -> SuzukiReport:
    if m < 1:
        raise HypothesisError(f"Suzuki parameter m must be at least 1, got {m}")
    q = 2 ** (2 * m + 1)
    r = 2 ** (m + 1)
    order = q * q * (q - 1) * (q * q + 1)
    sigma = q * q * (q * q + 1) // 2

    # conjugacy class sizes of the Sylow 2-subgroup U, the torus H and the two cyclic tori
    n_u = q * q + 1
    n_h = order // (2 * (q - 1))
    n_t1 = order // (4 * (q + r + 1))
    n_t2 = order // (4 * (q - r + 1))
    covered = (q * q - 1) * n_u + (q - 2) * n_h + (q + r) * n_t1 + (q - r) * n_t2 + 1

    return SuzukiReport(
        m=m, q=q, r=r, order=order, sigma=sigma,
        psi_size=n_u + n_h + n_t1 + n_t2,
        rho_lower=sigma + q * q - 1,
        torus_identity=(q + r + 1) * (q - r + 1) == q * q + 1,
        partition_identity=covered == order,
    )


# --- predicates -------------------------------------------------------------

def main_theorem_predicate(G: Group, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    """Whether G is C_p x C_p or Frobenius with abelian minimal normal kernel and cyclic complement."""
    if not is_partitionable(G, max_order):
        raise HypothesisError(f"{G!r} is not partitionable")
    if is_pgroup(G) and G.order == exponent(G) ** 2 and _smallest_prime(G.order) == exponent(G):
        return True
    w = frobenius_witness(G, max_order)
    if w is None:
        return False
    minimal = {N.mask for N in minimal_normal_subgroups(G)}
    return (_subgroup_is_abelian(G, w.kernel) and w.kernel.mask in minimal
            and _subgroup_is_cyclic(G, w.complement))


def ht_sigma_equals_rho(G: Group, p: int) -> bool:
    """For G of Hughes-Thompson type relative to p: Frobenius with minimal normal kernel and complement of order p."""
    if G.order % p or is_pgroup(G) or hughes_subgroup(G, p).order == G.order:
        raise HypothesisError(f"{G!r} is not of Hughes-Thompson type for {p}")
    w = frobenius_witness(G)
    if w is None:
        return False
    minimal = {N.mask for N in minimal_normal_subgroups(G)}
    return w.kernel.mask in minimal and w.complement.order == p


@dataclass(frozen=True)
class FrobeniusAgreement:
    kernel_plus_one: int
    rho: int | None
    exact: bool
    agree: bool | None


def frobenius_rho_agreement(G: Group, budget: SearchBudget | None = None,
                            subgroups: list[Subgroup] | None = None) -> FrobeniusAgreement:
    """Compare |K| + 1 with the solver's rho; `agree` is None while undecided."""
    w = frobenius_witness(G)
    if w is None:
        raise HypothesisError(f"{G!r} is not a Frobenius group")
    result = rho(G, budget, subgroups, seed=frobenius_partition(G, w))
    target = w.kernel.order + 1
    if result.exact:
        agree = result.value == target
    else:
        agree = False if result.value is not None and result.value < target else None
    return FrobeniusAgreement(target, result.value, result.exact, agree)
