"""The group-spec grammar and the groups it names.

    C<n>  C<p>^<n>  D<2n>  S<n>  A<n>  PSL2(<q>)  PGL2(<q>)  AGL1(<q>,<d>)  Sz(<q>)
    X x Y   (direct product, left-associative)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce

from sympy import isprime

from algebra import constructors
from algebra.errors import GuardExceeded
from algebra.group import Group

FAMILIES = ("C", "Cp^n", "D", "S", "A", "PSL2", "PGL2", "AGL1", "Sz", "DirectProduct")

_FACTOR = re.compile(
    r"PSL2\((?P<psl>\d+)\)"
    r"|PGL2\((?P<pgl>\d+)\)"
    r"|AGL1\((?P<agl_q>\d+),(?P<agl_d>\d+)\)"
    r"|Sz\((?P<sz>\d+)\)"
    r"|C(?P<c>\d+)(?:\^(?P<c_rank>\d+))?"
    r"|D(?P<d>\d+)"
    r"|S(?P<s>\d+)"
    r"|A(?P<a>\d+)"
)
_SEPARATOR = " x "


class SpecSyntaxError(ValueError):
    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        super().__init__(f"Bad group spec {text!r} at position {position}: expected {expected}")


class SpecValueError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    family: str
    params: tuple[int, ...] = ()
    factors: tuple["GroupSpec", ...] = ()

    def __post_init__(self):
        _validate(self)

    def __str__(self) -> str:
        return format_spec(self)

    @property
    def is_product(self) -> bool:
        return self.family == "DirectProduct"


def _prime_power(q: int) -> tuple[int, int] | None:
    return constructors.prime_power(q)


def _validate(spec: GroupSpec) -> None:
    family, params = spec.family, spec.params
    if family not in FAMILIES:
        raise SpecValueError(f"Unknown family {family!r}")

    if family == "DirectProduct":
        if len(spec.factors) != 2 or params:
            raise SpecValueError("A direct product has exactly two factors and no parameters")
        if spec.factors[1].is_product:
            raise SpecValueError("Direct products associate to the left; the right factor cannot be a product")
        return
    if spec.factors:
        raise SpecValueError(f"{family} takes no factors")

    arity = {"AGL1": 2, "Cp^n": 2}.get(family, 1)
    if len(params) != arity:
        raise SpecValueError(f"{family} takes {arity} parameter(s), got {params}")

    if family == "C" and params[0] < 1:
        raise SpecValueError(f"Cyclic order must be positive, got {params[0]}")
    elif family == "Cp^n":
        p, n = params
        if not isprime(p):
            raise SpecValueError(f"C<p>^<n> needs a prime p, got {p}")
        if n < 1:
            raise SpecValueError(f"Rank must be positive, got {n}")
    elif family == "D" and (params[0] < 4 or params[0] % 2):
        raise SpecValueError(f"Dihedral order must be even and at least 4, got {params[0]}")
    elif family in ("S", "A") and params[0] < 1:
        raise SpecValueError(f"Degree must be positive, got {params[0]}")
    elif family in ("PSL2", "PGL2") and _prime_power(params[0]) is None:
        raise SpecValueError(f"{family} needs a prime power q >= 2, got {params[0]}")
    elif family == "AGL1":
        q, d = params
        if _prime_power(q) is None:
            raise SpecValueError(f"AGL1 needs a prime power q, got {q}")
        if d <= 1 or (q - 1) % d:
            raise SpecValueError(f"AGL1({q},{d}) needs d > 1 dividing {q - 1}")
    elif family == "Sz":
        q = params[0]
        pf = _prime_power(q)
        if pf is None or pf[0] != 2 or pf[1] % 2 == 0 or pf[1] < 3:
            raise SpecValueError(f"Sz(q) needs q = 2^(2m+1) with m >= 1, got {q}")


def format_spec(spec: GroupSpec) -> str:
    family, params = spec.family, spec.params
    if family == "DirectProduct":
        left, right = spec.factors
        return f"{format_spec(left)}{_SEPARATOR}{format_spec(right)}"
    if family == "Cp^n":
        return f"C{params[0]}^{params[1]}"
    if family in ("C", "D", "S", "A"):
        return f"{family}{params[0]}"
    return f"{family}({','.join(str(k) for k in params)})"


def _factor_spec(match: re.Match) -> GroupSpec:
    g = {k: int(v) for k, v in match.groupdict().items() if v is not None}
    if "psl" in g:
        return GroupSpec("PSL2", (g["psl"],))
    if "pgl" in g:
        return GroupSpec("PGL2", (g["pgl"],))
    if "agl_q" in g:
        return GroupSpec("AGL1", (g["agl_q"], g["agl_d"]))
    if "sz" in g:
        return GroupSpec("Sz", (g["sz"],))
    if "c" in g:
        return GroupSpec("Cp^n", (g["c"], g["c_rank"])) if "c_rank" in g else GroupSpec("C", (g["c"],))
    for family, key in (("D", "d"), ("S", "s"), ("A", "a")):
        if key in g:
            return GroupSpec(family, (g[key],))
    raise AssertionError(match.group(0))


def parse_spec(text: str) -> GroupSpec:
    """Parse a group spec; raises SpecSyntaxError or SpecValueError."""
    factors: list[GroupSpec] = []
    pos = 0
    while True:
        match = _FACTOR.match(text, pos)
        if match is None:
            raise SpecSyntaxError(text, pos, "a group factor such as C4, C3^2, D12, S4 or PSL2(7)")
        factors.append(_factor_spec(match))
        pos = match.end()
        if pos == len(text):
            break
        if not text.startswith(_SEPARATOR, pos):
            raise SpecSyntaxError(text, pos, f"'{_SEPARATOR.strip()}' between factors or end of spec")
        pos += len(_SEPARATOR)
    return reduce(lambda left, right: GroupSpec("DirectProduct", factors=(left, right)), factors)


def group_order(spec: GroupSpec) -> int:
    """|G| without building the group."""
    family, params = spec.family, spec.params
    if family == "DirectProduct":
        return group_order(spec.factors[0]) * group_order(spec.factors[1])
    if family == "C":
        return params[0]
    if family == "Cp^n":
        return params[0] ** params[1]
    if family == "D":
        return params[0]
    if family in ("S", "A"):
        n = params[0]
        full = 1
        for k in range(2, n + 1):
            full *= k
        return full if family == "S" or n < 2 else full // 2
    if family == "PSL2":
        q = params[0]
        return q * (q * q - 1) // (2 if q % 2 else 1)
    if family == "PGL2":
        q = params[0]
        return q * (q * q - 1)
    if family == "AGL1":
        return params[0] * params[1]
    q = params[0]
    return q * q * (q - 1) * (q * q + 1)


@lru_cache(maxsize=64)
def build_group(spec: GroupSpec) -> Group:
    """Construct the group a spec names; identical specs give identical tables."""
    family, params = spec.family, spec.params
    if family == "Sz":
        raise GuardExceeded(f"{spec} has order {group_order(spec)}; Suzuki groups are handled by formulas only")
    if family == "DirectProduct":
        return constructors.direct_product(build_group(spec.factors[0]), build_group(spec.factors[1]))
    if family == "C":
        return constructors.cyclic(params[0])
    if family == "Cp^n":
        return constructors.elementary_abelian(*params)
    if family == "D":
        return constructors.dihedral(params[0])
    if family == "S":
        return constructors.symmetric(params[0])
    if family == "A":
        return constructors.alternating(params[0])
    if family == "PSL2":
        return constructors.psl2(params[0])
    if family == "PGL2":
        return constructors.pgl2(params[0])
    return constructors.agl1_frobenius(*params)
