"""Standard group families built through `build_from_generators`."""
from __future__ import annotations

from math import gcd

from sympy import factorint
from sympy.combinatorics import Permutation

from .finite_field import FiniteField, make_field, multiplicative_generator
from .group import TABLE_LIMIT, Group, build_from_generators


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, f) with q = p^f, or None."""
    if q < 2:
        return None
    factors = factorint(q)
    if len(factors) != 1:
        return None
    (p, f), = factors.items()
    return p, f


# --- permutations -----------------------------------------------------------

def _compose_perm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(b[i] for i in a)


def permutation_group(generators, degree: int, *, origin=("", ()), max_order: int = TABLE_LIMIT) -> Group:
    """Group generated by permutations of range(degree).

    Generators may be sympy Permutations or array-form sequences.
    """
    arrays = []
    for g in generators:
        perm = g if isinstance(g, Permutation) else Permutation(list(g))
        if perm.size > degree:
            raise ValueError(f"Generator {perm} moves points beyond degree {degree}")
        arrays.append(tuple(Permutation(perm.array_form, size=degree).array_form))
    return build_from_generators(arrays, _compose_perm, tuple(range(degree)),
                                 origin=origin, max_order=max_order)


def symmetric(n: int) -> Group:
    if n < 1:
        raise ValueError(f"Symmetric group degree must be positive, got {n}")
    gens = []
    if n >= 2:
        gens = [Permutation([[0, 1]], size=n), Permutation([list(range(n))], size=n)]
    return permutation_group(gens, n, origin=("S", (n,)))


def alternating(n: int) -> Group:
    if n < 1:
        raise ValueError(f"Alternating group degree must be positive, got {n}")
    gens = []
    if n >= 3:
        long_cycle = list(range(n)) if n % 2 else list(range(1, n))
        gens = [Permutation([[0, 1, 2]], size=n)]
        if len(long_cycle) >= 3:
            gens.append(Permutation([long_cycle], size=n))
    return permutation_group(gens, n, origin=("A", (n,)))


# --- abelian and dihedral ---------------------------------------------------

def cyclic(n: int) -> Group:
    if n < 1:
        raise ValueError(f"Cyclic group order must be positive, got {n}")
    gens = [1] if n > 1 else []
    return build_from_generators(gens, lambda a, b: (a + b) % n, 0, origin=("C", (n,)))


def elementary_abelian(p: int, n: int) -> Group:
    if prime_power(p) != (p, 1):
        raise ValueError(f"Elementary abelian group needs a prime, got {p}")
    if n < 1:
        raise ValueError(f"Rank must be positive, got {n}")
    basis = [tuple(int(i == k) for i in range(n)) for k in range(n)]

    def add(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    return build_from_generators(basis, add, (0,) * n, origin=("Cp^n", (p, n)))


def dihedral(order: int) -> Group:
    """Dihedral group of the given order 2n, elements r^k s^e as (k, e)."""
    if order < 4 or order % 2:
        raise ValueError(f"Dihedral group order must be even and at least 4, got {order}")
    n = order // 2

    def compose(a, b):
        (k1, e1), (k2, e2) = a, b
        return ((k1 + (-k2 if e1 else k2)) % n, (e1 + e2) % 2)

    return build_from_generators([(1, 0), (0, 1)], compose, (0, 0), origin=("D", (order,)))


def direct_product(G: Group, H: Group) -> Group:
    gens = [(g, 0) for g in G.generators] + [(0, h) for h in H.generators]
    g_rows, h_rows = G.rows, H.rows

    def compose(a, b):
        return g_rows[a[0]][b[0]], h_rows[a[1]][b[1]]

    return build_from_generators(gens, compose, (0, 0), origin=("DirectProduct", ()))


# --- affine and projective groups over GF(q) ----------------------------------

def _field_for(q: int) -> FiniteField:
    pf = prime_power(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pf)


def agl1_frobenius(q: int, d: int) -> Group:
    """x -> a x + b with a in the order-d subgroup of GF(q)* and b in GF(q).

    Elements are (a, b) as field codes; (a1, b1) then (a2, b2) is
    (a1 a2, a2 b1 + b2).
    """
    F = _field_for(q)
    if d <= 1 or (q - 1) % d:
        raise ValueError(f"AGL1({q},{d}) needs d > 1 dividing {q - 1}")
    add, mul = F.add_table, F.mul_table
    omega = F.encode(multiplicative_generator(F) ** ((q - 1) // d))

    def compose(x, y):
        (a1, b1), (a2, b2) = x, y
        return mul[a1][a2], add[mul[a2][b1]][b2]

    translations = [(1, F.p ** i) for i in range(F.f)]
    return build_from_generators(translations + [(omega, 0)], compose, (1, 0),
                                 origin=("AGL1", (q, d)))


def projective_canonical(F: FiniteField, matrix: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    """Scale a 2x2 matrix (row-major field codes) so its first nonzero entry is 1."""
    lead = next(c for c in matrix if c)
    if lead == 1:
        return matrix
    scale = F.inv_table[lead]
    mul = F.mul_table
    return tuple(mul[c][scale] for c in matrix)


def _projective_group(F: FiniteField, gens, origin) -> Group:
    add, mul = F.add_table, F.mul_table

    def compose(x, y):
        a, b, c, d = x
        e, f, g, h = y
        product = (add[mul[a][e]][mul[b][g]], add[mul[a][f]][mul[b][h]],
                   add[mul[c][e]][mul[d][g]], add[mul[c][f]][mul[d][h]])
        return projective_canonical(F, product)

    canonical = [projective_canonical(F, m) for m in gens]
    return build_from_generators(canonical, compose, (1, 0, 0, 1), origin=origin)


def psl2(q: int) -> Group:
    """PSL2(q) as the image of SL2(q) in PGL2(q); |G| = q(q^2-1)/gcd(2, q-1)."""
    F = _field_for(q)
    minus_one = F.neg_table[1]
    alpha = multiplicative_generator(F)
    gens = [(1, 1, 0, 1), (0, minus_one, 1, 0)]
    if F.f > 1:
        gens.append((F.encode(alpha), 0, 0, F.encode(alpha.inverse())))
    G = _projective_group(F, gens, ("PSL2", (q,)))
    expected = q * (q * q - 1) // gcd(2, q - 1)
    assert G.order == expected, f"PSL2({q}) closed to {G.order} elements, expected {expected}"
    return G


def pgl2(q: int) -> Group:
    F = _field_for(q)
    minus_one = F.neg_table[1]
    alpha = F.encode(multiplicative_generator(F))
    gens = [(1, 1, 0, 1), (0, minus_one, 1, 0), (alpha, 0, 0, 1)]
    G = _projective_group(F, gens, ("PGL2", (q,)))
    assert G.order == q * (q * q - 1), f"PGL2({q}) closed to {G.order} elements"
    return G


def field_of(G: Group) -> FiniteField:
    """The field behind a PSL2/PGL2/AGL1 group."""
    family, params = G.origin
    if family not in ("PSL2", "PGL2", "AGL1"):
        raise ValueError(f"{G!r} is not built over a finite field")
    return _field_for(params[0])
