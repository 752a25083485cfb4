"""Arithmetic in GF(p^f) with coefficient-vector elements.

The modulus is the lexicographically smallest monic irreducible of degree f
(ascending coefficients c0, c1, ..., c_{f-1}, 1), so two builds of the same
field always agree element for element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy import factorint, isprime

MAX_FIELD_SIZE = 2 ** 20


def _poly_divmod_is_zero(dividend: list[int], divisor: tuple[int, ...], p: int) -> bool:
    """True when the monic `divisor` divides `dividend` over GF(p)."""
    rem = list(dividend)
    d = len(divisor) - 1
    for shift in range(len(rem) - 1 - d, -1, -1):
        lead = rem[shift + d] % p
        if lead:
            for i, c in enumerate(divisor):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
    return not any(c % p for c in rem[:d])


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    degree = len(coeffs) - 1
    for d in range(1, degree // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_divmod_is_zero(list(coeffs), low + (1,), p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=f):
        coeffs = low + (1,)
        if f == 1 or is_irreducible(coeffs, p):
            return coeffs
    raise ValueError(f"No irreducible polynomial of degree {f} over GF({p})")  # unreachable


@dataclass(frozen=True)
class FiniteField:
    p: int
    f: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.f

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.f})"

    def element(self, coeffs) -> "FieldElem":
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.f:
            raise ValueError(f"{len(coeffs)} coefficients given for {self!r}")
        return FieldElem(self, coeffs + (0,) * (self.f - len(coeffs)))

    def from_int(self, value: int) -> "FieldElem":
        """Embed an integer of the prime field."""
        return self.element([value % self.p])

    @property
    def zero(self) -> "FieldElem":
        return self.element([])

    @property
    def one(self) -> "FieldElem":
        return self.element([1])

    @property
    def x(self) -> "FieldElem":
        if self.f == 1:
            raise ValueError(f"{self!r} is a prime field; x reduces to a constant")
        return self.element([0, 1])

    def elements(self) -> list["FieldElem"]:
        """All elements in coefficient-vector lexicographic order."""
        return [FieldElem(self, c) for c in itertools.product(range(self.p), repeat=self.f)]

    # Integer codes sum c_i p^i let matrix groups store entries as plain ints.
    def encode(self, a: "FieldElem") -> int:
        return sum(c * self.p ** i for i, c in enumerate(a.coeffs))

    def decode(self, code: int) -> "FieldElem":
        coeffs = []
        for _ in range(self.f):
            code, c = divmod(code, self.p)
            coeffs.append(c)
        return FieldElem(self, tuple(coeffs))

    @cached_property
    def add_table(self) -> list[list[int]]:
        elems = [self.decode(c) for c in range(self.order)]
        return [[self.encode(a + b) for b in elems] for a in elems]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        elems = [self.decode(c) for c in range(self.order)]
        return [[self.encode(a * b) for b in elems] for a in elems]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self.encode(-self.decode(c)) for c in range(self.order)]

    @cached_property
    def inv_table(self) -> list[int]:
        return [0] + [self.encode(self.decode(c).inverse()) for c in range(1, self.order)]


@dataclass(frozen=True)
class FieldElem:
    field: FiniteField
    coeffs: tuple[int, ...]

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem) or other.field != self.field:
            raise ValueError(f"Field mismatch: {self.field!r} vs {getattr(other, 'field', other)!r}")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElem":
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return self + (-other)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p, f, modulus = self.field.p, self.field.f, self.field.modulus
        prod = [0] * (2 * f - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + a * b) % p
        # modulus is monic: x^f = -(c0 + c1 x + ... + c_{f-1} x^{f-1})
        for k in range(len(prod) - 1, f - 1, -1):
            lead = prod[k]
            if lead:
                prod[k] = 0
                for i in range(f):
                    prod[k - f + i] = (prod[k - f + i] - lead * modulus[i]) % p
        return FieldElem(self.field, tuple(prod[:f]))

    def __pow__(self, exponent: int) -> "FieldElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError(f"Zero has no inverse in {self.field!r}")
        return self ** (self.field.order - 2)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return self * other.inverse()

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("Zero has no multiplicative order")
        order = self.field.order - 1
        for prime, exp in factorint(order).items():
            for _ in range(exp):
                if (self ** (order // prime)) == self.field.one:
                    order //= prime
                else:
                    break
        return order

    def __repr__(self) -> str:
        terms = [f"{c}" if i == 0 else (f"{c}x^{i}" if c != 1 else f"x^{i}")
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def make_field(p: int, f: int = 1) -> FiniteField:
    """Build GF(p^f) with its deterministic modulus."""
    if not isprime(p):
        raise ValueError(f"Characteristic must be prime, got {p}")
    if f < 1:
        raise ValueError(f"Extension degree must be positive, got {f}")
    if p ** f > MAX_FIELD_SIZE:
        raise ValueError(f"GF({p}^{f}) exceeds the field size guard {MAX_FIELD_SIZE}")
    return FiniteField(p, f, smallest_irreducible(p, f))


def field_arith(a: FieldElem, b: FieldElem | int | None, op: str) -> FieldElem:
    """Dispatch one of add, sub, mul, div, pow, inv."""
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    ops = {"add": FieldElem.__add__, "sub": FieldElem.__sub__,
           "mul": FieldElem.__mul__, "div": FieldElem.__truediv__}
    if op not in ops:
        raise ValueError(f"Unknown field operation '{op}'")
    return ops[op](a, b)


def multiplicative_generator(field: FiniteField) -> FieldElem:
    """First element in coefficient-vector order whose order is |F| - 1."""
    target = field.order - 1
    for a in field.elements():
        if not a.is_zero() and a.multiplicative_order() == target:
            return a
    raise ValueError(f"{field!r} has no primitive element")  # unreachable
