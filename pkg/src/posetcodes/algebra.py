"""Finite fields F_q (q = p^k) as lookup tables, and exhaustive enumeration of F_q^n.

Elements are integers ``0..q-1``.  For a prime field they are residues mod p.
For an extension field the base-p digits of an index are the coefficients of a
polynomial of degree < k (least significant digit = constant term), reduced
modulo a fixed monic irreducible polynomial: the first one in increasing order
of its packed lower coefficients.  So F_4 uses x^2 + x + 1, F_8 uses x^3 + x + 1
and F_9 uses x^2 + 1.

Vectors are tuples of element indices.  Enumeration order is "first coordinate
fastest", i.e. vector ``u`` sits at position ``sum(u[i] * q**i)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DomainError, ValidationError

Vector = tuple[int, ...]

DEFAULT_BUDGET = 10**7


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``, or raise ValidationError."""
    if q < 2:
        raise ValidationError(f"field order must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValidationError(f"{q} is not a prime power")
    return p, k


# -- polynomial helpers over F_p, coefficient lists low -> high ---------------

def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    num = list(num)
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        coef = num[-1] * inv_lead % p
        shift = len(num) - len(den)
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - coef * d) % p
        num.pop()
    return num


def _digits(x: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        x, r = divmod(x, base)
        out.append(r)
    return out


def _is_irreducible(poly: list[int], p: int) -> bool:
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for low in range(p**deg):
            divisor = _digits(low, p, deg) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


@lru_cache(maxsize=None)
def irreducible_polynomial(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree k over F_p (coefficients low -> high)."""
    if k == 1:
        return (0, 1)
    for low in range(p**k):
        poly = _digits(low, p, k) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q with its arithmetic tables.  Build with :func:`make_field`."""

    p: int
    k: int
    modulus: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValidationError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValidationError(f"extension degree must be >= 1, got {self.k}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValidationError("modulus must be monic of degree k")

    @property
    def q(self) -> int:
        return self.p**self.k

    def __str__(self) -> str:
        return f"F_{self.q}" if self.k == 1 else f"F_{self.q}=F_{self.p}^{self.k}"

    @property
    def modulus_str(self) -> str:
        """Reduction polynomial in human form, e.g. ``x^2 + x + 1``; empty for prime fields."""
        if self.k == 1:
            return ""
        terms = []
        for deg in range(self.k, -1, -1):
            c = self.modulus[deg]
            if c == 0:
                continue
            if deg == 0:
                terms.append(str(c))
                continue
            mono = "x" if deg == 1 else f"x^{deg}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    @cached_property
    def add_table(self) -> np.ndarray:
        q, p, k = self.q, self.p, self.k
        digits = np.array([_digits(a, p, k) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % p
        return _frozen((s * weights).sum(axis=2))

    @cached_property
    def mul_table(self) -> np.ndarray:
        q, p, k = self.q, self.p, self.k
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = _digits(a, p, k)
            for b in range(a, q):
                db = _digits(b, p, k)
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                red = _poly_mod(prod, list(self.modulus), p) if k > 1 else [prod[0] % p]
                red = (red + [0] * k)[:k]
                table[a, b] = table[b, a] = sum(c * p**i for i, c in enumerate(red))
        return _frozen(table)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return _frozen(np.argmin(self.add_table, axis=1).astype(np.int64))

    @cached_property
    def sub_table(self) -> np.ndarray:
        return _frozen(self.add_table[:, self.neg_table])

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is -1 (no inverse)."""
        inv = np.full(self.q, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return _frozen(inv)

    # -- scalar arithmetic -------------------------------------------------
    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise ValidationError(f"{a!r} is not an element index of {self}")
        return int(a)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[self.check(a), self.check(b)])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[self.check(a), self.check(b)])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[self.check(a), self.check(b)])

    def neg(self, a: int) -> int:
        return int(self.neg_table[self.check(a)])

    def inv(self, a: int) -> int:
        if self.check(a) == 0:
            raise DomainError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def to_dict(self) -> dict:
        return {"q": self.q, "p": self.p, "k": self.k, "modulus": self.modulus_str or None}


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return FieldSpec(p, k, irreducible_polynomial(p, k))


_FIELD_RE = re.compile(r"^\s*(?:q\s*=\s*)?(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str | int) -> FieldSpec:
    """Parse ``"q=p^k"``, ``"p^k"`` or a plain order such as ``"9"``."""
    if isinstance(text, int):
        return make_field(text)
    m = _FIELD_RE.match(text)
    if not m:
        raise ValidationError(f"cannot parse field specification {text!r}")
    base, exp = int(m.group(1)), int(m.group(2) or 1)
    if exp > 1 and not is_prime(base):
        raise ValidationError(f"{base} is not prime in {text!r}")
    return make_field(base**exp)


def field_arithmetic(spec: FieldSpec, a: int, b: int) -> dict[str, int | None]:
    """All basic operations on one pair; ``inverse`` is None when a == 0."""
    return {
        "sum": spec.add(a, b),
        "difference": spec.sub(a, b),
        "product": spec.mul(a, b),
        "negation": spec.neg(a),
        "inverse": spec.inv(a) if a != 0 else None,
    }


# -- vectors -----------------------------------------------------------------

def check_budget(what: str, size: int, budget: int | None) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if size > limit:
        raise BudgetExceeded(what, size, limit)


def enumerate_vectors(spec: FieldSpec, n: int, budget: int | None = None) -> Iterator[Vector]:
    """Yield every vector of F_q^n exactly once, first coordinate fastest."""
    if n < 1:
        raise ValidationError(f"dimension must be >= 1, got {n}")
    check_budget(f"enumeration of F_{spec.q}^{n}", spec.q**n, budget)
    for rev in itertools.product(range(spec.q), repeat=n):
        yield rev[::-1]


@lru_cache(maxsize=64)
def _all_vectors(q: int, n: int) -> np.ndarray:
    idx = np.arange(q**n, dtype=np.int64)
    out = np.empty((q**n, n), dtype=np.int64)
    for i in range(n):
        idx, out[:, i] = np.divmod(idx, q)
    return _frozen(out)


def vector_array(spec: FieldSpec, n: int, budget: int | None = None) -> np.ndarray:
    """All q^n vectors as a read-only ``(q**n, n)`` array in enumeration order."""
    if n < 1:
        raise ValidationError(f"dimension must be >= 1, got {n}")
    check_budget(f"enumeration of F_{spec.q}^{n}", spec.q**n, budget)
    return _all_vectors(spec.q, n)


def vector_index(spec: FieldSpec, u: Sequence[int]) -> int:
    """Position of ``u`` in the enumeration order."""
    return sum(int(c) * spec.q**i for i, c in enumerate(u))


def check_vector(spec: FieldSpec, n: int, u: Sequence[int]) -> Vector:
    if len(u) != n:
        raise ValidationError(f"vector {tuple(u)} has length {len(u)}, expected {n}")
    return tuple(spec.check(c) for c in u)


def vec_add(spec: FieldSpec, u: Vector, v: Vector) -> Vector:
    return tuple(spec.add(a, b) for a, b in zip(u, v))


def vec_sub(spec: FieldSpec, u: Vector, v: Vector) -> Vector:
    return tuple(spec.sub(a, b) for a, b in zip(u, v))


def vec_neg(spec: FieldSpec, u: Vector) -> Vector:
    return tuple(spec.neg(a) for a in u)


def vec_scale(spec: FieldSpec, c: int, u: Vector) -> Vector:
    return tuple(spec.mul(c, a) for a in u)
