"""Table-driven arithmetic in small finite fields GF(p^r).

An element is an integer in ``0..q-1``. Its base-p digits, least significant
first, are the coefficients of a polynomial in ``x`` of degree < r, reduced
modulo a fixed monic irreducible polynomial. For each ``(p, r)`` the modulus is
the monic irreducible polynomial whose lower coefficients, read as a base-p
integer in the same digit order, are smallest:

    ======  ==================
    q       modulus
    ======  ==================
    4       x^2 + x + 1
    8       x^3 + x + 1
    9       x^2 + 1
    16      x^4 + x + 1
    ======  ==================

Prime fields use plain arithmetic mod p (modulus ``x``).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, NotPrime, ZeroVector

MAX_FIELD_ORDER = 16


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` divided by monic ``den`` over GF(p); little-endian coefficient lists."""
    num = list(num)
    d = len(den) - 1
    for shift in range(len(num) - 1 - d, -1, -1):
        c = num[shift + d] % p
        if c:
            for i, b in enumerate(den):
                num[shift + i] = (num[shift + i] - c * b) % p
    return [c % p for c in num[:d]] if d else []


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    r = len(poly) - 1
    if r < 1 or poly[-1] % p != 1:
        return False
    for d in range(1, r // 2 + 1):
        for div in _monic_polys(p, d):
            if not any(_poly_mod(list(poly), div, p)):
                return False
    return True


def default_modulus(p: int, r: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree r over GF(p), little-endian coefficients."""
    if r == 1:
        return (0, 1)
    for code in range(p**r):
        low = [(code // p**i) % p for i in range(r)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {r} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """An immutable finite field GF(p^r) with precomputed operation tables."""

    p: int
    r: int
    q: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value), self)

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return int(self.inv_table[a])

    # vectorised helpers over uint8 arrays
    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.r == 1:
            return ((a.astype(np.int16) + b) % self.p).astype(np.uint8)
        return self.add_table[a, b]

    def vscale(self, c: int, v):
        return self.mul_table[c][v]

    def vneg(self, v):
        return self.neg_table[v]


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its field, for readable interactive arithmetic."""

    value: int
    field: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return FieldElement(other, self.field).value
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.add(self.value, b), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.sub(self.value, b), self.field)

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field.mul(self.value, b), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        b = self._coerce(other)
        return self * FieldElement(self.field.inv(b), self.field)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


@functools.lru_cache(maxsize=None)
def make_field(p: int, r: int = 1) -> FieldSpec:
    """Build GF(p^r) with the fixed modulus from :func:`default_modulus`.

    Tables are checked to define a field before they are returned.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**r
    if q > MAX_FIELD_ORDER:
        raise FieldTooLarge(f"GF({q}) exceeds the table limit q <= {MAX_FIELD_ORDER}")
    modulus = default_modulus(p, r)

    def digits(a):
        return [(a // p**i) % p for i in range(r)]

    def pack(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    add_t = np.zeros((q, q), dtype=np.uint8)
    mul_t = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        da = digits(a)
        for b in range(q):
            db = digits(b)
            add_t[a, b] = pack([(x + y) % p for x, y in zip(da, db)])
            prod = [0] * (2 * r - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] += x * y
            mul_t[a, b] = pack(_poly_mod(prod, modulus, p) if r > 1 else [prod[0] % p])
    neg_t = np.array([pack([(-x) % p for x in digits(a)]) for a in range(q)], dtype=np.uint8)
    inv_t = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        hits = np.flatnonzero(mul_t[a] == 1)
        if len(hits) != 1:
            raise AssertionError(f"element {a} of GF({q}) has no unique inverse")
        inv_t[a] = hits[0]
    for t in (add_t, mul_t, neg_t, inv_t):
        t.setflags(write=False)
    return FieldSpec(p, r, q, modulus, add_t, mul_t, neg_t, inv_t)


def field_of_order(q: int) -> FieldSpec:
    """The field with q elements, q a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            r, rest = 0, q
            while rest % p == 0:
                rest //= p
                r += 1
            if rest != 1:
                raise NotPrime(f"{q} is not a prime power")
            return make_field(p, r)
    raise NotPrime(f"{q} is not a prime power")


def projective_normalize(v, F: FieldSpec) -> tuple[int, ...]:
    """Scale ``v`` so that its first nonzero coordinate is 1."""
    v = [int(x) for x in v]
    lead = next((x for x in v if x), 0)
    if lead == 0:
        raise ZeroVector("the zero vector has no projective point")
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in v)


def normalize_columns(cols: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Vectorised :func:`projective_normalize` over the columns of a k x n array.

    Zero columns are returned unchanged.
    """
    cols = np.asarray(cols, dtype=np.uint8)
    if cols.size == 0:
        return cols.copy()
    nz = cols != 0
    first = np.argmax(nz, axis=0)
    lead = cols[first, np.arange(cols.shape[1])]
    scale = F.inv_table[lead]
    return F.mul_table[scale[None, :], cols]
