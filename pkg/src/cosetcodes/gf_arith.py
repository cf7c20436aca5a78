"""Exact arithmetic in F_q, q = p**e.

Elements are encoded as the integer sum(c_i * p**i) of their coefficient vector
in the polynomial basis 1, x, ..., x**(e-1).  The defining polynomial is the
Conway polynomial, so x is a primitive element and multiplication runs through
log/antilog tables.  All array helpers operate elementwise on integer arrays
holding such encodings.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from ._conway import CONWAY
from .errors import FieldMismatchError, InfeasibleParametersError

MAX_ORDER = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = {f for f in range(2, p) if (p - 1) % f == 0 and is_prime(f)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("unreachable")


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, e) with q == p**e, or raise."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                break
            return p, e
    raise InfeasibleParametersError(f"{q} is not a prime power")


class Field:
    """The finite field of order p**e.

    Use :func:`field_new` (cached) rather than calling this directly, so that
    equal fields are the same object.
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise InfeasibleParametersError(f"characteristic {p} is not prime")
        if e < 1:
            raise InfeasibleParametersError(f"extension degree must be >= 1, got {e}")
        if p**e > MAX_ORDER:
            raise InfeasibleParametersError(f"field order {p}**{e} exceeds {MAX_ORDER}")
        self.p = p
        self.e = e
        self.order = p**e
        if e == 1:
            # degree-1 Conway polynomial x - g, g the least primitive root
            g = _least_primitive_root(p)
            self.modulus: tuple[int, ...] = ((-g) % p, 1)
        else:
            self.modulus = CONWAY[(p, e)]
        self._build_tables()

    def _build_tables(self) -> None:
        q, p, e = self.order, self.p, self.e
        exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        # multiply-by-x on coefficient vectors, reducing by the modulus
        low = [(-c) % p for c in self.modulus[:e]]
        coeffs = [0] * e
        coeffs[0] = 1
        for i in range(q - 1):
            val = sum(c * p**j for j, c in enumerate(coeffs))
            if log[val] != -1:
                raise InfeasibleParametersError(
                    f"defining polynomial {self.modulus} is not primitive over F_{p}"
                )
            log[val] = i
            exp[i] = val
            if e == 1:
                coeffs = [(coeffs[0] * low[0]) % p]
            else:
                top = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                coeffs = [(c + top * l) % p for c, l in zip(coeffs, low)]
        # q-1 distinct powers of x: every nonzero residue is a unit, so the
        # quotient ring is a field and the modulus is irreducible.
        exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
        exp[2 * (q - 1)] = exp[0]
        self.exp = exp
        self.log = log
        self._digits = np.array([p**j for j in range(e)], dtype=np.int64)
        if p == 2:
            self._add_table = None
        elif q <= 1024:
            a = np.arange(q)
            self._add_table = self._digit_add(a[:, None], a[None, :])
        else:
            self._add_table = None
        self._neg = self._digit_neg(np.arange(q))

    # -- digit helpers -------------------------------------------------------

    def _digit_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for d in self._digits:
            out += ((a // d % self.p + b // d % self.p) % self.p) * d
        return out

    def _digit_neg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        for d in self._digits:
            out += ((-(a // d % self.p)) % self.p) * d
        return out

    # -- identity ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __reduce__(self):
        return (field_new, (self.p, self.e))

    def __call__(self, value: int) -> FieldElement:
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an element encoding of F_{self.order}")
        return FieldElement(self, value)

    def __iter__(self):
        return (FieldElement(self, v) for v in range(self.order))

    def __len__(self) -> int:
        return self.order

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        """The root of the defining polynomial (a primitive element)."""
        return FieldElement(self, int(self.exp[1]))

    def coefficients(self, value: int) -> tuple[int, ...]:
        return tuple((value // self.p**j) % self.p for j in range(self.e))

    def from_coefficients(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        return sum((int(c) % self.p) * self.p**j for j, c in enumerate(coeffs))

    # -- scalar arithmetic on encodings ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int(self._digit_add(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if n == 0 else 0
        return int(self.exp[(self.log[a] * n) % (self.order - 1)])

    # -- vectorized arithmetic on integer arrays -----------------------------

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._digit_add(a, b)

    def neg_arr(self, a) -> np.ndarray:
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.exp[self.log[a[nz]] + self.log[b[nz]]]
        return out

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    # -- subfields -----------------------------------------------------------

    def subfield_embedding(self, sub: Field) -> np.ndarray:
        """Table mapping encodings of ``sub`` to their images in this field.

        Conway polynomials are norm-compatible, so the generator of the
        subfield maps to x**((q-1)/(q_sub-1)).
        """
        if sub.p != self.p or self.e % sub.e:
            raise FieldMismatchError(f"{sub} is not a subfield of {self}")
        step = (self.order - 1) // (sub.order - 1)
        table = np.zeros(sub.order, dtype=np.int64)
        for v in range(1, sub.order):
            table[v] = self.exp[(int(sub.log[v]) * step) % (self.order - 1)]
        return table


@functools.lru_cache(maxsize=None)
def field_new(p: int, e: int = 1) -> Field:
    """Return the (cached) field of order p**e."""
    return Field(p, e)


def gf(q: int) -> Field:
    """Field of order q, for a prime power q."""
    return field_new(*prime_power(q))


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`Field`; serializes as its integer encoding."""

    field: Field
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            # integers act through the prime subfield
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1, q: int | None = None) -> FieldElement:
        """Return self**(q**i); q defaults to the characteristic."""
        q = self.field.p if q is None else q
        if i < 0:
            raise ValueError("frobenius exponent must be >= 0")
        if self.value == 0:
            return self
        n = self.field.order - 1
        return FieldElement(self.field, int(self.field.exp[(int(self.field.log[self.value]) * pow(q, i, n)) % n]))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.field.order})({self.value})"

    def __str__(self) -> str:
        return str(self.value)


# convenience module-level operations mirroring the element operators
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, i: int, q: int | None = None) -> FieldElement:
    return a.frobenius(i, q)
