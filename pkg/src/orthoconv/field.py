"""Prime field arithmetic Z/pZ for NTT-friendly primes.

Elements are carried around as canonical Python ints in ``[0, p)``; polynomial
code stores them in numpy arrays whose dtype is picked by :attr:`PrimeField.dtype`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

# 119 * 2**23 + 1
DEFAULT_MODULUS = 998244353
# 2**8 + 1, small enough for exhaustive tests
SMALL_TEST_MODULUS = 257

MAX_MODULUS = 1 << 62
# products of two residues must fit in int64
_INT64_LIMIT = 1 << 31
# minimum two-adic valuation of p - 1 accepted as "NTT friendly"
MIN_TWO_ADICITY = 20


class FieldError(ValueError):
    """Bad modulus or an operation outside the field's domain."""


class CapacityError(FieldError):
    """Requested NTT size exceeds the 2-power roots of unity of the field."""


def two_adicity(n: int) -> int:
    """Largest k with 2**k dividing n (n > 0)."""
    return (n & -n).bit_length() - 1


def is_ntt_friendly(p: int) -> bool:
    from sympy import isprime

    return 2 < p < MAX_MODULUS and isprime(p) and two_adicity(p - 1) >= MIN_TWO_ADICITY


class PrimeField:
    """The field Z/pZ.

    ``p`` must be an odd prime below 2**62. Fields are cached per modulus, so
    ``PrimeField(p) is PrimeField(p)``.
    """

    _instances: dict[int, PrimeField] = {}

    def __new__(cls, modulus: int = DEFAULT_MODULUS):
        modulus = int(modulus)
        inst = cls._instances.get(modulus)
        if inst is None:
            _check_modulus(modulus)
            inst = super().__new__(cls)
            inst.p = modulus
            inst.two_adicity = two_adicity(modulus - 1)
            cls._instances[modulus] = inst
        return inst

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __reduce__(self):
        return (PrimeField, (self.p,))

    @property
    def dtype(self):
        return np.int64 if self.p < _INT64_LIMIT else object

    @property
    def max_ntt_size(self) -> int:
        return 1 << self.two_adicity

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value) % self.p, self)

    # scalar arithmetic on canonical ints

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def pow(self, x: int, e: int) -> int:
        return pow(x, e, self.p)

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(x, -1, self.p)

    def div(self, x: int, y: int) -> int:
        return x * self.inv(y) % self.p

    def batch_inv(self, values) -> list[int]:
        """Invert every element with a single field inversion (Montgomery's trick)."""
        values = [int(v) % self.p for v in values]
        prefix = [1] * (len(values) + 1)
        for i, v in enumerate(values):
            if v == 0:
                raise ZeroDivisionError(f"0 has no inverse modulo {self.p} (position {i})")
            prefix[i + 1] = prefix[i] * v % self.p
        out = [0] * len(values)
        acc = pow(prefix[-1], -1, self.p)
        for i in range(len(values) - 1, -1, -1):
            out[i] = acc * prefix[i] % self.p
            acc = acc * values[i] % self.p
        return out

    @cached_property
    def _nonresidue(self) -> int:
        g = 2
        while pow(g, (self.p - 1) // 2, self.p) != self.p - 1:
            g += 1
        return g

    def root_of_unity(self, order: int) -> int:
        """Primitive root of unity of the given power-of-two order."""
        if order < 1 or order & (order - 1):
            raise FieldError(f"root order must be a power of two, got {order}")
        if order > self.max_ntt_size:
            raise CapacityError(
                f"no root of unity of order {order} modulo {self.p} "
                f"(max {self.max_ntt_size})"
            )
        # g has order divisible by 2**k when g is a non-residue
        top = pow(self._nonresidue, (self.p - 1) >> self.two_adicity, self.p)
        return pow(top, self.max_ntt_size // order, self.p)

    # arrays

    def array(self, values, length: int | None = None) -> np.ndarray:
        """Canonical 1-D coefficient array, zero-padded (never truncated) to ``length``."""
        vals = [int(v) % self.p for v in values]
        if length is not None:
            if len(vals) > length:
                raise ValueError(f"{len(vals)} values do not fit in length {length}")
            vals.extend([0] * (length - len(vals)))
        return np.array(vals, dtype=self.dtype) if vals else np.zeros(0, dtype=self.dtype)

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Exact matrix product mod p (object arithmetic, meant for small matrices)."""
        A = np.asarray(A).astype(object)
        B = np.asarray(B).astype(object)
        return (A @ B) % self.p


def _check_modulus(p: int) -> None:
    from sympy import isprime

    if not 2 < p < MAX_MODULUS:
        raise FieldError(f"modulus must be an odd prime below 2**62, got {p}")
    if not isprime(p):
        raise FieldError(f"modulus {p} is not prime")


@lru_cache(maxsize=None)
def default_field() -> PrimeField:
    return PrimeField(DEFAULT_MODULUS)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A single residue bound to its field. Immutable."""

    value: int
    field: PrimeField

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("mixing elements of different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement((self.value + o) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement((self.value - o) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement((o - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.value * o % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self * self.field.inv(o)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)
