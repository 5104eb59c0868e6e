"""Orthogonal families given by a three-term recurrence.

``F_{-1} = 0``, ``F_0 = 1`` and ``F_i = (a_i x + b_i) F_{i-1} + c_i F_{i-2}``
for ``i >= 1``. Sequences are 1-indexed; ``c_1`` multiplies ``F_{-1} = 0`` and
is always reported as 1.

Also holds the quadratic reference conversions used as test oracles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .field import PrimeField, default_field

Triple = tuple[int, int, int]
PAD_TRIPLE: Triple = (1, 0, 1)


class InvalidFamilyError(ValueError):
    """A recurrence coefficient violates ``a_i != 0`` / ``c_i != 0`` or data ran out."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class RecurrenceFamily:
    """Provider of recurrence triples ``(a_i, b_i, c_i)`` for ``i >= 1``.

    ``provider`` returns canonical residues. ``available_length`` is the
    largest index with data; ``None`` means unbounded.
    """

    field: PrimeField
    provider: Callable[[int], Triple]
    kind: str = "custom"
    available_length: int | None = None

    def triple(self, i: int) -> Triple:
        if i < 1:
            raise IndexError(f"recurrence indices start at 1, got {i}")
        if self.available_length is not None and i > self.available_length:
            raise InvalidFamilyError(
                f"family '{self.kind}' has data up to index {self.available_length}, "
                f"index {i} requested",
                index=i,
            )
        a, b, c = self.provider(i)
        p = self.field.p
        return a % p, b % p, (1 if i == 1 else c % p)

    def shifted(self) -> RecurrenceFamily:
        """The family with sequences (a_{i+1}), (b_{i+1}), (c_{i+1})."""
        length = None if self.available_length is None else self.available_length - 1
        return RecurrenceFamily(
            self.field, lambda i: self.triple(i + 1), kind=f"shifted({self.kind})",
            available_length=length,
        )

    @classmethod
    def from_arrays(cls, a, b, c, field: PrimeField | None = None) -> RecurrenceFamily:
        """Custom family from 1-indexed data: ``a[0]`` is ``a_1``."""
        field = field or default_field()
        if not len(a) == len(b) == len(c):
            raise InvalidFamilyError(
                f"sequences a, b, c must have equal length, got {len(a)}, {len(b)}, {len(c)}"
            )
        p = field.p
        data = [(int(x) % p, int(y) % p, int(z) % p) for x, y, z in zip(a, b, c)]
        return cls(field, lambda i: data[i - 1], kind="custom", available_length=len(data))

    @classmethod
    def random(cls, length: int, field: PrimeField | None = None, rng: random.Random | None = None
               ) -> RecurrenceFamily:
        """Custom family with uniformly random valid coefficients."""
        field = field or default_field()
        rng = rng or random.Random()
        p = field.p
        a = [rng.randrange(1, p) for _ in range(length)]
        b = [rng.randrange(p) for _ in range(length)]
        c = [rng.randrange(1, p) for _ in range(length)]
        return cls.from_arrays(a, b, c, field)


# --- presets -----------------------------------------------------------------


def _chebyshev_t(f: PrimeField, i: int) -> Triple:
    return (1 if i == 1 else 2), 0, f.neg(1)


def _chebyshev_u(f: PrimeField, i: int) -> Triple:
    return 2, 0, f.neg(1)


def _legendre(f: PrimeField, i: int) -> Triple:
    # i P_i = (2i-1) x P_{i-1} - (i-1) P_{i-2}
    inv_i = f.inv(i)
    return (2 * i - 1) * inv_i % f.p, 0, f.neg((i - 1) * inv_i)


def _hermite(f: PrimeField, i: int) -> Triple:
    # physicists': H_i = 2x H_{i-1} - 2(i-1) H_{i-2}
    return 2, 0, f.neg(2 * (i - 1))


def _laguerre(f: PrimeField, i: int) -> Triple:
    # i L_i = (2i-1-x) L_{i-1} - (i-1) L_{i-2}
    inv_i = f.inv(i)
    return f.neg(inv_i), (2 * i - 1) * inv_i % f.p, f.neg((i - 1) * inv_i)


PRESETS: dict[str, Callable[[PrimeField, int], Triple]] = {
    "chebyshev_t": _chebyshev_t,
    "chebyshev_u": _chebyshev_u,
    "legendre": _legendre,
    "hermite": _hermite,
    "laguerre": _laguerre,
}


def preset(name: str, field: PrimeField | None = None) -> RecurrenceFamily:
    """Classical family by name (``chebyshev-t`` and ``chebyshev_t`` both work)."""
    field = field or default_field()
    key = name.replace("-", "_").lower()
    if key not in PRESETS:
        raise InvalidFamilyError(f"unknown preset '{name}', choose from {sorted(PRESETS)}")
    gen = PRESETS[key]
    return RecurrenceFamily(field, lambda i: gen(field, i), kind=key)


# --- operations --------------------------------------------------------------


def sample(family: RecurrenceFamily, m: int) -> tuple[list[int], list[int], list[int]]:
    """The first ``m`` triples as three lists ``a, b, c`` (``a[0]`` is ``a_1``).

    Raises :class:`InvalidFamilyError` naming the first index where ``a_i = 0``
    or ``c_i = 0`` (``i >= 2``), or where a finite family runs out of data.
    """
    p = family.field.p
    if m >= p:
        raise InvalidFamilyError(f"need {m} recurrence terms but the modulus is only {p}")
    triples = [family.triple(i) for i in range(1, m + 1)]
    a = [t[0] for t in triples]
    b = [t[1] for t in triples]
    c = [t[2] for t in triples]
    if 0 in a:
        i = a.index(0) + 1
        raise InvalidFamilyError(f"a_{i} = 0 in family '{family.kind}'", index=i)
    if 0 in c:
        i = c.index(0) + 1
        raise InvalidFamilyError(f"c_{i} = 0 in family '{family.kind}'", index=i)
    return a, b, c


def pad(family: RecurrenceFamily, m: int) -> RecurrenceFamily:
    """Extend a finite family with the triple (1, 0, 1) so it is valid up to index ``m``."""
    n_avail = family.available_length
    if n_avail is None or n_avail >= m:
        return family

    def provider(i: int) -> Triple:
        return family.provider(i) if i <= n_avail else PAD_TRIPLE

    return RecurrenceFamily(family.field, provider, kind=family.kind, available_length=m)


def naive_expand(family: RecurrenceFamily, alpha) -> np.ndarray:
    """``sum alpha_i F_i`` on the monomial basis by running the recurrence directly."""
    field = family.field
    p = field.p
    alpha = field.array(alpha)
    n = len(alpha)
    if n == 0:
        return field.zeros(0)
    a, b, c = sample(family, n - 1)
    prev = field.zeros(n)
    cur = field.zeros(n)
    cur[0] = 1
    acc = cur * alpha[0] % p
    for i in range(1, n):
        nxt = cur * b[i - 1] % p
        nxt[1:] += cur[:-1] * a[i - 1] % p
        nxt += prev * c[i - 1] % p
        nxt %= p
        prev, cur = cur, nxt
        acc = (acc + cur * alpha[i]) % p
    return acc


def basis_matrix(family: RecurrenceFamily, n: int) -> np.ndarray:
    """n x n matrix whose column j holds the monomial coefficients of F_j."""
    field = family.field
    p = field.p
    a, b, c = sample(family, max(n - 1, 0))
    M = field.zeros((n, n))
    if n == 0:
        return M
    M[0, 0] = 1
    for j in range(1, n):
        col = M[:, j - 1] * b[j - 1] % p
        col[1:] += M[:-1, j - 1] * a[j - 1] % p
        if j >= 2:
            col += M[:, j - 2] * c[j - 1] % p
        M[:, j] = col % p
    return M


def naive_decomp(family: RecurrenceFamily, A) -> np.ndarray:
    """Coefficients on the F basis by back substitution on the basis matrix."""
    field = family.field
    p = field.p
    r = field.array(A)
    n = len(r)
    M = basis_matrix(family, n)
    diag_inv = field.batch_inv(M.diagonal().tolist())
    alpha = field.zeros(n)
    for j in range(n - 1, -1, -1):
        aj = int(r[j]) * diag_inv[j] % p
        alpha[j] = aj
        if aj:
            r[: j + 1] = (r[: j + 1] - M[: j + 1, j] * aj) % p
    return alpha
