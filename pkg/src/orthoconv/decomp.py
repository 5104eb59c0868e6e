"""Monomial-to-orthogonal conversion through the moments of the orthogonality form.

The linear form ``L`` making the family orthogonal has moment series
``rev(G_{n-1}, n) / rev(F_n, n+1) mod x**(2n-1)``, where ``G`` runs the
recurrence with shifted coefficients. With the Hankel matrix ``H`` of those
moments and ``D = diag(L(F_i**2))`` one has ``F^T H F = D``, hence
``F^{-1} = D^{-1} F^T H``: a transposed product, a transposed expansion and a
diagonal scaling.

Index ``n`` of the family is needed to define ``F_n``. Finite families lacking
it are extended with the triple (1, 0, 1); unbounded ones use their own value.
Moments and normalization constants read the same extended family, which is
what keeps them consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expand import expand, expand_transposed
from .field import PrimeField
from .poly import poly_mul, poly_mul_transposed, rev, series_inv
from .recurrence import RecurrenceFamily, pad as pad_family, sample


@dataclass(frozen=True)
class MomentSeries:
    """``moments[i] = L(x**i)`` for ``i <= 2n - 2``."""

    moments: np.ndarray
    n: int


@dataclass(frozen=True)
class NormalizationConstants:
    """``d[i] = L(F_i**2) = (-1)**i c_2 ... c_{i+1} / a_{i+1}``."""

    d: np.ndarray

    def inverses(self, field: PrimeField) -> np.ndarray:
        return field.array(field.batch_inv(self.d.tolist()))


def extended(family: RecurrenceFamily, n: int) -> RecurrenceFamily:
    return pad_family(family, n)


def g_polynomial(family: RecurrenceFamily, i: int, fast: bool = True) -> np.ndarray:
    """``G_i`` of degree ``i`` (length ``i + 1``), from coefficients shifted by one.

    The fast path expands the unit vector ``e_i`` over the shifted family; the
    slow path runs the shifted recurrence.
    """
    field = family.field
    if i < 0:
        return field.zeros(0)
    shifted = family.shifted()
    if fast:
        unit = field.zeros(i + 1)
        unit[i] = 1
        return expand(shifted, unit)
    p = field.p
    a, b, c = sample(shifted, i)
    prev, cur = field.zeros(i + 1), field.zeros(i + 1)
    cur[0] = 1
    for k in range(1, i + 1):
        nxt = cur * b[k - 1] % p
        nxt[1:] += cur[:-1] * a[k - 1] % p
        nxt += prev * c[k - 1] % p
        prev, cur = cur, nxt % p
    return cur


def moment_series(family: RecurrenceFamily, n: int) -> MomentSeries:
    """First ``2n - 1`` moments of the form orthogonalizing the family."""
    if n < 1:
        raise ValueError("n must be at least 1")
    field = family.field
    ext = extended(family, n)
    unit = field.zeros(n + 1)
    unit[n] = 1
    F = expand(ext, unit)
    G = g_polynomial(ext, n - 1)
    k = 2 * n - 1
    Q = poly_mul(rev(G, n), series_inv(rev(F, n + 1), k, field), field)[:k]
    return MomentSeries(Q.copy(), n)


def normalization(family: RecurrenceFamily, n: int) -> NormalizationConstants:
    """``d_i`` for ``0 <= i < n`` by running products (reads index ``n``)."""
    field = family.field
    p = field.p
    a, _, c = sample(extended(family, n), n)
    a_inv = field.batch_inv(a)
    d = []
    gamma = 1
    for i in range(n):
        if i >= 1:
            gamma = gamma * c[i] % p
        sign = -1 if i % 2 else 1
        d.append(sign * gamma * a_inv[i] % p)
    return NormalizationConstants(field.array(d))


def hankel_matrix(family: RecurrenceFamily, n: int) -> np.ndarray:
    """``H[i, j] = L(x**(i+j))`` for ``0 <= i, j < n``."""
    m = moment_series(family, n).moments
    idx = np.arange(n)
    return m[idx[:, None] + idx[None, :]]


@dataclass(frozen=True)
class DecompPlan:
    """Moments and scaling for one (family, n); reusable across inputs."""

    family: RecurrenceFamily
    n: int
    moments: MomentSeries
    d_inv: np.ndarray

    @classmethod
    def build(cls, family: RecurrenceFamily, n: int) -> DecompPlan:
        d = normalization(family, n)
        return cls(family, n, moment_series(family, n), d.inverses(family.field))

    def apply(self, A) -> np.ndarray:
        field = self.family.field
        A = field.array(A, self.n)
        hankel_image = poly_mul_transposed(self.moments.moments, A, self.n, field)
        w = expand_transposed(self.family, hankel_image)
        return w * self.d_inv % field.p


def decomp(family: RecurrenceFamily, A, n: int | None = None) -> np.ndarray:
    """Coefficients ``alpha`` (length ``n``) with ``sum alpha_i F_i = A``."""
    A = family.field.array(A)
    n = len(A) if n is None else n
    return DecompPlan.build(family, n).apply(A)
