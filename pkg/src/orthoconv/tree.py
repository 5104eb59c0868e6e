"""Transition matrices and their subproduct tree.

``M(i, i+1) = [[0, 1], [c_{i+1}, a_{i+1} x + b_{i+1}]]`` advances
``(F_{i-1}, F_i)`` to ``(F_i, F_{i+1})``. For ``n = 2**d`` the tree stores, at
level ``j`` and position ``i``, the product ``M(2**(d-j) i + 1, 2**(d-j) (i+1) + 1)``.
The rightmost node of every level is never consumed by the conversions and
is not built, so level ``j`` holds ``2**j - 1`` nodes and level 0 is empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import PrimeField
from .poly import poly_add, poly_mul, sum_of_products
from .recurrence import InvalidFamilyError, RecurrenceFamily, sample

# entry (u, v) of a 2x2 matrix, flattened row-major
ENTRIES = ((0, 0), (0, 1), (1, 0), (1, 1))

# output (u, v) of R @ L as (R-entry, L-entry) index pairs into ENTRIES order
_MATMUL_TERMS = [
    [(0, 0), (1, 2)],
    [(0, 1), (1, 3)],
    [(2, 0), (3, 2)],
    [(2, 1), (3, 3)],
]


@dataclass(frozen=True)
class TransitionMatrix:
    """2x2 matrix of polynomials (entries as coefficient arrays)."""

    m00: np.ndarray
    m01: np.ndarray
    m10: np.ndarray
    m11: np.ndarray

    def entries(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.m00, self.m01, self.m10, self.m11

    def __getitem__(self, uv: tuple[int, int]) -> np.ndarray:
        return self.entries()[2 * uv[0] + uv[1]]


def transition(family: RecurrenceFamily, i: int) -> TransitionMatrix:
    """Elementary matrix M(i, i+1)."""
    a, b, c = family.triple(i + 1)
    if a == 0 or c == 0:
        raise InvalidFamilyError(f"zero recurrence coefficient at index {i + 1}", index=i + 1)
    f = family.field
    return TransitionMatrix(f.array([0]), f.array([1]), f.array([c]), f.array([b, a]))


def matrix_product(X: TransitionMatrix, Y: TransitionMatrix, field: PrimeField) -> TransitionMatrix:
    """Plain ``X @ Y``; used as a reference for the batched tree products."""
    x, y = X.entries(), Y.entries()
    out = []
    for (r, s), (t, w) in _MATMUL_TERMS:
        out.append(poly_add(poly_mul(x[r], y[s], field), poly_mul(x[t], y[w], field), field))
    return TransitionMatrix(*out)


def span_product(family: RecurrenceFamily, lo: int, hi: int) -> TransitionMatrix:
    """M(lo, hi) by sequential multiplication of elementary matrices."""
    f = family.field
    acc = TransitionMatrix(f.array([1]), f.array([0]), f.array([0]), f.array([1]))
    for k in range(lo, hi):
        acc = matrix_product(transition(family, k), acc, f)
    return acc


@dataclass(frozen=True)
class SubproductTree:
    """Level-indexed node storage.

    ``levels[j][e]`` is a 2-D array: row ``i`` holds entry ``ENTRIES[e]`` of
    node ``(j, i)`` at declared length ``2**(d-j) - 1 + u + v``.
    """

    depth: int
    field: PrimeField
    levels: list[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]

    @property
    def n(self) -> int:
        return 1 << self.depth

    def count(self, j: int) -> int:
        return self.levels[j][0].shape[0]

    def span(self, j: int, i: int) -> tuple[int, int]:
        w = 1 << (self.depth - j)
        return w * i + 1, w * (i + 1) + 1

    def node(self, j: int, i: int) -> TransitionMatrix:
        if not 0 <= i < self.count(j):
            raise IndexError(f"node ({j}, {i}) is not stored")
        return TransitionMatrix(*(e[i] for e in self.levels[j]))


def _entry_lengths(size: int) -> list[int]:
    return [size - 1 + u + v for u, v in ENTRIES]


def build_tree(family: RecurrenceFamily, n: int) -> SubproductTree:
    """Subproduct tree of the transition matrices for ``n = 2**d``, ``d >= 1``.

    Touches recurrence indices up to ``n - 1`` only.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"tree size must be a power of two >= 2, got {n}")
    field = family.field
    p = field.p
    d = n.bit_length() - 1
    a, b, c = (np.array(s, dtype=field.dtype) for s in sample(family, n - 1))

    levels: list = [None] * d
    # leaf i = M(2i+2, 2i+3) @ M(2i+1, 2i+2), using indices 2i+2 and 2i+3
    cnt = n // 2 - 1
    q = slice(1, 2 * cnt, 2)
    r = slice(2, 2 * cnt + 1, 2)
    aq, bq, cq = a[q], b[q], c[q]
    ar, br, cr = a[r], b[r], c[r]
    leaf00 = cq.reshape(-1, 1)
    leaf01 = np.stack([bq, aq], axis=1)
    leaf10 = np.stack([cq * br % p, cq * ar % p], axis=1)
    leaf11 = np.stack([(cr + bq * br) % p, (bq * ar + aq * br) % p, aq * ar % p], axis=1)
    levels[d - 1] = tuple(np.ascontiguousarray(e) for e in (leaf00, leaf01, leaf10, leaf11))

    for j in range(d - 2, -1, -1):
        size = 1 << (d - j)
        cnt = (1 << j) - 1
        child = levels[j + 1]
        right = [e[1 : 2 * cnt : 2] for e in child]
        left = [e[0 : 2 * cnt : 2] for e in child]
        if cnt == 0:
            levels[j] = tuple(field.zeros((0, length)) for length in _entry_lengths(size))
            continue
        levels[j] = tuple(sum_of_products(right, left, _MATMUL_TERMS, _entry_lengths(size), field))
    return SubproductTree(d, field, levels)
