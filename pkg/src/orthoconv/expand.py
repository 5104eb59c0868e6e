"""Orthogonal-to-monomial conversion and its transpose.

``expand`` climbs the subproduct tree combining coefficient pairs;
``expand_transposed`` runs the same data flow backwards with truncations and
transposed products, computing ``F_n^T u`` at the same cost.
"""

from __future__ import annotations

import numpy as np

from .poly import next_pow2, pad, poly_mul_transposed, rev, sum_of_products
from .recurrence import RecurrenceFamily, pad as pad_family, sample
from .tree import SubproductTree, build_tree

_ASCENT_TERMS = [[(0, 0), (1, 2)], [(0, 1), (1, 3)]]
_DESCENT_TERMS = [[(0, 0), (1, 1)], [(0, 2), (1, 3)]]


def delta(d: int, j: int) -> int:
    """Length bound for the first ascent component at level ``j`` of a depth-``d`` tree."""
    return max(0, (1 << (d - j)) - 3) + 1


def delta_prime(d: int, j: int) -> int:
    """Length bound for the second ascent component."""
    return (1 << (d - j)) - 1


def _prepare(family: RecurrenceFamily, vec, n: int | None):
    field = family.field
    vec = field.array(vec)
    n = len(vec) if n is None else n
    if n < 1:
        raise ValueError("conversion size must be at least 1")
    if len(vec) > n:
        raise ValueError(f"{len(vec)} coefficients do not fit in size {n}")
    size = max(next_pow2(n), 2)
    return field, pad(vec, size), n, size, pad_family(family, size - 1)


def _first_two(family: RecurrenceFamily):
    a1, b1, _ = sample(family, 1)
    return a1[0], b1[0]


def expand(family: RecurrenceFamily, alpha, n: int | None = None,
           tree: SubproductTree | None = None, check_bounds: bool = False) -> np.ndarray:
    """Monomial coefficients (length ``n``) of ``sum alpha_i F_i``.

    ``n`` defaults to ``len(alpha)``. Sizes that are not powers of two are
    handled by zero-padding ``alpha`` and extending the family with (1, 0, 1).
    A prebuilt ``tree`` for the padded size may be passed in.
    """
    field, alpha, n, size, fam = _prepare(family, alpha, n)
    p = field.p
    if n == 1:
        return alpha[:1].copy()
    a1, b1 = _first_two(fam)
    if size == 2:
        v0, v1 = alpha[:1], alpha[1:2]
    else:
        if tree is None:
            tree = build_tree(fam, size)
        d = tree.depth
        v0 = alpha[0::2].reshape(-1, 1)
        v1 = alpha[1::2].reshape(-1, 1)
        for j in range(d - 2, -1, -1):
            nodes = [e[0::2] for e in tree.levels[j + 1]]
            right = [v0[1::2], v1[1::2]]
            s0, s1 = sum_of_products(right, nodes, _ASCENT_TERMS, [delta(d, j), delta_prime(d, j)], field)
            s0[..., : v0.shape[-1]] += v0[0::2]
            s1[..., : v1.shape[-1]] += v1[0::2]
            v0, v1 = s0 % p, s1 % p
            if check_bounds:
                assert v0.shape[-1] == delta(d, j) and v1.shape[-1] == delta_prime(d, j)
        v0, v1 = v0[0], v1[0]
    # v0 * F_0 + v1 * (a_1 x + b_1)
    out = field.zeros(size)
    out[: len(v0)] += v0
    out[: len(v1)] += v1 * b1 % p
    out[1 : len(v1) + 1] += v1 * a1 % p
    out %= p
    return out[:n].copy()


def expand_transposed(family: RecurrenceFamily, u, n: int | None = None,
                      tree: SubproductTree | None = None) -> np.ndarray:
    """``F_n^T u``: entry ``j`` is ``sum_i u_i * coeff(F_j, x**i)``."""
    field, u, n, size, fam = _prepare(family, u, n)
    if n == 1:
        return u[:1].copy()
    a1, b1 = _first_two(fam)
    F0 = field.array([1])
    F1 = field.array([b1, a1])
    if size == 2:
        return np.concatenate([poly_mul_transposed(u, F0, 1, field),
                               poly_mul_transposed(u, F1, 1, field)])[:n]
    if tree is None:
        tree = build_tree(fam, size)
    d = tree.depth
    v0 = poly_mul_transposed(u, F0, delta(d, 0), field).reshape(1, -1)
    v1 = poly_mul_transposed(u, F1, delta_prime(d, 0), field).reshape(1, -1)
    for j in range(d - 1):
        k0, k1 = delta(d, j + 1), delta_prime(d, j + 1)
        L00, L01, L10, L11 = (e[0::2] for e in tree.levels[j + 1])
        # common declared degrees so the two transposed products of a sum line up
        m0 = max(L00.shape[-1], L01.shape[-1]) - 1
        m1 = max(L10.shape[-1], L11.shape[-1]) - 1
        rb = [rev(L00, m0 + 1), rev(L01, m0 + 1), rev(L10, m1 + 1), rev(L11, m1 + 1)]
        p0, p1 = sum_of_products([v0, v1], rb, _DESCENT_TERMS, [m0 + k0, m1 + k1], field)
        r0, r1 = p0[..., m0:], p1[..., m1:]
        nv0 = field.zeros((2 * v0.shape[0], k0))
        nv1 = field.zeros((2 * v1.shape[0], k1))
        nv0[0::2] = pad(v0, k0)
        nv1[0::2] = pad(v1, k1)
        nv0[1::2] = r0
        nv1[1::2] = r1
        v0, v1 = nv0, nv1
    out = np.empty(size, dtype=v0.dtype)
    out[0::2] = v0[:, 0]
    out[1::2] = v1[:, 0]
    return out[:n].copy()
