"""Dense univariate polynomial arithmetic over a prime field.

A polynomial is a numpy array of canonical residues; entry ``i`` is the
coefficient of ``x**i`` and the array length is the *declared* length, so
trailing zeros are meaningful (transposed products depend on them).

Every routine acts on the last axis and broadcasts over leading axes, which
lets the tree code multiply a whole level of nodes in one call.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .field import CapacityError, PrimeField, default_field

# shorter operand below SCHOOLBOOK_THRESHOLD: schoolbook; longer operand below
# KARATSUBA_THRESHOLD: Karatsuba; else NTT. Vectorized schoolbook outruns
# Karatsuba at every size measured with numpy, so the Karatsuba band is empty
# by default; lower SCHOOLBOOK_THRESHOLD to enable it.
SCHOOLBOOK_THRESHOLD = 256
KARATSUBA_THRESHOLD = 256
# batched products over many rows amortize transform overhead much earlier
BATCH_NTT_THRESHOLD = 32


def next_pow2(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


def pad(a: np.ndarray, length: int) -> np.ndarray:
    """Zero-pad or truncate ``a`` along the last axis to ``length``."""
    cur = a.shape[-1]
    if cur == length:
        return a
    if cur > length:
        return a[..., :length]
    out = np.zeros(a.shape[:-1] + (length,), dtype=a.dtype)
    if a.dtype == object:
        out.fill(0)
    out[..., :cur] = a
    return out


def _empty_product(A, B, length, field):
    shape = np.broadcast_shapes(A.shape[:-1], B.shape[:-1]) + (length,)
    return field.zeros(shape)


# --- NTT ---------------------------------------------------------------------


@lru_cache(maxsize=64)
def _bitrev(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=128)
def _twiddle_table(p: int, n: int, inverse: bool) -> np.ndarray:
    """w**k for k < n/2, w a primitive n-th root of unity (inverted if requested)."""
    field = PrimeField(p)
    w = field.root_of_unity(n)
    if inverse:
        w = field.inv(w)
    half = max(n // 2, 1)
    vals = [1] * half
    for k in range(1, half):
        vals[k] = vals[k - 1] * w % p
    return np.array(vals, dtype=field.dtype)


def _addmod(u, v, p):
    s = u + v
    if s.dtype == object:
        return s % p
    s -= p
    s += (s >> 63) & p
    return s


def _submod(u, v, p):
    d = u - v
    if d.dtype == object:
        return d % p
    d += (d >> 63) & p
    return d


def _check_size(n: int, field: PrimeField) -> None:
    if n & (n - 1):
        raise ValueError(f"NTT length must be a power of two, got {n}")
    if n > field.max_ntt_size:
        raise CapacityError(f"NTT of size {n} exceeds capacity {field.max_ntt_size} modulo {field.p}")


def _forward(a: np.ndarray, field: PrimeField) -> np.ndarray:
    """Decimation in frequency: natural order in, bit-reversed order out."""
    n = a.shape[-1]
    _check_size(n, field)
    p = field.p
    lead = a.shape[:-1]
    table = _twiddle_table(p, n, False)
    x = a
    h = n // 2
    while h >= 1:
        x = x.reshape(lead + (n // (2 * h), 2, h))
        u, v = x[..., 0, :], x[..., 1, :]
        d = _submod(u, v, p) * table[:: n // (2 * h)][:h]
        d %= p
        x = np.stack([_addmod(u, v, p), d], axis=-2)
        h //= 2
    return x.reshape(lead + (n,))


def _inverse(a: np.ndarray, field: PrimeField) -> np.ndarray:
    """Decimation in time on bit-reversed input, natural order out, scaled by 1/n."""
    n = a.shape[-1]
    _check_size(n, field)
    p = field.p
    lead = a.shape[:-1]
    table = _twiddle_table(p, n, True)
    x = a
    h = 1
    while h < n:
        x = x.reshape(lead + (n // (2 * h), 2, h))
        u = x[..., 0, :]
        v = x[..., 1, :] * table[:: n // (2 * h)][:h]
        v %= p
        x = np.stack([_addmod(u, v, p), _submod(u, v, p)], axis=-2)
        h *= 2
    x = x.reshape(lead + (n,))
    if n > 1:
        x = x * field.inv(n) % p
    return x


def ntt(a: np.ndarray, field: PrimeField, inverse: bool = False) -> np.ndarray:
    """Radix-2 number-theoretic transform along the last axis, natural order.

    The length must be a power of two within the field's 2-adic capacity.
    ``inverse=True`` computes the inverse transform including the 1/n scaling.
    """
    a = np.asarray(a, dtype=field.dtype)
    n = a.shape[-1]
    _check_size(n, field)
    if inverse:
        return _inverse(a[..., _bitrev(n)], field)
    return _forward(a, field)[..., _bitrev(n)]


def _ntt_mul(A, B, field):
    out_len = A.shape[-1] + B.shape[-1] - 1
    size = next_pow2(out_len)
    fa = _forward(pad(A, size), field)
    fb = _forward(pad(B, size), field)
    return _inverse(fa * fb % field.p, field)[..., :out_len]


# --- schoolbook / Karatsuba --------------------------------------------------


def _schoolbook(A, B, field):
    p = field.p
    if A.shape[-1] > B.shape[-1]:
        A, B = B, A
    la, lb = A.shape[-1], B.shape[-1]
    out = _empty_product(A, B, la + lb - 1, field)
    # int64 accumulators absorb several unreduced products before overflowing
    lazy = max(1, ((1 << 63) - 1 - p) // ((p - 1) ** 2)) if out.dtype != object else 1
    for t in range(la):
        seg = out[..., t:t + lb]
        seg += A[..., t:t + 1] * B
        if (t + 1) % lazy == 0:
            seg %= p
    out %= p
    return out


def _karatsuba(A, B, field):
    """Karatsuba on operands of equal length."""
    L = A.shape[-1]
    if L < SCHOOLBOOK_THRESHOLD:
        return _schoolbook(A, B, field)
    p = field.p
    h = (L + 1) // 2
    A0, A1 = A[..., :h], A[..., h:]
    B0, B1 = B[..., :h], B[..., h:]
    z0 = _karatsuba(A0, B0, field)
    z2 = _karatsuba(A1, B1, field)
    As = A0.copy()
    As[..., : L - h] += A1
    Bs = B0.copy()
    Bs[..., : L - h] += B1
    z1 = _karatsuba(As % p, Bs % p, field)
    z1 -= z0
    z1[..., : z2.shape[-1]] -= z2
    out = _empty_product(A, B, 2 * L - 1, field)
    out[..., : z0.shape[-1]] += z0
    out[..., h : h + z1.shape[-1]] += z1
    out[..., 2 * h : 2 * h + z2.shape[-1]] += z2
    out %= p
    return out


def poly_mul(A: np.ndarray, B: np.ndarray, field: PrimeField | None = None) -> np.ndarray:
    """Exact product, length ``len(A) + len(B) - 1`` (0 if either is empty)."""
    field = field or default_field()
    A = np.asarray(A, dtype=field.dtype)
    B = np.asarray(B, dtype=field.dtype)
    la, lb = A.shape[-1], B.shape[-1]
    if la == 0 or lb == 0:
        return _empty_product(A, B, 0, field)
    if min(la, lb) < SCHOOLBOOK_THRESHOLD:
        return _schoolbook(A, B, field)
    if max(la, lb) < KARATSUBA_THRESHOLD:
        L = max(la, lb)
        return _karatsuba(pad(A, L), pad(B, L), field)[..., : la + lb - 1]
    return _ntt_mul(A, B, field)


# --- reversal, inversion, transposed product ---------------------------------


def rev(F: np.ndarray, m: int) -> np.ndarray:
    """``x**(m-1) * F(1/x)``; F must have degree < m."""
    F = np.asarray(F)
    if m < 1:
        raise ValueError(f"reversal length must be positive, got {m}")
    if F.shape[-1] > m and np.any(F[..., m:] != 0):
        raise ValueError(f"polynomial has degree >= {m}, cannot reverse at length {m}")
    return pad(F, m)[..., ::-1].copy()


def series_inv(F: np.ndarray, k: int, field: PrimeField | None = None) -> np.ndarray:
    """G with F*G = 1 mod x**k, by Newton iteration G <- G*(2 - F*G)."""
    field = field or default_field()
    p = field.p
    F = np.asarray(F, dtype=field.dtype)
    if k < 1:
        raise ValueError(f"precision must be positive, got {k}")
    if F.shape[-1] == 0 or int(F[0]) % p == 0:
        raise ZeroDivisionError("power series with zero constant term is not invertible")
    precisions = [k]
    while precisions[-1] > 1:
        precisions.append((precisions[-1] + 1) // 2)
    G = field.array([field.inv(int(F[0]))])
    for prec in reversed(precisions[:-1]):
        E = poly_mul(pad(F, prec), G, field)[:prec]
        E = (-E) % p
        E[0] = (E[0] + 2) % p
        G = poly_mul(G, E, field)[:prec]
    return pad(G, k)


def poly_mul_transposed(
    A: np.ndarray, B: np.ndarray, k: int, field: PrimeField | None = None
) -> np.ndarray:
    """Transpose of multiplication by B, mapping K[x]_{k+m} to K[x]_k.

    ``m = len(B) - 1`` is B's declared degree. Computed as
    ``(A * rev(B, m+1) mod x**(k+m)) div x**m``. Coefficients of A at index
    ``k+m`` or higher do not reach the result and are ignored.
    """
    field = field or default_field()
    A = np.asarray(A, dtype=field.dtype)
    B = np.asarray(B, dtype=field.dtype)
    if k < 0:
        raise ValueError(f"output length must be non-negative, got {k}")
    m = B.shape[-1] - 1
    if m < 0:
        raise ValueError("multiplier must have a declared length >= 1")
    if k == 0:
        return _empty_product(A, B, 0, field)
    prod = poly_mul(pad(A, k + m), B[..., ::-1], field)
    return prod[..., m : m + k].copy()


def poly_add(A: np.ndarray, B: np.ndarray, field: PrimeField | None = None) -> np.ndarray:
    field = field or default_field()
    L = max(A.shape[-1], B.shape[-1])
    return (pad(A, L) + pad(B, L)) % field.p


def poly_eval(F: np.ndarray, x: int, field: PrimeField | None = None) -> int:
    """Horner evaluation at a field point."""
    field = field or default_field()
    acc = 0
    for c in reversed(np.asarray(F).tolist()):
        acc = (acc * x + int(c)) % field.p
    return acc


def sum_of_products(X, Y, terms, lengths, field: PrimeField | None = None) -> list[np.ndarray]:
    """Evaluate several sums of products that share operands.

    Output ``o`` is ``sum(X[i] * Y[j] for i, j in terms[o])`` at declared
    length ``lengths[o]`` (padded or truncated). All operands must broadcast to
    a common leading shape. On the NTT path every operand is transformed once;
    the transform size may be one short of the longest product, whose single
    wrapped top coefficient is restored from the operands' leading entries.
    """
    field = field or default_field()
    p = field.p
    X = [np.asarray(x, dtype=field.dtype) for x in X]
    Y = [np.asarray(y, dtype=field.dtype) for y in Y]
    lead = np.broadcast_shapes(*(a.shape[:-1] for a in X + Y))
    plen = {(i, j): X[i].shape[-1] + Y[j].shape[-1] - 1 for ts in terms for i, j in ts}

    rows = int(np.prod(lead)) if lead else 1
    threshold = BATCH_NTT_THRESHOLD if rows > 1 else KARATSUBA_THRESHOLD
    if max(a.shape[-1] for a in X + Y) < threshold:
        outs = []
        for ts, length in zip(terms, lengths):
            acc = field.zeros(lead + (length,))
            for i, j in ts:
                prod = poly_mul(X[i], Y[j], field)[..., :length]
                acc[..., : prod.shape[-1]] += prod
            acc %= p
            outs.append(acc)
        return outs

    longest = max(plen.values())
    size = next_pow2(max(longest - 1, 1))
    xs = sorted({i for ts in terms for i, _ in ts})
    ys = sorted({j for ts in terms for _, j in ts})
    fx = _forward(np.stack([np.broadcast_to(pad(X[i], size), lead + (size,)) for i in xs]), field)
    fy = _forward(np.stack([np.broadcast_to(pad(Y[j], size), lead + (size,)) for j in ys]), field)
    fx = dict(zip(xs, fx))
    fy = dict(zip(ys, fy))
    acc = field.zeros((len(terms),) + lead + (size,))
    for o, ts in enumerate(terms):
        for i, j in ts:
            acc[o] += fx[i] * fy[j] % p
        acc[o] %= p
    cyc = _inverse(acc, field)

    outs = []
    for o, (ts, length) in enumerate(zip(terms, lengths)):
        res = np.array(pad(cyc[o], length))
        for i, j in ts:
            if plen[i, j] == size + 1:
                top = X[i][..., -1] * Y[j][..., -1] % p
                res[..., 0] -= top
                if length > size:
                    res[..., size] += top
        res %= p
        outs.append(res)
    return outs
