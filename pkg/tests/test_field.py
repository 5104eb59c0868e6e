import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orthoconv import CapacityError, FieldError, PrimeField
from orthoconv.field import DEFAULT_MODULUS, is_ntt_friendly, two_adicity

P = DEFAULT_MODULUS
residues = st.integers(min_value=0, max_value=P - 1)


def test_default_prime_shape():
    assert P == 119 * 2**23 + 1
    assert two_adicity(P - 1) == 23
    assert is_ntt_friendly(P)


def test_add_examples(field):
    x = field(12345)
    assert (field(0) + x) == x
    assert (field(P - 1) + field(1)).value == 0


def test_mul_examples(field):
    x = field(987654321)
    assert field(1) * x == x
    assert (field(0) * x).value == 0


@given(residues, residues)
def test_add_mul_match_wide_reference(x, y):
    f = PrimeField(P)
    assert (f(x) + f(y)).value == (x + y) % P
    assert (f(x) * f(y)).value == (x * y) % P
    assert (f(x) - f(y)).value == (x - y) % P


def test_inv_examples(field):
    assert field.inv(1) == 1
    assert field.inv(P - 1) == P - 1
    with pytest.raises(ZeroDivisionError):
        field.inv(0)
    with pytest.raises(ZeroDivisionError):
        field(0).inverse()


@given(st.integers(min_value=1, max_value=P - 1))
def test_inv_roundtrip_and_fermat(x):
    f = PrimeField(P)
    assert f.mul(x, f.inv(x)) == 1
    assert f.inv(x) == pow(x, P - 2, P)


def test_batch_inv(field, rng):
    vals = [rng.randrange(1, P) for _ in range(50)]
    assert field.batch_inv(vals) == [field.inv(v) for v in vals]
    with pytest.raises(ZeroDivisionError):
        field.batch_inv([3, 0, 5])


def test_root_of_unity(field):
    assert field.root_of_unity(1) == 1
    assert field.root_of_unity(2) == P - 1
    for m in range(1, 24):
        w = field.root_of_unity(2**m)
        assert pow(w, 2**m, P) == 1
        assert pow(w, 2 ** (m - 1), P) == P - 1
        if m > 1:
            assert field.root_of_unity(2 ** (m - 1)) == w * w % P


def test_root_of_unity_errors(field):
    with pytest.raises(FieldError):
        field.root_of_unity(12)
    with pytest.raises(CapacityError):
        field.root_of_unity(2**24)


def test_small_field_axioms_exhaustive(small_field):
    f = small_field
    p = f.p
    assert f.two_adicity == 8
    for x in range(p):
        assert f.add(x, f.neg(x)) == 0
        if x:
            assert f.mul(x, f.inv(x)) == 1
    rnd = random.Random(0)
    # all pairs for commutativity, random triples for the rest
    for x, y in itertools.product(range(p), repeat=2):
        assert f.add(x, y) == f.add(y, x) and f.mul(x, y) == f.mul(y, x)
    for _ in range(20000):
        x, y, z = (rnd.randrange(p) for _ in range(3))
        assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
        assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
        assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))


@given(residues, residues, residues)
def test_default_field_axioms(x, y, z):
    f = PrimeField(P)
    X, Y, Z = f(x), f(y), f(z)
    assert (X * Y) * Z == X * (Y * Z)
    assert X + Y == Y + X
    assert X * (Y + Z) == X * Y + X * Z


def test_bad_moduli():
    with pytest.raises(FieldError):
        PrimeField(15)
    with pytest.raises(FieldError):
        PrimeField(2**62 + 135)
    assert not is_ntt_friendly(257)
    assert not is_ntt_friendly(1000003)


def test_large_modulus_uses_exact_objects():
    # 2**57 * 29 + 1 is prime and below 2**62
    p = 29 * 2**57 + 1
    f = PrimeField(p)
    assert f.dtype is object
    x, y = p - 2, p - 3
    assert f.mul(x, y) == 6
    assert f(x) * f(y) == f(6)
    w = f.root_of_unity(2**20)
    assert pow(w, 2**19, p) == p - 1


def test_fields_are_shared():
    assert PrimeField(P) is PrimeField(P)


def test_matmul_exact(field):
    A = np.array([[P - 1, 2], [3, P - 5]])
    B = np.array([[P - 1, 0], [1, 1]])
    assert field.matmul(A, B).tolist() == [[3, 2], [(-3 - 5) % P, (-5) % P]]
