import doctest
import random

import pytest

import grcodes.cyclotomic as cyc
from grcodes.cyclotomic import CyclotomicInteger, cyclotomic_polynomial
from grcodes.errors import NotRationalError, OrderMismatchError


def test_doctests():
    failures, _ = doctest.testmod(cyc)
    assert failures == 0


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_basic_identities():
    z4 = CyclotomicInteger.zeta(4)
    assert z4 * z4 == -1
    cube_roots = sum(CyclotomicInteger.zeta(3, k) for k in range(3))
    assert cube_roots.is_zero()
    z8 = CyclotomicInteger.zeta(8)
    assert z8.conjugate() * z8 == 1


def test_canonical_reduction():
    assert CyclotomicInteger.zeta(2).as_rational_integer() == -1
    z6 = CyclotomicInteger.zeta(6)
    # canonical form satisfies z^2 = z - 1 forced by the order-6 minimal polynomial
    assert z6 * z6 == z6 - 1
    assert CyclotomicInteger.zero(5).canonical() == (0, 0, 0, 0)
    reduced = (z6 * z6 * z6).canonical_reduce()
    assert reduced.canonical_reduce().coeffs == reduced.coeffs  # idempotent


def test_as_rational_integer():
    assert sum(CyclotomicInteger.zeta(3, k) for k in range(3)).as_rational_integer() == 0
    assert CyclotomicInteger.zeta(4, 2).as_rational_integer() == -1
    with pytest.raises(NotRationalError):
        CyclotomicInteger.zeta(8).as_rational_integer()
    assert CyclotomicInteger.from_int(12, 7).as_rational_integer() == 7


def test_abs_square():
    for m, k in [(5, 1), (12, 7), (9, 4)]:
        assert CyclotomicInteger.zeta(m, k).abs_square() == 1
    assert CyclotomicInteger.zero(6).abs_square() == 0


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        CyclotomicInteger.zeta(4) + CyclotomicInteger.zeta(8)
    with pytest.raises(OrderMismatchError):
        CyclotomicInteger.zeta(4).coerce(6)


def test_ring_axioms_randomized():
    rng = random.Random(20260810)
    for m in (12, 72):
        def rand():
            return CyclotomicInteger(m, [rng.randint(-3, 3) for _ in range(m)])
        for _ in range(25):
            a, b, c = rand(), rand(), rand()
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a + (-a) == 0
            assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_coercion_is_ring_homomorphism():
    rng = random.Random(7)
    for _ in range(20):
        a = CyclotomicInteger(6, [rng.randint(-2, 2) for _ in range(6)])
        b = CyclotomicInteger(6, [rng.randint(-2, 2) for _ in range(6)])
        assert a.coerce(12) * b.coerce(12) == (a * b).coerce(12)
        assert a.coerce(12) + b.coerce(12) == (a + b).coerce(12)
    # injectivity on a small exhaustive family
    seen = {}
    for k in range(6):
        image = CyclotomicInteger.zeta(6, k).coerce(12).canonical()
        assert image not in seen.values()
        seen[k] = image


def test_integer_embedding_roundtrip():
    for value in (-5, 0, 1, 42):
        assert CyclotomicInteger.from_int(20, value).as_rational_integer() == value
