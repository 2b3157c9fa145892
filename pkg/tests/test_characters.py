import pytest

from grcodes.characters import (
    CharacterSystem,
    field_quotient_characters,
    gauss_sum_field,
    ring_quotient_characters,
)
from grcodes.cyclotomic import CyclotomicInteger
from grcodes.errors import InvalidSubgroupError, NotAUnitError
from grcodes.rings import FiniteField, GaloisRing


@pytest.fixture(scope="module")
def Z4():
    return GaloisRing(2, 1)


@pytest.fixture(scope="module")
def R42():
    return GaloisRing(2, 2)


def test_eval_additive(Z4, R42):
    cs = CharacterSystem(Z4)
    for x in Z4.elements():
        assert cs.eval_additive(Z4.zero, x) == 1
    assert cs.eval_additive(Z4.one, Z4.one) == CyclotomicInteger.zeta(cs.m, cs.m // 4)
    cs2 = CharacterSystem(R42)
    # trace of xi is 3, so lambda_1(xi) is the third power of the order-4 root
    assert cs2.eval_additive(R42.one, R42.xi) == CyclotomicInteger.zeta(cs2.m, 3 * (cs2.m // 4))


def test_additive_is_homomorphism(R42):
    cs = CharacterSystem(R42)
    beta = R42.element([1, 2])
    for x in R42.elements():
        for y in list(R42.elements())[:6]:
            assert cs.eval_additive(beta, x + y) == cs.eval_additive(beta, x) * cs.eval_additive(beta, y)


def test_eval_mult(Z4, R42):
    cs = CharacterSystem(Z4)
    triv = cs.trivial_mult()
    three = Z4.element([3])
    assert cs.eval_mult(triv, three) == 1
    assert cs.eval_mult((0, Z4.one), three) == -1
    cs2 = CharacterSystem(R42)
    omega = (1, R42.zero)
    assert cs2.eval_mult(omega, R42.xi) == CyclotomicInteger.zeta(cs2.m, cs2.m // 3)
    with pytest.raises(NotAUnitError):
        cs.eval_mult(triv, Z4.element([2]))


def test_orthogonality(Z4, R42):
    for ring in (Z4, R42):
        cs = CharacterSystem(ring)
        for beta in ring.elements():
            total = sum(
                (cs.eval_additive(beta, x) for x in ring.elements()),
                CyclotomicInteger.zero(cs.m),
            )
            assert total == (ring.q * ring.q if beta.is_zero() else 0)
        for chi in cs.all_mult_chars():
            total = sum(
                (cs.eval_mult(chi, x) for x in ring.units()),
                CyclotomicInteger.zero(cs.m),
            )
            expect = ring.q * (ring.q - 1) if cs.mult_char_is_trivial(chi) else 0
            assert total == expect


def test_field_gauss_sums():
    import math

    for p, r in [(2, 1), (2, 2), (3, 1)]:
        field = FiniteField(p, r)
        m = math.lcm(p, field.q - 1 if field.q > 2 else 1)
        assert gauss_sum_field(field, 0, m) == -1  # trivial character
    F4 = FiniteField(2, 2)
    g = gauss_sum_field(F4, 1, 12)
    assert g.abs_square() == 4


def test_ring_gauss_sum_trivial_cases(Z4):
    cs = CharacterSystem(Z4)
    triv = cs.trivial_mult()
    assert cs.gauss_sum_definition(triv, Z4.zero) == 2  # q(q-1)
    assert cs.gauss_sum_definition(triv, Z4.element([2])) == -2
    assert cs.gauss_sum_definition(triv, Z4.one) == 0
    chi = (0, Z4.one)
    assert cs.gauss_sum_closed_form(chi, Z4.zero) == 0  # chi != 1, lambda = 1


def test_ring_gauss_sum_closed_examples(Z4):
    cs = CharacterSystem(Z4)
    chi = (0, Z4.one)
    expected = 2 * CyclotomicInteger.zeta(cs.m, cs.m // 4)
    assert cs.gauss_sum_closed_form(chi, Z4.one) == expected
    assert cs.gauss_sum_definition(chi, Z4.one) == expected
    assert cs.gauss_sum_closed_form(chi, Z4.element([2])) == 0


def test_closed_equals_definition_small_rings():
    for p, r in [(2, 1), (2, 2), (3, 1)]:
        ring = GaloisRing(p, r)
        cs = CharacterSystem(ring)
        for chi in cs.all_mult_chars():
            for beta in ring.elements():
                assert cs.gauss_sum_closed_form(chi, beta) == cs.gauss_sum_definition(chi, beta)


def test_field_quotient_characters():
    assert field_quotient_characters(4, 1) == [0]
    assert field_quotient_characters(4, 3) == [0, 1, 2]
    assert field_quotient_characters(9, 2) == [0, 4]
    with pytest.raises(InvalidSubgroupError):
        field_quotient_characters(9, 3)


def test_ring_quotient_characters(R42):
    cs = CharacterSystem(R42)
    # subgroup = all units: only the trivial character survives
    units = [x for x in R42.elements() if x.is_unit]
    gens = [R42.xi, R42.one + R42.one * 2, R42.one + R42.xi * 2]
    chars = ring_quotient_characters(cs, gens, len(units))
    assert chars == [(0, R42.zero)]
    # wrong subgroup size is rejected
    with pytest.raises(InvalidSubgroupError):
        ring_quotient_characters(cs, gens, 6)
