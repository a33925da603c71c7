"""Unit tests for exact arithmetic in Z[zeta_t] and the descent identities"""

import random
from fractions import Fraction

import pytest
import sympy

from services.cyclotomic import (
    CycElem,
    alpha_congruence_check,
    alpha_element,
    alpha_is_not_real,
    cofactor,
    cofactor_coprime_check,
    cyc_add,
    cyc_mul,
    cyc_neg,
    galois,
    is_real,
    is_unit,
    lambda_element,
    norm,
    one_minus_zeta_valuation,
    splitting_data,
    verify_conjugate_product,
    verify_delta_unit,
    verify_norm_factorization,
    verify_ramified_generator,
    verify_t_over_lambda_unit,
)
from services.errors import DomainError
from tests.fixtures.factories import CoprimePairFactory, CycElemFactory

FIELDS = [5, 7, 11]


def zeta(t, a=1):
    return CycElem.zeta(t, a)


@pytest.mark.unit
class TestRingOperations:

    @pytest.mark.parametrize('t', FIELDS)
    def test_reduction_rule(self, t):
        assert cyc_mul(zeta(t), zeta(t, t - 2)) == CycElem(t, [-1] * (t - 1))
        assert zeta(t, t) == 1

    @pytest.mark.parametrize('t', FIELDS)
    def test_product_of_one_minus_powers_is_t(self, t):
        prod = CycElem.one(t)
        for a in range(1, t):
            prod = cyc_mul(prod, cyc_add(CycElem.one(t), cyc_neg(zeta(t, a))))
        assert prod == CycElem.scalar(t, t)

    def test_identity_and_scalars(self):
        rng = random.Random(5)
        x = CycElemFactory.create(7, rng=rng)
        assert x * 1 == x
        assert 1 * x == x
        assert x - x == 0
        assert 2 - x == -(x - 2)

    @pytest.mark.parametrize('t', FIELDS)
    def test_ring_axioms(self, t):
        rng = random.Random(6 + t)
        for _ in range(20):
            a, b, c = (CycElemFactory.create(t, rng=rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a

    def test_mixed_fields_rejected(self):
        with pytest.raises(DomainError):
            zeta(5) + zeta(7)

    def test_wrong_coefficient_count(self):
        with pytest.raises(DomainError):
            CycElem(5, [1, 2, 3])

    def test_powers(self):
        z = zeta(7)
        assert z ** 7 == 1
        assert z ** -1 == zeta(7, 6)
        assert z ** 0 == 1

    def test_hash_consistent_with_equality(self):
        assert hash(zeta(5, 6)) == hash(zeta(5, 1))
        assert len({zeta(5, a) for a in range(10)}) == 5


@pytest.mark.unit
class TestGaloisAndNorm:

    def test_galois_examples(self):
        rng = random.Random(8)
        x = CycElemFactory.create(7, rng=rng)
        assert galois(1, x) == x
        assert galois(6, galois(6, x)) == x
        assert galois(2, zeta(7)) == zeta(7, 2)

    def test_galois_is_a_ring_map(self):
        rng = random.Random(9)
        x, y = CycElemFactory.create(7, rng=rng), CycElemFactory.create(7, rng=rng)
        for a in range(1, 7):
            assert galois(a, x * y) == galois(a, x) * galois(a, y)

    @pytest.mark.parametrize('t', FIELDS)
    def test_galois_composition(self, t):
        rng = random.Random(40 + t)
        x = CycElemFactory.create(t, rng=rng)
        for a in range(1, t):
            for b in range(1, t):
                assert galois(a, galois(b, x)) == galois(a * b % t, x)

    @pytest.mark.parametrize('t', FIELDS)
    def test_norm_is_multiplicative(self, t):
        rng = random.Random(50 + t)
        for _ in range(10):
            x = CycElemFactory.create(t, rng=rng)
            y = CycElemFactory.create(t, rng=rng)
            assert norm(x * y) == norm(x) * norm(y)

    @pytest.mark.parametrize('a', [0, 7, -1])
    def test_galois_index_range(self, a):
        with pytest.raises(DomainError):
            galois(a, zeta(7))

    @pytest.mark.parametrize('t', FIELDS)
    def test_norm_examples(self, t):
        assert norm(1 - zeta(t)) == t
        assert norm(lambda_element(t)) == t * t
        assert norm(zeta(t)) == 1

    @pytest.mark.parametrize('t', [5, 7])
    def test_norm_is_resultant(self, t):
        x = sympy.symbols('x')
        rng = random.Random(t)
        for _ in range(10):
            elem = CycElemFactory.create(t, rng=rng)
            poly = sum(int(c) * x ** i for i, c in enumerate(elem.coeffs))
            assert norm(elem) == Fraction(int(sympy.resultant(sympy.cyclotomic_poly(t, x), poly, x)))

    @pytest.mark.parametrize('t', [5, 7])
    def test_inverse_matches_conjugate_product(self, t):
        rng = random.Random(100 + t)
        for _ in range(10):
            elem = CycElemFactory.create(t, rng=rng)
            conjugates = CycElem.one(t)
            for a in range(2, t):
                conjugates = conjugates * elem.galois(a)
            assert elem.inverse() == conjugates / norm(elem)
            assert elem * elem.inverse() == 1

    def test_inverse_of_zero(self):
        with pytest.raises(DomainError):
            CycElem.zero(5).inverse()


@pytest.mark.unit
class TestUnitsAndReality:

    def test_examples(self):
        assert is_unit(zeta(7))
        assert not is_real(zeta(7))
        assert not is_unit(1 - zeta(7))
        assert is_real(lambda_element(7))
        assert not is_unit(CycElem.zero(7))

    def test_non_integral_rejected(self):
        with pytest.raises(DomainError):
            is_unit(CycElem.scalar(5, Fraction(1, 2)))

    def test_cyclotomic_units(self):
        # (1 - zeta^a)/(1 - zeta) is a unit for every a prime to t
        for a in range(2, 7):
            assert is_unit((1 - zeta(7, a)) / (1 - zeta(7)))


@pytest.mark.unit
class TestValuation:

    @pytest.mark.parametrize('t', [5, 7])
    def test_examples(self, t):
        assert one_minus_zeta_valuation(CycElem.scalar(t, t)) == t - 1
        assert one_minus_zeta_valuation(lambda_element(t)) == 2
        assert one_minus_zeta_valuation(CycElem.one(t)) == 0

    def test_cap(self):
        assert one_minus_zeta_valuation(CycElem.scalar(7, 49), cap=3) == 3

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            one_minus_zeta_valuation(CycElem.zero(5))

    def test_non_integral_rejected(self):
        with pytest.raises(DomainError):
            one_minus_zeta_valuation(CycElem.scalar(5, Fraction(1, 3)))


@pytest.mark.unit
class TestDescentIdentities:

    @pytest.mark.parametrize('t', [5, 7, 11, 13])
    def test_t_over_lambda_power_is_real_unit(self, t):
        assert verify_t_over_lambda_unit(t)

    def test_delta_unit_example(self):
        assert verify_delta_unit(5, 1, 2)

    @pytest.mark.parametrize('t', [5, 7, 11, 13])
    def test_delta_unit_all_pairs(self, t):
        pairs = [(a, b) for a in range(1, t) for b in range(1, t) if (a - b) % t and (a + b) % t]
        assert len(pairs) == (t - 1) * (t - 3)
        bad = [(a, b) for a, b in pairs if not verify_delta_unit(t, a, b)]
        assert bad == []

    @pytest.mark.parametrize('a,b', [(1, 4), (2, 2), (0, 1)])
    def test_delta_unit_domain(self, a, b):
        with pytest.raises(DomainError):
            verify_delta_unit(5, a, b)

    @pytest.mark.parametrize('t', FIELDS)
    def test_ramified_generator(self, t):
        assert verify_ramified_generator(t)

    @pytest.mark.parametrize('t', FIELDS)
    def test_norm_factorization(self, t):
        rng = random.Random(t)
        for x, y in CoprimePairFactory.create_batch(5, bound=30, rng=rng):
            assert verify_norm_factorization(t, x, y)

    def test_conjugate_product(self):
        rng = random.Random(12)
        for a in range(1, 7):
            x, y = CoprimePairFactory.create(bound=50, rng=rng)
            assert verify_conjugate_product(7, a, x, y)

    @pytest.mark.parametrize('t', [4, 3, 9])
    def test_bad_field(self, t):
        with pytest.raises(DomainError):
            verify_t_over_lambda_unit(t)


@pytest.mark.unit
class TestSplittingData:

    @pytest.mark.parametrize('l,t,f,g,conj', [
        (2, 5, 4, 1, True), (11, 5, 1, 4, False), (2, 7, 3, 2, False),
    ])
    def test_examples(self, l, t, f, g, conj):
        data = splitting_data(l, t)
        assert (data.residue_degree_f, data.num_primes_g, data.conjugation_in_decomposition) == (f, g, conj)

    def test_ramified_rejected(self):
        with pytest.raises(DomainError):
            splitting_data(5, 5)

    def test_fg_is_degree(self):
        for t in (5, 7, 11, 13):
            for l in (2, 3, 17, 19, 23):
                if l != t:
                    data = splitting_data(l, t)
                    assert data.residue_degree_f * data.num_primes_g == t - 1


@pytest.mark.unit
class TestCofactor:

    @pytest.mark.parametrize('t,l,x,y', [(5, 2, 1, 2), (5, 3, 1, 1)])
    def test_examples(self, t, l, x, y):
        assert cofactor_coprime_check(t, l, x, y)

    def test_values(self):
        assert cofactor(5, 1, 2) == 11
        assert cofactor(5, 1, 1) == 1

    def test_hypothesis_is_necessary(self):
        assert cofactor(5, 2, 3) == 55
        with pytest.raises(DomainError):
            cofactor_coprime_check(5, 11, 2, 3)

    @pytest.mark.parametrize('t,l,x,y', [
        (5, 2, 2, 4),   # not coprime
        (5, 2, 1, -1),  # x + y = 0
        (5, 5, 1, 2),   # l = t
        (5, 4, 1, 2),   # l not prime
    ])
    def test_domain_errors(self, t, l, x, y):
        with pytest.raises(DomainError):
            cofactor_coprime_check(t, l, x, y)

    @pytest.mark.parametrize('t,l', [(5, 2), (5, 3), (7, 3), (7, 5), (11, 2)])
    def test_random_pairs(self, t, l):
        rng = random.Random(t * 100 + l)
        for x, y in CoprimePairFactory.create_batch(100, rng=rng):
            assert cofactor_coprime_check(t, l, x, y)


@pytest.mark.unit
class TestAlpha:

    @pytest.mark.parametrize('x,y', [(1, 4), (2, 3)])
    def test_examples(self, x, y):
        assert alpha_congruence_check(5, x, y)

    def test_x_plus_y_zero(self):
        with pytest.raises(DomainError):
            alpha_congruence_check(5, 1, -1)

    def test_t_must_divide_sum(self):
        with pytest.raises(DomainError):
            alpha_congruence_check(5, 1, 2)

    @pytest.mark.parametrize('t', [5, 7])
    def test_random_pairs(self, t):
        rng = random.Random(t)
        for x, y in CoprimePairFactory.create_batch(50, divisible_by=t, rng=rng):
            assert alpha_congruence_check(t, x, y)
            assert alpha_is_not_real(t, x, y)

    def test_alpha_definition(self):
        alpha = alpha_element(5, 1, 4)
        assert alpha * (1 - zeta(5)) == zeta(5) * 4 + 1
