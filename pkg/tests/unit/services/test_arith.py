"""Unit tests for the integer helpers"""

import random
from fractions import Fraction
from math import gcd

import pytest
import sympy

from services.arith import (
    Factorization,
    divisors,
    euler_phi,
    factorize,
    integer_root,
    is_prime,
    prime_divisors,
)
from services.errors import DomainError


@pytest.mark.unit
class TestFactorize:
    """Test suite for factorize"""

    def test_small_composite(self):
        fac = factorize(33)
        assert fac.sign == 1
        assert fac.factors == ((3, 1), (11, 1))

    def test_negative(self):
        fac = factorize(-2)
        assert fac.sign == -1
        assert fac.factors == ((2, 1),)
        assert str(fac) == '-2'

    def test_primorial(self):
        assert factorize(2310).primes == [2, 3, 5, 7, 11]

    def test_one_has_no_factors(self):
        fac = factorize(1)
        assert fac.factors == ()
        assert fac.recompose() == 1
        assert str(fac) == '1'

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            factorize(0)

    def test_large_semiprime_goes_through_rho(self):
        p, q = 1_000_003, 999_983
        assert factorize(p * q).factors == ((q, 1), (p, 1))

    def test_prime_powers(self):
        assert factorize(2 ** 10 * 10007 ** 2).factors == ((2, 10), (10007, 2))

    def test_recomposes_and_matches_sympy(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(-10 ** 12, 10 ** 12) or 1
            fac = factorize(n)
            assert fac.recompose() == n
            assert dict(fac.factors) == sympy.factorint(abs(n))
            primes = fac.primes
            assert primes == sorted(set(primes))
            assert all(is_prime(p) for p in primes)

    def test_seed_does_not_change_result(self):
        n = 1_000_003 * 1_000_033
        assert factorize(n, seed=1) == factorize(n, seed=2)

    def test_str_shows_exponents(self):
        assert str(factorize(72)) == '2^3·3^2'


@pytest.mark.unit
class TestIsPrime:

    @pytest.mark.parametrize('n,expected', [
        (37, True), (1, False), (2310, False), (2, True), (0, False), (-7, False),
        (561, False),  # Carmichael
        (3_215_031_751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (2 ** 61 - 1, True),
    ])
    def test_examples(self, n, expected):
        assert is_prime(n) is expected

    def test_agrees_with_sympy(self):
        for n in range(2000):
            assert is_prime(n) == sympy.isprime(n)

    def test_beyond_deterministic_range(self):
        with pytest.raises(DomainError):
            is_prime(2 ** 89 - 1)


@pytest.mark.unit
class TestEulerPhi:

    @pytest.mark.parametrize('n,expected', [(1, 1), (33, 20), (37, 36), (100, 40)])
    def test_examples(self, n, expected):
        assert euler_phi(n) == expected

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            euler_phi(0)

    def test_multiplicative(self):
        rng = random.Random(11)
        checked = 0
        while checked < 100:
            m, n = rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)
            if gcd(m, n) != 1:
                continue
            assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)
            checked += 1

    def test_matches_sympy(self):
        for n in range(1, 500):
            assert euler_phi(n) == sympy.totient(n)


@pytest.mark.unit
class TestIntegerRoot:

    @pytest.mark.parametrize('n,t,expected', [(32, 5, 2), (-32, 5, -2), (33, 5, None), (0, 7, 0), (1, 11, 1)])
    def test_examples(self, n, t, expected):
        assert integer_root(n, t) == expected

    @pytest.mark.parametrize('t', [5, 7, 11])
    def test_inverts_powers(self, t):
        rng = random.Random(t)
        for _ in range(100):
            r = rng.randint(-1000, 1000)
            assert integer_root(r ** t, t) == r
            if r not in (0, -1):
                assert integer_root(r ** t + 1, t) is None

    def test_even_exponent_rejected(self):
        with pytest.raises(DomainError):
            integer_root(16, 4)


@pytest.mark.unit
class TestDivisors:

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(-12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]

    def test_prime_divisors(self):
        assert prime_divisors(-360) == [2, 3, 5]

    def test_factorization_is_immutable(self):
        fac = Factorization(6, 1, ((2, 1), (3, 1)))
        with pytest.raises(AttributeError):
            fac.value = 7


@pytest.mark.unit
def test_rationals_are_normalized_field():
    rng = random.Random(3)
    for _ in range(100):
        a, b, c = (Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * (1 / a) == 1
        assert a.denominator > 0 and gcd(a.numerator, a.denominator) == 1
