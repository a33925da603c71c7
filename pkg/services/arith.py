"""Exact integer and rational helpers shared by every service.

Rationals are ``fractions.Fraction``: always stored in lowest terms with a
positive denominator, so equality is structural.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Tuple

import gmpy2

from services.errors import DomainError

logger = logging.getLogger(__name__)

Rat = Fraction

TRIAL_DIVISION_BOUND = 10_000
DEFAULT_FACTOR_SEED = 0x5EED

# Strong-pseudoprime tests to these bases are exact below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MILLER_RABIN_EXACT_BOUND = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class Factorization:
    value: int
    sign: int
    factors: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def recompose(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p ** e
        return n

    def __str__(self) -> str:
        body = '·'.join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or '1'
        return f"-{body}" if self.sign < 0 else body


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below MILLER_RABIN_EXACT_BOUND.

    Larger inputs are outside what this package certifies and raise.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n >= MILLER_RABIN_EXACT_BOUND:
        raise DomainError(f"primality of {n} is beyond the deterministic range")

    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random, max_rounds: int = 64) -> Optional[int]:
    """Return a nontrivial factor of the odd composite n, or None."""
    for _ in range(max_rounds):
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _trial_factor_from(n: int, start: int) -> int:
    """Smallest prime factor of n that is >= start; n itself when prime."""
    d = start | 1
    limit = isqrt(n)
    while d <= limit:
        if n % d == 0:
            return d
        d += 2
    return n


def _split(n: int, rng: random.Random, bound: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _pollard_brent(n, rng)
    if f is None:
        logger.warning("rho failed on %d, falling back to trial division", n)
        f = _trial_factor_from(n, bound)
    _split(f, rng, bound, out)
    _split(n // f, rng, bound, out)


def factorize(n: int, seed: int = DEFAULT_FACTOR_SEED, bound: int = TRIAL_DIVISION_BOUND) -> Factorization:
    if n == 0:
        raise DomainError("cannot factor 0")

    sign = -1 if n < 0 else 1
    m = abs(n)
    found = {}

    for p in _SMALL_PRIMES:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    d = _SMALL_PRIMES[-1] + 2
    while d <= bound and d * d <= m:
        while m % d == 0:
            found[d] = found.get(d, 0) + 1
            m //= d
        d += 2

    if m > 1:
        _split(m, random.Random(seed), bound, found)

    return Factorization(value=n, sign=sign, factors=tuple(sorted(found.items())))


def prime_divisors(n: int) -> List[int]:
    return factorize(n).primes


def divisors(n: int) -> List[int]:
    """All positive divisors of |n|, ascending."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p, _ in factorize(n).factors:
        result -= result // p
    return result


def integer_root(n: int, t: int) -> Optional[int]:
    """Exact t-th root of n for odd t, or None when n is not a t-th power."""
    if t < 1 or t % 2 == 0:
        raise DomainError(f"integer_root needs an odd positive exponent, got {t}")
    root, exact = gmpy2.iroot(gmpy2.mpz(abs(n)), t)
    if not exact:
        return None
    return int(root) if n >= 0 else -int(root)
