"""Exact arithmetic in Q(zeta_t) and the identities the descent argument uses.

Elements are coefficient vectors in the power basis 1, zeta, ..., zeta^(t-2);
zeta^(t-1) is rewritten as -(1 + zeta + ... + zeta^(t-2)) after every product.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from services.arith import is_prime
from services.errors import DomainError, IdentityFailure
from services.modgroup import contains_minus_one, mult_order

logger = logging.getLogger(__name__)


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: List[Fraction], den: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(_trim(num)) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    return _trim(q), num


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(c) for c in out])


class CycElem:
    __slots__ = ('t', 'coeffs')

    def __init__(self, t: int, coeffs: Sequence):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != t - 1:
            raise DomainError(f"expected {t - 1} coefficients for t={t}, got {len(coeffs)}")
        self.t = t
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, t: int, poly: Sequence) -> CycElem:
        """Reduce an arbitrary polynomial in zeta modulo zeta^t = 1 and Phi_t."""
        full = [Fraction(0)] * t
        for i, c in enumerate(poly):
            full[i % t] += c
        top = full[t - 1]
        return cls(t, [full[i] - top for i in range(t - 1)])

    @classmethod
    def scalar(cls, t: int, c: Union[int, Fraction]) -> CycElem:
        return cls(t, [c] + [0] * (t - 2))

    @classmethod
    def zero(cls, t: int) -> CycElem:
        return cls.scalar(t, 0)

    @classmethod
    def one(cls, t: int) -> CycElem:
        return cls.scalar(t, 1)

    @classmethod
    def zeta(cls, t: int, a: int = 1) -> CycElem:
        poly = [0] * t
        poly[a % t] = 1
        return cls.from_poly(t, poly)

    def _coerce(self, other: object) -> CycElem:
        if isinstance(other, CycElem):
            if other.t != self.t:
                raise DomainError(f"mixed cyclotomic fields t={self.t} and t={other.t}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElem.scalar(self.t, other)
        return NotImplemented

    def __repr__(self):
        return f"CycElem({self.t}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*z^{i}")
        return ' + '.join(terms) or '0'

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.scalar(self.t, other)
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.t == other.t and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.t, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElem(self.t, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.t, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = self.t
        full = [Fraction(0)] * t
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % t] += a * b
        top = full[t - 1]
        return CycElem(t, [full[i] - top for i in range(t - 1)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int) -> CycElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = CycElem.one(self.t)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def galois(self, a: int) -> CycElem:
        """Image under zeta -> zeta^a."""
        t = self.t
        if a % t == 0:
            raise DomainError(f"{a} is not a unit modulo {t}")
        poly = [Fraction(0)] * t
        for i, c in enumerate(self.coeffs):
            poly[(a * i) % t] += c
        return CycElem.from_poly(t, poly)

    def conjugate(self) -> CycElem:
        return self.galois(self.t - 1)

    def norm(self) -> Fraction:
        prod = self
        for a in range(2, self.t):
            prod = prod * self.galois(a)
        if not prod.is_scalar():
            raise IdentityFailure(f"norm of {self!r} is not rational: {prod!r}")
        return prod.coeffs[0]

    def inverse(self) -> CycElem:
        """Inverse by the extended Euclidean algorithm against Phi_t over Q."""
        if self.is_zero():
            raise DomainError("zero has no inverse")
        t = self.t
        phi = [Fraction(1)] * t
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return CycElem.from_poly(t, [x / c for x in s1])


def _check_field(t: int) -> None:
    if t < 5 or not is_prime(t):
        raise DomainError(f"cyclotomic computations need a prime t >= 5, got {t}")


def cyc_add(a: CycElem, b: CycElem) -> CycElem:
    return a + b


def cyc_mul(a: CycElem, b: CycElem) -> CycElem:
    return a * b


def cyc_neg(a: CycElem) -> CycElem:
    return -a


def galois(a: int, x: CycElem) -> CycElem:
    if not 1 <= a <= x.t - 1:
        raise DomainError(f"Galois index must lie in 1..{x.t - 1}, got {a}")
    return x.galois(a)


def norm(x: CycElem) -> Fraction:
    return x.norm()


def is_unit(x: CycElem) -> bool:
    if not x.is_integral():
        raise DomainError(f"{x!r} is not integral")
    if x.is_zero():
        return False
    return abs(x.norm()) == 1


def is_real(x: CycElem) -> bool:
    return x.conjugate() == x


def lambda_element(t: int, c: int = 1) -> CycElem:
    """lambda_c = (1 - zeta^c)(1 - zeta^-c); lambda_1 is the real generator of P^2 above t."""
    one = CycElem.one(t)
    return (one - CycElem.zeta(t, c)) * (one - CycElem.zeta(t, -c))


@lru_cache(maxsize=None)
def _inverse_one_minus_zeta(t: int) -> CycElem:
    return (CycElem.one(t) - CycElem.zeta(t)).inverse()


def one_minus_zeta_valuation(x: CycElem, cap: Optional[int] = None) -> int:
    if x.is_zero():
        raise DomainError("valuation of 0 is infinite")
    if not x.is_integral():
        raise DomainError(f"{x!r} is not integral")
    if cap is None:
        cap = 4 * (x.t - 1)
    inv = _inverse_one_minus_zeta(x.t)
    k = 0
    while k < cap:
        y = x * inv
        if not y.is_integral():
            break
        x = y
        k += 1
    return k


def verify_t_over_lambda_unit(t: int) -> bool:
    """t / lambda^((t-1)/2) is an integral real unit."""
    _check_field(t)
    eta = CycElem.scalar(t, t) * lambda_element(t) ** (-((t - 1) // 2))
    checks = {
        'integral': eta.is_integral(),
        'real': is_real(eta),
    }
    checks['unit'] = checks['integral'] and is_unit(eta)
    if not all(checks.values()):
        logger.error("t/lambda^((t-1)/2) failed %s at t=%d", checks, t)
    return all(checks.values())


def verify_delta_unit(t: int, a: int, b: int) -> bool:
    """lambda * (1/lambda_a - 1/lambda_b) is a real unit and matches its closed form."""
    _check_field(t)
    if not (1 <= a <= t - 1 and 1 <= b <= t - 1):
        raise DomainError(f"a, b must lie in 1..{t - 1}")
    if (a - b) % t == 0 or (a + b) % t == 0:
        raise DomainError(f"b = {b} is congruent to +-a = +-{a} mod {t}")

    z = lambda e: CycElem.zeta(t, e)  # noqa: E731
    lam = lambda_element(t)
    lam_a = lambda_element(t, a)
    lam_b = lambda_element(t, b)

    delta = lam * (lam_a.inverse() - lam_b.inverse())
    closed = lam * (z(-b) - z(-a)) * (z(a + b) - 1) / (lam_a * lam_b)

    checks = {
        'closed_form': delta == closed,
        'integral': delta.is_integral(),
        'real': is_real(delta),
    }
    checks['unit'] = checks['integral'] and is_unit(delta)
    if not all(checks.values()):
        logger.error("delta' failed %s at t=%d, a=%d, b=%d", checks, t, a, b)
    return all(checks.values())


def verify_ramified_generator(t: int) -> bool:
    """zeta^a - zeta^-a generates the prime above t: (1-zeta)-valuation exactly 1."""
    _check_field(t)
    for a in range(1, t):
        x = CycElem.zeta(t, a) - CycElem.zeta(t, -a)
        if one_minus_zeta_valuation(x, cap=2) != 1:
            logger.error("zeta^%d - zeta^-%d is not a uniformizer at t=%d", a, a, t)
            return False
    return True


def verify_norm_factorization(t: int, x: int, y: int) -> bool:
    """(x + y) * prod_a (x + zeta^a y) == x^t + y^t."""
    _check_field(t)
    prod = CycElem.scalar(t, x + y)
    for a in range(1, t):
        prod = prod * (CycElem.zeta(t, a) * y + x)
    return prod == CycElem.scalar(t, x ** t + y ** t)


def verify_conjugate_product(t: int, a: int, x: int, y: int) -> bool:
    """(x + zeta^a y)(x + zeta^-a y) == x^2 + y^2 + (zeta^a + zeta^-a) x y, a real element."""
    _check_field(t)
    if a % t == 0:
        raise DomainError(f"{a} is not a unit modulo {t}")
    za, zma = CycElem.zeta(t, a), CycElem.zeta(t, -a)
    left = (za * y + x) * (zma * y + x)
    right = (za + zma) * (x * y) + (x * x + y * y)
    return left == right and is_real(left)


@dataclass(frozen=True)
class SplittingData:
    l: int
    t: int
    residue_degree_f: int
    num_primes_g: int
    conjugation_in_decomposition: bool


def splitting_data(l: int, t: int) -> SplittingData:
    if l == t:
        raise DomainError(f"l = t = {t} is ramified")
    if not is_prime(l) or not is_prime(t):
        raise DomainError(f"splitting data needs primes, got l={l}, t={t}")
    f = mult_order(l, t)
    return SplittingData(
        l=l,
        t=t,
        residue_degree_f=f,
        num_primes_g=(t - 1) // f,
        conjugation_in_decomposition=contains_minus_one(l, t),
    )


def cofactor(t: int, x: int, y: int) -> int:
    """(x^t + y^t) / (x + y), exact."""
    s = x + y
    if s == 0:
        raise DomainError("x + y = 0")
    q, r = divmod(x ** t + y ** t, s)
    if r:
        raise IdentityFailure(f"x + y does not divide x^{t} + y^{t} for x={x}, y={y}")
    return q


def cofactor_coprime_check(t: int, l: int, x: int, y: int) -> bool:
    """l does not divide (x^t + y^t)/(x + y) when -1 lies in <l mod t>."""
    _check_field(t)
    if gcd(x, y) != 1:
        raise DomainError(f"x={x} and y={y} are not coprime")
    if x + y == 0:
        raise DomainError("x + y = 0")
    if l == t or not is_prime(l):
        raise DomainError(f"l={l} must be a prime different from t")
    if not contains_minus_one(l, t):
        raise DomainError(f"-1 is not in <{l} mod {t}>")
    return cofactor(t, x, y) % l != 0


def alpha_element(t: int, x: int, y: int) -> CycElem:
    """alpha = (x + zeta y) / (1 - zeta)."""
    one = CycElem.one(t)
    return (CycElem.zeta(t) * y + x) / (one - CycElem.zeta(t))


def _alpha_preconditions(t: int, x: int, y: int) -> None:
    _check_field(t)
    if gcd(x, y) != 1:
        raise DomainError(f"x={x} and y={y} are not coprime")
    if x + y == 0:
        raise DomainError("x + y = 0")


def alpha_congruence_check(t: int, x: int, y: int) -> bool:
    """alpha == -y and conj(alpha) == alpha, both mod (1 - zeta)^2."""
    _alpha_preconditions(t, x, y)
    if (x + y) % t:
        raise DomainError(f"{t} does not divide x + y = {x + y}")

    alpha = alpha_element(t, x, y)
    if not alpha.is_integral():
        logger.error("alpha not integral for t=%d, x=%d, y=%d", t, x, y)
        return False

    if one_minus_zeta_valuation(alpha + y, cap=2) < 2:
        logger.error("alpha != -y mod (1-zeta)^2 for t=%d, x=%d, y=%d", t, x, y)
        return False

    diff = alpha.conjugate() - alpha
    if not diff.is_zero() and one_minus_zeta_valuation(diff, cap=2) < 2:
        logger.error("conj(alpha) != alpha mod (1-zeta)^2 for t=%d, x=%d, y=%d", t, x, y)
        return False
    return True


def alpha_is_not_real(t: int, x: int, y: int) -> bool:
    """conj(alpha) == alpha would force (x + y)(zeta + 1) = 0."""
    _alpha_preconditions(t, x, y)
    alpha = alpha_element(t, x, y)
    return alpha.conjugate() != alpha
