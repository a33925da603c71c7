import logging
import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Tuple

import gmpy2

from services.arith import divisors, is_prime
from services.errors import DenominatorNotInvertible, DomainError, IdentityFailure

logger = logging.getLogger(__name__)

ScanResidues = Tuple[Tuple[int, int], ...]


class GoodPrimeBranch(str, Enum):
    IOTA_ZERO = 'IotaZero'
    BERNOULLI_SCAN_WITH_VANDIVER = 'BernoulliScanWithVandiver'
    NOT_GOOD = 'NotGood'


@dataclass(frozen=True)
class Assumption:
    """A fact imported from the literature rather than computed."""
    name: str
    statement: str
    source: str

    def to_dict(self) -> Dict:
        return {'name': self.name, 'statement': self.statement, 'source': self.source}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Assumption':
        return cls(name=data['name'], statement=data['statement'], source=data['source'])


VANDIVER_ASSUMPTION = Assumption(
    name='vandiver_range',
    statement='h_t^+ is prime to t for t < 7.10^6',
    source=(
        '"Furthermore, h_t^+ is prime to t for t<7.10^6." (stated with [Buhl]). '
        'Not computed here'
    ),
)

BERNOULLI_CUBE_ASSUMPTION = Assumption(
    name='bernoulli_cube_range',
    statement=(
        'none of the Bernoulli numbers B_{2nt}, n = 1, ..., (t-3)/2 '
        'is divisible by t^3 for t < 12.10^6'
    ),
    source=(
        '[Buhl]: "For a prime number t with t<12.10^6, it has been recently proved that none of the '
        'Bernoulli numbers B_{2nt}, n=1,...,(t-3)/2 is divisible by t^3." '
        'Recomputed here by the modular scan for this t'
    ),
)


@dataclass(frozen=True)
class IrregularityReport:
    t: int
    irregular_pairs: Tuple[int, ...]
    iota: int
    scan_mod_t_cubed: Optional[ScanResidues] = None
    vandiver_assumed: bool = False
    scan_failure_index: Optional[int] = None

    def __post_init__(self) -> None:
        if self.iota != len(self.irregular_pairs):
            raise IdentityFailure(f"iota {self.iota} != {len(self.irregular_pairs)} pairs")
        if any(k % 2 or not 2 <= k <= self.t - 3 for k in self.irregular_pairs):
            raise IdentityFailure(f"irregular index out of range for t={self.t}")
        if self.scan_mod_t_cubed is not None and len(self.scan_mod_t_cubed) != (self.t - 3) // 2:
            raise IdentityFailure(f"partial B_2nt scan recorded for t={self.t}")

    def pairs_display(self) -> List[Tuple[int, int]]:
        return [(self.t, k) for k in self.irregular_pairs]

    def to_dict(self) -> Dict:
        return {
            't': self.t,
            'irregular_pairs': list(self.irregular_pairs),
            'iota': self.iota,
            'scan_mod_t_cubed': (
                None if self.scan_mod_t_cubed is None
                else [[n, r] for n, r in self.scan_mod_t_cubed]
            ),
            'vandiver_assumed': self.vandiver_assumed,
            'scan_failure_index': self.scan_failure_index,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'IrregularityReport':
        scan = data.get('scan_mod_t_cubed')
        return cls(
            t=data['t'],
            irregular_pairs=tuple(data['irregular_pairs']),
            iota=data['iota'],
            scan_mod_t_cubed=None if scan is None else tuple((n, r) for n, r in scan),
            vandiver_assumed=data.get('vandiver_assumed', False),
            scan_failure_index=data.get('scan_failure_index'),
        )


@dataclass(frozen=True)
class GoodPrimeVerdict:
    t: int
    is_good: bool
    branch: GoodPrimeBranch
    report: IrregularityReport
    assumptions: Tuple[Assumption, ...] = field(default_factory=tuple)


class BernoulliService:
    """Bernoulli numbers, irregular pairs and the good-prime predicate.

    Two independent paths compute B_k modulo prime powers: the exact
    recurrence over the rationals (capped at ``exact_cap``) and a power-sum
    path that never builds the rational. The memo of exact values is shared
    by all threads using the instance and only grows under a lock.
    """

    def __init__(self, exact_cap: int = 2000, vandiver_bound: int = 7_000_000, cube_bound: int = 12_000_000):
        self.exact_cap = exact_cap
        self.vandiver_bound = vandiver_bound
        self.cube_bound = cube_bound
        self._even = [Fraction(1)]
        self._lock = threading.Lock()
        self._verdicts = {}

    def bernoulli_exact(self, k: int) -> Fraction:
        """B_k with the B_1 = -1/2 convention."""
        if k < 0:
            raise DomainError(f"Bernoulli index must be >= 0, got {k}")
        if k == 1:
            return Fraction(-1, 2)
        if k % 2:
            return Fraction(0)
        if k > self.exact_cap:
            raise DomainError(
                f"B_{k} exceeds the exact cap {self.exact_cap}; use the modular path"
            )
        m = k // 2
        if m >= len(self._even):
            self._extend_even(m)
        return self._even[m]

    def _extend_even(self, m: int) -> None:
        with self._lock:
            even = self._even
            for i in range(len(even), m + 1):
                n = 2 * i
                s = Fraction(-(n + 1), 2)
                for j in range(i):
                    s += comb(n + 1, 2 * j) * even[j]
                even.append(-s / (n + 1))

    @staticmethod
    def von_staudt_denominator(k: int) -> int:
        """Denominator of B_k: product of primes q with (q-1) | k for even k."""
        if k == 1:
            return 2
        if k == 0 or k % 2:
            return 1
        den = 1
        for d in divisors(k):
            if is_prime(d + 1):
                den *= d + 1
        return den

    def bernoulli_mod(self, k: int, m: int) -> int:
        if m < 2:
            raise DomainError(f"modulus must be >= 2, got {m}")
        den = self.von_staudt_denominator(k)
        if gcd(den, m) != 1:
            raise DenominatorNotInvertible(k, m, den)
        b = self.bernoulli_exact(k)
        if b.denominator != den:
            raise IdentityFailure(f"den(B_{k}) = {b.denominator}, expected {den}")
        return b.numerator * pow(b.denominator, -1, m) % m

    def bernoulli_mod_prime_power(self, k: int, t: int, precision: int) -> int:
        """B_k mod t^precision from the power sum S_k(t^(precision+1)).

        With M = t^(p+1), S_k(M) = M*B_k + (terms of t-valuation >= 2p+1)
        whenever (t-1) does not divide k. Writing x = r + q*N with
        N = t^p and 0 <= q < t, only the first three binomial terms of
        (r + qN)^k survive modulo t^(2p+1), so three power sums over r < N
        are enough.
        """
        if k < 2 or k % 2:
            raise DomainError(f"index must be even and positive, got {k}")
        if precision < 1:
            raise DomainError(f"precision must be >= 1, got {precision}")
        if not is_prime(t):
            raise DomainError(f"{t} is not prime")
        if k % (t - 1) == 0:
            raise DomainError(f"(t-1) = {t - 1} divides k = {k}; B_k is not t-integral")

        p = precision
        n_block = t ** p
        mod = t ** (2 * p + 1)
        big_m = t ** (p + 1)

        mod_z = gmpy2.mpz(mod)
        e = k - 2
        p0 = gmpy2.mpz(1 if e == 0 else 0)
        p1 = gmpy2.mpz(0)
        p2 = gmpy2.mpz(0)
        for r in range(1, n_block):
            a = gmpy2.powmod(r, e, mod_z)
            p0 += a
            a = a * r % mod_z
            p1 += a
            p2 += a * r % mod_z

        q1 = t * (t - 1) // 2
        q2 = (t - 1) * t * (2 * t - 1) // 6
        s = (t * int(p2)
             + k * n_block * q1 * int(p1)
             + comb(k, 2) * n_block * n_block * q2 * int(p0)) % mod
        if s % big_m:
            raise IdentityFailure(f"S_{k}(t^{p + 1}) not divisible by t^{p + 1} for t={t}")
        return (s // big_m) % t ** p

    def bernoulli_mod_prime_cube(self, k: int, t: int) -> int:
        return self.bernoulli_mod_prime_power(k, t, 3)

    def irregular_pairs(self, t: int) -> IrregularityReport:
        if t < 5 or not is_prime(t):
            raise DomainError(f"irregularity needs a prime t >= 5, got {t}")
        pairs = []
        for k in range(2, t - 2, 2):
            if k <= self.exact_cap:
                residue = self.bernoulli_mod(k, t)
            else:
                residue = self.bernoulli_mod_prime_power(k, t, 1)
            if residue == 0:
                pairs.append(k)
        return IrregularityReport(t=t, irregular_pairs=tuple(pairs), iota=len(pairs))

    def scan_b2nt(self, t: int, full_scan: bool = False) -> Tuple[Optional[ScanResidues], Optional[int]]:
        """Residues of B_{2nt} mod t^3 for n = 1..(t-3)/2.

        Returns (residues, first_zero_n). Without ``full_scan`` the scan stops
        at the first zero residue and residues is None.
        """
        residues = []
        first_zero = None
        for n in range(1, (t - 3) // 2 + 1):
            r = self.bernoulli_mod_prime_cube(2 * n * t, t)
            residues.append((n, r))
            if r == 0 and first_zero is None:
                first_zero = n
                if not full_scan:
                    logger.info("B_%d is divisible by %d^3; scan stopped", 2 * n * t, t)
                    return None, first_zero
        return tuple(residues), first_zero

    def good_prime_check(self, t: int, full_scan: bool = False) -> GoodPrimeVerdict:
        if t <= 3 or not is_prime(t):
            raise DomainError(f"good primes are primes t > 3, got {t}")
        key = (t, full_scan)
        cached = self._verdicts.get(key)
        if cached is not None:
            return cached

        verdict = self._good_prime_check(t, full_scan)
        with self._lock:
            self._verdicts.setdefault(key, verdict)
        return verdict

    def _good_prime_check(self, t: int, full_scan: bool) -> GoodPrimeVerdict:
        report = self.irregular_pairs(t)

        if report.iota == 0 and not full_scan:
            return GoodPrimeVerdict(t=t, is_good=True, branch=GoodPrimeBranch.IOTA_ZERO, report=report)

        scan, first_zero = self.scan_b2nt(t, full_scan=full_scan)

        if report.iota == 0:
            report = IrregularityReport(
                t=t, irregular_pairs=(), iota=0,
                scan_mod_t_cubed=scan, scan_failure_index=first_zero,
            )
            return GoodPrimeVerdict(t=t, is_good=True, branch=GoodPrimeBranch.IOTA_ZERO, report=report)

        if first_zero is None and t < self.vandiver_bound:
            logger.warning("t=%d is irregular; assuming t does not divide h_t^+ (t < %d)",
                           t, self.vandiver_bound)
            report = IrregularityReport(
                t=t, irregular_pairs=report.irregular_pairs, iota=report.iota,
                scan_mod_t_cubed=scan, vandiver_assumed=True,
            )
            assumptions = [VANDIVER_ASSUMPTION]
            if t < self.cube_bound:
                assumptions.append(BERNOULLI_CUBE_ASSUMPTION)
            return GoodPrimeVerdict(
                t=t, is_good=True, branch=GoodPrimeBranch.BERNOULLI_SCAN_WITH_VANDIVER,
                report=report, assumptions=tuple(assumptions),
            )

        report = IrregularityReport(
            t=t, irregular_pairs=report.irregular_pairs, iota=report.iota,
            scan_mod_t_cubed=scan, scan_failure_index=first_zero,
        )
        return GoodPrimeVerdict(t=t, is_good=False, branch=GoodPrimeBranch.NOT_GOOD, report=report)
