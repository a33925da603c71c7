import logging
import random
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from services.arith import is_prime
from services.cyclotomic import (
    alpha_congruence_check,
    alpha_is_not_real,
    cofactor,
    cofactor_coprime_check,
    verify_delta_unit,
    verify_norm_factorization,
    verify_ramified_generator,
    verify_t_over_lambda_unit,
)
from services.errors import DomainError
from services.modgroup import contains_minus_one

logger = logging.getLogger(__name__)

# cofactor_pairs() adds every other prime l < COFACTOR_L_MAX with -1 in <l mod t>.
COFACTOR_PAIRS = ((5, 2), (5, 3), (7, 3), (7, 5), (11, 2))
ALPHA_PRIMES = (5, 7)
COFACTOR_L_MAX = 50

NECESSITY_WITNESS = {'t': 5, 'l': 11, 'x': 2, 'y': 3, 'cofactor': 55}


@dataclass(frozen=True)
class IdentityResult:
    name: str
    anchor: str
    t: int
    passed: bool
    checked: int
    detail: str = ''


class SelftestService:
    """Runs the cyclotomic identity suites for every prime 5 <= t <= t_max."""

    def __init__(
        self, seed: int = 20240613, cofactor_samples: int = 500, alpha_samples: int = 200, sample_bound: int = 100,
    ):
        self.seed = seed
        self.cofactor_samples = cofactor_samples
        self.alpha_samples = alpha_samples
        self.sample_bound = sample_bound

    @staticmethod
    def primes_up_to(t_max: int) -> List[int]:
        ts = [t for t in range(5, t_max + 1) if is_prime(t)]
        if not ts:
            raise DomainError(f"no prime t with 5 <= t <= {t_max}")
        return ts

    def _random_coprime_pair(self, rng: random.Random, t: Optional[int] = None) -> Tuple[int, int]:
        H = self.sample_bound
        while True:
            x = rng.randint(-H, H)
            y = rng.randint(-H, H)
            if x == 0 or y == 0 or x + y == 0 or gcd(x, y) != 1:
                continue
            if t is not None and (x + y) % t:
                continue
            return x, y

    def cofactor_pairs(self, ts: Sequence[int]) -> List[Tuple[int, int]]:
        pairs = [(t, l) for t, l in COFACTOR_PAIRS if t in ts]
        for t in ts:
            for l in range(2, COFACTOR_L_MAX):
                if l != t and is_prime(l) and (t, l) not in pairs and contains_minus_one(l, t):
                    pairs.append((t, l))
        return pairs

    def run(self, t_max: int = 13) -> List[IdentityResult]:
        ts = self.primes_up_to(t_max)
        rng = random.Random(self.seed)
        results = []

        for t in ts:
            results.append(IdentityResult(
                'eta_real_unit', 't / lambda^((t-1)/2) is a real unit of Z[zeta + zeta^-1]',
                t, verify_t_over_lambda_unit(t), 1,
            ))

            pairs = [(a, b) for a in range(1, t) for b in range(1, t)
                     if (a - b) % t and (a + b) % t]
            bad = [p for p in pairs if not verify_delta_unit(t, *p)]
            results.append(IdentityResult(
                'delta_real_unit',
                "lambda (1/lambda_a - 1/lambda_b) = lambda (z^-b - z^-a)(z^(a+b) - 1)/(lambda_a lambda_b) "
                "is a real unit",
                t, not bad, len(pairs), f"failing (a, b): {bad}" if bad else '',
            ))

            results.append(IdentityResult(
                'ramified_generator', 'zeta^a - zeta^-a generates the prime above t',
                t, verify_ramified_generator(t), t - 1,
            ))

            x, y = self._random_coprime_pair(rng)
            results.append(IdentityResult(
                'norm_factorization', '(x + y) prod_a (x + zeta^a y) = x^t + y^t',
                t, verify_norm_factorization(t, x, y), 1, f"x={x}, y={y}",
            ))

        for t, l in self.cofactor_pairs(ts):
            failures = []
            for _ in range(self.cofactor_samples):
                x, y = self._random_coprime_pair(rng)
                if not cofactor_coprime_check(t, l, x, y):
                    failures.append((x, y))
            results.append(IdentityResult(
                f'cofactor_coprime(l={l})',
                'l does not divide (x^t + y^t)/(x + y) when -1 lies in <l mod t>',
                t, not failures, self.cofactor_samples,
                f"counterexamples: {failures[:5]}" if failures else '',
            ))

        if 5 in ts:
            w = NECESSITY_WITNESS
            value = cofactor(w['t'], w['x'], w['y'])
            results.append(IdentityResult(
                'cofactor_necessity_witness',
                'without -1 in <l mod t> the lemma fails: l = 11 divides (2^5 + 3^5)/5',
                5, value == w['cofactor'] and value % w['l'] == 0, 1, f"cofactor = {value}",
            ))

        for t in (t for t in ALPHA_PRIMES if t in ts):
            failures = []
            for _ in range(self.alpha_samples):
                x, y = self._random_coprime_pair(rng, t=t)
                if not (alpha_congruence_check(t, x, y) and alpha_is_not_real(t, x, y)):
                    failures.append((x, y))
            results.append(IdentityResult(
                'alpha_congruence',
                'alpha = (x + zeta y)/(1 - zeta) = -y and conj(alpha) = alpha mod (1 - zeta)^2',
                t, not failures, self.alpha_samples,
                f"counterexamples: {failures[:5]}" if failures else '',
            ))

        failed = [r for r in results if not r.passed]
        if failed:
            logger.error("%d identity check(s) failed", len(failed))
        return results
