import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Dict, List, Optional, Tuple

from services.arith import Factorization, euler_phi, factorize, is_prime
from services.bernoulli_service import Assumption, BernoulliService, GoodPrimeVerdict, IrregularityReport
from services.errors import DomainError
from services.modgroup import b_vs_two_condition, fermat_quotient_is_trivial, is_nonresidue, mult_order

logger = logging.getLogger(__name__)


class Conclusion(str, Enum):
    COROLLARY_HOLDS = 'CorollaryHolds'
    THEOREM_HOLDS = 'TheoremHolds'
    NOT_APPLICABLE = 'NotApplicable'


CONCLUSION_TEXT = {
    Conclusion.COROLLARY_HOLDS: 'no solution in pairwise coprime nonzero integers X, Y, Z',
    Conclusion.THEOREM_HOLDS: 'no solution in pairwise coprime nonzero integers X, Y, Z with t | Z',
    Conclusion.NOT_APPLICABLE: 'hypotheses not satisfied; no claim is made about solutions',
}

THEOREM = 'theorem'
COROLLARY = 'corollary'
PROOF = 'proof'

T_PRIME_TO_Z_ASSUMPTION = Assumption(
    name='t_prime_to_z_case',
    statement=(
        'X^t + Y^t = B Z^t has no solution in pairwise coprime nonzero integers '
        'with t not dividing Z when B phi(B) is coprime to t, '
        'B^(t-1) != 2^(t-1) mod t^2 and B has a divisor r with r^(t-1) != 1 mod t^2'
    ),
    source=(
        'Theorem 4.1 of [Be] (Bennett et al., ternary equations of signature (t, t, t)): '
        '"So by the theorem 4.1 of [Be], the equation X^t+Y^t=BZ^t has no solution for such t and B." '
        'Not re-proved here'
    ),
)


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    evidence: str
    level: str = THEOREM

    def to_dict(self) -> Dict:
        return {'name': self.name, 'holds': self.holds, 'evidence': self.evidence, 'level': self.level}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Condition':
        return cls(name=data['name'], holds=data['holds'], evidence=data['evidence'],
                   level=data.get('level', THEOREM))


@dataclass(frozen=True)
class HypothesisVerdict:
    t: int
    B: int
    conditions: Tuple[Condition, ...]
    conclusion: Conclusion
    assumptions: Tuple[Assumption, ...] = field(default_factory=tuple)
    good_prime_branch: Optional[str] = None

    @property
    def statement(self) -> str:
        return CONCLUSION_TEXT[self.conclusion]

    def first_failure(self) -> Optional[Condition]:
        return next((c for c in self.conditions if not c.holds), None)

    def failures(self) -> List[Condition]:
        return [c for c in self.conditions if not c.holds]

    def to_dict(self) -> Dict:
        return {
            't': self.t,
            'B': self.B,
            'conditions': [c.to_dict() for c in self.conditions],
            'conclusion': self.conclusion.value,
            'statement': self.statement,
            'assumptions': [a.to_dict() for a in self.assumptions],
            'good_prime_branch': self.good_prime_branch,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'HypothesisVerdict':
        return cls(
            t=data['t'],
            B=data['B'],
            conditions=tuple(Condition.from_dict(c) for c in data['conditions']),
            conclusion=Conclusion(data['conclusion']),
            assumptions=tuple(Assumption.from_dict(a) for a in data.get('assumptions', [])),
            good_prime_branch=data.get('good_prime_branch'),
        )


class HypothesisService:
    """Checks every computable hypothesis of the two insolvability results.

    Evaluation is total: bad inputs produce failed conditions, never
    exceptions. Negative B is evaluated through |B| with the sign recorded.
    """

    def __init__(self, bernoulli_service: BernoulliService, full_scan: bool = False):
        self.bernoulli_service = bernoulli_service
        self.full_scan = full_scan

    def good_prime(self, t: int) -> Optional[GoodPrimeVerdict]:
        try:
            return self.bernoulli_service.good_prime_check(t, full_scan=self.full_scan)
        except DomainError:
            return None

    def irregularity(self, t: int) -> Optional[IrregularityReport]:
        verdict = self.good_prime(t)
        return verdict.report if verdict else None

    @staticmethod
    def _good_prime_evidence(good: GoodPrimeVerdict) -> str:
        report = good.report
        evidence = f"branch={good.branch.value}, iota={report.iota}, irregular_pairs={report.pairs_display()}"
        if report.scan_failure_index is not None:
            evidence += f", t^3 | B_{2 * report.scan_failure_index * good.t} (n={report.scan_failure_index})"
        elif report.scan_mod_t_cubed is not None:
            evidence += f", {len(report.scan_mod_t_cubed)} nonzero residues of B_2nt mod t^3"
        return evidence

    def _theorem_conditions(
        self, t: int, B: int,
    ) -> Tuple[List[Condition], List[Assumption], Optional[str], Optional[Factorization]]:
        conditions = []
        assumptions = []
        branch = None

        try:
            t_ok = t > 3 and is_prime(t)
        except DomainError:
            t_ok = False
        conditions.append(Condition(
            't_prime_gt_3', t_ok,
            f"t={t}: " + ('prime > 3' if t_ok else 'not an odd prime > 3'),
        ))
        conditions.append(Condition('B_nonzero', B != 0, f"B={B}"))
        if not t_ok or B == 0:
            return conditions, assumptions, branch, None

        try:
            fac = factorize(B)
        except DomainError as exc:
            conditions.append(Condition('B_factorizable', False, str(exc)))
            return conditions, assumptions, branch, None
        g = gcd(B, t)
        conditions.append(Condition('B_coprime_to_t', g == 1, f"gcd(B, t) = {g}; B = {fac}"))

        try:
            good = self.bernoulli_service.good_prime_check(t, full_scan=self.full_scan)
        except DomainError as exc:
            logger.warning("good-prime check unavailable for t=%s: %s", t, exc)
            conditions.append(Condition('t_good_prime', False, f"not evaluated: {exc}"))
        else:
            branch = good.branch.value
            conditions.append(Condition('t_good_prime', good.is_good, self._good_prime_evidence(good)))
            assumptions.extend(good.assumptions)

        if not fac.factors:
            conditions.append(Condition(
                'minus_one_in_subgroup', True, f"B={B} has no prime divisors",
            ))
        for l in fac.primes:
            name = f"minus_one_in_subgroup(l={l})"
            if l == t:
                conditions.append(Condition(name, False, f"l={l} equals t"))
                continue
            order = mult_order(l, t)
            conditions.append(Condition(
                name, order % 2 == 0,
                f"ord({l} mod {t}) = {order} ({'even' if order % 2 == 0 else 'odd'}); "
                f"{l} is {'a non-square' if is_nonresidue(l, t) else 'a square'} mod {t}",
            ))
        return conditions, assumptions, branch, fac

    def evaluate_theorem(self, t: int, B: int) -> HypothesisVerdict:
        conditions, assumptions, branch, _ = self._theorem_conditions(t, B)
        holds = all(c.holds for c in conditions)
        verdict = HypothesisVerdict(
            t=t, B=B, conditions=tuple(conditions),
            conclusion=Conclusion.THEOREM_HOLDS if holds else Conclusion.NOT_APPLICABLE,
            assumptions=tuple(assumptions), good_prime_branch=branch,
        )
        logger.info("theorem verdict t=%s B=%s: %s", t, B, verdict.conclusion.value)
        return verdict

    def evaluate_corollary(self, t: int, B: int) -> HypothesisVerdict:
        conditions, assumptions, branch, fac = self._theorem_conditions(t, B)
        theorem_holds = all(c.holds for c in conditions)

        if fac is not None and B % t:
            conditions.extend(self._corollary_conditions(t, B, fac))
        elif fac is not None:
            conditions.append(Condition(
                'corollary_conditions', False, f"t={t} divides B={B}", COROLLARY,
            ))

        if theorem_holds and all(c.holds for c in conditions):
            conclusion = Conclusion.COROLLARY_HOLDS
            assumptions.append(T_PRIME_TO_Z_ASSUMPTION)
        elif theorem_holds:
            conclusion = Conclusion.THEOREM_HOLDS
        else:
            conclusion = Conclusion.NOT_APPLICABLE

        verdict = HypothesisVerdict(
            t=t, B=B, conditions=tuple(conditions), conclusion=conclusion,
            assumptions=tuple(assumptions), good_prime_branch=branch,
        )
        logger.info("corollary verdict t=%s B=%s: %s", t, B, conclusion.value)
        return verdict

    def _corollary_conditions(self, t: int, B: int, fac: Factorization) -> List[Condition]:
        m = t * t
        rows = []

        phi = euler_phi(abs(B))
        rows.append(Condition(
            'phi_B_coprime_to_t', gcd(phi, t) == 1,
            f"phi(|B|) = {phi}, gcd with t = {gcd(phi, t)}", PROOF,
        ))

        differs = b_vs_two_condition(B, t)
        rows.append(Condition(
            'B_pow_differs_from_2_pow', differs,
            f"B^(t-1) = {pow(B, t - 1, m)}, 2^(t-1) = {pow(2, t - 1, m)} mod {m}", COROLLARY,
        ))

        # r^(t-1) == 1 mod t^2 cuts out a subgroup of (Z/t^2)^x, so some divisor
        # of B escapes it iff some prime divisor does.
        residues = [(r, pow(r, t - 1, m)) for r in fac.primes]
        witness = next((r for r in fac.primes if not fermat_quotient_is_trivial(r, t)), None)
        shown = ', '.join(f"{r}^(t-1) = {v}" for r, v in residues) or 'no prime divisors'
        if witness is not None:
            evidence = f"witness r={witness}: {shown} mod {m}"
        else:
            evidence = f"every prime divisor is trivial: {shown} mod {m}"
        rows.append(Condition('nontrivial_fermat_quotient_divisor', witness is not None, evidence, COROLLARY))
        return rows
