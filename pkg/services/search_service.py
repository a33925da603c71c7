import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Sequence, Tuple

from services.arith import integer_root, is_prime
from services.errors import ContradictionError, DomainError, IdentityFailure
from services.hypothesis_service import Conclusion, HypothesisService

logger = logging.getLogger(__name__)

PASS = 'PASS'
CONTRADICTION = 'CONTRADICTION'


@dataclass(frozen=True)
class SolutionTriple:
    X: int
    Y: int
    Z: int
    t_divides_Z: bool

    def sort_key(self) -> Tuple[int, int, bool, bool]:
        return (abs(self.X), abs(self.Y), self.X < 0, self.Y < 0)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.X, self.Y, self.Z)

    def to_dict(self) -> Dict:
        return {'X': self.X, 'Y': self.Y, 'Z': self.Z, 't_divides_Z': self.t_divides_Z}

    @classmethod
    def from_dict(cls, data: Dict) -> 'SolutionTriple':
        return cls(X=data['X'], Y=data['Y'], Z=data['Z'], t_divides_Z=data['t_divides_Z'])


@dataclass(frozen=True)
class ConsistencyReport:
    t: int
    B: int
    H: int
    conclusion: Conclusion
    status: str
    solutions: Tuple[SolutionTriple, ...] = field(default_factory=tuple)
    counterexamples: Tuple[SolutionTriple, ...] = field(default_factory=tuple)
    note: str = ''

    def to_dict(self) -> Dict:
        return {
            'H': self.H,
            'conclusion': self.conclusion.value,
            'status': self.status,
            'solutions': [s.to_dict() for s in self.solutions],
            'counterexamples': [s.to_dict() for s in self.counterexamples],
            'note': self.note,
        }

    @classmethod
    def from_dict(cls, data: Dict, t: int, B: int) -> 'ConsistencyReport':
        return cls(
            t=t, B=B, H=data['H'],
            conclusion=Conclusion(data['conclusion']),
            status=data['status'],
            solutions=tuple(SolutionTriple.from_dict(s) for s in data['solutions']),
            counterexamples=tuple(SolutionTriple.from_dict(s) for s in data['counterexamples']),
            note=data.get('note', ''),
        )


def verify_triple(t: int, B: int, triple: SolutionTriple) -> bool:
    X, Y, Z = triple.as_tuple()
    return (
        0 not in (X, Y, Z)
        and X ** t + Y ** t == B * Z ** t
        and gcd(X, Y) == gcd(X, Z) == gcd(Y, Z) == 1
        and triple.t_divides_Z == (Z % t == 0)
    )


class SearchService:
    """Bounded exhaustive search for X^t + Y^t = B Z^t.

    Only max(|X|, |Y|) <= H is covered: results are evidence inside the box,
    never a proof about all integers.
    """

    def __init__(self, hypothesis_service: HypothesisService, threads: int = 1):
        self.hypothesis_service = hypothesis_service
        self.threads = max(1, threads)

    @staticmethod
    def _validate(t: int, B: int, H: int) -> None:
        if t < 5 or not is_prime(t):
            raise DomainError(f"search needs a prime t >= 5, got {t}")
        if B == 0:
            raise DomainError("B must be nonzero")
        if H < 1:
            raise DomainError(f"search bound must be >= 1, got {H}")

    @staticmethod
    def _search_stripe(
        t: int, B: int, H: int, xs: Sequence[int], powers: Dict[int, int],
    ) -> List[SolutionTriple]:
        found = []
        for X in xs:
            px = powers[X]
            for Y in range(-H, H + 1):
                if Y == 0 or gcd(X, Y) != 1:
                    continue
                s = px + powers[Y]
                if s == 0 or s % B:
                    continue
                Z = integer_root(s // B, t)
                if Z is None or gcd(X, Z) != 1 or gcd(Y, Z) != 1:
                    continue
                if Z < 0:
                    X_, Y_, Z = -X, -Y, -Z
                else:
                    X_, Y_ = X, Y
                found.append(SolutionTriple(X_, Y_, Z, Z % t == 0))
        return found

    def find_solutions(self, t: int, B: int, H: int, only_t_divides_z: bool = False) -> List[SolutionTriple]:
        self._validate(t, B, H)
        powers = {v: v ** t for v in range(-H, H + 1)}
        xs = [x for x in range(-H, H + 1) if x != 0]

        if self.threads == 1:
            found = self._search_stripe(t, B, H, xs, powers)
        else:
            stripes = [xs[i::self.threads] for i in range(self.threads)]
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts = pool.map(lambda s: self._search_stripe(t, B, H, s, powers), stripes)
                found = [triple for part in parts for triple in part]

        unique = set(found)
        if only_t_divides_z:
            unique = {s for s in unique if s.t_divides_Z}
        result = sorted(unique, key=SolutionTriple.sort_key)

        bad = [s for s in result if not verify_triple(t, B, s)]
        if bad:
            raise IdentityFailure(f"search produced invalid triples: {bad}")
        logger.info("t=%d B=%d H=%d: %d solution(s)", t, B, H, len(result))
        return result

    def consistency_check(self, t: int, B: int, H: int) -> ConsistencyReport:
        self._validate(t, B, H)
        verdict = self.hypothesis_service.evaluate_corollary(t, B)
        solutions = tuple(self.find_solutions(t, B, H))

        if verdict.conclusion == Conclusion.COROLLARY_HOLDS:
            counterexamples = solutions
            note = 'corollary level: no solution may exist'
        elif verdict.conclusion == Conclusion.THEOREM_HOLDS:
            counterexamples = tuple(s for s in solutions if s.t_divides_Z)
            note = 'theorem level: no solution with t | Z may exist; other solutions are allowed'
        else:
            counterexamples = ()
            note = 'hypotheses fail; solutions found are reported only'

        report = ConsistencyReport(
            t=t, B=B, H=H, conclusion=verdict.conclusion,
            status=CONTRADICTION if counterexamples else PASS,
            solutions=solutions, counterexamples=counterexamples, note=note,
        )
        if counterexamples:
            logger.error("contradiction at t=%d B=%d: %s", t, B,
                         [c.as_tuple() for c in counterexamples])
            raise ContradictionError(report)
        return report
