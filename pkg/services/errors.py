from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from services.search_service import ConsistencyReport


class DomainError(ValueError):
    """An input falls outside the domain an operation is defined on."""


class DenominatorNotInvertible(DomainError):
    """den(B_k) shares a prime with the modulus, so B_k has no residue there."""

    def __init__(self, k: int, modulus: int, denominator: int):
        self.k = k
        self.modulus = modulus
        self.denominator = denominator
        super().__init__(
            f"B_{k} has denominator {denominator}, not invertible modulo {modulus}"
        )


class IdentityFailure(AssertionError):
    """A machine-checked identity did not hold. Always a bug."""


class ContradictionError(RuntimeError):
    """A bounded search found a solution the verdict rules out."""

    def __init__(self, report: "ConsistencyReport"):
        self.report = report
        super().__init__(
            f"contradiction at t={report.t}, B={report.B}: "
            f"{len(report.counterexamples)} counterexample(s) within H={report.H}"
        )
