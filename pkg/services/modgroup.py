"""Conditions on B living in (Z/t)^x and (Z/t^2)^x."""
from __future__ import annotations

from dataclasses import dataclass

from services.arith import factorize, is_prime
from services.errors import DomainError


@dataclass(frozen=True)
class SubgroupCondition:
    l: int
    t: int
    order: int
    contains_minus_one: bool
    is_nonresidue: bool


def _check_unit_mod_prime(l: int, t: int) -> None:
    if not is_prime(t):
        raise DomainError(f"modulus {t} is not prime")
    if l % t == 0:
        raise DomainError(f"{l} is not a unit modulo {t}")


def mult_order(l: int, t: int) -> int:
    _check_unit_mod_prime(l, t)
    d = t - 1
    for p, _ in factorize(t - 1).factors:
        while d % p == 0 and pow(l, d // p, t) == 1:
            d //= p
    return d


def contains_minus_one(l: int, t: int) -> bool:
    """-1 mod t lies in <l mod t>.

    (Z/t)^x is cyclic, so -1 is its only element of order 2 and belongs
    to <l> exactly when ord(l) is even.
    """
    return mult_order(l, t) % 2 == 0


def is_nonresidue(l: int, t: int) -> bool:
    _check_unit_mod_prime(l, t)
    if t == 2:
        raise DomainError("quadratic residues need an odd prime modulus")
    return pow(l, (t - 1) // 2, t) == t - 1


def subgroup_condition(l: int, t: int) -> SubgroupCondition:
    order = mult_order(l, t)
    return SubgroupCondition(
        l=l,
        t=t,
        order=order,
        contains_minus_one=order % 2 == 0,
        is_nonresidue=is_nonresidue(l, t),
    )


def fermat_quotient_is_trivial(r: int, t: int) -> bool:
    """r^(t-1) == 1 mod t^2, i.e. r is a Wieferich-style base for t."""
    if r % t == 0:
        raise DomainError(f"{t} divides {r}")
    return pow(r, t - 1, t * t) == 1


def b_vs_two_condition(B: int, t: int) -> bool:
    """B^(t-1) != 2^(t-1) mod t^2."""
    if B % t == 0:
        raise DomainError(f"{t} divides B={B}")
    m = t * t
    return pow(B, t - 1, m) != pow(2, t - 1, m)
