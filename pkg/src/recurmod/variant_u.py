"""The companion family u_n = q*u_{n-1} - u_{n-2}.

Here the matrix has determinant 1 and its characteristic polynomial is
x^2 - q*x + 1, whose discriminant q^2 - 4 governs everything: the splitting
type mod p bounds the period, and the prime divisors of q^2 - 4 are the only
primes at which the sequence can be uniformly distributed.

The uniform-distribution rule is exact.  The matching completeness rule is
only reliable away from p = 2 with q odd and p = 3 with 3 | q: there the
period mod p has length p + 1 and can cover Z_p without being uniform.  The
rule is kept as stated and every verdict carries a brute-force comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import factorize, is_prime, legendre
from .completeness import DEFAULT_CEILING, completeness_report
from .core import Recurrence, period_length
from .errors import Disagreement, HypothesisViolation


@dataclass(frozen=True)
class SplittingType:
    prime: int
    discriminant: int  # q^2 - 4 mod p
    kind: str  # "split", "irreducible" or "repeated"


def splitting_type(q: int, p: int) -> SplittingType:
    """How x^2 - q*x + 1 factors mod an odd prime p (Euler's criterion on q^2 - 4)."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    disc = (q * q - 4) % p
    kind = {0: "repeated", 1: "split", -1: "irreducible"}[legendre(disc, p)]
    return SplittingType(p, disc, kind)


@dataclass(frozen=True)
class OrderDivisibility:
    q: int
    prime: int
    kind: str
    period_length: int
    divides: int | None  # p - 1, p + 1, or None when no claim is made

    @property
    def holds(self) -> bool:
        return self.divides is None or self.divides % self.period_length == 0


def check_order_divisibility(q: int, p: int, a: int = 0, b: int = 1) -> OrderDivisibility:
    """Period of u mod p divides p - 1 (split) or p + 1 (irreducible)."""
    rec = Recurrence(a, b, q, -1)
    if rec.invariant % p == 0:
        raise HypothesisViolation(f"{p} divides -a^2+qab-b^2 = {rec.invariant}",
                                  failed="gcd(p, -a^2+qab-b^2) = 1")
    st = splitting_type(q, p)
    n = period_length(a, b, q, -1, p)
    divides = {"split": p - 1, "irreducible": p + 1}.get(st.kind)
    return OrderDivisibility(q, p, st.kind, n, divides)


def prime_power_rule(rec: Recurrence, p: int, h: int) -> bool:
    """Uniform distribution of u mod p^h from the arithmetic of q and the seed."""
    a, b, q = rec.a, rec.b, rec.q
    if q in (2, -2):
        # q*a/2 is the integer (q/2)*a, so no inverse of 2 is needed
        base = gcd(p, b - (q // 2) * a) == 1
    else:
        base = (q * q - 4) % p == 0 and gcd(p, rec.invariant) == 1
    if not base:
        return False
    return h == 1 or p > 3 or (p == 3 and q * q % 9 != 1) or (p == 2 and q % 4 == 2)


def rule_verdict(rec: Recurrence, m: int) -> bool:
    """The multiplicative rule: true iff it holds at every prime power of m."""
    if rec.sign != -1:
        raise ValueError("rule applies to the sign=-1 family")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return all(prime_power_rule(rec, p, h) for p, h in factorize(m))


@dataclass(frozen=True)
class UVerdict:
    modulus: int
    property: str  # "complete" or "uniform"
    rule: bool
    bruteforce: bool | None  # None above the ceiling

    @property
    def agrees(self) -> bool | None:
        return None if self.bruteforce is None else self.rule == self.bruteforce

    def as_dict(self) -> dict:
        return {"modulus": self.modulus, "property": self.property, "rule": self.rule,
                "bruteforce": self.bruteforce, "agrees": self.agrees, "variant": "u"}


def _observed(rec: Recurrence, m: int, prop: str) -> bool:
    if rec.is_trivial_mod(m):
        return False
    rep = completeness_report(rec, m)
    return rep.complete if prop == "complete" else rep.uniform


def _verdict(rec: Recurrence, m: int, prop: str, ceiling: int, strict: bool) -> UVerdict:
    v = UVerdict(m, prop, rule_verdict(rec, m), _observed(rec, m, prop) if m <= ceiling else None)
    if strict and v.agrees is False:
        raise Disagreement(f"{prop} rule says {v.rule} mod {m}, brute force says {v.bruteforce}", witness=m)
    return v


def complete_verdict(rec: Recurrence, m: int, ceiling: int = DEFAULT_CEILING, strict: bool = False) -> UVerdict:
    """Completeness of u mod m by the multiplicative rule, with the brute-force verdict alongside."""
    return _verdict(rec, m, "complete", ceiling, strict)


def uniform_verdict(rec: Recurrence, m: int, ceiling: int = DEFAULT_CEILING, strict: bool = False) -> UVerdict:
    """Uniform distribution of u mod m by the multiplicative rule, with the histogram verdict alongside."""
    return _verdict(rec, m, "uniform", ceiling, strict)
