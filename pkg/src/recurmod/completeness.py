"""Residue completeness modulo m, and the rules that predict it.

A sequence is *residue complete* mod m when one period contains every element
of Z_m, and *uniformly distributed* when every element occurs equally often.
Besides the exact per-modulus report, this module houses the predictive rules
used by the classifier: the finite set of primes that can divide a complete
modulus, the reduction of an arbitrary seed to the unit seed (0, 1), three
lifting rules that carry completeness from m to p*m, and exponent caps for the
primes 2, 3, 5 and 7.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .arith import is_prime, prime_divisors
from .core import (
    Recurrence,
    canonical_rotation,
    generate,
    invariant_of,
    is_complete,
    raw_cycle,
    residue_counts,
)
from .errors import DegenerateDiscriminant, Disagreement, HypothesisViolation, TrivialSeed
from .order import order, stabilization_exponent

#: Lifting conclusions are re-derived by brute force when p*m is at most this.
DEFAULT_CEILING = 10**6

SMALL_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True)
class CompletenessReport:
    modulus: int
    complete: bool
    period_length: int
    histogram: dict
    missing: tuple
    uniform: bool
    invariant_class: frozenset
    gcd_invariant: int

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "complete": self.complete,
            "periodLength": self.period_length,
            "histogram": {str(r): c for r, c in sorted(self.histogram.items())},
            "missing": list(self.missing),
            "uniform": self.uniform,
            "invariantClass": sorted(self.invariant_class),
            "gcdInvariant": self.gcd_invariant,
        }


def completeness_report(rec: Recurrence, m: int) -> CompletenessReport:
    """Walk one full period of ``rec`` mod ``m`` and tally every residue."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m > 1 and rec.is_trivial_mod(m):
        raise TrivialSeed(f"seed ({rec.a}, {rec.b}) is (0, 0) modulo {m}")
    counts = residue_counts(rec.a, rec.b, rec.q, rec.sign, m)
    missing = tuple(r for r, c in enumerate(counts) if c == 0)
    return CompletenessReport(
        modulus=m,
        complete=not missing,
        period_length=sum(counts),
        histogram={r: c for r, c in enumerate(counts) if c},
        missing=missing,
        uniform=len(set(counts)) == 1,
        invariant_class=invariant_of(rec, m).reduced_class,
        gcd_invariant=gcd(rec.invariant, m),
    )


def complete(rec: Recurrence, m: int) -> bool:
    """Exact completeness verdict; a seed that vanishes mod m counts as incomplete."""
    return is_complete(rec.a, rec.b, rec.q, rec.sign, m)


@dataclass(frozen=True)
class CandidatePrimeSet:
    delta: tuple
    omega: tuple
    union: tuple

    def as_dict(self) -> dict:
        return {"delta": list(self.delta), "omega": list(self.omega), "union": list(self.union)}


def candidate_primes(q: int, sign: int = 1) -> CandidatePrimeSet:
    """Primes that may divide a modulus on which the recurrence is complete.

    For ``sign=+1`` these are 2, 3, 5, 7 and the primes of q^2 + 4; for
    ``sign=-1`` only the primes of q^2 - 4.
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    if sign == 1:
        omega = tuple(prime_divisors(q * q + 4))
        delta = SMALL_PRIMES
    else:
        if q * q == 4:
            raise DegenerateDiscriminant("q^2 - 4 = 0 for q = +-2")
        omega = tuple(prime_divisors(q * q - 4))
        delta = ()
    return CandidatePrimeSet(delta, omega, tuple(sorted(set(delta) | set(omega))))


def reduce_to_unit_seed(rec: Recurrence, m: int) -> tuple[int, Recurrence] | None:
    """Find a unit d with period(rec) == d * period(0, 1) up to rotation.

    Returns ``(d, Recurrence(0, 1, q))`` or None.  Any period equal to d times
    the unit period passes through the pair (0, d), which bounds the search.
    """
    if m > 1 and rec.is_trivial_mod(m):
        raise TrivialSeed(f"seed ({rec.a}, {rec.b}) is (0, 0) modulo {m}")
    base = Recurrence.unit(rec.q, rec.sign)
    if m == 1:
        return 0, base
    cycle = raw_cycle(rec.a, rec.b, rec.q, rec.sign, m)
    unit_cycle = raw_cycle(0, 1, rec.q, rec.sign, m)
    found = None
    if len(cycle) == len(unit_cycle):
        target = canonical_rotation(cycle)
        n = len(cycle)
        for i, x in enumerate(cycle):
            d = cycle[(i + 1) % n]
            if x == 0 and gcd(d, m) == 1:
                if canonical_rotation([d * y % m for y in unit_cycle]) == target:
                    found = (d, base)
                    break
    if found is None and complete(rec, m):
        raise AssertionError(f"complete mod {m} but not a unit multiple of the unit period")
    if found is not None and complete(rec, m) and gcd(rec.invariant, m) != 1:
        raise AssertionError(f"complete mod {m} with non-unit invariant")
    return found


# -- lifting rules -----------------------------------------------------------


@dataclass(frozen=True)
class LiftVerdict:
    rule: str
    prime: int
    modulus: int
    hypotheses: dict  # hypothesis text -> bool
    verified: bool | None = None  # brute-force check of the conclusion; None above the ceiling
    notes: tuple = field(default=())

    @property
    def applicable(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def failed(self) -> list[str]:
        return [h for h, ok in self.hypotheses.items() if not ok]

    @property
    def target(self) -> int:
        return self.prime * self.modulus

    @property
    def source(self) -> str:
        if not self.applicable:
            return "not-applicable"
        return "bruteforce-verified" if self.verified else "by-rule"

    def require(self) -> "LiftVerdict":
        if not self.applicable:
            raise HypothesisViolation(
                f"{self.rule} does not apply to {self.prime}*{self.modulus}: "
                + "; ".join(self.failed),
                failed=self.failed[0],
            )
        return self

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "prime": self.prime,
            "modulus": self.modulus,
            "target": self.target,
            "applicable": self.applicable,
            "hypotheses": dict(self.hypotheses),
            "conclusion": {"complete": True} if self.applicable else None,
            "source": self.source,
        }


def _order_grows(q: int, p: int, m: int) -> bool:
    return order(q, p * m) == p * order(q, m)


def _finish(rule: str, rec: Recurrence, p: int, m: int, hyp: dict, ceiling: int) -> LiftVerdict:
    verified = None
    if all(hyp.values()) and p * m <= ceiling:
        verified = complete(rec, p * m)
        if not verified:
            raise Disagreement(
                f"{rule}: hypotheses hold for {p}*{m} but brute force finds it incomplete",
                witness=p * m,
            )
    return LiftVerdict(rule, p, m, hyp, verified)


def _base(rec: Recurrence, m: int, known: bool | None) -> bool:
    return complete(rec, m) if known is None else known


def _checked(hyp: dict, name: str, test) -> bool:
    """Evaluate ``test`` only if every earlier hypothesis held (later ones may be costly)."""
    ok = all(hyp.values()) and bool(test())
    hyp[name] = ok
    return ok


def lift_repeated_prime(rec: Recurrence, p: int, m: int, ceiling: int = DEFAULT_CEILING,
                        base_complete: bool | None = None) -> LiftVerdict:
    """Complete mod m, odd p dividing both q^2+4 and m, k(pm) = p*k(m)  =>  complete mod pm."""
    q = rec.q
    hyp: dict = {}
    hyp["recurrence has sign +1"] = rec.sign == 1
    hyp["p is an odd prime"] = p > 2 and is_prime(p)
    hyp["p divides q^2+4"] = (q * q + 4) % p == 0
    hyp["p divides m"] = m % p == 0
    _checked(hyp, "k(pm) = p*k(m)", lambda: _order_grows(q, p, m))
    _checked(hyp, "complete mod m", lambda: _base(rec, m, base_complete))
    return _finish("lift-repeated-prime", rec, p, m, hyp, ceiling)


def lift_new_prime(rec: Recurrence, p: int, m: int, ceiling: int = DEFAULT_CEILING,
                   base_complete: bool | None = None) -> LiftVerdict:
    """Complete mod m, odd p | q^2+4 coprime to m and to the invariant, k(pm) = p*k(m)  =>  complete mod pm."""
    q = rec.q
    hyp: dict = {}
    hyp["recurrence has sign +1"] = rec.sign == 1
    hyp["p is an odd prime"] = p > 2 and is_prime(p)
    hyp["p divides q^2+4"] = (q * q + 4) % p == 0
    hyp["gcd(p, m) = 1"] = gcd(p, m) == 1
    hyp["gcd(p, a^2+qab-b^2) = 1"] = gcd(p, rec.invariant) == 1
    _checked(hyp, "k(pm) = p*k(m)", lambda: _order_grows(q, p, m))
    _checked(hyp, "complete mod m", lambda: _base(rec, m, base_complete))
    return _finish("lift-new-prime", rec, p, m, hyp, ceiling)


def lift_five(rec: Recurrence, m: int, ceiling: int = DEFAULT_CEILING,
              base_complete: bool | None = None) -> LiftVerdict:
    """Complete mod m, 5 | m, 5 not dividing q(q^2+4), invariant = +-1 mod 5, k(5m) = 5k(m)  =>  complete mod 5m."""
    q = rec.q
    hyp: dict = {}
    hyp["recurrence has sign +1"] = rec.sign == 1
    hyp["5 does not divide q(q^2+4)"] = q * (q * q + 4) % 5 != 0
    hyp["5 divides m"] = m % 5 == 0
    hyp["a^2+qab-b^2 = +-1 mod 5"] = rec.invariant % 5 in (1, 4)
    _checked(hyp, "k(5m) = 5*k(m)", lambda: _order_grows(q, 5, m))
    _checked(hyp, "complete mod m", lambda: _base(rec, m, base_complete))
    return _finish("lift-five", rec, 5, m, hyp, ceiling)


# -- per-prime exponent rules -----------------------------------------------


@dataclass(frozen=True)
class PrimePowerRule:
    prime: int
    max_exponent: int | None  # None: complete for every exponent
    condition: str
    source: str

    def allows(self, e: int) -> bool:
        return self.max_exponent is None or e <= self.max_exponent

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "maxExponent": "unbounded" if self.max_exponent is None else self.max_exponent,
            "condition": self.condition,
            "source": self.source,
        }


def _bruteforce_exponent(rec: Recurrence, p: int, upto: int = 3) -> int:
    e = 0
    while e < upto and complete(rec, p ** (e + 1)):
        e += 1
    return e


def prime_power_rule(q: int, p: int) -> PrimePowerRule:
    """Which powers p^e carry a complete (0, 1, q) sequence.

    Only p in {2, 3, 5, 7} and odd primes dividing q^2 + 4 can occur at all.
    """
    unit = Recurrence.unit(q)
    if p == 2:
        if q % 2:
            return PrimePowerRule(2, 2, "q odd: complete mod 2 and 4, never mod 8", "power-of-two-cap")
        return PrimePowerRule(2, 1, "q even: complete mod 2, never mod 4", "power-of-two-cap")
    if p == 3:
        if q % 3 == 0:
            return PrimePowerRule(3, 0, "3 | q: never complete mod 3", "power-of-three")
        if q % 9 in (4, 5):
            return PrimePowerRule(3, 1, "q = 4, 5 mod 9: complete mod 3 only", "power-of-three")
        return PrimePowerRule(3, None, "3 does not divide q, q != 4, 5 mod 9: complete mod every 3^n",
                              "power-of-three")
    if p == 7:
        if q % 7 in (1, 3, 4, 6):
            return PrimePowerRule(7, 1, "q = 1, 3, 4, 6 mod 7: complete mod 7, never mod 49",
                                  "power-of-seven-cap")
        return PrimePowerRule(7, 0, "q^2+4 is a square mod 7: never complete mod 7", "power-of-seven-cap")
    in_omega = p > 2 and (q * q + 4) % p == 0
    if p == 5 and not in_omega:
        if q % 5 == 0:
            return PrimePowerRule(5, 0, "5 | q: never complete mod 5", "bruteforce")
        if complete(unit, 5) and stabilization_exponent(q, 1, 5) == 1:
            return PrimePowerRule(5, None, "5 does not divide q(q^2+4), complete mod 5, k(25) = 5k(5)",
                                  "lift-five")
        e = _bruteforce_exponent(unit, 5)
        return PrimePowerRule(5, e, f"brute force over 5^1..5^3 (largest complete exponent {e})",
                              "bruteforce")
    if in_omega and is_prime(p):
        # complete mod p for the unit seed since its invariant is -1
        if stabilization_exponent(q, 1, p) == 1:
            return PrimePowerRule(p, None, f"{p} | q^2+4 and k({p}^2) = {p}k({p})", "lift-repeated-prime")
        e = _bruteforce_exponent(unit, p)
        return PrimePowerRule(p, e, f"k({p}^2) = k({p}); brute force over {p}^1..{p}^3", "bruteforce")
    return PrimePowerRule(p, 0, f"{p} is not a candidate prime for q={q}", "candidate-primes")


# -- stride-4 subsequences ---------------------------------------------------


@dataclass(frozen=True)
class SubsequenceClasses:
    q: int
    prime: int
    classes: tuple  # value sets of F_{4n+r} mod p over n in [0, p), r = 0..3
    l4: int  # L_4 mod p
    arithmetic_progression: bool  # F_{4n} == -2nq mod p for every n in [0, p)

    @property
    def all_complete(self) -> bool:
        return all(len(c) == self.prime for c in self.classes)

    @property
    def holds(self) -> bool:
        return self.all_complete and self.l4 == 2 % self.prime and self.arithmetic_progression

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "prime": self.prime,
            "classes": [sorted(c) for c in self.classes],
            "l4": self.l4,
            "arithmeticProgression": self.arithmetic_progression,
            "holds": self.holds,
        }


def subsequence_classes(q: int, p: int) -> SubsequenceClasses:
    """Value sets of the four stride-4 slices of F = w(0, 1, q) mod p."""
    if not (p > 2 and is_prime(p) and (q * q + 4) % p == 0):
        raise HypothesisViolation(f"{p} is not an odd prime divisor of q^2+4 = {q * q + 4}",
                                  failed="p odd prime dividing q^2+4")
    f = generate(Recurrence.unit(q), p, 4 * p)
    classes = tuple(frozenset(f[4 * n + r] for n in range(p)) for r in range(4))
    l4 = generate(Recurrence(2, q, q), p, 5)[4]
    progression = all(f[4 * n] == (-2 * n * q) % p for n in range(p))
    return SubsequenceClasses(q, p, classes, l4, progression)


def shift_identity_holds(q: int, n_max: int = 100) -> bool:
    """F_{n+4} = L_4 F_n - F_{n-4} over the integers for 4 <= n <= n_max."""
    f = [0, 1]
    el = [2, q]
    while len(f) < n_max + 5:
        f.append(q * f[-1] + f[-2])
        el.append(q * el[-1] + el[-2])
    return all(f[n + 4] == el[4] * f[n] - f[n - 4] for n in range(4, n_max + 1))

