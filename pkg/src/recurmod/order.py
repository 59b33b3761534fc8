"""Order of the companion matrix modulo m.

``k(m)`` is the least ``k >= 1`` with ``sigma^k == I (mod m)``.  It is computed
three ways: by walking the state of the seed (0, 1), by lifting through prime
powers, and by combining coprime parts with lcm.  The direct walk is the ground
truth the other two are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import NamedTuple

from .arith import factorize, lcm
from .core import Recurrence, period_length, sigma_power
from .errors import TrivialSeed

#: Largest exponent c with k(p^c) == k(p) that is searched before giving up
#: on the lifting law and computing each prime power directly.
STABILIZATION_CAP = 3


@dataclass(frozen=True)
class OrderResult:
    modulus: int
    order: int
    method: str  # "direct", "multiplicative" or "lifted"
    factors: tuple = field(default=())  # (p, e, k(p^e)) triples

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "order": self.order,
            "method": self.method,
            "factors": [list(f) for f in self.factors],
        }


def order_direct(q: int, sign: int, m: int) -> OrderResult:
    """Least k with sigma^k == I mod m, by iterating the (0, 1) state.

    Since 0^2 + q*0*1 - 1^2 = -1 is a unit, the period of (0, 1) equals the
    order of the companion matrix.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return OrderResult(1, 1, "direct")
    return OrderResult(m, period_length(0, 1, q, sign, m), "direct")


@lru_cache(maxsize=4096)
def _prime_power_chain(q: int, sign: int, p: int, e: int) -> tuple[tuple[int, ...], int]:
    """``(k(p), k(p^2), ..., k(p^e))`` and the stabilization exponent c.

    k(p^j) is a multiple of k(p^(j-1)) and divides p*k(p^(j-1)), so one
    identity check per level decides between the two.
    """
    k1 = period_length(0, 1, q, sign, p)
    chain = [k1]
    c = 1
    for j in range(2, e + 1):
        prev = chain[-1]
        if sigma_power(q, sign, prev, p**j).is_identity():
            if prev == k1:
                c = j
                if c > STABILIZATION_CAP:
                    break
            chain.append(prev)
        else:
            nxt = p * prev
            if not sigma_power(q, sign, nxt, p**j).is_identity():
                raise AssertionError(f"lift step failed at {p}^{j} for q={q}")
            chain.append(nxt)
    if c > STABILIZATION_CAP:
        chain = [period_length(0, 1, q, sign, p**j) for j in range(1, e + 1)]
    return tuple(chain), c


def stabilization_exponent(q: int, sign: int, p: int, probe: int = STABILIZATION_CAP + 1) -> int:
    """Largest c (searched up to ``probe``) with k(p^c) == k(p)."""
    return _prime_power_chain(q, sign, p, probe)[1]


def order_lifted(q: int, sign: int, p: int, e: int) -> OrderResult:
    if e < 1:
        raise ValueError("exponent must be at least 1")
    chain, _ = _prime_power_chain(q, sign, p, e)
    k = chain[-1]
    return OrderResult(p**e, k, "lifted" if e > 1 else "direct", ((p, e, k),))


def order_composite(q: int, sign: int, m: int) -> OrderResult:
    """k(m) as the lcm of k over the prime-power parts of m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return OrderResult(1, 1, "multiplicative")
    k = 1
    parts = []
    for p, e in factorize(m):
        kp = order_lifted(q, sign, p, e).order
        parts.append((p, e, kp))
        k = lcm(k, kp)
    method = "multiplicative" if len(parts) > 1 else ("lifted" if parts[0][1] > 1 else "direct")
    return OrderResult(m, k, method, tuple(parts))


def order(q: int, m: int, sign: int = 1) -> int:
    """Shorthand for ``order_composite(q, sign, m).order``."""
    return order_composite(q, sign, m).order


class PeriodVsOrder(NamedTuple):
    period_length: int
    order: int
    divides: bool


def period_length_divides(rec: Recurrence, m: int) -> PeriodVsOrder:
    """Compare the period through the seed with k(m).

    The period always divides k(m), and equals it when the invariant is a unit.
    """
    if m > 1 and rec.is_trivial_mod(m):
        raise TrivialSeed(f"seed ({rec.a}, {rec.b}) is (0, 0) modulo {m}")
    n = period_length(rec.a, rec.b, rec.q, rec.sign, m) if m > 1 else 1
    k = order_composite(rec.q, rec.sign, m).order
    divides = k % n == 0
    if not divides:
        raise AssertionError(f"period {n} does not divide order {k} mod {m}")
    if gcd(rec.invariant, m) == 1 and n != k:
        raise AssertionError(f"unit invariant but period {n} != order {k} mod {m}")
    return PeriodVsOrder(n, k, divides)
