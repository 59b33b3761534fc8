"""Fundamental systems: one representative of every nontrivial period mod m."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from .arith import euler_phi
from .core import Period, Recurrence, canonical_rotation, find_period, invariant_class
from .errors import HypothesisViolation

#: enumerate_fs keeps a visited flag per pair state, i.e. m^2 bytes.
MAX_FS_MODULUS = 2000


@dataclass(frozen=True)
class FundamentalSystem:
    modulus: int
    q: int
    periods: tuple[Period, ...]

    @property
    def total_terms(self) -> int:
        return sum(p.length for p in self.periods)

    def adjacent_pairs(self) -> Counter:
        """Cyclically adjacent pairs over all periods, with multiplicity."""
        pairs = Counter()
        for per in self.periods:
            r = per.residues
            n = len(r)
            pairs.update((r[i], r[(i + 1) % n]) for i in range(n))
        return pairs

    def dump(self) -> str:
        lines = [f"# m={self.modulus} q={self.q} totalTerms={self.total_terms}"]
        lines += [",".join(map(str, p.residues)) for p in self.periods]
        return "\n".join(lines) + "\n"


def period_invariant(per: Period, q: int) -> frozenset:
    r = per.residues
    return invariant_class(r[0], r[1 % len(r)], q, per.modulus)


def enumerate_fs(q: int, m: int) -> FundamentalSystem:
    """Group the m^2 - 1 nonzero pair states into orbits; one canonical period per orbit."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if m < 1:
        raise ValueError("modulus must be positive")
    if m > MAX_FS_MODULUS:
        raise ValueError(f"enumerate_fs refuses m > {MAX_FS_MODULUS} (needs m^2 pair states)")
    qm = q % m
    visited = bytearray(m * m)
    visited[0] = 1
    periods = []
    for start in range(1, m * m):
        if visited[start]:
            continue
        x0, y0 = divmod(start, m)
        x, y = x0, y0
        residues = []
        while True:
            visited[x * m + y] = 1
            residues.append(x)
            x, y = y, (qm * y + x) % m
            if x == x0 and y == y0:
                break
        periods.append(Period(m, canonical_rotation(residues)))
    periods.sort(key=lambda p: (p.length, p.residues))
    return FundamentalSystem(m, q, tuple(periods))


@dataclass(frozen=True)
class ThreePowerDecomposition:
    q: int
    n: int
    unit_period_length: int
    pairwise_inequivalent: bool
    total_terms: int
    expected_terms: int  # 3^(2n) - 1
    counted_terms: int  # 8*3^(n-1)*phi(3^n)/2 + |FS(3^(n-1))|
    matches_enumeration: bool
    unique_unit_invariant: bool

    @property
    def holds(self) -> bool:
        return (self.pairwise_inequivalent and self.matches_enumeration and self.unique_unit_invariant
                and self.total_terms == self.expected_terms == self.counted_terms
                and self.unit_period_length == 8 * 3 ** (self.n - 1))


def verify_three_power_decomposition(q: int, n: int) -> ThreePowerDecomposition:
    """Check that FS(3^n) is the scaled unit periods r*C plus 3 times FS(3^(n-1)).

    C is the period of (0, 1) mod 3^n and r runs over the units in [1, 3^n / 2].
    """
    if n < 1:
        raise HypothesisViolation("n must be at least 1", failed="n >= 1")
    if q % 3 == 0:
        raise HypothesisViolation(f"3 divides q={q}", failed="gcd(q, 3) = 1")
    if q % 9 in (4, 5):
        raise HypothesisViolation(f"q={q} is 4 or 5 mod 9", failed="q != 4, 5 mod 9")
    m = 3**n
    unit = find_period(Recurrence.unit(q), m)
    scaled = [unit.scaled(r) for r in range(1, m // 2 + 1) if gcd(r, 3) == 1]
    if n > 1:
        lower = enumerate_fs(q, m // 3).periods
    else:
        lower = ()
    tripled = [Period(m, canonical_rotation([3 * x for x in d.residues])) for d in lower]
    union = scaled + tripled
    keys = [p.residues for p in union]
    inequivalent = len(set(keys)) == len(keys)
    full = enumerate_fs(q, m)
    unit_class = frozenset({1, m - 1})
    with_unit = [p for p in full.periods if period_invariant(p, q) == unit_class]
    return ThreePowerDecomposition(
        q=q,
        n=n,
        unit_period_length=unit.length,
        pairwise_inequivalent=inequivalent,
        total_terms=sum(p.length for p in union),
        expected_terms=m * m - 1,
        counted_terms=unit.length * euler_phi(m) // 2 + sum(d.length for d in lower),
        matches_enumeration=sorted(keys) == sorted(p.residues for p in full.periods),
        unique_unit_invariant=with_unit == [unit],
    )
