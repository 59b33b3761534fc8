"""Recurrences modulo m: term generation, companion matrices, invariants, periods.

A :class:`Recurrence` describes ``w_0 = a``, ``w_1 = b`` and
``w_n = q*w_{n-1} + sign*w_{n-2}``.  ``sign=+1`` is the main family studied
here; ``sign=-1`` gives the companion family ``u_n = q*u_{n-1} - u_{n-2}``.

Every residue handed back lies in ``[0, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TrivialSeed

Matrix = tuple[int, int, int, int]


@dataclass(frozen=True)
class Recurrence:
    a: int
    b: int
    q: int
    sign: int = 1

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def unit(cls, q: int, sign: int = 1) -> "Recurrence":
        """The seed (0, 1) for the given coefficient."""
        return cls(0, 1, q, sign)

    @property
    def invariant(self) -> int:
        """``sign*a^2 + q*a*b - b^2`` over the integers."""
        return self.sign * self.a * self.a + self.q * self.a * self.b - self.b * self.b

    def is_trivial_mod(self, m: int) -> bool:
        return self.a % m == 0 and self.b % m == 0

    def __str__(self):
        op = "+" if self.sign == 1 else "-"
        return f"w(a={self.a}, b={self.b}; w_n = {self.q}*w_(n-1) {op} w_(n-2))"


@dataclass(frozen=True)
class CompanionMatrix:
    """A 2x2 matrix ``(e00, e01; e10, e11)`` with entries reduced mod ``modulus``."""

    entries: Matrix
    modulus: int

    def is_identity(self) -> bool:
        return self.entries == (1 % self.modulus, 0, 0, 1 % self.modulus)

    @property
    def determinant(self) -> int:
        e = self.entries
        return (e[0] * e[3] - e[1] * e[2]) % self.modulus


@dataclass(frozen=True)
class Invariant:
    raw: int
    modulus: int
    reduced_class: frozenset

    def as_dict(self) -> dict:
        return {"raw": self.raw, "modulus": self.modulus,
                "reducedClass": sorted(self.reduced_class)}


@dataclass(frozen=True)
class Period:
    modulus: int
    residues: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.residues)

    def scaled(self, d: int, modulus: int | None = None) -> "Period":
        """Multiply every term by ``d`` (optionally reading the result mod ``modulus``)."""
        m = self.modulus if modulus is None else modulus
        return Period(m, canonical_rotation([d * x % m for x in self.residues]))


def _mul(x: Matrix, y: Matrix, m: int) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % m, (a * f + b * h) % m,
            (c * e + d * g) % m, (c * f + d * h) % m)


def matrix_power(base: Matrix, e: int, m: int) -> Matrix:
    """Square-and-multiply power of a 2x2 matrix modulo ``m``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = (1 % m, 0, 0, 1 % m)
    base = tuple(x % m for x in base)
    while e:
        if e & 1:
            result = _mul(result, base, m)
        base = _mul(base, base, m)
        e >>= 1
    return result


def companion(q: int, sign: int, m: int) -> CompanionMatrix:
    return CompanionMatrix((q % m, 1 % m, sign % m, 0), m)


def sigma_power(q: int, sign: int, e: int, m: int) -> CompanionMatrix:
    return CompanionMatrix(matrix_power((q, 1, sign, 0), e, m), m)


def companion_power(rec: Recurrence, e: int, m: int) -> CompanionMatrix:
    """The companion matrix of ``rec`` raised to ``e``, reduced mod ``m``."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return sigma_power(rec.q, rec.sign, e, m)


def seed_matrix(rec: Recurrence, m: int) -> Matrix:
    """``(w_2, w_1; w_1, w_0)``; multiplying by the n-th companion power shifts by n."""
    a, b = rec.a % m, rec.b % m
    return ((rec.q * b + rec.sign * a) % m, b, b, a)


def generate(rec: Recurrence, m: int, n: int) -> list[int]:
    """First ``n`` terms of ``rec`` reduced into ``[0, m)``."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    q, s = rec.q % m, rec.sign
    x, y = rec.a % m, rec.b % m
    out = []
    for _ in range(n):
        out.append(x)
        x, y = y, (q * y + s * x) % m
    return out


def invariant_of(rec: Recurrence, m: int) -> Invariant:
    raw = rec.invariant
    return Invariant(raw, m, frozenset({raw % m, -raw % m}))


def invariant_class(x: int, y: int, q: int, m: int, sign: int = 1) -> frozenset:
    """Invariant class of any period passing through the adjacent pair ``(x, y)``."""
    d = sign * x * x + q * x * y - y * y
    return frozenset({d % m, -d % m})


def least_rotation(seq) -> int:
    """Start index of the lexicographically least rotation (Booth's algorithm)."""
    n = len(seq)
    if n == 0:
        return 0
    s = list(seq) * 2
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = fail[j - k - 1]
        while i != -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if i == -1 and s[j] != s[k]:
            if s[j] < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical_rotation(seq) -> tuple[int, ...]:
    k = least_rotation(seq)
    seq = tuple(seq)
    return seq[k:] + seq[:k]


def raw_cycle(a: int, b: int, q: int, sign: int, m: int) -> list[int]:
    """Residues of the cycle through the state ``(a, b)``, starting at ``a``.

    The state map ``(x, y) -> (y, q*y + sign*x)`` is a bijection of the m^2
    pair states, so the walk must return to its start within m^2 steps.
    """
    a, b, q = a % m, b % m, q % m
    limit = m * m
    out = []
    x, y = a, b
    while True:
        out.append(x)
        x, y = y, (q * y + sign * x) % m
        if x == a and y == b:
            return out
        if len(out) > limit:
            raise AssertionError(f"no return to ({a}, {b}) within {limit} steps mod {m}")


def find_period(rec: Recurrence, m: int) -> Period:
    """The nontrivial period of ``rec`` modulo ``m`` in canonical rotation."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m > 1 and rec.is_trivial_mod(m):
        raise TrivialSeed(f"seed ({rec.a}, {rec.b}) is (0, 0) modulo {m}")
    return Period(m, canonical_rotation(raw_cycle(rec.a, rec.b, rec.q, rec.sign, m)))


def period_length(a: int, b: int, q: int, sign: int, m: int) -> int:
    """Length of the cycle through ``(a, b)`` without materializing it."""
    a, b, q = a % m, b % m, q % m
    x, y = a, b
    n = 0
    while True:
        x, y = y, (q * y + sign * x) % m
        n += 1
        if x == a and y == b:
            return n


def residue_counts(a: int, b: int, q: int, sign: int, m: int) -> list[int]:
    """Occurrences of each residue over one period through ``(a, b)``."""
    a, b, q = a % m, b % m, q % m
    counts = [0] * m
    x, y = a, b
    while True:
        counts[x] += 1
        x, y = y, (q * y + sign * x) % m
        if x == a and y == b:
            return counts


def is_complete(a: int, b: int, q: int, sign: int, m: int) -> bool:
    """Whether the sequence hits every residue mod ``m``; exact, stops early on success.

    A seed that is (0, 0) mod m >= 2 is never complete.
    """
    if m == 1:
        return True
    a, b, q = a % m, b % m, q % m
    if a == 0 and b == 0:
        return False
    seen = bytearray(m)
    missing = m
    x, y = a, b
    while True:
        if not seen[x]:
            seen[x] = 1
            missing -= 1
            if not missing:
                return True
        x, y = y, (q * y + sign * x) % m
        if x == a and y == b:
            return False
