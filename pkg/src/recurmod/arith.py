"""Small integer helpers: factorization, valuations, Legendre symbols."""

from __future__ import annotations

from math import gcd, isqrt

from .errors import FactorizationLimit

#: Largest trial divisor used by :func:`factorize`.
TRIAL_DIVISION_LIMIT = 10**6


def lcm(x: int, y: int) -> int:
    return x // gcd(x, y) * y


def factorize(n: int) -> list[tuple[int, int]]:
    """Return the prime factorization of ``n`` as sorted ``(p, e)`` pairs.

    Trial division runs up to :data:`TRIAL_DIVISION_LIMIT`; a cofactor left
    over after that is accepted as prime only when it is provably so
    (smaller than the square of the limit).
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    step = 2
    while d * d <= n:
        if d > TRIAL_DIVISION_LIMIT:
            raise FactorizationLimit(
                f"cofactor {n} has no factor below {TRIAL_DIVISION_LIMIT}"
            )
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(abs(n))] if n else []


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    return all(n % d and n % (d + 2) for d in range(5, isqrt(n) + 1, 6))


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in ``n`` (``n`` nonzero)."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p`` via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
