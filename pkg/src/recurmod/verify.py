"""Self-check: every stated property of every module, run over its test grid.

Each check returns ``(passed, detail)``.  ``quick=True`` shrinks the grids so
the whole table finishes in a few seconds.
"""

from __future__ import annotations

import random
import time
from math import gcd

from .arith import divisors, factorize, primes_up_to
from .classify import bruteforce_members, classify
from .completeness import (
    candidate_primes,
    complete,
    completeness_report,
    lift_five,
    lift_new_prime,
    lift_repeated_prime,
    reduce_to_unit_seed,
    shift_identity_holds,
    subsequence_classes,
)
from .core import (
    Recurrence,
    canonical_rotation,
    find_period,
    generate,
    period_length,
    seed_matrix,
)
from .errors import Disagreement
from .fundamental import enumerate_fs, period_invariant, verify_three_power_decomposition
from .order import order_composite, order_direct, order_lifted
from .variant_u import check_order_divisibility, complete_verdict, uniform_verdict

SEEDS = [(0, 1), (1, 1), (2, 2), (2, 1), (1, 3)]
NONZERO_Q8 = [q for q in range(-8, 9) if q]


def _first(bad, limit=3):
    return f"{len(bad)} failures, e.g. {bad[:limit]}" if bad else "ok"


def check_generate_vs_period(quick=False):
    bad = []
    for q in NONZERO_Q8:
        for a, b in SEEDS:
            for m in range(2, 40 if quick else 120):
                rec = Recurrence(a, b, q)
                if rec.is_trivial_mod(m):
                    continue
                k = find_period(rec, m).length
                terms = generate(rec, m, 2 * k)
                if terms[:k] != terms[k:]:
                    bad.append((q, a, b, m))
    return not bad, _first(bad)


def check_matrix_identity(quick=False):
    rng = random.Random(7)
    bad = []
    n_max = 60 if quick else 200
    for m in range(2, 51):
        for q in range(-10, 11):
            if not q:
                continue
            a, b = rng.randrange(-50, 50), rng.randrange(-50, 50)
            rec = Recurrence(a, b, q)
            terms = generate(rec, m, n_max + 3)
            base = seed_matrix(rec, m)
            power = (1, 0, 0, 1)
            for n in range(n_max + 1):
                x, y, z, w = base
                e, f, g, h = power
                got = ((x * e + y * g) % m, (x * f + y * h) % m, (z * e + w * g) % m, (z * f + w * h) % m)
                if got != (terms[n + 2], terms[n + 1], terms[n + 1], terms[n]):
                    bad.append((m, q, a, b, n))
                    break
                power = ((e * q + f) % m, e % m, (g * q + h) % m, g % m)
    return not bad, _first(bad)


def check_determinant_identity(quick=False, samples=None):
    rng = random.Random(11)
    bad = []
    for _ in range(samples or (2000 if quick else 10_000)):
        a, b = rng.randrange(-10**6, 10**6), rng.randrange(-10**6, 10**6)
        q = rng.choice([x for x in range(-30, 31) if x])
        m = rng.randrange(2, 10**6)
        n = rng.randrange(0, 300)
        rec = Recurrence(a, b, q)
        w = generate(rec, m, n + 3)
        lhs = (w[n + 2] * w[n] - w[n + 1] ** 2) % m
        if lhs != ((-1) ** n * rec.invariant) % m:
            bad.append((a, b, q, m, n))
    return not bad, _first(bad)


def check_canonical_rotation(quick=False):
    rng = random.Random(3)
    bad = []
    for _ in range(200 if quick else 2000):
        seq = [rng.randrange(3) for _ in range(rng.randrange(1, 30))]
        shift = rng.randrange(len(seq))
        rotated = seq[shift:] + seq[:shift]
        expected = min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))
        if canonical_rotation(seq) != expected or canonical_rotation(rotated) != expected:
            bad.append(seq)
    return not bad, _first(bad)


def check_order_oracle(quick=False):
    bad = []
    for sign in (1, -1):
        for q in NONZERO_Q8:
            for m in range(2, 80 if quick else 401):
                if order_composite(q, sign, m).order != order_direct(q, sign, m).order:
                    bad.append((q, sign, m))
    return not bad, _first(bad)


def check_order_mod5(quick=False):
    bad = []
    for q in range(1, 101):
        k = order_direct(q, 1, 5).order
        if q % 5 in (1, 4) and k != 20 or q % 5 in (2, 3) and k != 12:
            bad.append((q, k))
    return not bad, _first(bad)


def check_order_three_powers(quick=False):
    bad = []
    for q in range(1, 51):
        if q % 3 == 0:
            continue
        for n in range(1, 6):
            k = order_lifted(q, 1, 3, n).order
            if q % 9 in (4, 5):
                if n <= 2 and k != 8:
                    bad.append((q, n, k))
            elif k != 8 * 3 ** (n - 1):
                bad.append((q, n, k))
    return not bad, _first(bad)


def check_order_five_powers(quick=False):
    bad = []
    for q in range(1, 101):
        if q % 5 == 0:
            continue
        if q % 25 in (7, 18):
            if not order_lifted(q, 1, 5, 1).order == order_lifted(q, 1, 5, 2).order == 12:
                bad.append((q, "k(5) = k(25) = 12"))
            continue
        for n in range(1, 5):
            if order_lifted(q, 1, 5, n + 1).order != 5 * order_lifted(q, 1, 5, n).order:
                bad.append((q, n))
    return not bad, _first(bad)


def check_period_4p(quick=False):
    bad = []
    count = 0
    for q in range(1, 51):
        for p, _ in factorize(q * q + 4):
            if p == 2 or p > 100:
                continue
            for a in range(0, min(p, 6)):
                for b in range(0, min(p, 6)):
                    rec = Recurrence(a, b, q)
                    if rec.invariant % p == 0:
                        continue
                    count += 1
                    if period_length(a, b, q, 1, p) != 4 * p:
                        bad.append((q, p, a, b))
    return not bad and count > 0, f"{count} cases; " + _first(bad)


def check_u_period_divides(quick=False):
    bad = []
    count = 0
    for p in primes_up_to(200):
        if p == 2:
            continue
        for q in range(1, 13):
            for a, b in SEEDS:
                if Recurrence(a, b, q, -1).invariant % p == 0:
                    continue
                rep = check_order_divisibility(q, p, a, b)
                count += rep.divides is not None
                if not rep.holds:
                    bad.append((q, p, a, b))
    return not bad, f"{count} claims; " + _first(bad)


def _grid_specs():
    return [Recurrence(a, b, q) for q in NONZERO_Q8 for a, b in SEEDS]


def check_divisor_closure(quick=False):
    bad = []
    top = 150 if quick else 600
    for rec in _grid_specs():
        members = set(bruteforce_members(rec, top))
        for m in members:
            for r in divisors(m):
                if r > 1 and r not in members:
                    bad.append((rec.q, rec.a, rec.b, m, r))
    return not bad, _first(bad)


def check_candidate_primes(quick=False):
    bad = []
    top = 150 if quick else 600
    for q in NONZERO_Q8:
        allowed = set(candidate_primes(q, 1).union)
        for m in bruteforce_members(Recurrence.unit(q), top):
            if any(p not in allowed for p, _ in factorize(m)):
                bad.append((q, m))
    return not bad, _first(bad)


def check_omega_prime_completeness(quick=False):
    bad = []
    for q in range(1, 51):
        for p, _ in factorize(q * q + 4):
            if p > 100:
                continue
            for a in range(0, min(p, 5)):
                for b in range(0, min(p, 5)):
                    rec = Recurrence(a, b, q)
                    if rec.is_trivial_mod(p):
                        continue
                    if complete(rec, p) != (gcd(rec.invariant, p) == 1):
                        bad.append((q, p, a, b))
    return not bad, _first(bad)


def check_unit_multiples(quick=False):
    bad = []
    for rec in _grid_specs():
        for m in bruteforce_members(rec, 100 if quick else 300):
            found = reduce_to_unit_seed(rec, m)
            if found is None or not complete(Recurrence.unit(rec.q), m):
                bad.append((rec.q, rec.a, rec.b, m))
    return not bad, _first(bad)


def lifting_instances(qs=range(1, 9), seeds=SEEDS, top=60, ceiling=10**6):
    """Every applicable lifting step over the grid, each verified by brute force."""
    found = []
    for q in qs:
        odd_omega = [p for p, _ in factorize(q * q + 4) if p > 2]
        for a, b in seeds:
            rec = Recurrence(a, b, q)
            for m in range(2, top + 1):
                if rec.is_trivial_mod(m):
                    continue
                verdicts = []
                for p in odd_omega:
                    if m % p == 0:
                        verdicts.append(lift_repeated_prime(rec, p, m, ceiling))
                    else:
                        verdicts.append(lift_new_prime(rec, p, m, ceiling))
                verdicts.append(lift_five(rec, m, ceiling))
                found.extend(v for v in verdicts if v.applicable)
    return found


def check_lifting(quick=False):
    try:
        found = lifting_instances(top=30 if quick else 60)
    except Disagreement as exc:
        return False, str(exc)
    unverified = [v for v in found if not v.verified]
    return not unverified and len(found) >= 50, f"{len(found)} applicable instances, all brute-force verified"


def check_classify_round_trip(quick=False):
    bad = []
    top = 300 if quick else 1000
    for q in range(-6, 7):
        if not q:
            continue
        for a, b in [(0, 1), (2, 2), (1, 1)]:
            rec = Recurrence(a, b, q)
            try:
                res = classify(rec, top, check=False)
            except Disagreement as exc:
                bad.append((q, a, b, exc.witness))
                continue
            if list(res.members) != bruteforce_members(rec, top):
                bad.append((q, a, b))
    return not bad, _first(bad)


def check_fibonacci(quick=False):
    top = 500 if quick else 2000
    rec = Recurrence.unit(1)
    res = classify(rec, top)
    return list(res.members) == bruteforce_members(rec, top), f"{len(res.members)} members"


def check_members_divisor_closed(quick=False):
    bad = []
    for q in (1, 2, 3, 4):
        res = classify(Recurrence.unit(q), 300 if quick else 1000)
        members = set(res.members)
        bad += [(q, m) for m in members for r in divisors(m) if r > 1 and r not in members]
    return not bad, _first(bad)


def check_fs_partition(quick=False):
    bad = []
    for q in range(1, 11):
        for m in range(2, 20 if quick else 41):
            if gcd(q, m) != 1:
                continue
            fs = enumerate_fs(q, m)
            pairs = fs.adjacent_pairs()
            expected = {(x, y) for x in range(m) for y in range(m)} - {(0, 0)}
            if set(pairs) != expected or any(c != 1 for c in pairs.values()) or fs.total_terms != m * m - 1:
                bad.append((q, m))
            if any(p.length < 3 for p in fs.periods):
                bad.append((q, m, "short period"))
    return not bad, _first(bad)


def check_fs_three_powers(quick=False):
    bad = []
    for q in (1, 2, 7, 8):
        for n in (1, 2, 3):
            if not verify_three_power_decomposition(q, n).holds:
                bad.append((q, n))
    return not bad, _first(bad)


def check_invariant_separation(quick=False):
    bad = []
    for q in (1, 2, 7, 8):
        for n in (1, 2, 3):
            m = 3**n
            unit = find_period(Recurrence.unit(q), m)
            classes = [period_invariant(unit.scaled(r), q) for r in range(1, m // 2 + 1) if r % 3]
            if len(set(classes)) != len(classes):
                bad.append((q, n))
    return not bad, _first(bad)


def check_subsequences(quick=False):
    bad = []
    for q in range(1, 51):
        for p, _ in factorize(q * q + 4):
            if p > 2 and p <= 100 and not subsequence_classes(q, p).holds:
                bad.append((q, p))
    return not bad, _first(bad)


def check_shift_identity(quick=False):
    bad = [q for q in range(1, 11) if not shift_identity_holds(q, 100)]
    return not bad, _first(bad)


def _u_disagreements(prop, quick):
    verdict = complete_verdict if prop == "complete" else uniform_verdict
    bad = []
    for q in NONZERO_Q8:
        for a, b in [(0, 1), (1, 1), (2, 2)]:
            rec = Recurrence(a, b, q, -1)
            for m in range(2, 120 if quick else 501):
                if verdict(rec, m).agrees is False:
                    bad.append((q, a, b, m))
    return bad


def check_u_uniform(quick=False):
    bad = _u_disagreements("uniform", quick)
    return not bad, _first(bad)


def check_u_complete(quick=False):
    bad = _u_disagreements("complete", quick)
    return not bad, _first(bad)


def _u_multiplicative(prop, quick):
    bad = []
    for q in NONZERO_Q8:
        for a, b in [(0, 1), (1, 1), (2, 2)]:
            rec = Recurrence(a, b, q, -1)

            def holds(m):
                if rec.is_trivial_mod(m):
                    return False
                r = completeness_report(rec, m)
                return r.complete if prop == "complete" else r.uniform

            for m in range(2, 100 if quick else 301):
                parts = [p**h for p, h in factorize(m)]
                if len(parts) > 1 and holds(m) != all(holds(x) for x in parts):
                    bad.append((q, a, b, m))
    return bad


def check_u_uniform_multiplicative(quick=False):
    bad = _u_multiplicative("uniform", quick)
    return not bad, _first(bad)


def check_u_complete_multiplicative(quick=False):
    bad = _u_multiplicative("complete", quick)
    return not bad, _first(bad)


CHECKS = [
    ("core", "generate repeats after one period", check_generate_vs_period),
    ("core", "seed matrix times sigma^n gives the shifted terms", check_matrix_identity),
    ("core", "w_{n+2}w_n - w_{n+1}^2 = (-1)^n * invariant", check_determinant_identity),
    ("core", "canonical rotation is shift invariant", check_canonical_rotation),
    ("order", "lifted/lcm order equals direct order", check_order_oracle),
    ("order", "k(5) is 20 or 12 by q mod 5", check_order_mod5),
    ("order", "k(3^n) = 8*3^(n-1), or k(3)=k(9)=8", check_order_three_powers),
    ("order", "k(5^(n+1)) = 5k(5^n), or k(5)=k(25)=12", check_order_five_powers),
    ("order", "period mod odd p | q^2+4 is 4p", check_period_4p),
    ("order", "u period divides p-1 or p+1 by splitting type", check_u_period_divides),
    ("completeness", "complete mod m => complete mod divisors", check_divisor_closure),
    ("completeness", "complete moduli use candidate primes only", check_candidate_primes),
    ("completeness", "mod odd p | q^2+4: complete iff invariant prime to p", check_omega_prime_completeness),
    ("completeness", "complete => unit multiple of the unit period", check_unit_multiples),
    ("completeness", "lifting conclusions agree with brute force", check_lifting),
    ("completeness", "stride-4 slices cover Z_p", check_subsequences),
    ("completeness", "F_{n+4} = L_4 F_n - F_{n-4}", check_shift_identity),
    ("classifier", "classify members equal brute force", check_classify_round_trip),
    ("classifier", "Fibonacci members equal brute force", check_fibonacci),
    ("classifier", "members are divisor closed", check_members_divisor_closed),
    ("fundamental", "adjacent pairs partition the nonzero pairs", check_fs_partition),
    ("fundamental", "FS(3^n) = scaled unit periods + 3*FS(3^(n-1))", check_fs_three_powers),
    ("fundamental", "scaled unit periods have distinct invariants", check_invariant_separation),
    ("variant-u", "uniform rule equals histogram check", check_u_uniform),
    ("variant-u", "uniform distribution is multiplicative", check_u_uniform_multiplicative),
    ("variant-u", "completeness rule equals brute force", check_u_complete),
    ("variant-u", "completeness is multiplicative", check_u_complete_multiplicative),
]


def run_all(quick=False, stream=None):
    """Run every check; returns a list of ``(module, name, passed, detail, seconds)``."""
    rows = []
    for module, name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            passed, detail = fn(quick=quick)
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        row = (module, name, passed, detail, time.perf_counter() - t0)
        rows.append(row)
        if stream is not None:
            print(f"{'PASS' if passed else 'FAIL'}  {module:<12} {name:<52} {detail}", file=stream, flush=True)
    return rows
