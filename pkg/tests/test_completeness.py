import pytest

import naive
from recurmod.arith import factorize
from recurmod.completeness import (
    candidate_primes,
    complete,
    completeness_report,
    lift_five,
    lift_new_prime,
    lift_repeated_prime,
    prime_power_rule,
    reduce_to_unit_seed,
    shift_identity_holds,
    subsequence_classes,
)
from recurmod.core import Recurrence
from recurmod.errors import DegenerateDiscriminant, HypothesisViolation, TrivialSeed

Q3 = Recurrence.unit(3)


@pytest.mark.parametrize("m,expected", [(10, False), (28, False), (35, False), (14, True), (52, True),
                                        (13, True), (4, True), (3, False)])
def test_q3_verdicts(m, expected):
    assert complete(Q3, m) is expected
    assert completeness_report(Q3, m).complete is expected


def test_report_fields():
    rep = completeness_report(Q3, 10)
    assert rep.period_length == 12
    assert rep.missing == (2, 4, 5, 6, 8)
    assert rep.histogram == {0: 4, 1: 2, 3: 2, 7: 2, 9: 2}
    assert not rep.uniform
    assert rep.gcd_invariant == 1
    d = rep.as_dict()
    assert d["periodLength"] == 12 and d["missing"] == [2, 4, 5, 6, 8]


def test_report_uniform():
    rep = completeness_report(Recurrence.unit(1), 5)
    assert rep.complete and rep.uniform and rep.period_length == 20


def test_report_rejects_trivial_seed():
    with pytest.raises(TrivialSeed):
        completeness_report(Recurrence(3, 6, 1), 3)


@pytest.mark.parametrize("q,union", [(1, (2, 3, 5, 7)), (2, (2, 3, 5, 7)), (3, (2, 3, 5, 7, 13)),
                                     (5, (2, 3, 5, 7, 29)), (-3, (2, 3, 5, 7, 13))])
def test_candidate_primes(q, union):
    assert candidate_primes(q).union == union


def test_candidate_primes_minus_variant():
    assert candidate_primes(3, -1).union == (5,)
    assert candidate_primes(6, -1).union == (2,)
    with pytest.raises(DegenerateDiscriminant):
        candidate_primes(2, -1)


@pytest.mark.parametrize("q", [-8, -5, -1, 1, 2, 3, 4, 6, 11])
def test_candidate_primes_are_sound(q):
    allowed = set(candidate_primes(q).union)
    for m in range(2, 400):
        if naive.complete(0, 1, q, m):
            assert {p for p, _ in factorize(m)} <= allowed


@pytest.mark.parametrize("a,b,q", [(0, 1, 3), (0, 5, 3), (2, 2, 2), (3, 1, 1), (1, 4, 6)])
def test_divisor_closure(a, b, q):
    rec = Recurrence(a, b, q)
    members = {m for m in range(2, 400) if complete(rec, m)}
    for m in members:
        assert all(d in members for d in range(2, m) if m % d == 0)


@pytest.mark.parametrize("a,b,q", [(0, 5, 3), (2, 2, 2), (3, 1, 1), (0, 2, 1), (1, 3, 4)])
def test_complete_sequences_are_unit_multiples(a, b, q):
    rec = Recurrence(a, b, q)
    for m in range(2, 200):
        if rec.is_trivial_mod(m) or not complete(rec, m):
            continue
        d, unit = reduce_to_unit_seed(rec, m)
        assert complete(unit, m)
        assert Recurrence(0, d, q).is_trivial_mod(m) is False
        assert naive.rotations_min(naive.period(0, d, q, m)) == naive.rotations_min(naive.period(a, b, q, m))


def test_lift_repeated_prime_example():
    v = lift_repeated_prime(Q3, 13, 13)
    assert v.applicable and v.verified and v.target == 169
    assert v.source == "bruteforce-verified"
    far = lift_repeated_prime(Q3, 13, 169, ceiling=0)
    assert far.applicable and far.verified is None and far.source == "by-rule"


def test_lift_new_prime_example():
    v = lift_new_prime(Q3, 13, 14)
    assert v.applicable and v.verified and v.target == 182


def test_lift_five_example():
    v = lift_five(Q3, 5)
    assert v.applicable and v.verified and v.target == 25
    assert lift_five(Q3, 65).verified


def test_lift_reports_failed_hypothesis():
    v = lift_repeated_prime(Q3, 13, 10)
    assert not v.applicable
    assert v.failed[0] == "p divides m"
    with pytest.raises(HypothesisViolation) as exc:
        v.require()
    assert exc.value.failed == "p divides m"


def test_lift_new_prime_needs_invariant_prime_to_p():
    # Lucas numbers: complete mod 3, k(15) = 5k(3), but 5 divides the invariant and mod 15 fails
    lucas = Recurrence(2, 1, 1)
    assert complete(lucas, 3) and not complete(lucas, 15)
    v = lift_new_prime(lucas, 5, 3)
    assert not v.applicable
    assert v.failed == ["gcd(p, a^2+qab-b^2) = 1", "k(pm) = p*k(m)", "complete mod m"]


def test_lift_base_must_be_complete():
    v = lift_new_prime(Q3, 13, 10)
    assert not v.applicable and "complete mod m" in v.failed


@pytest.mark.parametrize("q", range(1, 31))
@pytest.mark.parametrize("p", [2, 3, 7])
def test_prime_power_caps_match_bruteforce(q, p):
    rule = prime_power_rule(q, p)
    unit = Recurrence.unit(q)
    top = {2: 5, 3: 5, 7: 3}[p]
    for e in range(1, top + 1):
        assert complete(unit, p**e) == rule.allows(e), (q, p, e, rule)


@pytest.mark.parametrize("q", [1, 2, 3, 4, 6, 8, 9, 11])
def test_prime_power_five_matches_bruteforce(q):
    rule = prime_power_rule(q, 5)
    for e in range(1, 5):
        assert complete(Recurrence.unit(q), 5**e) == rule.allows(e), (q, e, rule)


def test_prime_power_outside_candidates():
    rule = prime_power_rule(3, 11)
    assert rule.max_exponent == 0 and rule.source == "candidate-primes"


@pytest.mark.parametrize("q,p", [(q, p) for q in range(1, 51) for p, _ in factorize(q * q + 4) if 2 < p <= 100])
def test_subsequence_classes(q, p):
    res = subsequence_classes(q, p)
    assert res.holds
    assert all(len(c) == p for c in res.classes)


def test_subsequence_rejects_other_primes():
    with pytest.raises(HypothesisViolation):
        subsequence_classes(1, 7)
    with pytest.raises(HypothesisViolation):
        subsequence_classes(2, 2)


@pytest.mark.parametrize("q", range(1, 11))
def test_shift_identity(q):
    assert shift_identity_holds(q, 100)
