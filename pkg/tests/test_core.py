import pytest
from hypothesis import given, settings, strategies as st

import naive
from recurmod.core import (
    Recurrence,
    canonical_rotation,
    companion,
    companion_power,
    find_period,
    generate,
    invariant_of,
    is_complete,
    least_rotation,
    period_length,
    raw_cycle,
    residue_counts,
    seed_matrix,
)
from recurmod.errors import TrivialSeed

EXAMPLE_13 = (0, 1, 3, 10, 7, 5, 9, 6, 1, 9, 2, 2, 8, 0, 8, 11, 2, 4, 1, 7, 9, 8, 7, 3, 3, 12,
              0, 12, 10, 3, 6, 8, 4, 7, 12, 4, 11, 11, 5, 0, 5, 2, 11, 9, 12, 6, 4, 5, 6, 10, 10, 1)

qs = st.integers(-30, 30).filter(bool)


def test_recurrence_validation():
    with pytest.raises(ValueError):
        Recurrence(0, 1, 0)
    with pytest.raises(ValueError):
        Recurrence(0, 1, 1, sign=2)
    assert Recurrence.unit(3) == Recurrence(0, 1, 3, 1)


@pytest.mark.parametrize("a,b,q,sign,raw", [(0, 1, 1, 1, -1), (2, 1, 1, 1, 5), (2, 2, 2, 1, 8), (0, 1, 3, -1, -1)])
def test_invariant_value(a, b, q, sign, raw):
    rec = Recurrence(a, b, q, sign)
    assert rec.invariant == raw
    inv = invariant_of(rec, 7)
    assert inv.reduced_class == frozenset({raw % 7, -raw % 7})


def test_period_mod_13_for_q3():
    per = find_period(Recurrence.unit(3), 13)
    assert per.length == 52
    assert per.residues == canonical_rotation(EXAMPLE_13)
    assert raw_cycle(0, 1, 3, 1, 13) == list(EXAMPLE_13)


@pytest.mark.parametrize("m,expected", [(2, (0, 1, 1)), (3, (0, 1, 1, 2, 0, 2, 2, 1)), (5, None)])
def test_fibonacci_periods(m, expected):
    per = find_period(Recurrence.unit(1), m)
    assert per.length == {2: 3, 3: 8, 5: 20}[m]
    if expected:
        assert per.residues == expected


def test_trivial_seed_rejected():
    with pytest.raises(TrivialSeed):
        find_period(Recurrence(5, 10, 1), 5)
    assert Recurrence(5, 10, 1).is_trivial_mod(5)
    assert not is_complete(5, 10, 1, 1, 5)


def test_modulus_one():
    assert find_period(Recurrence.unit(1), 1).residues == (0,)
    assert is_complete(0, 1, 1, 1, 1)


@pytest.mark.parametrize("q", [-7, -2, 1, 3, 8])
@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("a,b", [(0, 1), (2, 2), (3, 1)])
def test_cycle_matches_naive(q, sign, a, b):
    for m in range(2, 60):
        if a % m == 0 and b % m == 0:
            continue
        ref = naive.period(a, b, q, m, sign)
        assert raw_cycle(a, b, q, sign, m) == ref
        assert period_length(a, b, q, sign, m) == len(ref)
        counts = residue_counts(a, b, q, sign, m)
        assert counts == [ref.count(r) for r in range(m)]
        assert is_complete(a, b, q, sign, m) == (len(set(ref)) == m)


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), qs, st.integers(2, 200))
def test_generate_is_periodic(a, b, q, m):
    rec = Recurrence(a, b, q)
    if rec.is_trivial_mod(m):
        return
    k = period_length(a, b, q, 1, m)
    assert k <= m * m
    seq = generate(rec, m, 2 * k + 3)
    assert seq[:k + 3] == seq[k:2 * k + 3]
    assert generate(rec, m, 20) == naive.terms(a, b, q, m, 20)


@settings(max_examples=200)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-10, 10).filter(bool),
       st.integers(2, 50), st.integers(0, 200), st.sampled_from([1, -1]))
def test_seed_matrix_shift(a, b, q, m, n, sign):
    rec = Recurrence(a, b, q, sign)
    w = generate(rec, m, n + 3)
    x, y, z, t = seed_matrix(rec, m)
    e, f, g, h = companion_power(rec, n, m).entries
    assert ((x * e + y * g) % m, (x * f + y * h) % m, (z * e + t * g) % m, (z * f + t * h) % m) == \
        (w[n + 2], w[n + 1], w[n + 1], w[n])


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), qs, st.integers(2, 10**6),
       st.integers(0, 300), st.sampled_from([1, -1]))
def test_determinant_identity(a, b, q, m, n, sign):
    rec = Recurrence(a, b, q, sign)
    w = generate(rec, m, n + 3)
    assert (w[n + 2] * w[n] - w[n + 1] ** 2) % m == (rec.invariant * (-sign) ** n) % m


def test_companion_determinant():
    assert companion(3, 1, 10).determinant == 9
    assert companion(3, -1, 10).determinant == 1
    assert companion_power(Recurrence.unit(3), 52, 13).is_identity()
    assert not companion_power(Recurrence.unit(3), 26, 13).is_identity()


@given(st.lists(st.integers(0, 3), min_size=1, max_size=40), st.integers(0, 100))
def test_canonical_rotation_is_shift_invariant(seq, shift):
    shift %= len(seq)
    rotated = seq[shift:] + seq[:shift]
    assert canonical_rotation(seq) == canonical_rotation(rotated) == naive.rotations_min(seq)
    k = least_rotation(seq)
    assert tuple(seq[k:] + seq[:k]) == naive.rotations_min(seq)


def test_scaled_period():
    per = find_period(Recurrence.unit(1), 5)
    doubled = per.scaled(2)
    assert doubled == find_period(Recurrence(0, 2, 1), 5)
    assert per.scaled(3, modulus=15).modulus == 15
