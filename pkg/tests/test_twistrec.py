import random

import pytest

from axtower.errors import LeadingCoefficientZero, UnsupportedConfig, WindowTooShort
from axtower.field import frobenius
from axtower.twistrec import (TwistRelation, TwistSequence, check_relation, extend_sequence, find_relation,
                              k_scaling_counterexample, solution_count, solution_space)

from conftest import F2, F3, F4


def seq(k, xs):
    return TwistSequence(k, tuple(k.from_index(i) if isinstance(i, int) else i for i in xs))


def rel(k, ds):
    return TwistRelation(k, tuple(k.from_index(i) if isinstance(i, int) else i for i in ds))


def random_relation(rng, k, r):
    ds = [k.from_index(rng.randrange(k.q)) for _ in range(r + 1)]
    ds[0] = k.from_index(rng.randrange(1, k.q))
    ds[-1] = k.from_index(rng.randrange(1, k.q))
    return TwistRelation(k, tuple(ds))


def test_zero_sequence_satisfies_everything():
    assert check_relation(seq(F3, [0] * 6), rel(F3, [1, 2, 1]))


def test_constant_over_prime_field():
    r = TwistRelation(F3, (F3(1), F3(-1)))
    assert check_relation(seq(F3, [2] * 6), r)
    assert find_relation(seq(F3, [2] * 6), 2).coeffs == (F3(1), F3(-1))


def test_f4_alternating():
    w = F4.gen()
    s = TwistSequence(F4, (w, w * w) * 3)
    r = TwistRelation(F4, (F4.one(), F4.one()))
    assert check_relation(s, r)
    assert extend_sequence(r, [w], 6) == s


def test_period3_over_f2():
    s = seq(F2, [1, 0, 1] * 4)
    r = find_relation(s, 3)
    assert r is not None and check_relation(s, r)
    assert r.coeffs == (F2(1), F2(1), F2(1))  # x_n + x_{n+1} + x_{n+2} = 0; nothing of order <= 1 fits


def test_short_window():
    with pytest.raises(WindowTooShort):
        check_relation(seq(F2, [1]), rel(F2, [1, 1]))
    with pytest.raises(WindowTooShort):
        find_relation(seq(F2, [1, 1, 1]), 2)


def test_leading_zero():
    with pytest.raises(LeadingCoefficientZero):
        extend_sequence(rel(F2, [1, 0]), [F2(1)], 4)


def test_zero_seed_gives_zero():
    s = extend_sequence(rel(F3, [1, 2, 1]), [F3(0), F3(0)], 7)
    assert all(x.is_zero() for x in s.terms)


def test_counts():
    assert solution_count(rel(F2, [1, 1]), 5) == 2
    assert solution_count(rel(F3, [2]), 4) == 1
    with pytest.raises(UnsupportedConfig):
        solution_count(rel(F3, [1, 1, 1, 1]), 5)


def test_trimmed():
    t, k = rel(F4, [0, 2, 3, 0]).trimmed()
    assert k == 1 and t.order == 1


@pytest.mark.parametrize("k", [F2, F3, F4])
def test_roundtrip(k):
    rng = random.Random(k.q)
    for _ in range(20):
        r = rng.randint(1, 2)
        R = random_relation(rng, k, r)
        seed = [k.from_index(rng.randrange(k.q)) for _ in range(r)]
        s = extend_sequence(R, seed, 12)
        assert check_relation(s, R)
        found = find_relation(s, 2)
        assert found is not None and found.order <= r and check_relation(s, found)


@pytest.mark.parametrize("k", [F2, F3, F4])
@pytest.mark.parametrize("r", [1, 2])
def test_count_is_q_to_r(k, r):
    rng = random.Random(r * 7 + k.q)
    for _ in range(3):
        assert solution_count(random_relation(rng, k, r), r + 4) == k.q ** r


@pytest.mark.parametrize("k", [F2, F3, F4])
def test_prime_field_linearity(k):
    rng = random.Random(3)
    R = random_relation(rng, k, 2)
    sols = solution_space(R, 5)
    sset = {s.terms for s in sols}
    for a in sols[:8]:
        for b in sols[:8]:
            assert tuple(x + y for x, y in zip(a.terms, b.terms)) in sset
        for c in range(k.p):
            assert tuple(k(c) * x for x in a.terms) in sset


def test_f4_scaling_counterexample():
    sol, c = k_scaling_counterexample(rel(F4, [1, 1]), 3)
    w = F4.gen()
    assert sol.terms == (F4.one(),) * 3 and c == w
    assert k_scaling_counterexample(rel(F3, [1, 2, 1]), 4) is None


@pytest.mark.parametrize("k", [F2, F3, F4])
def test_shift_and_frobenius(k):
    rng = random.Random(5)
    R = random_relation(rng, k, 2)
    s = extend_sequence(R, [k.from_index(rng.randrange(k.q)) for _ in range(2)], 10)
    shifted = TwistSequence(k, tuple(frobenius(x, 1) for x in s.terms[1:]))
    # the shifted Frobenius twist satisfies the Frobenius-conjugated relation (the same one over F_p)
    assert check_relation(shifted, TwistRelation(k, tuple(frobenius(d, 1) for d in R.coeffs)))
