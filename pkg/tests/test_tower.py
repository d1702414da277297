import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from axtower.errors import ConfigMismatch, PrecisionExhausted
from axtower.field import ResidueField
from axtower.io import element_from_json
from axtower.tower import TowerConfig, TowerElement as T, resum_digits
from axtower.valuation import Valuation

from conftest import F2, F3, F4, config, random_element

C2, C3 = config(2), config(3)
CONFIGS = [config(2), config(3), config(5), config(2, 2), config(3, 2), config(2, 3), TowerConfig(F4, 1, None, 8)]


def same(x, y):
    return (x - y).is_zero()


def naive_mul(cfg, level, a, b):
    """Schoolbook product reduced by pi_n^N = -sum a_j pi_n^(j p^n), integer coordinates (f = 1)."""
    N, M = cfg.N(level), cfg.M
    prod = [0] * (2 * N)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x[0] * y[0]
    step = cfg.p ** level
    for d in range(2 * N - 1, N - 1, -1):
        c = prod[d]
        prod[d] = 0
        for j, aj in enumerate(cfg.eisenstein[:-1]):
            prod[d - N + j * step] -= c * aj[0]
    return tuple((x % M,) for x in prod[:N])


def test_pi1_squared_is_p():
    pi = T.pi(C2, 1)
    assert same(pi * pi, T.from_rational(C2, 2, 1))
    assert (pi * pi).teichmuller_expand(stop=4) == {2: F2.one()}


def test_difference_of_squares():
    one, pi = T.one(C3, 2), T.pi(C3, 2)
    assert same((one + pi) * (one - pi), one - pi * pi)


def test_x_minus_x_is_bounded_zero():
    x = T.pi(C3, 1) + T.one(C3, 1)
    v = (x - x).valuation()
    assert v == Valuation.at_least(x.precision_cap)
    assert T.zero(C3, 1).valuation().is_infinite


@pytest.mark.parametrize("cfg", CONFIGS)
def test_pi_n_valuation(cfg):
    for n in range(4):
        assert T.pi(cfg, n).valuation() == Valuation.of(Fraction(1, cfg.e * cfg.p ** n))
    assert T.from_rational(cfg, cfg.p).valuation() == Valuation.of(1)


def test_eta_valuation_and_coefficients():
    eta = T.eta(C2, 1)
    assert eta.valuation() == Valuation.of(Fraction(-1, 2))
    a = eta.coefficients_over_base()
    assert a[0].is_zero()
    assert same(a[1], T.from_rational(C2, Fraction(1, 2)))


def test_embed_pi1_is_pi2_squared():
    assert same(T.pi(C2, 1).embed(2), T.pi(C2, 2) ** 2)


def test_coefficients_read_off():
    x = T.from_terms(C2, 2, {0: 2, 1: 1, 3: 2})
    a = x.coefficients_over_base()
    for ai, want in zip(a, [T.from_rational(C2, 2), T.one(C2), T.zero(C2), T.from_rational(C2, 2)]):
        assert same(ai, want)


def test_embed_gives_sparse_support():
    x = T.from_terms(C3, 1, {-1: 1, 1: 2, 2: 1})
    a = x.embed(3).coefficients_over_base()
    assert all(ai.is_zero() for i, ai in enumerate(a) if i % 9)


def test_teichmuller_expansion_of_one_plus_p():
    assert T.from_rational(C3, 4).teichmuller_expand() == {0: F3.one(), 1: F3.one()}


def test_single_digit():
    w = F4.gen()
    cfg = TowerConfig(F4, 1, None, 8)
    assert T.teichmuller_term(w, cfg, 2, -3).teichmuller_expand(stop=5) == {-3: w}


def test_expansion_past_cutoff_raises():
    x = T.one(C3, 1)
    with pytest.raises(PrecisionExhausted):
        x.teichmuller_expand(stop=x.cutoff_index + 1)


def test_config_mismatch():
    with pytest.raises(ConfigMismatch):
        T.one(C2) + T.one(C3)


def test_eisenstein_validation():
    with pytest.raises(ValueError):
        TowerConfig(F3, 2, [[9], [0], [1]])  # constant term of valuation 2
    with pytest.raises(ValueError):
        TowerConfig(F3, 2, [[3], [1], [1]])  # middle coefficient not divisible by p


@pytest.mark.parametrize("cfg", [c for c in CONFIGS if c.f == 1])
def test_kronecker_matches_schoolbook(cfg):
    rng = random.Random(7)
    for level in range(3):
        N = cfg.N(level)
        for _ in range(10):
            a = T(cfg, level, 0, tuple(cfg.w(rng.randrange(cfg.M)) for _ in range(N)))
            b = T(cfg, level, 0, tuple(cfg.w(rng.randrange(cfg.M)) for _ in range(N)))
            assert (a * b).coeffs == naive_mul(cfg, level, a.coeffs, b.coeffs)


@pytest.mark.parametrize("cfg", CONFIGS)
def test_ring_axioms_and_valuations(cfg):
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(0, 2)
        x, y, z = (random_element(rng, cfg, n) for _ in range(3))
        assert same((x + y) * z, x * z + y * z)
        assert same((x * y) * z, x * (y * z))
        vx, vy = x.valuation(), y.valuation()
        if vx.is_exact and vy.is_exact:
            assert (x * y).valuation() == Valuation.of(vx.value + vy.value)
            s = (x + y).valuation()
            if vx.value != vy.value:
                assert s == Valuation.of(min(vx.value, vy.value))
            else:
                assert s.is_infinite or s.value >= vx.value


@pytest.mark.parametrize("cfg", CONFIGS)
def test_expansion_roundtrip(cfg):
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(0, 2)
        x = random_element(rng, cfg, n)
        digits = x.teichmuller_expand()
        back = resum_digits(cfg, n, digits)
        assert (x - back).valuation().ge(x.precision_cap)


@pytest.mark.parametrize("k", [F2, F3, F4, ResidueField(3, 2, (1, 0, 1))])
def test_teichmuller_multiplicative(k):
    cfg = TowerConfig(k, 1, None, 6)
    for a in k.elements():
        for b in k.elements():
            assert cfg.wmul(cfg.teichmuller(a), cfg.teichmuller(b)) == cfg.teichmuller(a * b)
        assert cfg.wresidue(cfg.teichmuller(a)) == a


@pytest.mark.parametrize("cfg", CONFIGS)
def test_coefficients_over_base_roundtrip_and_linear(cfg):
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randint(0, 2)
        x, y = random_element(rng, cfg, n), random_element(rng, cfg, n)
        ax_, ay = x.coefficients_over_base(), y.coefficients_over_base()
        assert same(T.from_base_coefficients(cfg, n, ax_), x)
        c = T.from_terms(cfg, 0, {rng.randint(-2, 2): rng.randint(1, cfg.p - 1)})
        lin = (x * c + y).coefficients_over_base()
        for i in range(len(lin)):
            d = lin[i] - (ax_[i] * c + ay[i])
            assert d.is_zero()


@pytest.mark.parametrize("cfg", CONFIGS)
def test_embed_preserves_valuation_and_expansion(cfg):
    rng = random.Random(19)
    for _ in range(20):
        n = rng.randint(0, 2)
        x = random_element(rng, cfg, n)
        up = x.embed(n + 1)
        assert up.valuation() == x.valuation()
        step = cfg.p
        assert up.teichmuller_expand() == {i * step: c for i, c in x.teichmuller_expand().items()}


@pytest.mark.parametrize("cfg", CONFIGS)
def test_normalized_keeps_value_and_precision(cfg):
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(0, 2)
        x = random_element(rng, cfg, n, span=(0, 2))
        w = (x + T.one(cfg, n).mul_pi_power(-3)) - T.one(cfg, n).mul_pi_power(-3)
        wn = w.normalized()
        assert wn.cutoff_index == w.cutoff_index
        assert wn.valuation() == w.valuation()
        assert wn.teichmuller_expand() == w.teichmuller_expand()


def test_json_roundtrip():
    x = T.from_terms(config(3, 2), 1, {-2: 1, 3: 2})
    assert same(element_from_json(x.to_json()), x)


@given(st.integers(-30, 30), st.integers(0, 30))
def test_pi_power_shift(i, j):
    x = T.pi(C3, 1).mul_pi_power(i)
    assert x.valuation() == Valuation.of(Fraction(i + 1, 3))
    assert (x * T.pi(C3, 1) ** j).valuation() == Valuation.of(Fraction(i + 1 + j, 3))
