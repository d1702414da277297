import random

import pytest
from hypothesis import settings

from axtower.field import ResidueField
from axtower.tower import TowerConfig, TowerElement

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F2 = ResidueField.prime(2)
F3 = ResidueField.prime(3)
F5 = ResidueField.prime(5)
F4 = ResidueField(2, 2, (1, 1, 1))
F9 = ResidueField(3, 2, (1, 0, 1))


def eisenstein(p: int, e: int, rng: random.Random | None = None):
    """T^e + (multiples of p) with constant term p·unit."""
    rng = rng or random.Random(0)
    lower = [[p * rng.randint(0, p - 1)] for _ in range(e - 1)]
    return [[p * rng.randint(1, p - 1)]] + lower + [[1]]


def config(p: int, e: int = 1, precision: int = 10, seed: int = 0) -> TowerConfig:
    k = ResidueField.prime(p)
    if e == 1:
        return TowerConfig(k, 1, None, precision)
    return TowerConfig(k, e, eisenstein(p, e, random.Random(seed)), precision)


def random_element(rng: random.Random, cfg: TowerConfig, level: int, span=(-1, 2), terms=4) -> TowerElement:
    N = cfg.N(level)
    lo, hi = span[0] * N, span[1] * N
    digits = {rng.randint(lo, hi): cfg.field.from_index(rng.randrange(cfg.field.q)) for _ in range(terms)}
    return TowerElement.from_terms(cfg, level, digits)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        ok, title = mod.RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
