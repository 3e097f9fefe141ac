import random
from fractions import Fraction

import pytest

from dopzero.hypgeo import krawtchouk, meixner

# criterion id -> (passed, detail); filled by test_acceptance
ACCEPTANCE_RESULTS: dict = {}


def rand_q(rng: random.Random, lo, hi, denom: int = 50) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        q = rng.randint(1, denom)
        v = Fraction(rng.randint(int(lo * q) - 1, int(hi * q) + 1), q)
        if lo < v < hi:
            return v


def krawtchouk_regime_spec(rng, n_lo=1, n_hi=12):
    n = rng.randint(n_lo, n_hi)
    p = rand_q(rng, Fraction(1, 20), Fraction(19, 20))
    M = rand_q(rng, n - 1 + Fraction(1, 20), n + 9)
    return krawtchouk(n, p, M)


def meixner_regime_spec(rng, n_lo=1, n_hi=12):
    n = rng.randint(n_lo, n_hi)
    c = rand_q(rng, -5, Fraction(-1, 20))
    beta = rand_q(rng, -(n + 9), 1 - n - Fraction(1, 20))
    return meixner(n, beta, c)


@pytest.fixture
def rng():
    return random.Random(20261014)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
