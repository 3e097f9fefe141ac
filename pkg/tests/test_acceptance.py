"""Acceptance gate: one check per numbered criterion.

Each criterion function returns ``(passed, detail)``.  Under pytest the result
is recorded for the terminal summary and then asserted; run this file directly
to print the same pass/fail lines without pytest.
"""

import math
import random
import sys
from fractions import Fraction as F
from functools import lru_cache

import pytest

from dopzero.errors import DopzeroError
from dopzero.hypgeo import (
    difference_coeffs,
    eval_by_difference,
    evaluate,
    krawtchouk,
    leading_coefficient,
    pfaff_reflect,
)
from dopzero.ortho import krawtchouk_ortho_sum, meixner_ortho_sum, meixner_rhs
from dopzero.scalar import sign
from dopzero.zeros import (
    check_interlacing,
    monic_values,
    recurrence_coeffs,
    variation_profile,
    zeros_of,
)

from conftest import ACCEPTANCE_RESULTS, meixner_regime_spec, rand_q, krawtchouk_regime_spec
from oracles import fitted_recurrence

SEED = 20261014


def _max_diff(a, b):
    return max((abs(x - y) for x, y in zip(a, b)), default=0.0)


# -- 1

def criterion_1():
    spec = krawtchouk(2, F(1, 2), 2)
    expected = [1 - math.sqrt(2) / 2, 1 + math.sqrt(2) / 2]
    worst = max(_max_diff(zeros_of(spec, m).values, expected) for m in ("sturm", "jacobi"))
    ok = worst < 1e-12
    rng = random.Random(SEED + 1)
    linear_ok = 0
    for i in range(50):
        p = rand_q(rng, F(1, 100), F(99, 100))
        N = F(rng.randint(1, 30)) if i % 2 else rand_q(rng, F(1, 20), 30)
        spec = krawtchouk(1, p, N)
        root = N * p
        (z,) = zeros_of(spec, "sturm").zeros
        if (evaluate(spec, root) == 0 and z.bracket_lo < root < z.bracket_hi
                and abs(z.refined - float(root)) < 1e-12):
            linear_ok += 1
    ok = ok and linear_ok == 50
    return ok, f"K2 max error {worst:.1e}; K1 zero = N*p exactly in {linear_ok}/50 cases"


# -- 2, 3 and 5 share the criterion-2 zero sets

@lru_cache(maxsize=None)
def regime_runs(kind):
    rng = random.Random(SEED + (2 if kind == "krawtchouk" else 3))
    make = krawtchouk_regime_spec if kind == "krawtchouk" else meixner_regime_spec
    runs = []
    for _ in range(200):
        spec = make(rng, 1, 12)
        try:
            runs.append((spec, zeros_of(spec, "sturm"), zeros_of(spec, "jacobi"), None))
        except DopzeroError as exc:
            runs.append((spec, None, None, exc))
    return runs


def _regime_criterion(kind):
    bad, worst_gap, worst_diff = [], math.inf, 0.0
    for spec, sturm, jacobi, exc in regime_runs(kind):
        if exc is not None:
            bad.append(f"{spec.as_dict()}: {exc}")
            continue
        upper = float(spec.upper)
        values = sturm.values
        gaps = [b - a for a, b in zip(values, values[1:])]
        gap = min(gaps, default=math.inf)
        diff = _max_diff(values, jacobi.values)
        worst_gap, worst_diff = min(worst_gap, gap), max(worst_diff, diff)
        if not (len(values) == spec.n == len(jacobi.values) and gap > 1e-9
                and all(0 < v < upper for v in values) and diff < 1e-9):
            bad.append(str(spec.as_dict()))
    detail = f"200 specs, {len(bad)} failing; min gap {worst_gap:.2e}, max sturm/jacobi diff {worst_diff:.1e}"
    return not bad, detail if not bad else f"{detail}; first: {bad[0]}"


def criterion_2():
    return _regime_criterion("krawtchouk")


def criterion_3():
    return _regime_criterion("meixner")


# -- 4

def criterion_4():
    samples, bad = 0, []
    for n in range(1, 7):
        for p in (F(1, 4), F(1, 2), F(3, 4)):
            for N in range(n, n + 4):
                for g, v in variation_profile(n, p, N + F(1, 20), N + 1, F(1, 20)):
                    samples += 1
                    if v != n:
                        bad.append((n, p, g, v))
    ok = not bad and samples == 6 * 3 * 4 * 20
    return ok, f"{samples} samples, {len(bad)} with V != n"


# -- 5

def _isolated(zs, i):
    lo, hi = zs.zeros[i].bracket_lo, zs.zeros[i].bracket_hi
    for j, other in enumerate(zs.zeros):
        if j == i:
            continue
        for a, b in ((lo - 1, hi - 1), (lo + 1, hi + 1)):
            if other.bracket_lo <= b and a <= other.bracket_hi:
                return False
    return True


def criterion_5():
    checked = skipped = 0
    bad = []
    for spec, sturm, _, exc in regime_runs("krawtchouk"):
        if exc is not None:
            continue
        for i, z in enumerate(sturm.zeros):
            if not _isolated(sturm, i):
                skipped += 1
                continue
            checked += 1
            product = sign(evaluate(spec, z.bracket_lo - 1)) * sign(evaluate(spec, z.bracket_hi + 1))
            if product != -1 or z.lemma1_product_sign != -1:
                bad.append((spec.as_dict(), z.refined))
    ok = checked > 0 and not bad
    return ok, f"{checked} isolated zeros checked ({skipped} without isolated neighborhoods), {len(bad)} failing"


# -- 6

def criterion_6():
    rng = random.Random(SEED + 6)
    exact = 0
    for _ in range(500):
        spec = krawtchouk_regime_spec(rng, 0, 12)
        x = rand_q(rng, -5, spec.family.M + 5)
        exact += pfaff_reflect(spec, x) == evaluate(spec, x)
    worst = 0.0
    for _ in range(50):
        spec = krawtchouk_regime_spec(rng)
        p, M = spec.family.p, spec.family.M
        mirrored = zeros_of(krawtchouk(spec.n, 1 - p, M), "sturm").values
        own = zeros_of(spec, "sturm").values
        worst = max(worst, _max_diff(own, sorted(float(M) - v for v in mirrored)))
    ok = exact == 500 and worst < 1e-9
    return ok, f"{exact}/500 exact Pfaff equalities; reflected zero sets differ by at most {worst:.1e}"


# -- 7

def criterion_7():
    rng = random.Random(SEED + 7)
    zero_residuals = 0
    for _ in range(500):
        n = rng.randint(0, 12)
        p = rand_q(rng, F(1, 20), F(19, 20))
        M = rand_q(rng, -5, 30)
        while M.denominator == 1 and 0 <= M < n:   # the hypergeometric form is undefined there
            M = rand_q(rng, -5, 30)
        spec = krawtchouk(n, p, M)
        x = rand_q(rng, -5, 35)
        A, B, C = difference_coeffs(spec, x)
        res = A * evaluate(spec, x + 1) + C * evaluate(spec, x - 1) - B * evaluate(spec, x)
        zero_residuals += res == 0
    meshes = mismatched = 0
    for M in range(1, 51):
        for p in (F(1, 4), F(1, 2), F(3, 4)):
            n = rng.randint(1, min(M, 12))
            for gamma_m1 in (F(M), M - F(1, 3)):
                spec = krawtchouk(n, p, gamma_m1)
                count = math.ceil(gamma_m1) + 1
                meshes += 1
                mismatched += eval_by_difference(spec, 0, count) != [evaluate(spec, x) for x in range(count)]
    ok = zero_residuals == 500 and mismatched == 0
    return ok, f"{zero_residuals}/500 exact zero residuals; {meshes - mismatched}/{meshes} meshes (M <= 50) match"


# -- 8

def criterion_8():
    off_nonzero = off_total = 0
    for p in (F(1, 3), F(1, 2), F(2, 3)):
        for N in range(1, 9):
            for n in range(1, N + 1):
                for m in range(n):
                    off_total += 1
                    off_nonzero += krawtchouk_ortho_sum(m, n, p, N).lhs != 0
    worst_diag = worst_off = 0.0
    for beta in (F(1), F(2), F(5, 2)):
        for c in (F(1, 4), F(1, 2), F(3, 4)):
            norms = [float(meixner_rhs(n, beta, c)) for n in range(7)]
            for n in range(7):
                for m in range(n + 1):
                    lhs = float(meixner_ortho_sum(m, n, beta, c, rel_tol=1e-12).lhs)
                    if m == n:
                        worst_diag = max(worst_diag, abs(lhs - norms[n]) / abs(norms[n]))
                    else:
                        worst_off = max(worst_off, abs(lhs) / min(norms[m], norms[n]))
    ok = off_nonzero == 0 and worst_diag < 1e-10 and worst_off < 1e-10
    return ok, (f"Krawtchouk {off_total - off_nonzero}/{off_total} off-diagonals exactly 0; "
                f"Meixner max relative diagonal error {worst_diag:.1e}, off-diagonal {worst_off:.1e}")


# -- 9

def criterion_9():
    failing = [(N, p) for N in range(1, 9) for p in (F(1, 4), F(1, 2), F(3, 4))
               if check_interlacing(zeros_of(krawtchouk(N, p, N))) is not True]
    return not failing, f"{24 - len(failing)}/24 (n=N, p) cases interlace; failing {failing}"


# -- 10

def criterion_10():
    rng = random.Random(SEED + 10)
    lam_bad = eval_bad = specs = 0
    for _ in range(8):
        p = rand_q(rng, F(1, 20), F(19, 20))
        M = rand_q(rng, F(1, 20), 25)
        while M.denominator == 1:
            M = rand_q(rng, F(1, 20), 25)
        spec = krawtchouk(13, p, M)
        specs += 1
        _, lam = fitted_recurrence(spec)
        closed = [k * p * (1 - p) * (M + 1 - k) for k in range(1, 13)]
        rc = recurrence_coeffs(spec)
        lam_bad += lam != closed or rc.lambdas != closed
        for _ in range(100):
            x = rand_q(rng, -10, 40)
            monic = monic_values(rc, x)
            eval_bad += any(monic[k] * leading_coefficient(spec.with_degree(k)) != evaluate(spec.with_degree(k), x)
                            for k in range(14))
    ok = lam_bad == 0 and eval_bad == 0
    return ok, (f"lambda_1..12 exact in {specs - lam_bad}/{specs} specs; "
                f"monic recurrence mismatches at {eval_bad}/{specs * 100} points")


CRITERIA = {
    "1 closed-form zeros": criterion_1,
    "2 Krawtchouk regime": criterion_2,
    "3 Meixner regime": criterion_3,
    "4 Sturmian constancy": criterion_4,
    "5 neighbor sign product": criterion_5,
    "6 Pfaff reflection": criterion_6,
    "7 difference equation": criterion_7,
    "8 orthogonality": criterion_8,
    "9 interlacing": criterion_9,
    "10 recurrence products": criterion_10,
}


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key):
    ok, detail = CRITERIA[key]()
    ACCEPTANCE_RESULTS[key] = (ok, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for key, fn in CRITERIA.items():
        ok, detail = fn()
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}", flush=True)
    sys.exit(1 if failures else 0)
