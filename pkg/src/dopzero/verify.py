"""Verification suites behind ``dopzero verify``.

Each suite returns a list of check records (plain dicts ready for JSON).  A
record always has ``check``, ``passed`` and ``params``; numeric suites add a
``residual``.  Randomized suites draw from a :class:`random.Random` so runs
are reproducible from the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from . import scalar
from .errors import DopzeroError
from .hypgeo import (
    difference_coeffs,
    eval_by_difference,
    evaluate,
    krawtchouk,
    pfaff_reflect,
)
from .ortho import krawtchouk_ortho_sum, meixner_ortho_sum
from .scalar import Scalar
from .zeros import check_interlacing, default_mesh, gamma_grid, variation_profile, zeros_of

SUITES = ("ortho", "pfaff", "lemma1", "interlacing", "variation", "diffeq")
ORTHO_TOL = 1e-10


def random_rational(rng: random.Random, lo: Scalar, hi: Scalar, denom: int = 97) -> Fraction:
    """Rational strictly inside ``(lo, hi)`` with denominator at most ``denom``."""
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        q = rng.randint(1, denom)
        k = rng.randint(int(lo * q) - 1, int(hi * q) + 1)
        v = Fraction(k, q)
        if lo < v < hi:
            return v


def random_krawtchouk_spec(rng: random.Random, n_max: int = 10, p_lo=Fraction(1, 20),
                        p_hi=Fraction(19, 20), m_span: int = 9):
    n = rng.randint(0, n_max)
    p = random_rational(rng, p_lo, p_hi)
    M = random_rational(rng, n - 1 + Fraction(1, 20), n + m_span)
    return krawtchouk(n, p, M)


def _record(check: str, passed: bool, params: dict, **extra) -> dict:
    out = {"check": check, "passed": bool(passed), "params": params}
    out.update(extra)
    return out


def run_pfaff(rng: random.Random, cases: int = 50) -> list[dict]:
    out = []
    for _ in range(cases):
        spec = random_krawtchouk_spec(rng)
        x = random_rational(rng, -2, spec.family.M + 2)
        lhs, rhs = evaluate(spec, x), pfaff_reflect(spec, x)
        out.append(_record("pfaff", lhs == rhs, {**spec.as_dict(), "x": scalar.format_rational(x)},
                           residual=abs(float(lhs - rhs))))
    return out


def run_diffeq(rng: random.Random, cases: int = 50) -> list[dict]:
    out = []
    for _ in range(cases):
        spec = random_krawtchouk_spec(rng)
        x = random_rational(rng, -2, spec.family.M + 2)
        A, B, C = difference_coeffs(spec, x)
        res = A * evaluate(spec, x + 1) + C * evaluate(spec, x - 1) - B * evaluate(spec, x)
        out.append(_record("diffeq_residual", res == 0,
                           {**spec.as_dict(), "x": scalar.format_rational(x)},
                           residual=abs(float(res))))
        count = default_mesh(spec) + 1
        propagated = eval_by_difference(spec, 0, count)
        direct = [evaluate(spec, i) for i in range(count)]
        out.append(_record("diffeq_mesh", propagated == direct, {**spec.as_dict(), "count": count}))
    return out


def run_lemma1(rng: random.Random, cases: int = 20) -> list[dict]:
    out = []
    for _ in range(cases):
        spec = random_krawtchouk_spec(rng, n_max=8)
        zs = zeros_of(spec, "sturm")
        signs = [z.lemma1_product_sign for z in zs.zeros]
        out.append(_record("lemma1", all(s == -1 for s in signs), spec.as_dict(), signs=signs))
    return out


def run_interlacing(p: Scalar = Fraction(1, 2), degrees: Optional[list[int]] = None) -> list[dict]:
    out = []
    for N in degrees or range(1, 9):
        zs = zeros_of(krawtchouk(N, p, N), "both")
        verdict = check_interlacing(zs)
        out.append(_record("interlacing", verdict is True,
                           {"p": scalar.format_rational(p), "N": N, "n": N}, zeros=zs.values))
    return out


def run_variation(n: int = 3, p: Scalar = Fraction(1, 2), start: Scalar = Fraction(61, 20),
                  stop: Scalar = 5, step: Scalar = Fraction(1, 20)) -> list[dict]:
    out = []
    for g in gamma_grid(start, stop, step):
        params = {"n": n, "p": scalar.format_rational(p), "gamma": scalar.format_rational(g)}
        try:
            [(_, v)] = variation_profile(n, p, g, g, 1)
        except DopzeroError as exc:
            out.append(_record("variation", False, params, error=str(exc)))
            continue
        out.append(_record("variation", v == n, params, variations=v))
    return out


def run_ortho(ps=(Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)), n_max: int = 8,
              betas=(1, 2, Fraction(5, 2)), cs=(Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
              meixner_degree: int = 3) -> list[dict]:
    out = []
    for p in ps:
        for N in range(1, n_max + 1):
            for n in range(N + 1):
                for m in range(n):
                    r = krawtchouk_ortho_sum(m, n, p, N)
                    out.append(_record("krawtchouk_ortho", r.exact and r.lhs == 0,
                                       {**r.params, "m": m, "n": n}, residual=r.residual))
    for beta in betas:
        for c in cs:
            for n in range(meixner_degree + 1):
                for m in range(n + 1):
                    r = meixner_ortho_sum(m, n, beta, c, rel_tol=1e-12)
                    out.append(_record("meixner_ortho", r.residual < ORTHO_TOL,
                                       {**r.params, "m": m, "n": n}, residual=r.residual,
                                       truncation_index=r.truncation_index))
    return out


def run_suite(name: str, seed: int = 0, **options) -> list[dict]:
    """Run one suite (or ``"all"``) with a fresh RNG seeded by ``seed``."""
    runners: dict[str, Callable[[], list[dict]]] = {
        "pfaff": lambda: run_pfaff(random.Random(seed), options.get("cases", 50)),
        "diffeq": lambda: run_diffeq(random.Random(seed), options.get("cases", 50)),
        "lemma1": lambda: run_lemma1(random.Random(seed), options.get("cases", 20)),
        "interlacing": lambda: run_interlacing(
            options.get("p", Fraction(1, 2)), options.get("degrees")),
        "variation": lambda: run_variation(
            options.get("n", 3), options.get("p", Fraction(1, 2)),
            options.get("start", Fraction(61, 20)), options.get("stop", 5),
            options.get("step", Fraction(1, 20))),
        "ortho": lambda: run_ortho(ps=(options["p"],)) if "p" in options else run_ortho(),
    }
    if name == "all":
        return [rec for s in SUITES for rec in runners[s]()]
    return runners[name]()
