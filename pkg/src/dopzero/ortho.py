"""Orthogonality sums for Krawtchouk (finite) and Meixner (infinite) weights.

Krawtchouk sums over the mass points ``0..N`` are exact for rational ``p``.
Meixner sums are accumulated exactly term by term and truncated once a
rigorous geometric bound on the remaining tail drops below ``rel_tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from . import scalar
from .errors import DomainError
from .hypgeo import evaluate, krawtchouk, meixner, pochhammer
from .scalar import Scalar
from .zeros import recurrence_coeffs

DEFAULT_REL_TOL = 1e-12
MAX_TERMS = 200_000


@dataclass
class OrthoReport:
    family: str
    m: int
    n: int
    lhs: Scalar
    rhs: Scalar
    residual: float
    truncation_index: Union[int, str]
    exact: bool
    scale: Scalar = 1
    rhs_candidates: Optional[dict] = None
    params: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "family": self.family,
            "m": self.m,
            "n": self.n,
            "params": self.params,
            "lhs": _emit(self.lhs),
            "rhs": _emit(self.rhs),
            "residual": self.residual,
            "truncation_index": self.truncation_index,
            "exact": self.exact,
        }
        if self.rhs_candidates is not None:
            out["rhs_candidates"] = {k: _emit(v) for k, v in self.rhs_candidates.items()}
        return out


def _emit(v: Scalar):
    return scalar.to_real(v)


def _integer(value: Scalar, what: str) -> int:
    if isinstance(value, float) and not value.is_integer():
        raise DomainError(f"{what} must be an integer, got {value}")
    q = Fraction(value)
    if q.denominator != 1:
        raise DomainError(f"{what} must be an integer, got {value}")
    return q.numerator


def _residual(lhs: Scalar, rhs: Scalar, scale: Scalar) -> float:
    diff = lhs - rhs
    if scalar.is_exact(diff, scale):
        return scalar.to_real(abs(diff) / scale)
    return abs(float(diff)) / float(scale)


def _power(base: Scalar, exponent: Scalar) -> Scalar:
    """``base ** exponent``; exact for rational base and integer exponent."""
    if scalar.is_exact(base, exponent) and Fraction(exponent).denominator == 1:
        return Fraction(base) ** int(exponent)
    if base < 0:
        raise DomainError(f"negative base {base} with non-integer exponent {exponent}")
    return scalar.finite(float(base) ** float(exponent))


def krawtchouk_weight(x: int, p: Scalar, N: Scalar) -> Scalar:
    """Binomial weight ``C(N, x) p**x (1-p)**(N-x)``."""
    N = _integer(N, "N")
    if not (isinstance(x, int) and 0 <= x <= N):
        raise DomainError(f"mass point x={x} outside 0..{N}")
    if scalar.is_exact(p):
        p = Fraction(p)
    return math.comb(N, x) * p**x * (1 - p) ** (N - x)


def krawtchouk_ortho_sum(m: int, n: int, p: Scalar, N: Scalar) -> OrthoReport:
    """Exact finite sum of ``w(x) K_m(x) K_n(x)`` over ``x = 0..N``.

    No closed-form norm is attached for this normalization, so diagonal
    reports carry ``rhs = lhs``.
    """
    N = _integer(N, "N")
    if not (0 <= min(m, n) and max(m, n) <= N):
        raise DomainError(f"degrees ({m}, {n}) must lie in 0..N={N}")
    if not 0 < p < 1:
        raise DomainError("Krawtchouk weight requires 0 < p < 1")
    km, kn = krawtchouk(m, p, N), krawtchouk(n, p, N)
    terms = [krawtchouk_weight(x, p, N) * evaluate(km, x) * evaluate(kn, x) for x in range(N + 1)]
    exact = scalar.is_exact(*terms)
    lhs = sum(terms) if exact else math.fsum(terms)
    rhs = lhs if m == n else 0
    scale = max(1, abs(rhs))
    return OrthoReport(
        "krawtchouk", m, n, lhs, rhs, _residual(lhs, rhs, scale), "finite", exact,
        scale=scale, params={"p": scalar.format_rational(p), "N": N},
    )


def meixner_rhs(n: int, beta: Scalar, c: Scalar) -> Scalar:
    """Squared norm ``(beta)_n c**-n n! / (1-c)**beta`` for ``0 < c < 1``."""
    if c == 1:
        raise DomainError("c must differ from 1")
    c = Fraction(c) if scalar.is_exact(c) else c
    return pochhammer(beta, n) * c**-n * math.factorial(n) / _power(1 - c, beta)


def meixner_rhs_cgt1(n: int, beta: Scalar, c: Scalar) -> Scalar:
    """Squared norm ``(beta)_n c**-n n! / (1-1/c)**beta`` for ``c > 1``."""
    if c == 0 or c == 1:
        raise DomainError("c must differ from 0 and 1")
    c = Fraction(c) if scalar.is_exact(c) else c
    return pochhammer(beta, n) * c**-n * math.factorial(n) / _power(1 - 1 / c, beta)


def _gershgorin(beta: Scalar, c: Scalar, degree: int) -> tuple[float, float]:
    """Interval holding every zero of the degree-``degree`` Meixner polynomial."""
    if degree == 0:
        return 0.0, 0.0
    rc = recurrence_coeffs(meixner(degree, beta, c))
    off = [0.0] + [math.sqrt(float(v)) for v in rc.lambdas] + [0.0]
    lows, highs = [], []
    for k, bk in enumerate(rc.b):
        radius = off[k] + off[k + 1]
        lows.append(float(bk) - radius)
        highs.append(float(bk) + radius)
    return min(lows), max(highs)


def _truncated_sum(
    term: Callable[[int], Scalar],
    ratio_bound: Callable[[int], float],
    start: int,
    rel_tol: float,
    max_terms: int,
) -> tuple[Scalar, int]:
    """Sum ``term(0) + term(1) + ...`` until the tail bound is below tolerance.

    ``ratio_bound(X)`` must bound ``|term(x+1)/term(x)|`` for all ``x >= X``
    and is only consulted for ``X >= start``.  Returns the partial sum and the
    last index included.
    """
    partial: Scalar = 0
    for x in range(max_terms):
        t = term(x)
        partial += t
        if x < start:
            continue
        rho = ratio_bound(x)
        if rho >= 1:
            continue
        tail = abs(float(t)) * rho / (1 - rho)
        if tail <= rel_tol * max(1.0, abs(float(partial))):
            return partial, x
    raise DomainError(f"tail bound not reached within {max_terms} terms")


def _zero_free_ratio(c_eff: float, beta: float, degree: int, R: float) -> Callable[[int], float]:
    """Bound on successive term ratios past every zero of the summand.

    The weight ratio is ``c (beta+x)/(x+1)`` and the polynomial ratio is a
    product over zeros ``r <= R`` of ``(x+1-r)/(x-r)``.
    """

    def rho(X: int) -> float:
        w = c_eff * max(1.0, (beta + X) / (X + 1))
        return w * ((X + 1 - R) / (X - R)) ** degree

    return rho


def _check_meixner(beta: Scalar, c: Scalar, lo: Scalar, hi: Optional[Scalar]):
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if not (c > lo and (hi is None or c < hi)):
        rng = f"({lo}, {hi})" if hi is not None else f"({lo}, inf)"
        raise DomainError(f"c must lie in {rng}, got {c}")


def meixner_ortho_sum(
    m: int,
    n: int,
    beta: Scalar,
    c: Scalar,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = MAX_TERMS,
) -> OrthoReport:
    """``sum_{x>=0} (beta)_x c**x / x! M_m(x) M_n(x)`` for ``beta > 0``, ``0 < c < 1``."""
    _check_meixner(beta, c, 0, 1)
    exact = scalar.is_exact(beta, c)
    if exact:
        beta, c = Fraction(beta), Fraction(c)
    sm, sn = meixner(m, beta, c), meixner(n, beta, c)
    R = max(_gershgorin(beta, c, m)[1], _gershgorin(beta, c, n)[1], 0.0)
    weights = [Fraction(1) if exact else 1.0]

    def term(x):
        if x >= len(weights):
            weights.append(weights[-1] * (beta + x - 1) * c / x)
        return weights[x] * evaluate(sm, x) * evaluate(sn, x)

    lhs, last = _truncated_sum(
        term, _zero_free_ratio(float(c), float(beta), m + n, R),
        math.floor(R) + 2, rel_tol, max_terms,
    )
    return _meixner_report("meixner", m, n, lhs, last, beta, c, meixner_rhs)


def meixner_ortho_sum_cgt1(
    m: int,
    n: int,
    beta: Scalar,
    c: Scalar,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = MAX_TERMS,
) -> OrthoReport:
    """Orthogonality sum on the mass points ``x = -beta - y``, ``y = 0, 1, ...``.

    Weights are ``(beta)_y c**-y / y!``, positive for ``beta > 0`` and
    ``c > 1``; ``beta`` is restricted to positive integers.
    """
    beta = _integer(beta, "beta")
    _check_meixner(beta, c, 1, None)
    exact = scalar.is_exact(c)
    c = Fraction(c) if exact else c
    sm, sn = meixner(m, beta, c), meixner(n, beta, c)
    # zeros of M_k lie left of -beta, so y = -beta - x has zeros in (0, R]
    R = max(-beta - _gershgorin(beta, c, m)[0], -beta - _gershgorin(beta, c, n)[0], 0.0)
    weights = [Fraction(1) if exact else 1.0]

    def term(y):
        if y >= len(weights):
            weights.append(weights[-1] * (beta + y - 1) / (c * y))
        x = -beta - y
        return weights[y] * evaluate(sm, x) * evaluate(sn, x)

    lhs, last = _truncated_sum(
        term, _zero_free_ratio(1.0 / float(c), float(beta), m + n, R),
        math.floor(R) + 2, rel_tol, max_terms,
    )
    report = _meixner_report("meixner_cgt1", m, n, lhs, last, beta, c, meixner_rhs_cgt1)
    swapped = meixner_rhs_cgt1(m, beta, c)
    report.rhs_candidates = {
        "c^-n": report.rhs if m != n else meixner_rhs_cgt1(n, beta, c),
        "c^-m": 0 if m != n else swapped,
    }
    return report


def _meixner_report(family, m, n, lhs, last, beta, c, norm) -> OrthoReport:
    hm, hn = norm(m, beta, c), norm(n, beta, c)
    if m == n:
        rhs = hn
        scale = max(1, abs(hn))
    else:
        # off-diagonal residual is measured against the smaller diagonal
        rhs = 0
        scale = min(abs(hm), abs(hn))
    return OrthoReport(
        family, m, n, lhs, rhs, _residual(lhs, rhs, scale), last, False, scale=scale,
        params={"beta": scalar.format_rational(beta), "c": scalar.format_rational(c)},
    )
