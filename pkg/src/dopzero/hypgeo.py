"""Terminating 2F1 series and the Meixner / Krawtchouk polynomials built on it.

Three evaluation routes are provided for Krawtchouk polynomials so they can be
checked against each other:

* :func:`evaluate` sums the hypergeometric series directly,
* :func:`eval_by_difference` propagates values along a unit mesh with the
  second-order difference equation in ``x``,
* :func:`pfaff_reflect` evaluates the reflected polynomial
  ``(1 - 1/p)**n * K_n(M - x; 1 - p, M)``.

Krawtchouk polynomials are parametrized by a real ``M`` in place of the
integer ``N``; Meixner polynomials with ``c < 0`` map onto them through
:func:`meixner_to_krawtchouk`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple, Union

from . import scalar
from .errors import DomainError, ParameterError, SingularPropagationError
from .scalar import Scalar


def _coerce(value: Scalar) -> Scalar:
    if isinstance(value, float):
        return scalar.finite(value)
    return Fraction(value)


@dataclass(frozen=True)
class Krawtchouk:
    p: Scalar
    M: Scalar

    def __post_init__(self):
        object.__setattr__(self, "p", _coerce(self.p))
        object.__setattr__(self, "M", _coerce(self.M))


@dataclass(frozen=True)
class Meixner:
    beta: Scalar
    c: Scalar

    def __post_init__(self):
        object.__setattr__(self, "beta", _coerce(self.beta))
        object.__setattr__(self, "c", _coerce(self.c))


Family = Union[Krawtchouk, Meixner]


@dataclass(frozen=True)
class PolySpec:
    """A family with its parameters plus the degree ``n``."""

    family: Family
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError(f"degree must be a non-negative integer, got {self.n!r}")
        fam = self.family
        if isinstance(fam, Krawtchouk):
            if fam.p == 0:
                raise DomainError("Krawtchouk parameter p must be nonzero")
        elif isinstance(fam, Meixner):
            if fam.c in (0, 1):
                raise DomainError("Meixner parameter c must differ from 0 and 1")
        else:
            raise DomainError(f"unknown family {fam!r}")

    @property
    def name(self) -> str:
        return "krawtchouk" if isinstance(self.family, Krawtchouk) else "meixner"

    @property
    def exact(self) -> bool:
        return scalar.is_exact(*vars(self.family).values())

    @property
    def in_regime(self) -> bool:
        """Krawtchouk: 0<p<1 and M>n-1. Meixner: c<0 and beta<1-n."""
        fam = self.family
        if isinstance(fam, Krawtchouk):
            return 0 < fam.p < 1 and fam.M > self.n - 1
        return fam.c < 0 and fam.beta < 1 - self.n

    @property
    def upper(self) -> Scalar:
        """Right end of the interval ``(0, upper)`` that holds every zero."""
        fam = self.family
        return fam.M if isinstance(fam, Krawtchouk) else -fam.beta

    def with_degree(self, k: int) -> "PolySpec":
        return replace(self, n=k)

    def to_float(self) -> "PolySpec":
        fam = self.family
        cls = type(fam)
        return PolySpec(cls(*(scalar.to_real(v) for v in vars(fam).values())), self.n)

    def as_dict(self) -> dict:
        params = {k: scalar.format_rational(v) for k, v in vars(self.family).items()}
        return {"family": self.name, "n": self.n, **params}


def krawtchouk(n: int, p: Scalar, M: Scalar) -> PolySpec:
    return PolySpec(Krawtchouk(p, M), n)


def meixner(n: int, beta: Scalar, c: Scalar) -> PolySpec:
    return PolySpec(Meixner(beta, c), n)


class DifferenceCoeffs(NamedTuple):
    A: Scalar
    B: Scalar
    C: Scalar


def pochhammer(a: Scalar, k: int) -> Scalar:
    """Rising factorial ``a (a+1) ... (a+k-1)``; the empty product is 1."""
    if k < 0:
        raise DomainError("pochhammer index must be non-negative")
    out = 1
    for i in range(k):
        out *= a + i
    return out


def _total(terms: list) -> Scalar:
    if scalar.is_exact(*terms):
        return sum(terms)
    return scalar.finite(math.fsum(terms))


def hyp2f1_terminating(n: int, a2: Scalar, b: Scalar, z: Scalar) -> Scalar:
    """``2F1(-n, a2; b; z)`` summed for ``i = 0..n``.

    The denominator Pochhammer ``(b)_i`` only has to be nonzero up to ``i = n``,
    which keeps ``K_n(x; p, N)`` well defined for integer ``N >= n``.
    """
    if n < 0:
        raise DomainError("terminating parameter must be -n with n >= 0")
    for i in range(n):
        if b + i == 0:
            raise ParameterError(
                f"denominator Pochhammer ({b})_{i + 1} vanishes before index {n}"
            )
    term = 1
    terms = [term]
    for i in range(n):
        term = term * (i - n) * (a2 + i) * z / ((b + i) * (i + 1))
        terms.append(term)
    return _total(terms)


def _hyp_parameters(spec: PolySpec) -> tuple[Scalar, Scalar, Scalar]:
    """(prefactor argument, denominator parameter, series argument)."""
    fam = spec.family
    if isinstance(fam, Krawtchouk):
        return -fam.M, -fam.M, 1 / fam.p
    # 1 - 1/c, written to stay exact for rationals
    return fam.beta, fam.beta, (fam.c - 1) / fam.c


def evaluate(spec: PolySpec, x: Scalar) -> Scalar:
    """Value of the polynomial at ``x`` (exact when ``x`` and all parameters are)."""
    pre, b, z = _hyp_parameters(spec)
    value = pochhammer(pre, spec.n) * hyp2f1_terminating(spec.n, -x, b, z)
    if isinstance(value, float):
        scalar.finite(value)
    return value


def leading_coefficient(spec: PolySpec) -> Scalar:
    """Coefficient of ``x**n``: ``p**-n`` for Krawtchouk, ``(1 - 1/c)**n`` for Meixner."""
    _, _, z = _hyp_parameters(spec)
    return z**spec.n


def difference_coeffs(spec: PolySpec, x: Scalar) -> DifferenceCoeffs:
    """Coefficients of ``A K(x+1) + C K(x-1) = B K(x)`` for Krawtchouk."""
    fam = _require_krawtchouk(spec)
    A = fam.p * (x - fam.M)
    C = x * (fam.p - 1)
    return DifferenceCoeffs(A, spec.n + A + C, C)


def eval_by_difference(spec: PolySpec, x0: Scalar, count: int) -> list[Scalar]:
    """Values at ``x0, x0+1, ..., x0+count-1`` via the difference equation.

    Two direct evaluations seed the recursion; every later value is
    ``(B K(x) - C K(x-1)) / A`` at the previous mesh point.
    """
    fam = _require_krawtchouk(spec)
    if not 0 < fam.p < 1:
        raise DomainError("difference propagation requires 0 < p < 1")
    if count <= 0:
        return []
    values = [evaluate(spec, x0)]
    if count > 1:
        values.append(evaluate(spec, x0 + 1))
    for j in range(2, count):
        x = x0 + j - 1
        A, B, C = difference_coeffs(spec, x)
        if A == 0:
            raise SingularPropagationError(f"A(x) vanishes at x = {x}")
        values.append((B * values[-1] - C * values[-2]) / A)
    return values


def pfaff_reflect(spec: PolySpec, x: Scalar) -> Scalar:
    """``(1 - 1/p)**n K_n(M - x; 1 - p, M)``, identically equal to ``K_n(x; p, M)``."""
    fam = _require_krawtchouk(spec)
    if not 0 < fam.p < 1:
        raise DomainError("Pfaff reflection requires 0 < p < 1")
    mirror = krawtchouk(spec.n, 1 - fam.p, fam.M)
    return (1 - 1 / fam.p) ** spec.n * evaluate(mirror, fam.M - x)


def meixner_to_krawtchouk(beta: Scalar, c: Scalar) -> tuple[Scalar, Scalar]:
    """Map Meixner ``(beta, c)`` with ``c < 0`` to Krawtchouk ``(p, M)``.

    ``p = c / (c - 1)`` and ``M = -beta``; the two polynomials then coincide
    as functions of ``x``.
    """
    if not c < 0:
        raise DomainError(f"Meixner-Krawtchouk bridge needs c < 0 (p in (0,1)), got c = {c}")
    beta, c = _coerce(beta), _coerce(c)
    return c / (c - 1), -beta


def as_krawtchouk(spec: PolySpec) -> PolySpec:
    fam = spec.family
    if isinstance(fam, Krawtchouk):
        return spec
    p, M = meixner_to_krawtchouk(fam.beta, fam.c)
    return krawtchouk(spec.n, p, M)


def _require_krawtchouk(spec: PolySpec) -> Krawtchouk:
    if not isinstance(spec.family, Krawtchouk):
        raise DomainError("operation defined for Krawtchouk specs only")
    return spec.family
