"""Isolation, refinement and certification of real zeros.

The primary route scans the sign sequence ``K_n(0), K_n(1), ..., K_n(N)`` with
``N = ceil(M)``.  In the certified regime the sequence changes sign exactly
``n`` times, so each sign change brackets exactly one zero; the brackets are
then bisected.  Every sign used for isolation is computed exactly when the
parameters are rational.

The cross-check route builds the Jacobi matrix from the monic three-term
recurrence and takes its eigenvalues.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import scalar
from .errors import ConsistencyError, DomainError, MeshLimitError, RegimeError
from .hypgeo import Krawtchouk, Meixner, PolySpec, as_krawtchouk, evaluate, krawtchouk
from .scalar import Scalar, sign

DEFAULT_TOL = 1e-12
EXACT_WIDTH = 1e-6
JACOBI_HALF_WIDTH = 1e-10
AGREEMENT_TOL = 1e-9
DEFAULT_MAX_MESH = 10**6

METHODS = ("sturm", "jacobi", "both")


def max_mesh() -> int:
    """Largest mesh scanned exactly; ``DOPZERO_MAX_MESH`` overrides the default."""
    raw = os.environ.get("DOPZERO_MAX_MESH")
    return int(raw) if raw else DEFAULT_MAX_MESH


@dataclass
class SignSequence:
    mesh: list[int]
    values: list[Scalar]
    variations: int


@dataclass
class CertifiedZero:
    bracket_lo: Scalar
    bracket_hi: Scalar
    refined: float
    lemma1_product_sign: Optional[int] = None

    @property
    def width(self) -> float:
        return float(self.bracket_hi - self.bracket_lo)


@dataclass
class ZeroSet:
    spec: PolySpec
    zeros: list[CertifiedZero]
    method: str
    cross_check: Optional[list[float]] = None

    @property
    def values(self) -> list[float]:
        return [z.refined for z in self.zeros]

    def __len__(self):
        return len(self.zeros)


@dataclass
class RecurrenceCoeffs:
    """Monic recurrence ``p_{k+1} = (x - b_k) p_k - lambdas_k p_{k-1}``.

    ``b`` holds ``b_0..b_{n-1}``; ``lambdas[k-1]`` holds ``lambda_k`` for
    ``k = 1..n-1``.
    """

    b: list[Scalar] = field(default_factory=list)
    lambdas: list[Scalar] = field(default_factory=list)

    def lam(self, k: int) -> Scalar:
        return self.lambdas[k - 1]


def regime_message(spec: PolySpec) -> str:
    if isinstance(spec.family, Krawtchouk):
        return "requires 0<p<1 and M>n-1"
    return "requires c<0 and beta<1-n"


def check_regime(spec: PolySpec) -> None:
    if not spec.in_regime:
        raise RegimeError(f"{spec.name} spec {spec.as_dict()} outside certified regime: "
                          f"{regime_message(spec)}")


def count_variations(values) -> int:
    """Strict sign changes in ``values``, zero entries skipped."""
    changes = 0
    last = 0
    for v in values:
        s = sign(v)
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def default_mesh(spec: PolySpec) -> int:
    """Last mesh point ``N = ceil(gamma) - 1 = ceil(M)``."""
    return scalar.ceil(spec.family.M)


def sturm_sequence(spec: PolySpec, mesh_end: Optional[int] = None) -> SignSequence:
    """Values ``K_n(i)`` for ``i = 0..mesh_end`` and their variation count."""
    if not isinstance(spec.family, Krawtchouk):
        raise DomainError("sign sequences are built on Krawtchouk specs")
    if mesh_end is None:
        mesh_end = default_mesh(spec)
    mesh = list(range(mesh_end + 1))
    values = [evaluate(spec, i) for i in mesh]
    return SignSequence(mesh, values, count_variations(values))


def isolate(spec: PolySpec) -> list[tuple[Fraction, Fraction]]:
    """Disjoint brackets with a strict sign change, one per zero."""
    if not isinstance(spec.family, Krawtchouk):
        raise DomainError("isolate works on Krawtchouk specs; map Meixner first")
    check_regime(spec)
    if spec.n == 0:
        return []
    end = default_mesh(spec)
    if end > max_mesh():
        raise MeshLimitError(
            f"mesh 0..{end} exceeds the exact-scan limit {max_mesh()}; use method='jacobi'"
        )
    seq = sturm_sequence(spec, end)
    if seq.variations != spec.n:
        raise RegimeError(
            f"found {seq.variations} sign changes on mesh 0..{end}, expected {spec.n}"
        )
    signs = [sign(v) for v in seq.values]
    nonzero = [i for i, s in enumerate(signs) if s]
    brackets = []
    for a, b in zip(nonzero, nonzero[1:]):
        gap = b - a
        if signs[a] == signs[b]:
            if gap > 1:
                raise ConsistencyError(f"mesh zero at {a + 1} without a sign change")
            continue
        if gap == 1:
            brackets.append((Fraction(a), Fraction(b)))
        elif gap == 2:
            # mesh point a+1 is itself a zero
            lo, hi = Fraction(2 * a + 1, 2), Fraction(2 * a + 3, 2)
            if sign(evaluate(spec, lo)) != signs[a] or sign(evaluate(spec, hi)) != signs[b]:
                raise ConsistencyError(f"half-step split around mesh zero {a + 1} failed")
            brackets.append((lo, hi))
        else:
            raise ConsistencyError(f"consecutive mesh zeros between {a} and {b}")
    return brackets


def lemma1_sign(spec: PolySpec, r: Scalar) -> int:
    """``sign(K_n(r-1) * K_n(r+1))``, exact for rational specs."""
    if spec.exact:
        r = scalar.rationalize(r)
    return sign(evaluate(spec, r - 1)) * sign(evaluate(spec, r + 1))


def refine(
    spec: PolySpec,
    bracket: tuple[Scalar, Scalar],
    tol: float = DEFAULT_TOL,
    exact_width: float = EXACT_WIDTH,
) -> CertifiedZero:
    """Bisect a sign-change bracket down to width ``tol``.

    Midpoint signs are exact while the bracket is wider than ``exact_width``
    and the spec is rational; below that the float polynomial is used.  The
    final float bracket is re-certified with exact signs; if that fails the
    bisection is finished in exact arithmetic.
    """
    lo, hi = bracket
    exact = spec.exact
    if exact:
        lo, hi = scalar.rationalize(lo), scalar.rationalize(hi)
    s_lo = sign(evaluate(spec, lo))
    s_hi = sign(evaluate(spec, hi))
    if s_lo * s_hi >= 0:
        raise DomainError(f"bracket [{lo}, {hi}] has no strict sign change")

    def done(a, b, r):
        return CertifiedZero(a, b, float(r), lemma1_sign(spec, r))

    if hi - lo < tol:
        return done(lo, hi, (lo + hi) / 2)

    if exact:
        while hi - lo > exact_width:
            mid = (lo + hi) / 2
            s = sign(evaluate(spec, mid))
            if s == 0:
                delta = min(Fraction(tol) / 4, (hi - lo) / 4)
                return done(mid - delta, mid + delta, mid)
            if s == s_lo:
                lo = mid
            else:
                hi = mid
            if hi - lo < tol:
                return done(lo, hi, (lo + hi) / 2)

    fspec = spec.to_float()
    flo, fhi = float(lo), float(hi)
    hit = None
    while fhi - flo >= tol:
        mid = 0.5 * (flo + fhi)
        if not flo < mid < fhi:
            break
        s = sign(evaluate(fspec, mid))
        if s == 0:
            hit = mid
            break
        if s == s_lo:
            flo = mid
        else:
            fhi = mid
    refined = hit if hit is not None else 0.5 * (flo + fhi)
    if not exact:
        a, b = (flo, fhi) if flo < refined < fhi else (refined - tol / 2, refined + tol / 2)
        return CertifiedZero(a, b, refined, lemma1_sign(spec, refined))

    r = Fraction(refined)
    half = Fraction(tol) / 2
    for a, b in ((Fraction(flo), Fraction(fhi)), (r - half, r + half)):
        if lo <= a < r < b <= hi and (
            sign(evaluate(spec, a)) == s_lo and sign(evaluate(spec, b)) == s_hi
        ):
            return done(a, b, refined)
    # float signs were unreliable (cancellation); finish with exact bisection
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        s = sign(evaluate(spec, mid))
        if s == 0:
            delta = min(Fraction(tol) / 4, (hi - lo) / 4)
            return done(mid - delta, mid + delta, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return done(lo, hi, (lo + hi) / 2)


def recurrence_coeffs(spec: PolySpec) -> RecurrenceCoeffs:
    """Monic three-term recurrence coefficients up to degree ``n``.

    Krawtchouk: ``b_k = p(M-k) + k(1-p)``, ``lambda_k = k p (1-p) (M+1-k)``.
    Meixner: ``b_k = (k(1+c) + beta c)/(1-c)``, ``lambda_k = k(k+beta-1) c/(1-c)**2``.
    """
    n = spec.n
    fam = spec.family
    if isinstance(fam, Krawtchouk):
        p, M = fam.p, fam.M
        b = [p * (M - k) + k * (1 - p) for k in range(n)]
        lam = [k * p * (1 - p) * (M + 1 - k) for k in range(1, n)]
    elif isinstance(fam, Meixner):
        beta, c = fam.beta, fam.c
        b = [(k * (1 + c) + beta * c) / (1 - c) for k in range(n)]
        lam = [k * (k + beta - 1) * c / (1 - c) ** 2 for k in range(1, n)]
    else:
        raise DomainError(f"unknown family {fam!r}")
    return RecurrenceCoeffs(b, lam)


def monic_values(rc: RecurrenceCoeffs, x: Scalar) -> list[Scalar]:
    """``[p_0(x), ..., p_n(x)]`` from the monic recurrence."""
    values = [1]
    prev = 0
    for k, bk in enumerate(rc.b):
        nxt = (x - bk) * values[-1] - (rc.lam(k) * prev if k else 0)
        prev = values[-1]
        values.append(nxt)
    return values


def jacobi_eigenvalues(rc: RecurrenceCoeffs) -> np.ndarray:
    """Ascending eigenvalues of the symmetrized Jacobi matrix."""
    d = np.array([float(v) for v in rc.b], dtype=float)
    if d.size == 0:
        return d
    e = np.sqrt(np.array([float(v) for v in rc.lambdas], dtype=float))
    return np.sort(eigh_tridiagonal(d, e, eigvals_only=True, lapack_driver="stebz"))


def jacobi_zeros(spec: PolySpec) -> ZeroSet:
    """Zeros as eigenvalues of the Jacobi matrix of the recurrence."""
    rc = recurrence_coeffs(spec)
    for k, lam in enumerate(rc.lambdas, start=1):
        if not lam > 0:
            raise RegimeError(
                f"recurrence product lambda_{k} = {lam} is not positive; "
                "real zeros are not guaranteed on this route"
            )
    zeros = []
    for ev in jacobi_eigenvalues(rc):
        r = float(ev)
        zeros.append(CertifiedZero(r - JACOBI_HALF_WIDTH, r + JACOBI_HALF_WIDTH, r,
                                   lemma1_sign(spec, r)))
    return ZeroSet(spec, zeros, "jacobi")


def sturm_zeros(spec: PolySpec, tol: float = DEFAULT_TOL) -> ZeroSet:
    kspec = as_krawtchouk(spec)
    zeros = [refine(kspec, br, tol) for br in isolate(kspec)]
    return ZeroSet(spec, zeros, "sturm")


def zeros_of(spec: PolySpec, method: str = "both", tol: float = DEFAULT_TOL) -> ZeroSet:
    """Certified zeros of a Krawtchouk (0<p<1, M>n-1) or Meixner (``c < 0``) spec.

    Meixner specs go through :func:`~dopzero.hypgeo.meixner_to_krawtchouk` on
    the sign-scan route; the Jacobi route uses the Meixner recurrence directly.
    """
    if method not in METHODS:
        raise DomainError(f"method must be one of {METHODS}, got {method!r}")
    check_regime(spec)
    if method == "jacobi":
        return jacobi_zeros(spec)
    result = sturm_zeros(spec, tol)
    if method == "sturm":
        return result
    other = jacobi_zeros(spec).values
    if len(other) != len(result.zeros):
        raise ConsistencyError(f"sturm found {len(result.zeros)} zeros, jacobi {len(other)}")
    worst = max((abs(a - b) for a, b in zip(result.values, other)), default=0.0)
    if worst > AGREEMENT_TOL:
        raise ConsistencyError(f"sturm and jacobi zeros differ by {worst:.3e}")
    result.method = "both"
    result.cross_check = list(other)
    return result


def check_interlacing(zs: ZeroSet) -> Optional[bool]:
    """``i-1 < x_i < i`` for ``n = N``; ``None`` when not applicable.

    Applies only to Krawtchouk specs with integer ``M = N`` and ``n = N``.
    """
    fam = zs.spec.family
    if not isinstance(fam, Krawtchouk) or fam.M != int(fam.M) or zs.spec.n != fam.M:
        return None
    if len(zs.zeros) != zs.spec.n:
        return False
    for i, z in enumerate(zs.zeros, start=1):
        if not (i - 1 < z.bracket_lo and z.bracket_hi < i and i - 1 < z.refined < i):
            return False
    return True


def gamma_grid(start: Scalar, stop: Scalar, step: Scalar) -> list[Scalar]:
    """``start, start+step, ...`` up to and including ``stop``."""
    if not step > 0:
        raise DomainError("step must be positive")
    out = []
    k = 0
    while True:
        g = start + k * step
        if g > stop:
            break
        out.append(g)
        k += 1
    return out


def variation_profile(
    n: int, p: Scalar, start: Scalar, stop: Scalar, step: Scalar
) -> list[tuple[Scalar, int]]:
    """``(gamma, V(gamma))`` over a grid, each V on the mesh ``0..ceil(gamma)-1``."""
    profile = []
    for g in gamma_grid(start, stop, step):
        seq = sturm_sequence(krawtchouk(n, p, g - 1))
        profile.append((g, seq.variations))
    return profile


def localized(zs: ZeroSet) -> bool:
    """Every zero strictly inside ``(0, upper)``."""
    upper = float(zs.spec.upper)
    return all(0 < z.refined < upper for z in zs.zeros)


def min_gap(values: list[float]) -> float:
    return min((b - a for a, b in zip(values, values[1:])), default=math.inf)
