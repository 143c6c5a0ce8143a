"""Scalar numerics shared by every other module.

Entropy functions (any base > 1, natural log by default), exact binomial
coefficients, bisection root finding, and a globally adaptive Gauss-Kronrod
quadrature that tolerates integrable endpoint singularities.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Callable

from .errors import BracketError, ConvergenceError, DomainError

# Exact rationals are plain fractions.Fraction throughout the package.
Rational = Fraction

DEFAULT_TOL = 1e-9


def entropy(x: float, base: float = math.e) -> float:
    """Entropy -x*log(x) - (1-x)*log(1-x) in the given base, 0*log 0 = 0."""
    if base <= 1.0:
        raise DomainError(f"entropy base must exceed 1, got {base}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument must lie in [0,1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    lb = math.log(base)
    return (-x * math.log(x) - (1.0 - x) * math.log(1.0 - x)) / lb


def mixed_entropy(x: float, y: float, base: float = math.e) -> float:
    """Cross entropy -x*log(y) - (1-x)*log(1-y); equals entropy(x) at y = x."""
    if base <= 1.0:
        raise DomainError(f"entropy base must exceed 1, got {base}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"first argument must lie in [0,1], got {x}")
    if not 0.0 < y < 1.0:
        raise DomainError(f"second argument must lie in (0,1), got {y}")
    lb = math.log(base)
    return (-x * math.log(y) - (1.0 - x) * math.log(1.0 - y)) / lb


def inverse_entropy(y: float, base: float = math.e, tol: float = 1e-12) -> float:
    """The unique x in [0, 1/2] with entropy(x, base) = y.

    entropy is strictly increasing on [0, 1/2], so plain bisection suffices.
    """
    hmax = entropy(0.5, base)
    if not 0.0 <= y <= hmax * (1.0 + 1e-12):
        raise DomainError(f"no x in [0,1/2] has entropy {y} in base {base}")
    if y <= 0.0:
        return 0.0
    if y >= hmax:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if entropy(mid, base) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero outside 0 <= k <= n."""
    if n < 0:
        raise DomainError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def log2_binomial(n: int, k: int) -> float:
    """log2 C(n,k) without forming the big integer (lgamma based)."""
    if k < 0 or k > n:
        raise DomainError(f"log2_binomial needs 0 <= k <= n, got ({n}, {k})")
    return (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    ) / math.log(2.0)


def log2_int(x: int) -> float:
    """log2 of a positive integer of any size."""
    if x <= 0:
        raise DomainError("log2_int requires a positive integer")
    s = x.bit_length()
    if s <= 53:
        return math.log2(x)
    return (s - 53) + math.log2(x >> (s - 53))


def log2_fraction(x: Fraction) -> float:
    """log2 of a positive rational of any size."""
    if x <= 0:
        raise DomainError("log2_fraction requires a positive rational")
    return log2_int(x.numerator) - log2_int(x.denominator)


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = 200,
) -> float:
    """Root of a continuous f with a sign change on [lo, hi], by bisection."""
    if not lo <= hi:
        raise DomainError(f"invalid bracket [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"f({lo})={flo} and f({hi})={fhi} have the same sign")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol:
            break
    else:
        raise ConvergenceError("bisection exceeded max_iter without tolerance")
    return 0.5 * (lo + hi)


# 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK constants).
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
)
_WGK = (
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
)
_WG = (
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
)


def _gk15(f, a, b):
    """Gauss-Kronrod estimate and error indicator on [a, b] (open nodes).

    The error logic follows QUADPACK's dqk15: the raw Kronrod-Gauss
    difference is rescaled against the oscillation integral so that
    singular cells are not underestimated.
    """
    h = 0.5 * (b - a)
    c = 0.5 * (a + b)
    fc = f(c)
    vals = [0.0] * 7  # f1 + f2 per Kronrod pair
    sumabs = _WGK[7] * abs(fc)
    resg = _WG[3] * fc
    resk = _WGK[7] * fc
    fpairs = []
    for j in range(7):
        x = h * _XGK[j]
        f1 = f(c - x)
        f2 = f(c + x)
        fpairs.append((f1, f2))
        resk += _WGK[j] * (f1 + f2)
        sumabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    mean = resk * 0.5
    resasc = _WGK[7] * abs(fc - mean)
    for j in range(7):
        f1, f2 = fpairs[j]
        resasc += _WGK[j] * (abs(f1 - mean) + abs(f2 - mean))
    resk *= h
    resg *= h
    resasc *= abs(h)
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    return resk, err


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_intervals: int = 4096,
) -> float:
    """Globally adaptive Gauss-Kronrod quadrature of f over [a, b].

    The rule never samples the endpoints, so integrable endpoint
    singularities (inverse square root, log) are handled by subdivision
    alone. Raises ConvergenceError when the interval budget runs out
    before the summed error estimate drops below tol.
    """
    if a > b:
        raise DomainError(f"integrate needs a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0
    val, err = _gk15(f, a, b)
    # heap of (-error, a, b, value, error)
    heap = [(-err, a, b, val, err)]
    total_val, total_err = val, err
    count = 1
    while total_err > tol:
        if count >= max_intervals:
            raise ConvergenceError(
                f"quadrature error {total_err:.3e} above tol {tol:.3e} "
                f"after {count} intervals"
            )
        _, ia, ib, ival, ierr = heapq.heappop(heap)
        mid = 0.5 * (ia + ib)
        if mid <= ia or mid >= ib:
            # interval at floating point resolution; keep its estimate
            total_err -= ierr
            total_val += 0.0
            heapq.heappush(heap, (0.0, ia, ib, ival, 0.0))
            continue
        v1, e1 = _gk15(f, ia, mid)
        v2, e2 = _gk15(f, mid, ib)
        total_val += v1 + v2 - ival
        total_err += e1 + e2 - ierr
        heapq.heappush(heap, (-e1, ia, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, ib, v2, e2))
        count += 1
    return total_val
