"""The three zonal polynomial families and their exponent asymptotics.

Binary Krawtchouk and Johnson-scheme Hahn polynomials are evaluated in
exact rational arithmetic; Jacobi polynomials in floating point (their
parameters are real). Each family comes with extremal-zero location and
the normalized large-degree exponent of its values outside the zeros.

Normalizations:
  * Krawtchouk: K_k(0) = C(n,k).
  * Hahn: Q_k(0) = C(n,k) - C(n,k-1), Delsarte's dual eigenvalues of the
    Johnson scheme J(n,v); orthogonal on {0..v} against
    mu(i) = C(v,i) C(n-v,i) / C(n,v).
  * Jacobi: P_k(1) = C(k+alpha, k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError
from .numerics import DEFAULT_TOL, binomial, entropy, integrate

RationalLike = int | Fraction


# ---------------------------------------------------------------------------
# Krawtchouk


def krawtchouk(n: int, k: int, x: RationalLike) -> Fraction:
    """Exact K_k(x) for the binary Hamming scheme H^n, via the k-recurrence.

    (k+1) K_{k+1}(x) = (n - 2x) K_k(x) - (n - k + 1) K_{k-1}(x)
    """
    if not 0 <= k <= n:
        raise DomainError(f"krawtchouk needs 0 <= k <= n, got k={k}, n={n}")
    if not 0 <= x <= n:
        raise DomainError(f"krawtchouk needs 0 <= x <= n, got x={x}")
    x = Fraction(x)
    prev = Fraction(1)
    if k == 0:
        return prev
    cur = Fraction(n) - 2 * x
    for m in range(1, k):
        prev, cur = cur, ((n - 2 * x) * cur - (n - m + 1) * prev) / (m + 1)
    return cur

def krawtchouk_sum(n: int, k: int, x: RationalLike) -> Fraction:
    """Independent evaluation of K_k(x) by the defining alternating sum.

    K_k(x) = sum_j (-1)^j C(x,j) C(n-x, k-j), with generalized binomials
    so x may be any rational.
    """
    if not 0 <= k <= n:
        raise DomainError(f"krawtchouk needs 0 <= k <= n, got k={k}, n={n}")
    x = Fraction(x)
    cxj = Fraction(1)  # C(x, j)
    cny = Fraction(1)  # C(n-x, k-j)
    for t in range(k):
        cny *= (n - x - t) / (t + 1)
    total = Fraction(0)
    for j in range(k + 1):
        if j > 0:
            cxj *= (x - (j - 1)) / j
            cny *= Fraction(k - j + 1) / (n - x - (k - j))
        total += (-1) ** j * cxj * cny
    return total


def krawtchouk_matrix(n: int) -> list[list[int]]:
    """The (n+1)x(n+1) integer matrix K[k][i] = K_k(i)."""
    rows = [[1] * (n + 1), [n - 2 * i for i in range(n + 1)]]
    if n == 0:
        return rows[:1]
    for k in range(1, n):
        prev, cur = rows[k - 1], rows[k]
        rows.append(
            [
                ((n - 2 * i) * cur[i] - (n - k + 1) * prev[i]) // (k + 1)
                for i in range(n + 1)
            ]
        )
    return rows


def krawtchouk_zero_abscissa(tau: float) -> float:
    """Normalized location 1/2 - sqrt(tau(1-tau)) of the smallest zero."""
    if not 0.0 <= tau <= 1.0:
        raise DomainError(f"tau must lie in [0,1], got {tau}")
    return 0.5 - math.sqrt(tau * (1.0 - tau))


def smallest_zero_krawtchouk(n: int, k: int, rel_tol: float = 1e-8) -> float:
    """Smallest root of K_k, by exact-sign bracketing plus bisection.

    K_k is positive and decreasing on [0, x_1], so scanning for the first
    sign change cannot skip the root. The scan starts slightly below the
    asymptotic location n/2 - sqrt(k(n-k)) and falls back to 0 if the
    polynomial is not positive there.
    """
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == 1:
        return n / 2
    guess = n / 2 - math.sqrt(k * (n - k))
    start = Fraction(max(0, math.floor(guess) - 2))
    if krawtchouk(n, k, start) <= 0:
        start = Fraction(0)
    step = Fraction(1, 2)
    lo = start
    flo = krawtchouk(n, k, lo)
    while True:
        hi = lo + step
        if hi > n:
            raise DomainError(f"no sign change located for K_{k} on [0, {n}]")
        fhi = krawtchouk(n, k, hi)
        if fhi == 0:
            return float(hi)
        if (fhi > 0) != (flo > 0):
            break
        lo, flo = hi, fhi
    positive_low = flo > 0
    while (hi - lo) > rel_tol * hi:
        mid = (lo + hi) / 2
        fm = krawtchouk(n, k, mid)
        if fm == 0:
            return float(mid)
        if (fm > 0) == positive_low:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def krawtchouk_exponent(tau: float, xi: float, tol: float = DEFAULT_TOL) -> float:
    """lim (1/n) log2 K_{tau n}(xi n) on the zero-free segment.

    Equals H2(tau) plus the integral of
    log2[(1 - 2 tau + sqrt((1-2 tau)^2 - 4y(1-y))) / (2 - 2y)] over [0, xi].
    """
    if not 0.0 < tau < 0.5:
        raise DomainError(f"tau must lie in (0, 1/2), got {tau}")
    xi_max = krawtchouk_zero_abscissa(tau)
    if not 0.0 <= xi <= xi_max + 1e-12:
        raise DomainError(f"xi={xi} outside [0, {xi_max}] for tau={tau}")
    one_minus_2tau = 1.0 - 2.0 * tau

    def integrand(y: float) -> float:
        disc = one_minus_2tau * one_minus_2tau - 4.0 * y * (1.0 - y)
        return math.log2((one_minus_2tau + math.sqrt(max(disc, 0.0))) / (2.0 - 2.0 * y))

    if xi == 0.0:
        return entropy(tau, 2)
    return entropy(tau, 2) + integrate(integrand, 0.0, min(xi, xi_max), tol)


# ---------------------------------------------------------------------------
# Hahn (Johnson scheme)


def johnson_multiplicity(n: int, k: int) -> int:
    """m_k = C(n,k) - C(n,k-1), the k-th eigenspace dimension of J(n,v)."""
    return binomial(n, k) - binomial(n, k - 1)


def johnson_weight(n: int, v: int, i: int) -> Fraction:
    """Orthogonality weight mu(i) = C(v,i) C(n-v,i) / C(n,v) on {0..v}."""
    return Fraction(binomial(v, i) * binomial(n - v, i), binomial(n, v))


def hahn(n: int, v: int, k: int, i: RationalLike) -> Fraction:
    """Exact Hahn value Q_k(i) with Q_k(0) = C(n,k) - C(n,k-1).

    Three-term recurrence of the hypergeometric Hahn family with
    parameters (v-n-1, -v-1, v), rescaled by the eigenspace dimension.
    """
    if not (1 <= v and 0 <= k <= v and 2 * v <= n):
        raise DomainError(f"hahn needs 0 <= k <= v <= n/2, got n={n} v={v} k={k}")
    if not 0 <= i <= v:
        raise DomainError(f"hahn evaluation point must lie in [0, v], got {i}")
    x = Fraction(i)
    A = v - n - 1
    B = -v - 1
    qm1, q0 = Fraction(0), Fraction(1)
    for m in range(k):
        am = Fraction((m + A + B + 1) * (m + A + 1) * (v - m), (2 * m + A + B + 1) * (2 * m + A + B + 2))
        cm = (
            Fraction(m * (m + A + B + v + 1) * (m + B), (2 * m + A + B) * (2 * m + A + B + 1))
            if m > 0
            else Fraction(0)
        )
        # -x q_m = am q_{m+1} - (am + cm) q_m + cm q_{m-1}
        qm1, q0 = q0, ((am + cm - x) * q0 - cm * qm1) / am
    return johnson_multiplicity(n, k) * q0


def hahn_matrix(n: int, v: int) -> list[list[Fraction]]:
    """The (v+1)x(v+1) matrix Q[k][i] = Q_k(i)."""
    return [[hahn(n, v, k, i) for i in range(v + 1)] for k in range(v + 1)]


def hahn_zero_abscissa(alpha: float, beta: float) -> float:
    """Normalized smallest-zero location of Q_{beta n} on J(n, alpha n)."""
    if not 0.0 <= beta <= alpha <= 0.5:
        raise DomainError(f"need 0 <= beta <= alpha <= 1/2, got ({alpha}, {beta})")
    return (alpha * (1 - alpha) - beta * (1 - beta)) / (1 + 2 * math.sqrt(beta * (1 - beta)))


def hahn_exponent(alpha: float, beta: float, xi: float, tol: float = DEFAULT_TOL) -> float:
    """lim (1/n) log2 Q_{beta n}(xi n) on J(n, alpha n), zero-free segment."""
    if not 0.0 < beta <= alpha <= 0.5:
        raise DomainError(f"need 0 < beta <= alpha <= 1/2, got ({alpha}, {beta})")
    xi_max = hahn_zero_abscissa(alpha, beta)
    if not 0.0 <= xi <= xi_max + 1e-12:
        raise DomainError(f"xi={xi} outside the zero-free segment [0, {xi_max}]")
    aa = alpha * (1.0 - alpha)
    bb = beta * (1.0 - beta)

    def integrand(y: float) -> float:
        num = aa - y * (1.0 - 2.0 * y) - bb
        den = 2.0 * (alpha - y) * (1.0 - alpha - y)
        disc = num * num - 2.0 * den * y * y
        return math.log2((num + math.sqrt(max(disc, 0.0))) / den)

    if xi == 0.0:
        return entropy(beta, 2)
    return entropy(beta, 2) + integrate(integrand, 0.0, min(xi, xi_max), tol)


# ---------------------------------------------------------------------------
# Jacobi


def jacobi(alpha: float, beta: float, k: int, x: float) -> float:
    """P_k^{alpha,beta}(x) by the standard three-term recurrence."""
    if alpha <= -1 or beta <= -1:
        raise DomainError("jacobi parameters must exceed -1")
    if k < 0:
        raise DomainError("jacobi degree must be nonnegative")
    if k == 0:
        return 1.0
    pm1 = 1.0
    p0 = (alpha - beta) / 2 + (alpha + beta + 2) / 2 * x
    for m in range(2, k + 1):
        s = 2 * m + alpha + beta
        a1 = 2 * m * (m + alpha + beta) * (s - 2)
        a2 = (s - 1) * (alpha * alpha - beta * beta)
        a3 = (s - 1) * s * (s - 2)
        a4 = 2 * (m + alpha - 1) * (m + beta - 1) * s
        pm1, p0 = p0, ((a2 + a3 * x) * p0 - a4 * pm1) / a1
    return p0


def jacobi_signed_log(alpha: float, beta: float, k: int, x: float) -> tuple[float, float]:
    """(sign, ln|P_k^{alpha,beta}(x)|) via a rescaled recurrence.

    Safe for degrees and parameters where the plain value overflows.
    """
    if k == 0:
        return 1.0, 0.0
    pm1 = 1.0
    p0 = (alpha - beta) / 2 + (alpha + beta + 2) / 2 * x
    logscale = 0.0
    for m in range(2, k + 1):
        s = 2 * m + alpha + beta
        a1 = 2 * m * (m + alpha + beta) * (s - 2)
        a2 = (s - 1) * (alpha * alpha - beta * beta)
        a3 = (s - 1) * s * (s - 2)
        a4 = 2 * (m + alpha - 1) * (m + beta - 1) * s
        pm1, p0 = p0, ((a2 + a3 * x) * p0 - a4 * pm1) / a1
        mag = abs(p0)
        if mag > 1e250 or (0.0 < mag < 1e-250):
            pm1 /= mag
            p0 /= mag
            logscale += math.log(mag)
    if p0 == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, p0), logscale + math.log(abs(p0))


def jacobi_largest_zero_limit(a: float, b: float) -> float:
    """Limit of the largest zero of P_k^{ak,bk} as k grows.

    (4 sqrt((a+b+1)(a+1)(b+1)) - a^2 + b^2) / (a+b+2)^2; this is where the
    discriminant of the degree-limit ODE vanishes, and the smallest zero
    approaches the negated value with a and b exchanged.
    """
    if a < 0 or b < 0:
        raise DomainError("shape parameters must be nonnegative")
    return (4 * math.sqrt((a + b + 1) * (a + 1) * (b + 1)) - a * a + b * b) / (a + b + 2) ** 2


def _jacobi_largest_zero(alpha: float, beta: float, k: int, tol: float) -> float:
    """Largest zero of P_k^{alpha,beta} by the interlacing bracket chain."""
    z = (beta - alpha) / (alpha + beta + 2)  # root of P_1
    for m in range(2, k + 1):
        lo, hi = z, 1.0
        # P_m(hi) > 0 and P_m(lo) < 0 by interlacing
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            sgn, _lg = jacobi_signed_log(alpha, beta, m, mid)
            if sgn > 0:
                hi = mid
            elif sgn < 0:
                lo = mid
            else:
                lo = hi = mid
            if hi - lo <= tol:
                break
        z = 0.5 * (lo + hi)
    return z


def extreme_zeros_jacobi(a: float, b: float, k: int, tol: float = 1e-12) -> tuple[float, float]:
    """(smallest, largest) zeros of P_k^{ak, bk}.

    Bracketing uses the interlacing of consecutive degrees, so no zero can
    be skipped; the smallest zero comes from the reflection
    P_k^{alpha,beta}(-x) = (-1)^k P_k^{beta,alpha}(x).
    """
    if a < 0 or b < 0:
        raise DomainError("shape parameters must be nonnegative")
    if k < 1:
        raise DomainError("degree must be at least 1")
    largest = _jacobi_largest_zero(a * k, b * k, k, tol)
    smallest = -_jacobi_largest_zero(b * k, a * k, k, tol)
    return smallest, largest


def jacobi_exponent(a: float, b: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """lim (1/k) ln |P_k^{ak,bk}(x)| outside the zero region.

    Right branch (x at or beyond the largest-zero limit):
        (1+a) H(a/(1+a)) - int_x^1 2c / (A(z) + sqrt(A(z)^2 - 4(1-z^2) c)) dz
    with A(z) = a + (a+b) z - b and c = 1+a+b; the integrand is the
    rationalized form of (A - sqrt(A^2 - 4(1-z^2) c)) / (2(1-z^2)).
    Values of x beyond 1 are allowed (the segment flips sign and the
    exponent grows). The left branch reflects to (b, a, -x).
    """
    if a < 0 or b < 0:
        raise DomainError("shape parameters must be nonnegative")
    x_right = jacobi_largest_zero_limit(a, b)
    x_left = -jacobi_largest_zero_limit(b, a)
    if x <= x_left + 1e-12:
        return jacobi_exponent(b, a, -x, tol)
    if x < x_right - 1e-12:
        raise DomainError(
            f"x={x} lies strictly inside the oscillatory region ({x_left}, {x_right})"
        )
    c = 1.0 + a + b

    def integrand(z: float) -> float:
        A = a + (a + b) * z - b
        disc = A * A - 4.0 * (1.0 - z * z) * c
        return 2.0 * c / (A + math.sqrt(max(disc, 0.0)))

    head = (1.0 + a) * entropy(a / (1.0 + a)) if a > 0 else 0.0
    if x < 1.0:
        return head - integrate(integrand, x, 1.0, tol)
    if x == 1.0:
        return head
    if a > 0.0:
        return head + integrate(integrand, 1.0, x, tol)
    # a = 0: the integrand blows up like 1/sqrt(z-1) at z = 1; substitute
    # z = 1 + t^2 so the transformed integrand is bounded.
    return head + integrate(
        lambda t: integrand(1.0 + t * t) * 2.0 * t, 0.0, math.sqrt(x - 1.0), tol
    )


# ---------------------------------------------------------------------------
# Exponent curve descriptor


@dataclass
class ExponentCurve:
    """A normalized-exponent map for one polynomial family.

    `left_value` is the constant term the curve must equal at the left
    endpoint of its domain (empty integral).
    """

    family: str
    params: dict
    fn: Callable[[float], float]
    left_endpoint: float = 0.0
    left_value: float = 0.0

    def __call__(self, arg: float) -> float:
        return self.fn(arg)


def krawtchouk_curve(tau: float) -> ExponentCurve:
    return ExponentCurve(
        family="krawtchouk",
        params={"tau": tau},
        fn=lambda xi: krawtchouk_exponent(tau, xi),
        left_endpoint=0.0,
        left_value=entropy(tau, 2),
    )


def hahn_curve(alpha: float, beta: float) -> ExponentCurve:
    return ExponentCurve(
        family="hahn",
        params={"alpha": alpha, "beta": beta},
        fn=lambda xi: hahn_exponent(alpha, beta, xi),
        left_endpoint=0.0,
        left_value=entropy(beta, 2),
    )


def jacobi_curve(a: float, b: float) -> ExponentCurve:
    return ExponentCurve(
        family="jacobi",
        params={"a": a, "b": b},
        fn=lambda x: jacobi_exponent(a, b, x),
        left_endpoint=1.0,
        left_value=(1.0 + a) * entropy(a / (1.0 + a)) if a > 0 else 0.0,
    )
