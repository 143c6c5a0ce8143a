"""Lower bounds on distance distributions and binomial moments.

Finite-length statements are exact-rational; asymptotic exponents go
through the quadrature-backed polynomial exponents. Bounds that come out
vacuous (nonpositive, or implied by trivial mass counting) are returned
flagged rather than clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import mrrw_delta
from .codes import PolynomialInBasis
from .errors import DomainError
from .numerics import DEFAULT_TOL, entropy, integrate, inverse_entropy
from .orthopoly import (
    jacobi,
    krawtchouk_exponent,
    krawtchouk_zero_abscissa,
)


# ---------------------------------------------------------------------------
# Finite-length spectrum bound


@dataclass(frozen=True)
class SpectrumWitness:
    """Result of the finite-length distance-spectrum lower bound.

    The raw guarantee is sum_{i=1..w} f(i) A_i >= total; uniform_bound is
    the pigeonhole consequence: some A_j with j <= w is at least
    total / (w * max f). per_index[j-1] = total / (w * f(j)) is the
    family of per-index candidates (at least one index must attain its
    candidate). vacuous marks total <= 0.
    """

    total: Fraction
    uniform_bound: Fraction
    per_index: tuple[Fraction, ...]
    argmax_index: int
    vacuous: bool


def finite_spectrum_lower(
    n: int, size, w: int, f: PolynomialInBasis
) -> SpectrumWitness:
    """Distance-spectrum guarantee from an admissible polynomial.

    Requires f_k >= 0 for k >= 1, f > 0 on {0..w} and f <= 0 on {w+1..n}.
    Then sum_{i=1}^w f(i) A_i >= M f_0 - f(0), so some j <= w has
    A_j >= (M f_0 - f(0)) / (w f(j)).
    """
    if f.n != n:
        raise DomainError("polynomial length differs from n")
    if not 1 <= w <= n:
        raise DomainError(f"need 1 <= w <= n, got w={w}")
    for k in range(1, n + 1):
        if f.coeffs[k] < 0:
            raise DomainError(f"coefficient f_{k} = {f.coeffs[k]} is negative")
    for i in range(w + 1):
        if f.values[i] <= 0:
            raise DomainError(f"f({i}) = {f.values[i]} must be positive for i <= w")
    for i in range(w + 1, n + 1):
        if f.values[i] > 0:
            raise DomainError(f"f({i}) = {f.values[i]} must be nonpositive for i > w")
    size = Fraction(size)
    total = size * f.coeffs[0] - f.values[0]
    fmax = max(f.values[1 : w + 1])
    per_index = tuple(total / (w * f.values[j]) for j in range(1, w + 1))
    uniform = total / (w * fmax)
    arg = max(range(1, w + 1), key=lambda j: per_index[j - 1])
    return SpectrumWitness(
        total=total,
        uniform_bound=uniform,
        per_index=per_index,
        argmax_index=arg,
        vacuous=total <= 0,
    )


# ---------------------------------------------------------------------------
# Asymptotic Hamming spectrum (Theorem-3 style)


def hamming_spectrum_exponent(
    R: float, tau: float, xi: float, tol: float = DEFAULT_TOL
) -> float:
    """Guaranteed exponent of A_{xi n} for rate-R codes, free parameter tau.

    R - H2(tau) - 2 I(xi, tau), where I is the integral part alone of the
    Krawtchouk exponent (the H2(tau) constant excluded): at xi = 0 the
    value must reduce to R - H2(tau), plain mass counting.
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"rate must lie in (0,1), got {R}")
    if not 0.0 <= tau <= inverse_entropy(R, 2) + 1e-12:
        raise DomainError(f"tau={tau} outside [0, H2^-1(R)] for R={R}")
    xi_max = krawtchouk_zero_abscissa(tau)
    if not 0.0 <= xi <= xi_max + 1e-12:
        raise DomainError(f"xi={xi} outside [0, {xi_max}]")
    if xi == 0.0 or tau == 0.0:
        return R - entropy(tau, 2)
    integral = krawtchouk_exponent(tau, xi, tol) - entropy(tau, 2)
    return R - entropy(tau, 2) - 2.0 * integral


def hamming_spectrum_best(
    R: float,
    xi_grid: list[float] | None = None,
    tau_points: int = 64,
    tol: float = 1e-7,
) -> list[tuple[float, float, float]]:
    """For each abscissa xi, the best exponent over admissible tau.

    Returns rows (xi, exponent, argmax tau). Admissible tau must satisfy
    xi <= 1/2 - sqrt(tau(1-tau)), i.e. tau <= tau_max(xi).
    """
    if xi_grid is None:
        xi_grid = [i / 100 for i in range(0, 50)]
    tau_cap = inverse_entropy(R, 2)
    rows = []
    for xi in xi_grid:
        # xi <= 1/2 - sqrt(tau(1-tau))  <=>  tau <= (1 - sqrt(1-(1-2 xi)^2))/2
        if xi >= 0.5:
            continue
        disc = 1.0 - (1.0 - 2.0 * xi) ** 2
        tau_max = min(tau_cap, 0.5 * (1.0 - math.sqrt(disc)))
        best_val, best_tau = R, 0.0  # tau = 0 gives R - H2(0) = R
        for t in range(1, tau_points + 1):
            tau = tau_max * t / tau_points
            if tau <= 0:
                continue
            val = hamming_spectrum_exponent(R, tau, xi, tol)
            if val > best_val:
                best_val, best_tau = val, tau
        rows.append((xi, best_val, best_tau))
    return rows


# ---------------------------------------------------------------------------
# Binomial-moment exponent (Theorem-4 style)


def binom_moment_exponent(R: float, omega: float) -> float:
    """Exponent lower bound of F_{2 omega n} for rate-R codes.

    R - 1 + H2(w*) + (1 - w*) H2((1-2 omega)/(1 - w*)) with
    w* = omega when omega >= delta_lp(R), else delta_lp(R).
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"rate must lie in (0,1), got {R}")
    dlp, _ = mrrw_delta(R)
    if omega < dlp / 2 - 1e-12:
        raise DomainError(f"omega={omega} below delta_lp(R)/2 = {dlp / 2}")
    if omega > 1.0 + 1e-12:
        raise DomainError(f"omega={omega} above 1")
    w_star = omega if omega >= dlp else dlp
    if w_star >= 1.0:
        return R - 1.0 + entropy(1.0, 2)
    arg = (1.0 - 2.0 * omega) / (1.0 - w_star)
    if not -1e-12 <= arg <= 1.0 + 1e-12:
        raise DomainError(
            f"H2 argument (1-2w)/(1-w*) = {arg} outside [0,1]; "
            f"the bound is stated for omega <= 1/2"
        )
    arg = min(max(arg, 0.0), 1.0)
    return R - 1.0 + entropy(w_star, 2) + (1.0 - w_star) * entropy(arg, 2)


# ---------------------------------------------------------------------------
# Sphere spectrum (Theorem-5 style)


def sphere_spectrum_min_x(gamma: float) -> float:
    """Left endpoint 2 sqrt(gamma(1+gamma)) / (1+2 gamma) of the x-range."""
    return 2.0 * math.sqrt(gamma * (1.0 + gamma)) / (1.0 + 2.0 * gamma)


def sphere_spectrum_exponent(
    R: float, gamma: float, x: float, tol: float = DEFAULT_TOL
) -> float:
    """Exponent of the inner-product density a(x, x + 1/n), natural log.

    4 gamma(1+gamma) int_x^1 dz / (z + sqrt(z^2 - 4(1-z^2) gamma(1+gamma)))
    - (1+gamma) H(gamma/(1+gamma)) + R.
    """
    if R <= 0:
        raise DomainError(f"rate must be positive, got {R}")
    if gamma < 0:
        raise DomainError(f"gamma must be nonnegative, got {gamma}")
    xmin = sphere_spectrum_min_x(gamma)
    if not xmin - 1e-12 <= x <= 1.0 + 1e-12:
        raise DomainError(f"x={x} outside [{xmin}, 1]")
    if gamma == 0.0:
        return R
    g = gamma * (1.0 + gamma)

    def integrand(z: float) -> float:
        disc = z * z - 4.0 * (1.0 - z * z) * g
        return 1.0 / (z + math.sqrt(max(disc, 0.0)))

    head = -(1.0 + gamma) * entropy(gamma / (1.0 + gamma)) + R
    if x >= 1.0:
        return head
    return 4.0 * g * integrate(integrand, x, 1.0, tol) + head


# ---------------------------------------------------------------------------
# Spherical partition bound (Theorem-2 style)


@dataclass(frozen=True)
class PartitionSpec:
    """m equal segments partitioning [u0, top] with top < 1."""

    u0: float
    top: float
    m: int

    def __post_init__(self):
        if not -1.0 <= self.u0 < self.top < 1.0:
            raise DomainError("need -1 <= u0 < top < 1")
        if self.m < 1:
            raise DomainError("need at least one segment")

    def points(self) -> list[float]:
        h = (self.top - self.u0) / self.m
        return [self.u0 + i * h for i in range(self.m + 1)]


@dataclass(frozen=True)
class PartitionBound:
    segment_index: int
    s: float
    bound: float
    vacuous: bool


def theorem2_bound(
    size: int,
    jacobi_coeffs: list[float],
    partition: PartitionSpec,
    alpha: float,
    samples: int = 10_000,
) -> PartitionBound:
    """Density guarantee for spherical codes from an admissible polynomial.

    f = sum f_k P_k^{alpha,alpha} must have f_k >= 0 for k >= 1, f <= 0 on
    [-1, u0] and f >= 0 on [u0, 1] (checked by dense sampling; a sampling
    check is a semi-decision, not a certificate). The guarantee: some
    segment [u_i, u_{i+1}] has density at least (f_0 M - f(1)) / (m f(s)).
    The evaluation point s is taken as the maximizer of f over the
    partition, the weakest admissible choice.
    """
    for k, c in enumerate(jacobi_coeffs):
        if k >= 1 and c < 0:
            raise DomainError(f"coefficient {k} is negative")

    def f(x: float) -> float:
        return sum(c * jacobi(alpha, alpha, k, x) for k, c in enumerate(jacobi_coeffs))

    for i in range(samples + 1):
        x = -1.0 + (partition.u0 + 1.0) * i / samples
        if f(x) > 1e-12:
            raise DomainError(f"f({x}) > 0 on [-1, u0] (sampled)")
    for i in range(samples + 1):
        x = partition.u0 + (1.0 - partition.u0) * i / samples
        if f(x) < -1e-12:
            raise DomainError(f"f({x}) < 0 on [u0, 1] (sampled)")

    pts = partition.points()
    # maximizer of f over [u0, top], scanned on a fine grid
    grid = [
        partition.u0 + (partition.top - partition.u0) * i / samples
        for i in range(samples + 1)
    ]
    s = max(grid, key=f)
    seg = min(int((s - partition.u0) / (pts[1] - pts[0])), partition.m - 1)
    fs = f(s)
    if fs <= 0:
        raise DomainError("f must be positive somewhere on the partition")
    bound = (jacobi_coeffs[0] * size - f(1.0)) / (partition.m * fs)
    return PartitionBound(segment_index=seg, s=s, bound=bound, vacuous=bound <= 0)
