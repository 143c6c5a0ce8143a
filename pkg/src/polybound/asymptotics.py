"""Asymptotic rate-distance bound curves.

Hamming side (base-2 rates): the random-choice lower bound and the
second linear-programming upper bound on relative distance. Sphere side
(natural-log rates): the random-choice distance lower bound and the
Kabatiansky-Levenshtein upper bound driven by the rate equation
R = (1+rho) H(rho/(1+rho)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .numerics import bisect_root, entropy, inverse_entropy


@dataclass(frozen=True)
class RDeltaPoint:
    R: float
    delta: float


@dataclass(frozen=True)
class SphereRatePoint:
    R: float
    d: float
    rho: float


def gv_delta(R: float) -> float:
    """Random-choice (Gilbert-Varshamov) relative distance H2^-1(1-R)."""
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"rate must lie in [0,1], got {R}")
    return inverse_entropy(1.0 - R, 2)


def _mrrw_objective(beta: float, R: float) -> float:
    alpha = inverse_entropy(min(1.0, 1.0 - R + entropy(beta, 2)), 2)
    return 2.0 * (alpha * (1 - alpha) - beta * (1 - beta)) / (
        1.0 + 2.0 * math.sqrt(beta * (1 - beta))
    )


def mrrw_delta(
    R: float, grid: int = 1000, tol: float = 1e-10
) -> tuple[float, tuple[float, float]]:
    """The second-LP upper bound on delta(R) with its minimizing (alpha, beta).

    min over 0 <= beta <= alpha <= 1/2 with H2(alpha) - H2(beta) = 1 - R of
    2 [alpha(1-alpha) - beta(1-beta)] / [1 + 2 sqrt(beta(1-beta))]; alpha is
    eliminated through the entropy constraint, leaving a one-dimensional
    minimization over beta in [0, H2^-1(R)] (coarse grid, then golden
    section refinement).
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"rate must lie in (0,1), got {R}")
    beta_max = inverse_entropy(R, 2)
    xs = [i * beta_max / grid for i in range(grid + 1)]
    vals = [_mrrw_objective(b, R) for b in xs]
    i = min(range(len(xs)), key=vals.__getitem__)
    lo = xs[max(0, i - 1)]
    hi = xs[min(grid, i + 1)]
    # golden-section refinement on [lo, hi]
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    dpt = a + invphi * (b - a)
    fc, fd = _mrrw_objective(c, R), _mrrw_objective(dpt, R)
    while b - a > tol:
        if fc < fd:
            b, dpt, fd = dpt, c, fc
            c = b - invphi * (b - a)
            fc = _mrrw_objective(c, R)
        else:
            a, c, fc = c, dpt, fd
            dpt = a + invphi * (b - a)
            fd = _mrrw_objective(dpt, R)
    beta = 0.5 * (a + b)
    alpha = inverse_entropy(min(1.0, 1.0 - R + entropy(beta, 2)), 2)
    return _mrrw_objective(beta, R), (alpha, beta)


def shannon_d(R: float) -> float:
    """Shannon's random-choice sphere distance sqrt(2(1-sqrt(1-e^-2R)))."""
    if R < 0:
        raise DomainError(f"rate must be nonnegative, got {R}")
    return math.sqrt(2.0 * (1.0 - math.sqrt(1.0 - math.exp(-2.0 * R))))


def solve_rho(R: float, tol: float = 1e-10) -> float:
    """The unique rho >= 0 with R = (1+rho) H(rho/(1+rho)), natural log."""
    if R < 0:
        raise DomainError(f"rate must be nonnegative, got {R}")
    if R == 0.0:
        return 0.0

    def f(rho: float) -> float:
        return (1.0 + rho) * entropy(rho / (1.0 + rho)) - R

    hi = 1.0
    while f(hi) < 0:
        hi *= 2.0
        if hi > 1e9:
            raise DomainError(f"rate {R} too large to bracket rho")
    return bisect_root(f, 0.0, hi, tol)


def kl_d(R: float) -> float:
    """Kabatiansky-Levenshtein sphere-distance upper bound at rate R (nats)."""
    rho = solve_rho(R)
    return math.sqrt(2.0) * (math.sqrt(1.0 + rho) - math.sqrt(rho)) / math.sqrt(1.0 + 2.0 * rho)
