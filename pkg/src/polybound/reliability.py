"""Upper bounds on channel reliability functions.

BSC bounds use base-2 rates and exponents; Gaussian-channel bounds use
natural-log rates. The nested optimizations run on documented grids
followed by local refinement, and every result carries the optimizing
parameter tuple so the objective can be re-evaluated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import kl_d, mrrw_delta, solve_rho
from .errors import DomainError
from .numerics import bisect_root, entropy, inverse_entropy, mixed_entropy
from .orthopoly import hahn_exponent, hahn_zero_abscissa
from .spectra import sphere_spectrum_exponent, sphere_spectrum_min_x


# ---------------------------------------------------------------------------
# Error detection (BSC)


def lp_rate_at(p: float, tol: float = 1e-10) -> float:
    """R with delta_lp(R) = p: the inverse of the second-LP distance bound."""
    if not 0.0 < p < 0.5:
        raise DomainError(f"need 0 < p < 1/2, got {p}")

    def f(R: float) -> float:
        return mrrw_delta(R)[0] - p

    return bisect_root(f, 1e-9, 1.0 - 1e-9, tol)


def error_detection_upper(R: float, p: float) -> float:
    """Two-branch exponent bound for undetected error on the BSC.

    1 - R - H2(delta_lp(R)) + T2(delta_lp(R), p) below the switch rate
    R_lp(p), and 1 - R above it; T2(x, x) = H2(x) makes the branches agree
    at the switch.
    """
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"rate must lie in [0,1], got {R}")
    if not 0.0 < p < 0.5:
        raise DomainError(f"need 0 < p < 1/2, got {p}")
    if R >= 1.0:
        return 0.0
    if R <= 0.0:
        R = 1e-12
    dlp, _ = mrrw_delta(R)
    if dlp <= p:
        return 1.0 - R
    return 1.0 - R - entropy(dlp, 2) + mixed_entropy(dlp, p, 2)


# ---------------------------------------------------------------------------
# Sphere packing (externally sourced divergence form, flagged)


def sphere_packing_exponent(R: float, p: float) -> float:
    """Classical sphere-packing exponent in divergence form.

    D(delta || p) at delta = H2^-1(1-R). The formula is standard
    information theory, not derived in this package; outputs that use it
    are labelled "externally sourced" in the CLI metadata.
    """
    if not 0.0 < p < 0.5:
        raise DomainError(f"need 0 < p < 1/2, got {p}")
    capacity = 1.0 - entropy(p, 2)
    if not 0.0 < R < capacity:
        raise DomainError(f"rate must lie in (0, capacity={capacity}), got {R}")
    delta = inverse_entropy(1.0 - R, 2)
    return delta * math.log2(delta / p) + (1.0 - delta) * math.log2(
        (1.0 - delta) / (1.0 - p)
    )


# ---------------------------------------------------------------------------
# BSC reliability bound (Theorem-6 style)


@dataclass(frozen=True)
class BscBoundResult:
    value: float
    alpha: float
    beta: float
    xi: float
    delta: float
    eta: float
    nu: float
    nu_tilde: float
    metadata: dict = field(hash=False, compare=False, default_factory=dict)


def _eta_term(p: float, xi: float, delta: float, eta: float) -> float | None:
    """delta H2(2 eta/delta) + (xi - delta/2) H2((xi-2 eta)/(2 xi - delta))
    + (1 - xi - delta/2) H2((p(1-xi) - eta)/(1 - xi - delta/2)),
    None when any entropy argument escapes [0, 1]."""
    tiny = 1e-14
    total = 0.0
    if delta > 0:
        a1 = 2.0 * eta / delta
        if not -tiny <= a1 <= 1.0 + tiny:
            return None
        total += delta * entropy(min(max(a1, 0.0), 1.0), 2)
    den2 = 2.0 * xi - delta
    if den2 > tiny:
        a2 = (xi - 2.0 * eta) / den2
        if not -tiny <= a2 <= 1.0 + tiny:
            return None
        total += (xi - delta / 2.0) * entropy(min(max(a2, 0.0), 1.0), 2)
    elif den2 < -tiny:
        return None
    den3 = 1.0 - xi - delta / 2.0
    if den3 > tiny:
        a3 = (p * (1.0 - xi) - eta) / den3
        if not -tiny <= a3 <= 1.0 + tiny:
            return None
        total += den3 * entropy(min(max(a3, 0.0), 1.0), 2)
    elif den3 < -tiny:
        return None
    return total


def _bsc_objective(
    R: float, p: float, beta: float, xi: float, delta: float, eta_points: int
) -> tuple[float, float, float, float, float] | None:
    """E_{alpha,beta,xi,delta} with the inner eta-maximization on a grid.

    Returns (E, alpha, nu, nu_tilde, eta*) or None when the parameter
    combination leaves every entropy argument's domain.
    """
    log_term = -math.log2(math.sqrt(4.0 * p * (1.0 - p)))
    alpha = inverse_entropy(min(1.0, 1.0 - R + entropy(beta, 2)), 2)
    if beta > alpha + 1e-12:
        return None
    # nu needs q(alpha, beta, xi/2) from the Hahn exponent
    if beta <= 0.0:
        return None
    xi_hahn_max = hahn_zero_abscissa(alpha, beta)
    if xi / 2.0 > xi_hahn_max:
        return None
    q = hahn_exponent(alpha, beta, xi / 2.0, tol=1e-7)
    arg = (alpha - xi / 2.0) / (1.0 - xi)
    if not 0.0 <= arg <= 1.0:
        return None
    nu = (
        R
        - 1.0
        + entropy(beta, 2)
        + 2.0 * entropy(alpha, 2)
        - 2.0 * q
        - xi
        - (1.0 - xi) * entropy(arg, 2)
    )
    # inner maximization over eta in [delta p / 2, min(delta/4, p(1-xi))]
    eta_lo = delta * p / 2.0
    eta_hi = min(delta / 4.0, p * (1.0 - xi))
    if eta_hi < eta_lo - 1e-15:
        return None
    best_inner = None
    best_eta = eta_lo
    for t in range(eta_points + 1):
        eta = eta_lo + (eta_hi - eta_lo) * t / max(eta_points, 1)
        val = _eta_term(p, xi, delta, eta)
        if val is not None and (best_inner is None or val > best_inner):
            best_inner, best_eta = val, eta
    if best_inner is None:
        return None
    nu_tilde = min(nu, xi + (1.0 - xi) * entropy(p, 2) - best_inner)
    E = min(delta * log_term, -nu_tilde + xi * log_term)
    return E, alpha, nu, nu_tilde, best_eta


def bsc_reliability_upper(
    R: float,
    p: float,
    beta_points: int = 24,
    xi_points: int = 24,
    delta_points: int = 24,
    eta_points: int = 24,
    refine_rounds: int = 2,
    xi_bracket_sign: str = "plus",
) -> BscBoundResult:
    """Upper bound on the BSC error-decoding reliability at rate R.

    Maximizes E_{alpha,beta,xi,delta} as printed over the constraint box
    (alpha eliminated via H2(alpha) - H2(beta) = 1 - R), with grid search
    followed by local grid refinement around the incumbent. The xi bracket
    uses the printed plus sign 2[alpha(1-alpha) + beta(1-beta)]/(1 + 2
    sqrt(beta(1-beta))); pass xi_bracket_sign="minus" for the variant with
    the difference in the numerator.
    """
    if not 0.0 < R < 1.0:
        raise DomainError(f"rate must lie in (0,1), got {R}")
    if not 0.0 < p < 0.5:
        raise DomainError(f"need 0 < p < 1/2, got {p}")
    if xi_bracket_sign not in ("plus", "minus"):
        raise DomainError("xi_bracket_sign must be plus or minus")
    dlp, _ = mrrw_delta(R)
    beta_cap = inverse_entropy(R, 2)
    if beta_cap <= 0:
        raise DomainError(f"degenerate constraint set near R={R}")

    def xi_cap(alpha: float, beta: float) -> float:
        aa = alpha * (1.0 - alpha)
        bb = beta * (1.0 - beta)
        num = aa + bb if xi_bracket_sign == "plus" else aa - bb
        return 2.0 * num / (1.0 + 2.0 * math.sqrt(bb))

    best = None  # (E, beta, xi, delta, alpha, nu, nu_tilde, eta)

    def sweep(b_lo, b_hi, x_lo_frac, x_hi_frac, d_lo, d_hi):
        nonlocal best
        for ib in range(beta_points + 1):
            beta = b_lo + (b_hi - b_lo) * ib / beta_points
            if beta <= 0 or beta > beta_cap:
                continue
            alpha = inverse_entropy(min(1.0, 1.0 - R + entropy(beta, 2)), 2)
            xcap = xi_cap(alpha, beta)
            for ix in range(xi_points + 1):
                xi = (x_lo_frac + (x_hi_frac - x_lo_frac) * ix / xi_points) * xcap
                if xi < 0:
                    continue
                for idl in range(delta_points + 1):
                    delta = d_lo + (d_hi - d_lo) * idl / delta_points
                    if delta < 0 or delta > dlp:
                        continue
                    out = _bsc_objective(R, p, beta, xi, delta, eta_points)
                    if out is None:
                        continue
                    E, alpha_o, nu, nu_t, eta = out
                    if best is None or E > best[0]:
                        best = (E, beta, xi, delta, alpha_o, nu, nu_t, eta)

    sweep(beta_cap / beta_points, beta_cap, 0.0, 1.0, 0.0, dlp)
    if best is None:
        raise DomainError(f"no admissible parameters at R={R}, p={p}")
    for _ in range(refine_rounds):
        _, beta, xi, delta, alpha, _, _, _ = best
        db = beta_cap / beta_points
        dd = dlp / delta_points
        xcap = xi_cap(alpha, beta)
        xfrac = xi / xcap if xcap > 0 else 0.0
        dx = 1.0 / xi_points
        sweep(
            max(1e-9, beta - db),
            min(beta_cap, beta + db),
            max(0.0, xfrac - dx),
            min(1.0, xfrac + dx),
            max(0.0, delta - dd),
            min(dlp, delta + dd),
        )
    E, beta, xi, delta, alpha, nu, nu_t, eta = best
    return BscBoundResult(
        value=E,
        alpha=alpha,
        beta=beta,
        xi=xi,
        delta=delta,
        eta=eta,
        nu=nu,
        nu_tilde=nu_t,
        metadata={
            "grids": {
                "beta": beta_points,
                "xi": xi_points,
                "delta": delta_points,
                "eta": eta_points,
                "refine_rounds": refine_rounds,
            },
            "xi_bracket_sign": xi_bracket_sign,
            "rate_units": "bits",
        },
    )


# ---------------------------------------------------------------------------
# Gaussian reliability bound (Theorem-7 style)


@dataclass(frozen=True)
class GaussBoundResult:
    value: float
    gamma: float
    w: float
    d: float
    L: float
    metadata: dict = field(hash=False, compare=False, default_factory=dict)


def _gauss_L(R: float, A: float, w: float, d: float, gamma: float) -> float:
    """min(A d^2 w^2 / (8 (4 w^2 - d^2)), F(1 - w^2/2, gamma))."""
    geom = A * d * d * w * w / (8.0 * (4.0 * w * w - d * d))
    F = sphere_spectrum_exponent(R, gamma, 1.0 - w * w / 2.0, tol=1e-7)
    return min(geom, F)


def gaussian_reliability_upper(
    R: float,
    A: float,
    gamma_points: int = 24,
    w_points: int = 40,
    d_points: int = 40,
    refine_rounds: int = 2,
) -> GaussBoundResult:
    """Upper bound on the Gaussian-channel reliability at rate R (nats).

    min over gamma in [0, rho] of max over (w, d) in the stated brackets of
    min(A d^2/8, A w^2/8 - L(w, d, gamma)).
    """
    if R <= 0:
        raise DomainError(f"rate must be positive (nats), got {R}")
    if A <= 0:
        raise DomainError(f"signal-to-noise ratio must be positive, got {A}")
    rho = solve_rho(R)
    d_top_global = kl_d(R)

    def w_top(gamma: float) -> float:
        return (
            math.sqrt(2.0)
            * (math.sqrt(1.0 + gamma) - math.sqrt(gamma))
            / math.sqrt(1.0 + 2.0 * gamma)
        )

    def inner_max(gamma: float, w_lo=0.0, w_hi=None, d_lo=0.0, d_hi=None):
        wt = w_top(gamma)
        w_hi = wt if w_hi is None else min(w_hi, wt)
        d_hi = d_top_global if d_hi is None else min(d_hi, d_top_global)
        best = None
        for iw in range(1, w_points + 1):
            w = w_lo + (w_hi - w_lo) * iw / w_points
            if w <= 0:
                continue
            for idd in range(d_points + 1):
                d = d_lo + (d_hi - d_lo) * idd / d_points
                if d > w + 1e-15 or d <= 0:
                    continue
                val = min(A * d * d / 8.0, A * w * w / 8.0 - _gauss_L(R, A, w, d, gamma))
                if best is None or val > best[0]:
                    best = (val, w, d)
        return best

    best = None  # (value, gamma, w, d)
    for ig in range(gamma_points + 1):
        gamma = rho * ig / gamma_points
        got = inner_max(gamma)
        if got is None:
            continue
        val, w, d = got
        if best is None or val < best[0]:
            best = (val, gamma, w, d)
    if best is None:
        raise DomainError(f"no admissible parameters at R={R}, A={A}")
    for _ in range(refine_rounds):
        val, gamma, w, d = best
        dg = rho / gamma_points
        for gz in np.linspace(max(0.0, gamma - dg), min(rho, gamma + dg), gamma_points + 1):
            wt = w_top(gz)
            got = inner_max(
                gz,
                max(0.0, w - wt / w_points),
                min(wt, w + wt / w_points),
                max(0.0, d - d_top_global / d_points),
                min(d_top_global, d + d_top_global / d_points),
            )
            if got is not None and got[0] < best[0]:
                best = (got[0], gz, got[1], got[2])
    val, gamma, w, d = best
    return GaussBoundResult(
        value=val,
        gamma=gamma,
        w=w,
        d=d,
        L=_gauss_L(R, A, w, d, gamma),
        metadata={
            "grids": {
                "gamma": gamma_points,
                "w": w_points,
                "d": d_points,
                "refine_rounds": refine_rounds,
            },
            "rate_units": "nats",
        },
    )


# ---------------------------------------------------------------------------
# Straight-line (common tangent) construction


@dataclass(frozen=True)
class TangentLine:
    """Common tangent between two sampled convex decreasing curves."""

    left_point: tuple[float, float]
    right_point: tuple[float, float]
    slope: float
    intercept: float

    def value(self, R: float) -> float:
        return self.slope * R + self.intercept


def _check_convex(samples: list[tuple[float, float]], tol: float = 1e-9) -> None:
    for i in range(1, len(samples) - 1):
        x0, y0 = samples[i - 1]
        x1, y1 = samples[i]
        x2, y2 = samples[i + 1]
        # cross-product convexity test (allow slight noise)
        if (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) < -tol:
            raise DomainError(f"curve not convex near sample {i} ({x1}, {y1})")


def straight_line_bound(
    curve_sp: list[tuple[float, float]],
    curve_upper: list[tuple[float, float]],
) -> tuple[TangentLine, list[tuple[float, float]]]:
    """Common tangent of two convex decreasing sampled curves, plus the
    combined piecewise bound min(sp-curve, tangent segment, upper curve).

    The tangent is the unique lower-hull bridge between the two sample
    sets: the edge of the lower convex hull of their union that connects a
    point of one curve to a point of the other.
    """
    sp = sorted(curve_sp)
    up = sorted(curve_upper)
    if len(sp) < 2 or len(up) < 2:
        raise DomainError("need at least two samples per curve")
    _check_convex(sp)
    _check_convex(up)
    tagged = [(x, y, 0) for x, y in sp] + [(x, y, 1) for x, y in up]
    tagged.sort()
    hull: list[tuple[float, float, int]] = []
    for pt in tagged:
        while len(hull) >= 2:
            x0, y0, _ = hull[-2]
            x1, y1, _ = hull[-1]
            if (x1 - x0) * (pt[1] - y1) - (y1 - y0) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    bridges = [
        (hull[i], hull[i + 1])
        for i in range(len(hull) - 1)
        if hull[i][2] != hull[i + 1][2]
    ]
    if len(bridges) != 1:
        raise DomainError(
            f"no unique common tangent: found {len(bridges)} hull bridges"
        )
    (xa, ya, _ta), (xb, yb, _tb) = bridges[0]
    slope = (yb - ya) / (xb - xa)
    line = TangentLine(
        left_point=(xa, ya),
        right_point=(xb, yb),
        slope=slope,
        intercept=ya - slope * xa,
    )

    def interp(samples: list[tuple[float, float]], x: float) -> float | None:
        if x < samples[0][0] or x > samples[-1][0]:
            return None
        for i in range(1, len(samples)):
            x0, y0 = samples[i - 1]
            x1, y1 = samples[i]
            if x <= x1:
                if x1 == x0:
                    return min(y0, y1)
                t = (x - x0) / (x1 - x0)
                return y0 + t * (y1 - y0)
        return samples[-1][1]

    combined = []
    for x in sorted({x for x, _ in sp} | {x for x, _ in up}):
        vals = []
        for curve in (sp, up):
            v = interp(curve, x)
            if v is not None:
                vals.append(v)
        if xa <= x <= xb:
            vals.append(line.value(x))
        combined.append((x, min(vals)))
    return line, combined
