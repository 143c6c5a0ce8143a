"""Exact-rational linear programming and the Delsarte bounds.

The simplex solver runs entirely over fractions with Bland's rule, so it
cannot cycle and its optima are exact. Every returned optimum carries a
primal and dual vector, and the solver re-verifies feasibility of both
plus zero duality gap before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError
from .numerics import binomial
from .orthopoly import hahn_matrix, johnson_multiplicity, krawtchouk_matrix

Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class LPInstance:
    """maximize/minimize objective . x  subject to  rows (sense) rhs, x >= 0."""

    objective: Vec
    rows: tuple[Vec, ...]
    senses: tuple[str, ...]
    rhs: Vec
    maximize: bool = True

    def __post_init__(self):
        nv = len(self.objective)
        if not all(len(r) == nv for r in self.rows):
            raise DomainError("constraint row width differs from objective length")
        if len(self.rows) != len(self.senses) or len(self.rows) != len(self.rhs):
            raise DomainError("row/sense/rhs counts differ")
        if any(s not in ("<=", ">=", "=") for s in self.senses):
            raise DomainError("senses must be one of <=, >=, =")

    def to_text(self) -> str:
        out = [("max " if self.maximize else "min ") + " ".join(str(c) for c in self.objective)]
        for row, sense, b in zip(self.rows, self.senses, self.rhs):
            out.append(" ".join(str(a) for a in row) + f" {sense} {b}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LPInstance":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] not in ("max", "min"):
            raise DomainError("objective line must start with max or min")
        obj = tuple(Fraction(t) for t in head[1:])
        rows, senses, rhs = [], [], []
        for ln in lines[1:]:
            toks = ln.split()
            sense_pos = next(i for i, t in enumerate(toks) if t in ("<=", ">=", "="))
            rows.append(tuple(Fraction(t) for t in toks[:sense_pos]))
            senses.append(toks[sense_pos])
            rhs.append(Fraction(toks[sense_pos + 1]))
        return cls(obj, tuple(rows), tuple(senses), tuple(rhs), head[0] == "max")


@dataclass(frozen=True)
class LPSolution:
    status: str  # optimal | infeasible | unbounded
    value: Fraction | None = None
    primal: Vec | None = None
    dual: Vec | None = None


def _simplex_standard(c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]):
    """max c.x s.t. A x <= b, x >= 0 by two-phase tableau simplex, Bland's rule.

    Returns (status, value, x, y) with y the dual of the <= rows.
    """
    m, nv = len(A), len(c)
    ncols = nv + m
    # tableau rows: [A | I | b]; basis starts as the slacks
    T = [[Fraction(x) for x in A[i]] + [Fraction(int(j == i)) for j in range(m)] + [Fraction(b[i])] for i in range(m)]
    basis = [nv + i for i in range(m)]

    def pivot(r: int, col: int) -> None:
        piv = T[r][col]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][col] != 0:
                f = T[i][col]
                T[i] = [a - f * p for a, p in zip(T[i], T[r])]
        basis[r] = col

    def run(cost: list[Fraction]) -> str:
        while True:
            # reduced costs: r_j = cost_j - y . col_j with y from basis rows
            lam = [Fraction(0)] * m
            for i, bv in enumerate(basis):
                lam[i] = cost[bv]
            red = []
            for j in range(ncols):
                rj = cost[j] - sum(lam[i] * T[i][j] for i in range(m))
                red.append(rj)
            enter = next((j for j in range(ncols) if red[j] > 0), None)
            if enter is None:
                return "optimal"
            ratios = [
                (T[i][ncols] / T[i][enter], basis[i], i)
                for i in range(m)
                if T[i][enter] > 0
            ]
            if not ratios:
                return "unbounded"
            _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
            pivot(leave, enter)

    if any(bi < 0 for bi in b):
        # phase 1: auxiliary column x0 with coefficient -1 in every row
        aux = ncols
        for i in range(m):
            T[i].insert(ncols, Fraction(-1))
        ncols += 1
        worst = min(range(m), key=lambda i: T[i][ncols])
        pivot(worst, aux)
        cost1 = [Fraction(0)] * ncols
        cost1[aux] = Fraction(-1)
        status = run(cost1)
        assert status == "optimal"  # phase 1 is bounded by construction
        if aux in basis:
            r = basis.index(aux)
            if T[r][ncols] != 0:
                return "infeasible", None, None, None
            # degenerate: pivot the auxiliary out on any eligible column
            col = next((j for j in range(ncols) if j != aux and T[r][j] != 0), None)
            if col is not None:
                pivot(r, col)
        if aux in basis:
            # row is identically zero; drop it
            r = basis.index(aux)
            del T[r]
            del basis[r]
            m -= 1
        for row in T:
            del row[aux]
        ncols -= 1

    cost = list(c) + [Fraction(0)] * m
    status = run(cost)
    if status == "unbounded":
        return "unbounded", None, None, None
    x = [Fraction(0)] * nv
    for i, bv in enumerate(basis):
        if bv < nv:
            x[bv] = T[i][ncols]
    # dual: y_i = cost . column of slack i in the basis inverse image
    lam = [cost[bv] for bv in basis]
    y = [
        sum(lam[i] * T[i][nv + j] for i in range(m)) if nv + j < ncols else Fraction(0)
        for j in range(len(b))
    ]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return "optimal", value, x, y


def simplex_solve(instance: LPInstance) -> LPSolution:
    """Solve an LPInstance exactly; the optimum is certificate-checked."""
    sign = 1 if instance.maximize else -1
    c = [sign * v for v in instance.objective]
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    rowmap: list[list[tuple[int, int]]] = [[] for _ in instance.rows]
    for i, (row, sense, rb) in enumerate(zip(instance.rows, instance.senses, instance.rhs)):
        if sense in ("<=", "="):
            rowmap[i].append((len(A), +1))
            A.append(list(row))
            b.append(rb)
        if sense in (">=", "="):
            rowmap[i].append((len(A), -1))
            A.append([-v for v in row])
            b.append(-rb)
    status, value, x, y = _simplex_standard(c, A, b)
    if status != "optimal":
        return LPSolution(status)
    value = sign * value
    dual = []
    for i in range(len(instance.rows)):
        di = Fraction(0)
        for idx, s in rowmap[i]:
            di += s * y[idx]
        dual.append(sign * di)
    sol = LPSolution("optimal", value, tuple(x), tuple(dual))
    _verify_certificate(instance, sol)
    return sol


def _verify_certificate(instance: LPInstance, sol: LPSolution) -> None:
    """Exact primal/dual feasibility and zero duality gap; raises on failure."""
    x, y = sol.primal, sol.dual
    if any(xi < 0 for xi in x):
        raise AssertionError("primal negativity")
    for row, sense, rb in zip(instance.rows, instance.senses, instance.rhs):
        lhs = sum(a * xi for a, xi in zip(row, x))
        if sense == "<=" and lhs > rb:
            raise AssertionError("primal infeasible (<= row)")
        if sense == ">=" and lhs < rb:
            raise AssertionError("primal infeasible (>= row)")
        if sense == "=" and lhs != rb:
            raise AssertionError("primal infeasible (= row)")
    # dual feasibility: sign conventions depend on direction
    sgn = 1 if instance.maximize else -1
    for i, (sense, yi) in enumerate(zip(instance.senses, y)):
        if sense == "<=" and sgn * yi < 0:
            raise AssertionError("dual sign violation on <= row")
        if sense == ">=" and sgn * yi > 0:
            raise AssertionError("dual sign violation on >= row")
    nv = len(instance.objective)
    for j in range(nv):
        coln = sum(y[i] * instance.rows[i][j] for i in range(len(instance.rows)))
        if instance.maximize:
            if coln < instance.objective[j]:
                raise AssertionError("dual infeasible column")
        else:
            if coln > instance.objective[j]:
                raise AssertionError("dual infeasible column")
    gap = sum(y[i] * instance.rhs[i] for i in range(len(instance.rows))) - sol.value
    if gap != 0:
        raise AssertionError(f"nonzero duality gap {gap}")


# ---------------------------------------------------------------------------
# Delsarte linear programs


@dataclass(frozen=True)
class DelsarteLPResult:
    """Exact LP bound with primal distribution and the dual polynomial."""

    space: str
    value: Fraction
    distribution: dict[int, Fraction]
    poly_coeffs: Vec  # f_0 = 1, then f_k for k = 1..top in the zonal basis
    normalization: str


def delsarte_lp_hamming(n: int, d: int, full: bool = False):
    """The Delsarte LP bound on codes in H^n with minimum distance d.

    Solved in distribution form: maximize 1 + sum_{i=d}^n A_i subject to
    A_i >= 0 and sum_i A_i K_k(i) >= -C(n,k) for k = 1..n. The dual
    simplex certificate yields the optimal polynomial f with f_0 = 1,
    f_k = y_k >= 0 and f(i) <= 0 for i >= d, so the value equals the
    classical inf f(0)/f_0 formulation by LP duality.
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    if n > 128:
        raise DomainError("configured limit n <= 128")
    K = krawtchouk_matrix(n)
    idx = list(range(d, n + 1))
    obj = tuple(Fraction(1) for _ in idx)
    rows = tuple(
        tuple(Fraction(-K[k][i]) for i in idx) for k in range(1, n + 1)
    )
    rhs = tuple(Fraction(binomial(n, k)) for k in range(1, n + 1))
    inst = LPInstance(obj, rows, ("<=",) * n, rhs, maximize=True)
    sol = simplex_solve(inst)
    assert sol.status == "optimal"  # feasible (A=0) and bounded (A_i <= C(n,i))
    value = 1 + sol.value
    if not full:
        return value
    dist = {i: v for i, v in zip(idx, sol.primal) if v != 0}
    coeffs = (Fraction(1),) + tuple(sol.dual)
    return DelsarteLPResult(
        space=f"hamming({n})",
        value=value,
        distribution=dist,
        poly_coeffs=coeffs,
        normalization="krawtchouk K_k(0)=C(n,k)",
    )


def delsarte_lp_johnson(n: int, v: int, d_half: int, full: bool = False):
    """The Delsarte LP bound on codes in the Johnson space J(n, v).

    Johnson distances are even; d_half = d/2 indexes the distribution, so
    the bound applies to codes of minimum Hamming distance 2*d_half inside
    the weight-v slice. Hahn constraints use the dual-eigenvalue
    normalization Q_k(0) = C(n,k) - C(n,k-1).
    """
    if not (1 <= d_half <= v and 2 * v <= n):
        raise DomainError(f"need 1 <= d_half <= v <= n/2, got ({n}, {v}, {d_half})")
    Q = hahn_matrix(n, v)
    idx = list(range(d_half, v + 1))
    obj = tuple(Fraction(1) for _ in idx)
    rows = tuple(tuple(-Q[k][i] for i in idx) for k in range(1, v + 1))
    rhs = tuple(Fraction(johnson_multiplicity(n, k)) for k in range(1, v + 1))
    inst = LPInstance(obj, rows, ("<=",) * v, rhs, maximize=True)
    sol = simplex_solve(inst)
    assert sol.status == "optimal"
    value = 1 + sol.value
    if not full:
        return value
    dist = {2 * i: val for i, val in zip(idx, sol.primal) if val != 0}
    coeffs = (Fraction(1),) + tuple(sol.dual)
    return DelsarteLPResult(
        space=f"johnson({n},{v})",
        value=value,
        distribution=dist,
        poly_coeffs=coeffs,
        normalization="hahn Q_k(0)=C(n,k)-C(n,k-1)",
    )


def elias_translate(
    n: int, d: int, johnson_bound: Callable[[int], Fraction]
) -> Fraction:
    """Upper bound on A(H^n; n, d) from Johnson-space bounds:

    C(n,v) A(H^n; n, d) <= 2^n A(J(n,v); n, d), minimized over v <= n/2.
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    best = None
    for v in range(1, n // 2 + 1):
        jb = Fraction(johnson_bound(v))
        cand = Fraction(1 << n) * jb / binomial(n, v)
        if best is None or cand < best:
            best = cand
    if best is None:
        raise DomainError("no admissible weight v; need n >= 2")
    return best


def elias_lp_bound(n: int, d: int) -> Fraction:
    """elias_translate wired to the Johnson LP at Johnson distance ceil(d/2).

    Weights too small to hold two words at Hamming distance d contribute
    the trivial bound 1.
    """
    d_half = (d + 1) // 2

    def jb(v: int) -> Fraction:
        if v < d_half:
            return Fraction(1)
        return delsarte_lp_johnson(n, v, d_half)

    return elias_translate(n, d, jb)
