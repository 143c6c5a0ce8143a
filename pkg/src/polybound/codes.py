"""Explicit binary codes and their distance-distribution machinery.

Everything here is exact: distance distributions are rational vectors,
the MacWilliams transform is an exact matrix-vector product in the
Krawtchouk basis, and the positivity / identity checks are zero-tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ._cliquesearch import max_code_search
from .errors import DomainError
from .numerics import binomial
from .orthopoly import krawtchouk_matrix


@dataclass(frozen=True)
class BinaryCode:
    """A set of distinct binary words of common length n (stored as ints)."""

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("code length must be positive")
        if len(set(self.words)) != len(self.words):
            raise DomainError("duplicate codewords are not allowed")
        if not self.words:
            raise DomainError("a code must contain at least one word")
        for w in self.words:
            if not 0 <= w < (1 << self.n):
                raise DomainError(f"word {w} does not fit in length {self.n}")

    @property
    def size(self) -> int:
        return len(self.words)

    def distance(self) -> int | None:
        """Minimum pairwise Hamming distance; None for a single word."""
        ws = self.words
        if len(ws) < 2:
            return None
        return min(
            (ws[i] ^ ws[j]).bit_count()
            for i in range(len(ws))
            for j in range(i + 1, len(ws))
        )

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BinaryCode":
        words = []
        n = None
        for idx, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if set(line) - {"0", "1"}:
                raise DomainError(f"line {idx}: invalid character in {line!r}")
            if n is None:
                n = len(line)
            elif len(line) != n:
                raise DomainError(
                    f"line {idx}: length {len(line)} differs from first word length {n}"
                )
            w = int(line, 2)
            if w in words:
                raise DomainError(f"line {idx}: duplicate codeword {line}")
            words.append(w)
        if n is None:
            raise DomainError("no codewords found")
        return cls(n, tuple(words))

    @classmethod
    def from_file(cls, path) -> "BinaryCode":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_strings(fh)

    def to_strings(self) -> list[str]:
        return [format(w, f"0{self.n}b") for w in self.words]


def repetition_code(n: int) -> BinaryCode:
    return BinaryCode(n, (0, (1 << n) - 1))


def even_weight_code(n: int) -> BinaryCode:
    return BinaryCode(n, tuple(w for w in range(1 << n) if w.bit_count() % 2 == 0))


def hamming_7_4() -> BinaryCode:
    """The [7,4] Hamming code from its standard generator matrix."""
    gens = (0b1000011, 0b0100101, 0b0010110, 0b0001111)
    return linear_code_from_generators(7, gens)


def linear_code_from_generators(n: int, gens: Sequence[int]) -> BinaryCode:
    words = {0}
    for g in gens:
        words |= {w ^ g for w in words}
    return BinaryCode(n, tuple(sorted(words)))


def random_code(n: int, size: int, rng: random.Random) -> BinaryCode:
    if size > 1 << n:
        raise DomainError("requested size exceeds the space")
    return BinaryCode(n, tuple(rng.sample(range(1 << n), size)))


def random_linear_code(n: int, k: int, rng: random.Random) -> BinaryCode:
    """Random k-dimensional linear code (generators drawn until independent)."""
    while True:
        gens = [rng.randrange(1, 1 << n) for _ in range(k)]
        code = linear_code_from_generators(n, gens)
        if code.size == 1 << k:
            return code


@dataclass(frozen=True)
class DistanceDistribution:
    """The vector (A_0 .. A_n): per-word average counts of ordered pairs."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise DomainError("distribution must have n+1 entries")

    @property
    def mass(self) -> Fraction:
        return sum(self.values, Fraction(0))


@dataclass(frozen=True)
class DualDistribution:
    """MacWilliams transform (A'_0 .. A'_n) of a distance distribution."""

    n: int
    values: tuple[Fraction, ...]


def distance_distribution(code: BinaryCode) -> DistanceDistribution:
    counts = [0] * (code.n + 1)
    ws = code.words
    for i, a in enumerate(ws):
        for b in ws[i + 1 :]:
            counts[(a ^ b).bit_count()] += 2
    counts[0] = len(ws)
    m = Fraction(1, len(ws))
    return DistanceDistribution(code.n, tuple(m * c for c in counts))


def macwilliams(dist: DistanceDistribution, size: Fraction | int) -> DualDistribution:
    """A'_k = (1/M) sum_i A_i K_k(i), exactly."""
    size = Fraction(size)
    if size != dist.mass:
        raise DomainError(f"size {size} does not match distribution mass {dist.mass}")
    K = krawtchouk_matrix(dist.n)
    vals = tuple(
        sum((dist.values[i] * K[k][i] for i in range(dist.n + 1)), Fraction(0)) / size
        for k in range(dist.n + 1)
    )
    return DualDistribution(dist.n, vals)


def delsarte_feasible(
    dist: DistanceDistribution, size: Fraction | int
) -> tuple[bool, int | None]:
    """Check the Delsarte inequalities A'_k >= 0; witness index on failure."""
    dual = macwilliams(dist, size)
    for k, v in enumerate(dual.values):
        if v < 0:
            return False, k
    return True, None


@dataclass(frozen=True)
class PolynomialInBasis:
    """Degree <= n polynomial as Krawtchouk coefficients plus point values."""

    n: int
    coeffs: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Sequence[Fraction | int]) -> "PolynomialInBasis":
        cs = tuple(Fraction(c) for c in coeffs) + (Fraction(0),) * (n + 1 - len(coeffs))
        if len(cs) != n + 1:
            raise DomainError("more coefficients than degree allows")
        K = krawtchouk_matrix(n)
        vals = tuple(
            sum((cs[k] * K[k][i] for k in range(n + 1)), Fraction(0))
            for i in range(n + 1)
        )
        return cls(n, cs, vals)

    @classmethod
    def from_values(cls, values: Sequence[Fraction | int]) -> "PolynomialInBasis":
        return expand_in_krawtchouk(values)


def expand_in_krawtchouk(values: Sequence[Fraction | int]) -> PolynomialInBasis:
    """Coefficients f_k = (2^n C(n,k))^-1 sum_i C(n,i) f(i) K_k(i), exactly.

    Round-trips: re-evaluating the coefficient vector reproduces the input.
    """
    n = len(values) - 1
    if n < 0:
        raise DomainError("empty value vector")
    vals = tuple(Fraction(v) for v in values)
    K = krawtchouk_matrix(n)
    two_n = Fraction(1 << n)
    coeffs = tuple(
        sum((binomial(n, i) * vals[i] * K[k][i] for i in range(n + 1)), Fraction(0))
        / (two_n * binomial(n, k))
        for k in range(n + 1)
    )
    return PolynomialInBasis(n, coeffs, vals)


def fourier_identity_check(
    f: PolynomialInBasis, code: BinaryCode
) -> tuple[Fraction, Fraction]:
    """Both sides of |C| sum_k f_k A'_k = sum_i f(i) A_i, each computed
    independently and exactly."""
    if f.n != code.n:
        raise DomainError("polynomial and code lengths differ")
    dist = distance_distribution(code)
    dual = macwilliams(dist, code.size)
    lhs = code.size * sum(
        (f.coeffs[k] * dual.values[k] for k in range(f.n + 1)), Fraction(0)
    )
    rhs = sum((f.values[i] * dist.values[i] for i in range(f.n + 1)), Fraction(0))
    return lhs, rhs


@dataclass(frozen=True)
class WeightFunction:
    """A weight g on distances {0..n} with a tag naming its origin."""

    n: int
    values: tuple[Fraction, ...]
    tag: str = "custom"

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise DomainError("weight function must be defined on all of {0..n}")

    @classmethod
    def from_callable(cls, n: int, g: Callable[[int], Fraction | int], tag="custom"):
        return cls(n, tuple(Fraction(g(i)) for i in range(n + 1)), tag)


def undetected_error_weight(n: int, p: Fraction) -> WeightFunction:
    """g(i) = p^i (1-p)^(n-i); F is then the undetected-error probability."""
    p = Fraction(p)
    return WeightFunction(
        n, tuple(p**i * (1 - p) ** (n - i) for i in range(n + 1)), tag="undetected-error"
    )


def zero_weight(n: int) -> WeightFunction:
    """g = 0 beyond distance 0 (the Delsarte LP specialization); g(0) = 1."""
    return WeightFunction(n, (Fraction(1),) + (Fraction(0),) * n, tag="zero")


def binomial_moment_weight(n: int, w: int) -> WeightFunction:
    """g(i) = C(n-i, n-w), the binomial-moment weights."""
    return WeightFunction(
        n, tuple(Fraction(binomial(n - i, n - w)) for i in range(n + 1)), tag="binomial-moment"
    )


def theorem1_bound(
    f: PolynomialInBasis,
    g: WeightFunction,
    dist: DistanceDistribution,
    size: Fraction | int,
) -> tuple[Fraction, Fraction]:
    """(F, M f_0 - f(0)) where F = sum_{i>=1} g(i) A_i.

    Preconditions are enforced exactly: f_k >= 0 for k >= 1 and
    f(i) <= g(i) everywhere; for any genuine code F >= M f_0 - f(0).
    """
    n = dist.n
    if f.n != n or g.n != n:
        raise DomainError("mismatched lengths")
    for k in range(1, n + 1):
        if f.coeffs[k] < 0:
            raise DomainError(f"coefficient f_{k} = {f.coeffs[k]} is negative")
    for i in range(n + 1):
        if f.values[i] > g.values[i]:
            raise DomainError(f"f({i}) = {f.values[i]} exceeds g({i}) = {g.values[i]}")
    size = Fraction(size)
    F = sum((g.values[i] * dist.values[i] for i in range(1, n + 1)), Fraction(0))
    bound = size * f.coeffs[0] - f.values[0]
    return F, bound


def undetected_error_prob(dist: DistanceDistribution, p) -> Fraction | float:
    """P_ue = sum_{i>=1} A_i p^i (1-p)^(n-i); exact when p is rational."""
    if not 0 <= p <= Fraction(1, 2):
        raise DomainError(f"crossover probability must lie in [0, 1/2], got {p}")
    n = dist.n
    if isinstance(p, (Fraction, int)):
        p = Fraction(p)
        return sum(
            (dist.values[i] * p**i * (1 - p) ** (n - i) for i in range(1, n + 1)),
            Fraction(0),
        )
    return float(
        sum(float(dist.values[i]) * p**i * (1 - p) ** (n - i) for i in range(1, n + 1))
    )


def binomial_moment(dist: DistanceDistribution, w: int) -> Fraction:
    """F_w = sum_{i=0}^w C(n-i, n-w) A_i, including the i = 0 term."""
    n = dist.n
    if not 0 <= w <= n:
        raise DomainError(f"moment order must lie in 0..n, got {w}")
    return sum(
        (Fraction(binomial(n - i, n - w)) * dist.values[i] for i in range(w + 1)),
        Fraction(0),
    )


def bruteforce_max_code(
    n: int, d: int, node_budget: int = 50_000_000
) -> tuple[int, BinaryCode]:
    """Exact A(H^n; n, d) by symmetry-reduced maximum-clique search.

    Distance is understood as minimum distance >= d (the usual table
    convention, and what the clique graph encodes). Raises ResourceError
    if the search exceeds the node budget.
    """
    if n > 10:
        raise DomainError(f"exact search is configured for n <= 10, got {n}")
    size, words = max_code_search(n, d, node_budget=node_budget)
    return size, BinaryCode(n, tuple(words))
