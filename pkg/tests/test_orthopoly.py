import math
from fractions import Fraction

import pytest

from polybound.errors import DomainError
from polybound.numerics import binomial, entropy, log2_fraction
from polybound.orthopoly import (
    extreme_zeros_jacobi,
    hahn,
    hahn_exponent,
    hahn_matrix,
    hahn_zero_abscissa,
    jacobi,
    jacobi_exponent,
    jacobi_largest_zero_limit,
    jacobi_signed_log,
    johnson_multiplicity,
    johnson_weight,
    krawtchouk,
    krawtchouk_exponent,
    krawtchouk_matrix,
    krawtchouk_sum,
    krawtchouk_zero_abscissa,
    smallest_zero_krawtchouk,
)


def gram_schmidt_hahn(n: int, v: int) -> list[list[Fraction]]:
    """Independent construction: orthogonalize 1, x, x^2, ... on {0..v}
    against mu(i) = C(v,i) C(n-v,i)/C(n,v), then rescale to Q_k(0) = m_k."""
    mu = [johnson_weight(n, v, i) for i in range(v + 1)]
    basis: list[list[Fraction]] = []
    for k in range(v + 1):
        vec = [Fraction(i**k) for i in range(v + 1)]
        for b in basis:
            num = sum(m * a * c for m, a, c in zip(mu, vec, b))
            den = sum(m * c * c for m, c in zip(mu, b))
            vec = [a - (num / den) * c for a, c in zip(vec, b)]
        basis.append(vec)
    out = []
    for k, b in enumerate(basis):
        scale = Fraction(johnson_multiplicity(n, k)) / b[0]
        out.append([scale * c for c in b])
    return out


class TestKrawtchouk:
    def test_value_at_zero_is_binomial(self):
        assert krawtchouk(7, 2, 0) == 21
        for n in range(1, 12):
            for k in range(n + 1):
                assert krawtchouk(n, k, 0) == binomial(n, k)

    def test_linear_vanishes_at_half(self):
        assert krawtchouk(4, 1, 2) == 0

    def test_explicit_sum_example(self):
        # independent alternating-sum evaluation fixes K_3(3) on H^7
        assert krawtchouk_sum(7, 3, 3) == -3
        assert krawtchouk(7, 3, 3) == -3

    def test_recurrence_equals_sum_all_small(self):
        for n in range(1, 17):
            for k in range(n + 1):
                for x in range(n + 1):
                    assert krawtchouk(n, k, x) == krawtchouk_sum(n, k, x)

    def test_rational_argument(self):
        x = Fraction(3, 2)
        assert krawtchouk(6, 2, x) == krawtchouk_sum(6, 2, x)

    def test_matrix_agrees(self):
        n = 9
        K = krawtchouk_matrix(n)
        for k in range(n + 1):
            for i in range(n + 1):
                assert K[k][i] == krawtchouk(n, k, i)

    def test_orthogonality_small(self):
        for n in range(1, 11):
            K = krawtchouk_matrix(n)
            for k in range(n + 1):
                for l in range(k, n + 1):
                    s = sum(binomial(n, i) * K[k][i] * K[l][i] for i in range(n + 1))
                    expect = (1 << n) * binomial(n, k) if k == l else 0
                    assert s == expect

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            krawtchouk(5, 6, 0)
        with pytest.raises(DomainError):
            krawtchouk(5, 2, 6)


class TestSmallestZero:
    def test_linear(self):
        assert smallest_zero_krawtchouk(8, 1) == 4.0
        assert smallest_zero_krawtchouk(7, 1) == 3.5

    def test_quadratic_closed_form(self):
        # K_2 root (n - sqrt(n))/2 for n = 7
        assert smallest_zero_krawtchouk(7, 2) == pytest.approx(
            (7 - math.sqrt(7)) / 2, rel=1e-8
        )

    def test_asymptotic_band(self):
        z = smallest_zero_krawtchouk(100, 10)
        assert abs(z / 100 - krawtchouk_zero_abscissa(0.1)) < 0.05

    def test_sign_change_bracket(self):
        # value just below the root is positive, just above negative
        z = smallest_zero_krawtchouk(12, 3)
        lo = Fraction(int(z * 1000) - 2, 1000)
        hi = Fraction(int(z * 1000) + 2, 1000)
        assert krawtchouk(12, 3, lo) > 0 > krawtchouk(12, 3, hi)


class TestHahn:
    def test_constant(self):
        for i in range(4):
            assert hahn(8, 3, 0, i) == 1

    def test_normalization(self):
        assert hahn(8, 3, 1, 0) == 7  # m_1 = C(8,1) - C(8,0)
        for n, v in [(8, 3), (10, 5), (12, 4)]:
            for k in range(v + 1):
                assert hahn(n, v, k, 0) == johnson_multiplicity(n, k)

    def test_gram_schmidt_example(self):
        # value fixed by the independent Gram-Schmidt oracle
        assert hahn(8, 3, 2, 1) == Fraction(4, 3)

    @pytest.mark.parametrize("n,v", [(4, 2), (6, 3), (8, 3), (8, 4), (10, 5), (12, 6)])
    def test_recurrence_equals_gram_schmidt(self, n, v):
        gs = gram_schmidt_hahn(n, v)
        for k in range(v + 1):
            for i in range(v + 1):
                assert hahn(n, v, k, i) == gs[k][i]

    def test_weighted_orthogonality(self):
        for n, v in [(6, 3), (8, 4), (10, 5), (12, 5)]:
            Q = hahn_matrix(n, v)
            mu = [johnson_weight(n, v, i) for i in range(v + 1)]
            for k in range(v + 1):
                for l in range(k, v + 1):
                    s = sum(mu[i] * Q[k][i] * Q[l][i] for i in range(v + 1))
                    expect = johnson_multiplicity(n, k) if k == l else 0
                    assert s == expect

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            hahn(8, 5, 1, 0)  # v > n/2
        with pytest.raises(DomainError):
            hahn(8, 3, 4, 0)  # k > v


class TestJacobi:
    def test_constant(self):
        assert jacobi(0.7, 1.3, 0, 0.25) == 1.0

    def test_odd_symmetric_vanishes(self):
        assert jacobi(1, 1, 1, 0.0) == 0.0

    def test_degree_two_closed_form(self):
        # P_2^{1/2,1/2}(x) expanded from the recurrence by hand
        assert jacobi(0.5, 0.5, 2, 0.3) == pytest.approx(-0.4, abs=1e-14)

    def test_value_at_one(self):
        # P_k(1) = C(k + alpha, k)
        assert jacobi(2.0, 0.5, 3, 1.0) == pytest.approx(
            (3 + 2) * (2 + 2) * (1 + 2) / 6.0, rel=1e-12
        )

    def test_scipy_cross_check(self):
        sp = pytest.importorskip("scipy.special")
        for alpha, beta, k, x in [
            (0.5, 0.5, 5, 0.3),
            (2.0, 1.0, 8, -0.7),
            (0.0, 0.0, 10, 0.9),
            (3.5, 0.25, 12, 0.1),
        ]:
            assert jacobi(alpha, beta, k, x) == pytest.approx(
                float(sp.eval_jacobi(k, alpha, beta, x)), rel=1e-9
            )

    def test_signed_log_matches_plain(self):
        for alpha, beta, k, x in [(1.0, 2.0, 6, 0.4), (0.5, 0.5, 9, -0.8)]:
            sgn, lg = jacobi_signed_log(alpha, beta, k, x)
            v = jacobi(alpha, beta, k, x)
            assert math.copysign(1.0, v) == sgn
            assert lg == pytest.approx(math.log(abs(v)), rel=1e-10)

    def test_signed_log_no_overflow(self):
        sgn, lg = jacobi_signed_log(800.0, 800.0, 800, 0.99)
        assert math.isfinite(lg) and sgn != 0


class TestJacobiZeros:
    def test_degree_one_legendre(self):
        assert extreme_zeros_jacobi(0, 0, 1) == (0.0, 0.0)

    def test_legendre_limits(self):
        lo, hi = extreme_zeros_jacobi(0, 0, 60)
        assert hi == pytest.approx(1.0, abs=0.01)
        assert lo == pytest.approx(-1.0, abs=0.01)
        assert jacobi_largest_zero_limit(0, 0) == 1.0

    def test_scipy_cross_check(self):
        sp = pytest.importorskip("scipy.special")
        for a, b, k in [(1, 1, 50), (0.5, 0.2, 30), (0, 1, 40)]:
            lo, hi = extreme_zeros_jacobi(a, b, k)
            roots = sp.roots_jacobi(k, a * k, b * k)[0]
            assert hi == pytest.approx(float(roots[-1]), abs=1e-9)
            assert lo == pytest.approx(float(roots[0]), abs=1e-9)

    def test_limit_formula_is_the_turning_point(self):
        # the exponent integrand's discriminant must vanish exactly at the
        # limit abscissa: A(x)^2 = 4 (1 - x^2)(1 + a + b)
        for a, b in [(1.0, 1.0), (0.3, 0.8), (0.0, 2.0), (2.5, 0.0)]:
            x1 = jacobi_largest_zero_limit(a, b)
            A = a + (a + b) * x1 - b
            assert A * A == pytest.approx(4 * (1 - x1 * x1) * (1 + a + b), abs=1e-10)

    def test_zero_approaches_limit_from_inside(self):
        x1 = jacobi_largest_zero_limit(1, 1)
        gaps = []
        for k in (25, 50, 100):
            _, hi = extreme_zeros_jacobi(1, 1, k)
            gaps.append(x1 - hi)
        assert all(g > 0 for g in gaps)
        assert gaps[0] > gaps[1] > gaps[2]


class TestKrawtchoukExponent:
    def test_left_endpoint_is_entropy(self):
        for tau in (0.1, 0.25, 0.4):
            assert krawtchouk_exponent(tau, 0.0) == pytest.approx(entropy(tau, 2), abs=1e-12)

    def test_endpoint_singularity_is_finite(self):
        v = krawtchouk_exponent(0.25, 0.5 - math.sqrt(3) / 4)
        assert math.isfinite(v)

    def test_matches_exact_polynomial(self):
        n = 600
        for tau, xi in [(0.1, 0.1), (0.2, 0.05), (0.3, 0.02)]:
            k, x = round(tau * n), round(xi * n)
            exact = log2_fraction(krawtchouk(n, k, x)) / n
            assert krawtchouk_exponent(tau, xi) == pytest.approx(exact, abs=0.02)

    def test_domain_error_past_zero(self):
        with pytest.raises(DomainError):
            krawtchouk_exponent(0.25, 0.5)


class TestHahnExponent:
    def test_left_endpoint_is_entropy(self):
        assert hahn_exponent(0.3, 0.1, 0.0) == pytest.approx(entropy(0.1, 2), abs=1e-12)

    def test_empty_zero_free_region(self):
        assert hahn_zero_abscissa(0.5, 0.5) == 0.0
        with pytest.raises(DomainError):
            hahn_exponent(0.5, 0.5, 0.01)

    def test_matches_exact_polynomial(self):
        n = 600
        for alpha, beta, xi in [(0.3, 0.1, 0.05), (0.4, 0.2, 0.03)]:
            v, k, i = round(alpha * n), round(beta * n), round(xi * n)
            exact = log2_fraction(hahn(n, v, k, i)) / n
            assert hahn_exponent(alpha, beta, xi) == pytest.approx(exact, abs=0.03)


class TestJacobiExponent:
    def test_value_at_one(self):
        for a, b in [(1.0, 1.0), (0.5, 0.2)]:
            head = (1 + a) * entropy(a / (1 + a))
            assert jacobi_exponent(a, b, 1.0) == pytest.approx(head, abs=1e-12)

    def test_legendre_closed_form_beyond_one(self):
        # (1/k) ln P_k(x) -> arccosh(x) for x > 1
        for x in (1.002, 1.05, 1.5):
            assert jacobi_exponent(0, 0, x) == pytest.approx(math.acosh(x), abs=1e-8)

    def test_matches_exact_polynomial(self):
        k = 300
        for a, b, x in [(1.0, 1.0, 0.95), (0.5, 0.2, 0.9)]:
            _sgn, lg = jacobi_signed_log(a * k, b * k, k, x)
            assert jacobi_exponent(a, b, x) == pytest.approx(lg / k, abs=0.02)

    def test_left_branch_reflection(self):
        assert jacobi_exponent(0.5, 0.2, -0.95) == pytest.approx(
            jacobi_exponent(0.2, 0.5, 0.95), abs=1e-12
        )

    def test_oscillatory_region_rejected(self):
        with pytest.raises(DomainError):
            jacobi_exponent(1, 1, 0.5)
