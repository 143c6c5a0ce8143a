import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polybound.errors import BracketError, ConvergenceError, DomainError
from polybound.numerics import (
    binomial,
    bisect_root,
    entropy,
    integrate,
    inverse_entropy,
    log2_binomial,
    log2_fraction,
    log2_int,
    mixed_entropy,
)


class TestEntropy:
    def test_maximum(self):
        assert entropy(0.5, 2) == 1.0

    def test_boundary_convention(self):
        assert entropy(0.0, 2) == 0.0
        assert entropy(1.0, 2) == 0.0

    def test_high_precision_value(self):
        # frozen from a 30-digit mpmath evaluation of H2(0.11)
        assert entropy(0.11, 2) == pytest.approx(0.499915958164528, abs=1e-14)

    def test_natural_default_base(self):
        assert entropy(0.5) == pytest.approx(math.log(2), abs=1e-15)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            entropy(-0.1, 2)
        with pytest.raises(DomainError):
            entropy(1.1, 2)
        with pytest.raises(DomainError):
            entropy(0.3, 1.0)

    def test_symmetry_seeded_sample(self):
        rng = random.Random(1234)
        for _ in range(1000):
            x = rng.random()
            assert abs(entropy(x, 2) - entropy(1 - x, 2)) < 1e-14

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    def test_symmetry_property(self, x):
        assert abs(entropy(x, 2) - entropy(1 - x, 2)) < 1e-14


class TestMixedEntropy:
    @given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
    def test_diagonal_is_entropy(self, x):
        assert mixed_entropy(x, x, 2) == pytest.approx(entropy(x, 2), abs=1e-13)

    def test_closed_form(self):
        # 0.5*2 + 0.5*log2(4/3)
        assert mixed_entropy(0.5, 0.25, 2) == pytest.approx(1.207518749639422, abs=1e-13)

    def test_single_term(self):
        assert mixed_entropy(0.0, 0.3, 2) == pytest.approx(0.5145731728297583, abs=1e-13)

    def test_domain_error_on_boundary_y(self):
        with pytest.raises(DomainError):
            mixed_entropy(0.5, 0.0, 2)
        with pytest.raises(DomainError):
            mixed_entropy(0.5, 1.0, 2)


class TestInverseEntropy:
    def test_boundaries(self):
        assert inverse_entropy(1.0, 2) == 0.5
        assert inverse_entropy(0.0, 2) == 0.0

    def test_half(self):
        x = inverse_entropy(0.5, 2)
        assert x == pytest.approx(0.110027864438359551, abs=1e-10)
        assert abs(entropy(x, 2) - 0.5) < 1e-12

    def test_forward_roundtrip_grid(self):
        for i in range(1001):
            y = i / 1000
            x = inverse_entropy(y, 2)
            assert abs(entropy(x, 2) - y) < 1e-10


class TestBinomial:
    def test_small(self):
        assert binomial(7, 2) == 21

    def test_out_of_range(self):
        assert binomial(5, 7) == 0
        assert binomial(5, -1) == 0

    def test_big_exact(self):
        assert binomial(60, 30) == 118264581564861424

    def test_pascal_rule_all_n_up_to_200(self):
        for n in range(1, 201):
            for k in range(n + 1):
                assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)

    def test_log2_binomial(self):
        assert log2_binomial(60, 30) == pytest.approx(math.log2(binomial(60, 30)), rel=1e-12)


class TestLog2Big:
    def test_log2_int_matches_small(self):
        for x in (1, 2, 3, 1023, 10**15):
            assert log2_int(x) == pytest.approx(math.log2(x), rel=1e-14)

    def test_log2_int_huge(self):
        x = 3**2000
        assert log2_int(x) == pytest.approx(2000 * math.log2(3), rel=1e-12)

    def test_log2_fraction(self):
        assert log2_fraction(Fraction(3**500, 2**300)) == pytest.approx(
            500 * math.log2(3) - 300, rel=1e-12
        )


class TestBisect:
    def test_linear(self):
        assert bisect_root(lambda x: x - 1, 0, 2, 1e-9) == pytest.approx(1.0, abs=1e-9)

    def test_entropy_equation(self):
        r = bisect_root(lambda x: entropy(x, 2) - 0.5, 0, 0.5, 1e-12)
        assert r == pytest.approx(0.110027864438359551, abs=1e-10)

    def test_cube_root(self):
        r = bisect_root(lambda x: x**3 - 2, 1, 2, 1e-9)
        assert r == pytest.approx(1.2599210498948732, abs=1e-8)

    def test_bracket_failure(self):
        with pytest.raises(BracketError):
            bisect_root(lambda x: x * x + 1, -1, 1, 1e-9)


CLOSED_FORM_INTEGRALS = [
    (lambda x: 1.0, 0.0, 1.0, 1.0),
    (lambda x: x, 0.0, 1.0, 0.5),
    (lambda x: x * x, 0.0, 2.0, 8.0 / 3.0),
    (lambda x: x**3, -1.0, 1.0, 0.0),
    (lambda x: x**5, 0.0, 1.0, 1.0 / 6.0),
    (lambda x: math.exp(x), 0.0, 1.0, math.e - 1.0),
    (lambda x: math.sin(x), 0.0, math.pi, 2.0),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, math.pi / 4.0),
    (lambda x: math.sqrt(x), 0.0, 1.0, 2.0 / 3.0),
    (lambda x: 1.0 / math.sqrt(x), 0.0, 1.0, 2.0),
    (lambda x: 1.0 / math.sqrt(1.0 - x), 0.0, 1.0, 2.0),
    (lambda x: x ** (-1.0 / 3.0), 0.0, 1.0, 1.5),
    (lambda x: math.log(x), 0.0, 1.0, -1.0),
    (lambda x: math.log2(1.0 - x), 0.0, 0.5, -0.22134752044448170),
    (lambda x: x * math.log(x), 0.0, 1.0, -0.25),
    (lambda x: 1.0 / math.sqrt(x * (1.0 - x)), 0.0, 1.0, math.pi),
    (lambda x: math.cos(x), 0.0, 1.0, math.sin(1.0)),
    (lambda x: 1.0 / (x + 1.0), 0.0, 1.0, math.log(2.0)),
    (lambda x: math.sqrt(1.0 - x * x), -1.0, 1.0, math.pi / 2.0),
    (lambda x: math.exp(-x), 0.0, 50.0, 1.0 - math.exp(-50.0)),
]


class TestIntegrate:
    @pytest.mark.parametrize("f,a,b,expect", CLOSED_FORM_INTEGRALS)
    def test_closed_forms(self, f, a, b, expect):
        tol = 1e-8
        assert integrate(f, a, b, tol) == pytest.approx(expect, abs=5 * tol)

    def test_empty_interval(self):
        assert integrate(lambda x: 1.0, 2.0, 2.0) == 0.0

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            integrate(lambda x: 1.0, 1.0, 0.0)

    def test_divergent_integral_raises(self):
        with pytest.raises(ConvergenceError):
            integrate(lambda x: 1.0 / x, 0.0, 1.0, 1e-10)

    def test_scipy_cross_check(self):
        quad = pytest.importorskip("scipy.integrate").quad
        for f, a, b, _ in CLOSED_FORM_INTEGRALS[:8]:
            mine = integrate(f, a, b, 1e-10)
            ref, _err = quad(f, a, b)
            assert mine == pytest.approx(ref, abs=1e-8)
