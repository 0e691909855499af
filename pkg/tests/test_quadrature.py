import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greensum.errors import QuadratureError
from greensum.quadrature import (
    integrate_finite,
    integrate_semi_infinite,
    iterated_double_integral,
    separable_double_integral,
)


def test_finite_examples():
    assert integrate_finite(lambda x: x * (1 - x), 0, 1, tol=1e-12).value == pytest.approx(1 / 6, abs=1e-14)
    assert integrate_finite(lambda x: -math.log(x) if x > 0 else 0.0, 0, 1, hints=(0.0,)).value == pytest.approx(1.0, abs=1e-10)
    assert integrate_finite(lambda x: x**2 * (1 - x) ** 2 / 3, 0, 1).value == pytest.approx(1 / 90, abs=1e-14)


def test_result_fields():
    r = integrate_finite(math.sin, 0, math.pi)
    assert r.error_estimate >= 0
    assert r.evaluations > 0
    assert float(r) == r.value


def test_semi_infinite_examples():
    assert integrate_semi_infinite(lambda x: math.exp(-x), 0).value == pytest.approx(1.0, abs=1e-12)
    assert integrate_semi_infinite(lambda x: math.exp(-x * x), 0).value == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-12)


def test_bad_arguments():
    with pytest.raises(ValueError):
        integrate_finite(math.sin, 1, 0)
    with pytest.raises(ValueError):
        integrate_finite(math.sin, 0, 1, tol=0)


def test_non_convergence_raises():
    with pytest.raises(QuadratureError):
        integrate_finite(lambda x: 1 / x if x > 0 else 0.0, 0, 1, tol=1e-12)


def test_hints_split_a_kink():
    f = lambda x: abs(x - 0.3)  # noqa: E731
    assert integrate_finite(f, 0, 1, hints=(0.3,)).value == pytest.approx(0.045 + 0.245, abs=1e-14)


@given(st.floats(min_value=0.05, max_value=0.95))
@settings(max_examples=30)
def test_split_additivity(c):
    f = lambda x: math.exp(x) * math.cos(3 * x)  # noqa: E731
    whole = integrate_finite(f, 0, 1, tol=1e-12)
    parts = integrate_finite(f, 0, c, tol=1e-12).value + integrate_finite(f, c, 1, tol=1e-12).value
    assert whole.value == pytest.approx(parts, abs=1e-11)


def test_separable_examples():
    # brute-force 2-D quadrature of x_<(1 - x_>) gives 1/12
    assert separable_double_integral(lambda x: x, lambda x: 1 - x, 0, 1) == pytest.approx(1 / 12, abs=1e-12)
    assert separable_double_integral(lambda x: 1.0, lambda x: 1.0, 0, 1) == pytest.approx(1.0, abs=1e-12)
    assert separable_double_integral(lambda x: x**2, lambda x: (1 - x) ** 2, 0, 1) == pytest.approx(1 / 90, abs=1e-12)


def test_brute_force_oracle_for_one_twelfth():
    slow = iterated_double_integral(lambda x, y: min(x, y) * (1 - max(x, y)), 0, 1)
    assert slow == pytest.approx(1 / 12, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_separable_matches_iterated(seed):
    rng = np.random.default_rng(seed)
    f = np.polynomial.Polynomial(rng.normal(size=rng.integers(1, 6)))
    g = np.polynomial.Polynomial(rng.normal(size=rng.integers(1, 6)))
    fast = separable_double_integral(f, g, 0, 1, tol=1e-11)
    slow = iterated_double_integral(lambda x, y: f(min(x, y)) * g(max(x, y)), 0, 1, tol=1e-10)
    assert fast == pytest.approx(slow, abs=1e-8)
