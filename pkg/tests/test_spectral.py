import math

import numpy as np
import pytest

from greensum import spectral
from greensum.boxlab import BoundaryCase, alternating_f1, closed_form_g
from greensum.errors import BoundaryConditionError
from greensum.spectral import DETERMINED, KernelSeries, convolve, recur_down, recur_up, sum_rule


@pytest.fixture(scope="module")
def case1():
    return BoundaryCase.of(1).spectrum(10_000)


@pytest.fixture(scope="module")
def case4():
    return BoundaryCase.of(4).spectrum(10_000)


def test_case1_series_point(case1):
    assert KernelSeries(case1, -2)(0.25, 0.5) == pytest.approx(0.125, abs=1e-6)


def test_dirichlet_endpoint_vanishes(case1):
    for k in (-1, -2, -4):
        assert KernelSeries(case1, k)(0.0, 0.37) == 0.0


def test_case4_series_point(case4):
    assert KernelSeries(case4, -2)(0.3, 0.3) == pytest.approx(1 / 3 - 0.3 + 0.09, abs=1e-4)


def test_symmetry_is_exact(case1):
    s = KernelSeries(case1, -1)
    rng = np.random.default_rng(3)
    for x, xp in rng.uniform(0, 1, size=(20, 2)):
        assert s(x, xp) == s(xp, x)


def test_partial_sums_increase(case1):
    s = KernelSeries(case1, -2)
    sums = [s.partial(0.4, 0.4, J) for J in (1, 10, 100, 1000, 10_000)]
    assert all(b >= a for a, b in zip(sums, sums[1:]))


def test_alternating_weights():
    spec = BoundaryCase.of(1).spectrum(4)
    s = KernelSeries(spec, -1, alternating=True)
    x, xp = 0.2, 0.3
    terms = [(-1) ** j / ((j + 1) * math.pi) * 2 * math.sin((j + 1) * math.pi * x) * math.sin((j + 1) * math.pi * xp)
             for j in range(4)]
    assert s(x, xp) == pytest.approx(sum(terms), rel=1e-14)


def test_spectrum_validation():
    with pytest.raises(ValueError):
        spectral.Spectrum(0, 1, np.array([2.0, 1.0]), None)
    with pytest.raises(ValueError):
        KernelSeries(BoundaryCase.of(1).spectrum(5), -2, J=6)


def test_gram_is_identity():
    g = BoundaryCase.of(3).spectrum(10).gram(5)
    assert np.max(np.abs(g - np.eye(5))) < 1e-8


def test_convolve_q1():
    g1 = lambda x, y: closed_form_g(1, -1, x, y)  # noqa: E731
    c = convolve(g1, g1, 0.0, 1.0)
    assert c(0.25, 0.5) == pytest.approx(0.125, abs=1e-6)


def test_convolve_q6_step_functions():
    f1 = lambda x, y: alternating_f1(2, x, y)  # noqa: E731
    c = convolve(f1, f1, 0.0, 1.0)
    for x, xp in [(0.2, 0.6), (0.7, 0.4), (0.5, 0.5)]:
        assert c(x, xp) == pytest.approx(1 - max(x, xp), abs=1e-8)


def test_convolve_truncated_orthonormality():
    spec = BoundaryCase.of(1).spectrum(8)
    g0 = KernelSeries(spec, 0)
    g2 = KernelSeries(spec, -2)
    c = convolve(g0, g2, 0.0, 1.0, tol=1e-11)
    assert c(0.3, 0.8) == pytest.approx(g2(0.3, 0.8), abs=1e-9)


def test_convolve_associativity():
    g1 = lambda x, y: closed_form_g(1, -1, x, y)  # noqa: E731
    g2 = lambda x, y: closed_form_g(1, -2, x, y)  # noqa: E731
    inner = convolve(g1, g1, 0.0, 1.0, tol=1e-8)
    left = convolve(inner, g2, 0.0, 1.0, tol=1e-7)
    right = convolve(g2, inner, 0.0, 1.0, tol=1e-7)
    assert left(0.3, 0.6) == pytest.approx(right(0.3, 0.6), abs=1e-6)


def test_recur_up_examples():
    up1 = recur_up(lambda x: x**2 * (1 - x) ** 2 / 3)
    up2 = recur_up(lambda x: (1 - x) ** 2 * (2 * x + 1) / 3, anchor_value=1.0)
    for x in (0.1, 0.35, 0.8):
        assert up1(x) == pytest.approx(x * (1 - x), abs=1e-7)
        assert up2(x) == pytest.approx(1 - x, abs=1e-7)
    assert recur_up(lambda x: 0.0)(0.4) == 0.0


def test_recur_up_with_potential():
    # g = sin(x)^2 sums to an exact bracket when U = 1
    diag = lambda x: math.sin(x) ** 2  # noqa: E731
    up = recur_up(diag, U=lambda x: 1.0, dU=lambda x: 0.0)
    expect = lambda x: 0.25 * (-2 * math.cos(2 * x) + 4 * diag(x) - (-2 + 0.0))  # noqa: E731
    assert up(0.7) == pytest.approx(expect(0.7), abs=1e-6)


def test_recur_down_case1():
    sol = recur_down(lambda x: x * (1 - x), value=0.0, slope=0.0, curvature=DETERMINED, far=(1.0, "value", 0.0))
    assert sol.curvature == pytest.approx(2 / 3, abs=1e-9)
    for x in np.linspace(0, 1, 11):
        assert sol(x) == pytest.approx(x**2 * (1 - x) ** 2 / 3, abs=1e-7)


def test_recur_down_case2():
    sol = recur_down(lambda x: 1 - x, anchor=1.0, value=0.0, slope=0.0, far=(0.0, "slope", 0.0))
    assert sol.curvature == pytest.approx(2.0, abs=1e-9)
    for x in np.linspace(0, 1, 11):
        assert sol(x) == pytest.approx((1 - x) ** 2 * (2 * x + 1) / 3, abs=1e-7)


def test_recur_down_zero():
    sol = recur_down(lambda x: 0.0, curvature=0.0)
    assert sol(0.6) == 0.0


def test_recur_down_matches_free_solver_with_zero_potential():
    diag = lambda x: x * (1 - x)  # noqa: E731
    free = recur_down(diag, value=0.0, slope=0.0, curvature=2 / 3)
    ode = recur_down(diag, U=lambda x: 0.0, dU=lambda x: 0.0, value=0.0, slope=0.0, curvature=2 / 3)
    assert ode(0.7) == pytest.approx(free(0.7), abs=1e-10)


def test_recur_down_boundary_errors():
    with pytest.raises(BoundaryConditionError):
        recur_down(lambda x: x, value=DETERMINED, slope=DETERMINED)
    with pytest.raises(BoundaryConditionError):
        recur_down(lambda x: x, curvature=DETERMINED)
    with pytest.raises(ValueError):
        recur_down(lambda x: x, curvature=DETERMINED, far=(1.0, "torsion", 0.0))


def test_round_trip():
    down = recur_down(lambda x: x * (1 - x), value=0.0, slope=0.0, far=(1.0, "value", 0.0))
    up = recur_up(down)
    for x in (0.2, 0.5, 0.9):
        assert up(x) == pytest.approx(x * (1 - x), abs=1e-6)


def test_sum_rule_examples():
    assert sum_rule(lambda x: x * (1 - x), 0, 1) == pytest.approx(1 / 6, abs=1e-12)
    assert sum_rule(lambda x: 1 - x, 0, 1) == pytest.approx(0.5, abs=1e-12)
    assert sum_rule(lambda x: 1 / 45 - x * x * (1 - x) ** 2 / 3, 0, 1) == pytest.approx(1 / 90, abs=1e-12)
    assert sum_rule(lambda x: math.exp(-x), 0, math.inf) == pytest.approx(1.0, abs=1e-10)
