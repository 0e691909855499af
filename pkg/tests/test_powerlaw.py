import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import zeta

from greensum import eigensolve, powerlaw, specfun
from greensum.errors import DomainError, PoleError, QuadratureError
from greensum.powerlaw import PowerLawPotential

P4 = PowerLawPotential(4.0)
NU = 1 / 6


def test_potential_basics():
    assert P4.nu == pytest.approx(NU)
    assert PowerLawPotential.from_nu(0.2).alpha == pytest.approx(3.0)
    assert P4(-2.0) == 16.0
    with pytest.raises(DomainError):
        PowerLawPotential(0.0)
    with pytest.raises(DomainError):
        PowerLawPotential.from_nu(0.5)


def test_connection_formula():
    s = powerlaw.zero_energy_solutions(P4, 1.0)
    residual = s["psi2_minus"] - s["psi2_plus"] - 2 / math.pi * math.sin(math.pi * NU) * s["psi1"]
    assert abs(residual) < 1e-10


def test_small_x_behaviour():
    r1 = powerlaw.zero_energy_solutions(P4, 1e-4)["psi2_plus"] / 1e-4
    r2 = powerlaw.zero_energy_solutions(P4, 1e-5)["psi2_plus"] / 1e-5
    assert r1 == pytest.approx(r2, rel=1e-2)


def test_large_x_decay():
    # sqrt(x/z) exp(-z) = const * x**(-alpha/4) exp(-z), first correction divided out
    def scaled(x):
        z = float(P4.z(x))
        return powerlaw.zero_energy_solutions(P4, x)["psi1"] * math.exp(z) / (1 + (4 * NU**2 - 1) / (8 * z))

    slope = math.log(scaled(4.0) / scaled(3.0)) / math.log(4.0 / 3.0)
    assert slope == pytest.approx(-1.0, abs=2e-3)


def test_zero_energy_domain():
    with pytest.raises(DomainError):
        powerlaw.zero_energy_solutions(P4, 0.0)


@pytest.mark.parametrize("kernel", [powerlaw.greens_even, powerlaw.greens_odd])
def test_greens_symmetry(kernel):
    rng = np.random.default_rng(11)
    for x, xp in rng.uniform(0.05, 4.0, size=(10, 2)):
        assert kernel(P4, x, xp) == kernel(P4, xp, x)


@pytest.mark.parametrize("kernel", [powerlaw.greens_even, powerlaw.greens_odd])
def test_greens_jump(kernel):
    h = 1e-6
    f = lambda x: kernel(P4, x, 1.0)  # noqa: E731
    jump = (f(1.0 + 2 * h) - f(1.0 + h)) / h - (f(1.0 - h) - f(1.0 - 2 * h)) / h
    assert jump == pytest.approx(1.0, abs=1e-4)


def test_greens_no_overflow_far_out():
    g = powerlaw.greens_even(P4, 6.0, 6.0)
    assert math.isfinite(g) and g < 0


def _eigen_series(parity, x, states):
    """sum psi_n(x)**2 / E_n over shooting states, plus a semiclassical tail."""
    E = powerlaw.spectrum(4.0, parity, states)
    prob = eigensolve.EigenProblem.parity(P4, parity, eigensolve.x_max_for(P4, 1.1 * E[-1] + 5))
    head = sum(eigensolve.eigenfunction(prob, i, energy=e)(x) ** 2 / e for i, e in enumerate(E))
    # beyond the last state: WKB levels and the locally averaged psi**2,
    # 1/(p(x) tau(E)) with tau = E**-1/4 int_0^1 du / sqrt(1 - u**4)
    quarter = quad(lambda u: 1 / math.sqrt(1 - u**4), 0, 1)[0]
    off = 0 if parity == "even" else 1
    cut = 10**6
    levels = powerlaw.wkb_eigenvalue(P4, 2 * np.arange(states, cut) + off)
    tail = np.sum(levels**0.25 / (quarter * np.sqrt(levels - x**4)) / levels)
    beta = 4 / 3
    c = levels[0] ** (1 / beta) / (2 * states + off + 0.5)
    rest = (2 * c) ** (-1.25 * beta) * zeta(1.25 * beta, cut + (off + 0.5) / 2) / quarter
    return head + tail + rest


@pytest.mark.parametrize("parity,kernel", [("even", powerlaw.greens_even), ("odd", powerlaw.greens_odd)])
def test_kernel_diagonal_against_eigenfunction_series(parity, kernel):
    assert -kernel(P4, 0.5, 0.5) == pytest.approx(_eigen_series(parity, 0.5, 40), abs=1e-3)


def test_sum_poles():
    with pytest.raises(PoleError):
        powerlaw.sum_even(0.25)
    with pytest.raises(PoleError):
        powerlaw.sum_odd(0.3)
    assert powerlaw.sum_even(0.25 - 1e-9) > 1e6
    assert math.isfinite(powerlaw.sum_alternating(0.3))
    with pytest.raises(DomainError):
        powerlaw.sum_alternating(0.5)


@pytest.mark.parametrize("nu", [0.1, 1 / 6, 0.2, 0.24])
def test_ratio_identities(nu):
    s = powerlaw.sum_alternating(nu)
    even = s * math.sin(3 * math.pi * nu) / math.sin(math.pi * nu) / (2 * math.cos(2 * math.pi * nu))
    odd = s / (2 * math.cos(2 * math.pi * nu))
    assert powerlaw.sum_even(nu) == pytest.approx(even, rel=1e-12)
    assert powerlaw.sum_odd(nu) == pytest.approx(odd, rel=1e-12)
    assert powerlaw.sum_even(nu) - powerlaw.sum_odd(nu) == pytest.approx(s, rel=1e-12)


@pytest.mark.parametrize("parity,formula", [("even", powerlaw.sum_even), ("odd", powerlaw.sum_odd)])
def test_diagonal_sum_matches_gamma_formula(parity, formula):
    assert powerlaw.diagonal_sum(P4, parity) == pytest.approx(formula(NU), rel=1e-10)


@pytest.mark.parametrize("alpha", [4.0, 1.0])
def test_alternating_diagonal_sum(alpha):
    p = PowerLawPotential(alpha)
    assert powerlaw.alternating_diagonal_sum(p) == pytest.approx(powerlaw.sum_alternating(p.nu), abs=1e-6)


def test_diagonal_sum_refuses_divergent_case():
    with pytest.raises(QuadratureError):
        powerlaw.diagonal_sum(PowerLawPotential(2.0), "even")


def test_partner_potential_limits():
    x = 1e-3
    small = -(x**4) + 2 * x**10 / 25
    assert powerlaw.partner_potential(P4, x) == pytest.approx(small, rel=1e-3)
    assert powerlaw.partner_potential(P4, 0.0) == 0.0
    assert powerlaw.partner_potential(P4, -1.3) == powerlaw.partner_potential(P4, 1.3)


def test_partner_potential_large_x():
    xs = np.linspace(5, 10, 6)
    resid = np.abs(powerlaw.partner_potential(P4, xs) - xs**4 + 4 * xs)
    slope = np.polyfit(np.log(xs), np.log(resid), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.15)


@pytest.mark.parametrize("alpha", [2.0, 4.0, 6.0, 8.0])
def test_susy_identity(alpha):
    p = PowerLawPotential(alpha)
    h = 1e-4
    lnpsi = lambda x: -math.log(powerlaw.partner_ground_state(p, x))  # noqa: E731
    worst = 0.0
    for x in np.linspace(0.1, 3.0, 15):
        d2 = (lnpsi(x + h) - 2 * lnpsi(x) + lnpsi(x - h)) / h**2
        worst = max(worst, abs(powerlaw.partner_potential(p, x) - p(x) + 2 * d2))
    assert worst < 1e-5 * max(1.0, 3.0**alpha)


def test_partner_ground_state_origin():
    assert powerlaw.partner_ground_state(P4, 0.0) == pytest.approx(powerlaw.partner_ground_state(P4, 1e-6), rel=1e-5)


def test_partner_greens():
    assert powerlaw.partner_greens_powerlaw(P4, 0.7, 1.4) == powerlaw.partner_greens_powerlaw(P4, 1.4, 0.7)
    assert abs(powerlaw.partner_greens_powerlaw(P4, 1e-8, 1.0)) < 1e-7
    assert powerlaw.partner_greens_powerlaw(P4, 1.0, 1.0) < 0


@pytest.mark.parametrize("x", [30.0, 100.0, 1000.0])
def test_partner_greens_far_diagonal(x):
    # the inner integral concentrates next to x; G'(x, x) -> -1/(2 x**2)
    assert 2 * x * x * powerlaw.partner_greens_powerlaw(P4, x, x) == pytest.approx(-1.0, abs=1e-4)


@pytest.mark.parametrize("alpha", [4.0, 6.0])
def test_partner_diagonal_sum(alpha):
    p = PowerLawPotential(alpha)
    assert powerlaw.partner_diagonal_sum(p) == pytest.approx(powerlaw.sum_even(p.nu), abs=1e-6)


def test_partner_diagonal_direct_quadrature():
    # slower route straight in x as an independent check of the nested z form
    f = lambda x: -powerlaw.partner_greens_powerlaw(P4, x, x, tol=1e-10) if x > 0 else 0.0  # noqa: E731
    head = quad(f, 0, 2, limit=200, epsabs=1e-10)[0]
    # G'(x, x) ~ -1/(2 x**2) far out, so the range must stay open
    tail = quad(f, 2, np.inf, limit=200, epsabs=1e-10)[0]
    assert head + tail == pytest.approx(powerlaw.sum_even(NU), abs=1e-5)


@pytest.mark.parametrize("nu,sign", [(1 / 6, "-"), (1 / 5, "+"), (1 / 6, "+"), (1 / 5, "-")])
def test_bessel_identity(nu, sign):
    r = powerlaw.bessel_identity(nu, sign)
    assert r.residual < 1e-8
    assert r.nested_residual < 1e-5


def test_bessel_identity_near_pole():
    with pytest.raises(QuadratureError):
        powerlaw.bessel_identity(0.25, "-")
    with pytest.raises(ValueError):
        powerlaw.bessel_identity(0.2, "*")


def test_wkb_harmonic_is_exact():
    p = PowerLawPotential(2.0)
    for n in range(6):
        assert powerlaw.wkb_eigenvalue(p, n) == pytest.approx(2 * n + 1, rel=1e-14)
        assert powerlaw.wkb_eigenvalue_as_printed(p, n) == pytest.approx(2 * n + 1, rel=1e-14)


def test_wkb_accuracy_quartic():
    even = powerlaw.spectrum(4.0, "even", 21)
    errs = [abs(powerlaw.wkb_eigenvalue(P4, n) / even[n // 2] - 1) for n in (10, 20, 40)]
    assert errs[1] < 5e-3
    assert errs[2] < 2e-3
    assert errs[0] > errs[1] > errs[2]


def test_wkb_domain():
    with pytest.raises(DomainError):
        powerlaw.wkb_eigenvalue(P4, -1)


def test_figure_data():
    d = powerlaw.emit_figure_data(4)
    assert len(d["x"]) == 801
    assert d["U"][0] == 16.0 and d["U"][-1] == 16.0
    for col in ("U", "U_partner", "groundstate"):
        assert np.array_equal(d[col], d[col][::-1])
    g = d["groundstate"]
    assert int(np.argmax(g)) == 400
    tail = g[np.abs(d["x"]) > 1.5]
    right = tail[tail.size // 2 :]
    assert np.all(np.diff(right) < 0)
    assert len(powerlaw.emit_figure_data(8, samples=101)["x"]) == 101
    assert powerlaw.emit_figure_data(2)["U_partner"][400] == 0.0
    with pytest.raises(DomainError):
        powerlaw.emit_figure_data(3)


def test_partner_spectrum_augmentation():
    base = sorted(powerlaw.spectrum(4.0, "even", 3) + powerlaw.spectrum(4.0, "odd", 3))
    partner = sorted(powerlaw.partner_spectrum(4.0, "even", 3) + powerlaw.partner_spectrum(4.0, "odd", 3))
    assert partner[0] == pytest.approx(0.0, abs=1e-5)
    assert np.allclose(partner[1:], base[:5], atol=1e-5)


def test_shooting_sums_and_parity_resolution():
    sums = powerlaw.shooting_sums(4.0, 40)
    assert sums.alternating == pytest.approx(powerlaw.sum_alternating(NU), abs=1e-4)
    res = powerlaw.resolve_parity(4.0, 40)
    assert res.resolved and res.direct and not res.swapped
    assert sums.even == pytest.approx(powerlaw.sum_even(NU), abs=1e-3)
    assert sums.odd == pytest.approx(powerlaw.sum_odd(NU), abs=1e-3)
