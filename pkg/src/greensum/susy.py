"""Green's functions from two solutions, SUSY partners and second-order sum rules.

Given a nodeless solution ``psi`` of ``psi'' = (U - eps) psi`` that meets the
boundary condition at ``a``, the companion ``chi = psi * int_b^x psi**-2``
meets the one at ``b`` and

    G(x, x'; eps) = psi(x_<) chi(x_>),     W[psi, chi] = 1.

The partner potential ``U' = U - 2 (ln psi)''`` has ``phi' = 1 / psi`` as a
solution at ``eps`` and Green's function

    G'(x, x'; eps) = -phi'(x) phi'(x') int_a^{x_<} psi**2.

Both diagonals feed the second-order sum rule

    sum_j (eps - gamma_j**2)**-2 = -2 int G**2 G' = -2 int G'**2 G.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, QuadratureError
from .quadrature import (
    integrate_finite,
    integrate_semi_infinite,
    separable_double_integral,
)

__all__ = [
    "SeedSolution",
    "SeparableKernel",
    "greens_two_solution",
    "partner_greens",
    "base_kernel",
    "partner_kernel",
    "SusyPair",
    "SecondOrderSum",
    "second_order_sum",
    "partner_eigenfunction",
    "box_partner_eigenfunction",
    "box_seed",
    "box_four_way",
    "oscillator_seed",
    "oscillator_greens_diag",
    "oscillator_partner_diag",
    "OscillatorReport",
    "oscillator_suite",
    "oscillator_log_slope",
    "is_nodeless",
    "is_normalizable",
]

_H = 1e-4


def _fd(f, x, h=_H):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _integral(f, lo, hi, tol=1e-12):
    """Oriented ``int_lo^hi f``, semi-infinite when either end is infinite."""
    if lo == hi:
        return 0.0
    if hi < lo:
        return -_integral(f, hi, lo, tol)
    if math.isinf(hi):
        return integrate_semi_infinite(f, lo, tol=tol).value
    return integrate_finite(f, lo, hi, tol=tol).value


@dataclass(frozen=True)
class SeedSolution:
    """Nodeless solution ``psi`` of ``psi'' = (U - epsilon) psi``.

    ``dpsi`` is optional (central differences otherwise).  ``U`` is the base
    potential, needed for the partner potential.
    """

    epsilon: float
    psi: object
    dpsi: object = None
    U: object = None

    def slope(self, x):
        return self.dpsi(x) if self.dpsi is not None else _fd(self.psi, x)

    def log_slope(self, x):
        return self.slope(x) / self.psi(x)

    def residual(self, x, h=1e-4):
        """``psi''/psi - U + eps`` by central differences."""
        p = self.psi
        d2 = (p(x + h) - 2.0 * p(x) + p(x - h)) / (h * h)
        return d2 / p(x) - self.U(x) + self.epsilon


class SeparableKernel:
    """``K(x, x') = lower(x_<) * upper(x_>)`` on ``[a, b]`` with known factor slopes."""

    def __init__(self, lower, upper, dlower, dupper, a, b):
        self.lower = lower
        self.upper = upper
        self.dlower = dlower
        self.dupper = dupper
        self.a = a
        self.b = b

    def __call__(self, x, xp):
        lo, hi = (x, xp) if x <= xp else (xp, x)
        return self.lower(lo) * self.upper(hi)

    def diag(self, x):
        return self.lower(x) * self.upper(x)

    def wronskian(self, x):
        return self.lower(x) * self.dupper(x) - self.dlower(x) * self.upper(x)

    def jump(self, xp, h=1e-6):
        """``d/dx K`` just right of ``x'`` minus just left, by one-sided differences."""
        k0 = self(xp, xp)
        right = (self(xp + h, xp) - k0) / h
        left = (k0 - self(xp - h, xp)) / h
        return right - left

    def double_integral(self, tol=1e-10):
        """``int int K(x, y) K(y, x)`` through the separable reduction."""
        return separable_double_integral(
            lambda t: self.lower(t) ** 2, lambda t: self.upper(t) ** 2, self.a, self.b, tol=tol
        )


def base_kernel(seed, a, b, inv_sq=None):
    """Green's function of ``U`` at ``seed.epsilon`` as a :class:`SeparableKernel`.

    ``inv_sq(x)`` may supply ``int_b^x psi**-2`` in closed form; by default it
    is integrated numerically.
    """
    psi = seed.psi
    if inv_sq is None:
        inv_sq = lambda x: _integral(lambda z: psi(z) ** -2, b, x)  # noqa: E731

    def upper(x):
        return psi(x) * inv_sq(x)

    def dupper(x):
        return seed.slope(x) * inv_sq(x) + 1.0 / psi(x)

    return SeparableKernel(psi, upper, seed.slope, dupper, a, b)


def partner_kernel(seed, a, b, sq=None):
    """Green's function of the partner ``U'`` at ``seed.epsilon``, built from ``phi' = 1/psi``.

    ``sq(x)`` may supply ``int_a^x psi**2`` in closed form.
    """
    psi = seed.psi
    if sq is None:
        sq = lambda x: _integral(lambda z: psi(z) ** 2, a, x)  # noqa: E731

    def phi(x):
        return 1.0 / psi(x)

    def dphi(x):
        return -seed.slope(x) / psi(x) ** 2

    def lower(x):
        return -phi(x) * sq(x)

    def dlower(x):
        return -dphi(x) * sq(x) - phi(x) * psi(x) ** 2

    return SeparableKernel(lower, phi, dlower, dphi, a, b)


def greens_two_solution(seed, domain, x, xp):
    """``G(x, x'; eps) = psi(x) psi(x') int_b^{x_>} psi**-2``."""
    a, b = domain
    return base_kernel(seed, a, b)(x, xp)


def partner_greens(seed, domain, x, xp):
    """``G'(x, x'; eps) = -(1/psi(x)) (1/psi(x')) int_a^{x_<} psi**2``."""
    a, b = domain
    return partner_kernel(seed, a, b)(x, xp)


@dataclass(frozen=True)
class SecondOrderSum:
    via_partner: float
    via_base: float

    @property
    def spread(self):
        return abs(self.via_partner - self.via_base)


def second_order_sum(G_diag, Gp_diag, domain, tol=1e-11, hints=()):
    """Both one-dimensional forms ``-2 int G**2 G'`` and ``-2 int G'**2 G``."""
    a, b = domain

    def run(f):
        if math.isinf(b):
            return integrate_semi_infinite(f, a, tol=tol, hints=hints).value
        return integrate_finite(f, a, b, tol=tol, hints=hints).value

    first = -2.0 * run(lambda x: G_diag(x) ** 2 * Gp_diag(x))
    second = -2.0 * run(lambda x: Gp_diag(x) ** 2 * G_diag(x))
    return SecondOrderSum(first, second)


class SusyPair:
    """Base potential, seed and the partner ``U' = U - 2 (ln psi)''``.

    With ``(ln psi)'' = U - eps - (psi'/psi)**2`` the partner needs only the
    seed's first derivative: ``U' = -U + 2 eps + 2 (psi'/psi)**2``.
    """

    def __init__(self, seed, a, b):
        if seed.U is None:
            raise ValueError("seed must carry its base potential U")
        self.seed = seed
        self.a = a
        self.b = b
        self.U = seed.U

    def partner_potential(self, x):
        return -self.U(x) + 2.0 * self.seed.epsilon + 2.0 * self.seed.log_slope(x) ** 2

    def susy_residual(self, x, h=1e-4):
        """``U' - U + 2 (ln psi)''`` with the second derivative by central differences."""
        lp = lambda t: math.log(abs(self.seed.psi(t)))  # noqa: E731
        d2 = (lp(x + h) - 2.0 * lp(x) + lp(x - h)) / (h * h)
        return self.partner_potential(x) - self.U(x) + 2.0 * d2

    def partner_ground_state(self, x):
        return 1.0 / self.seed.psi(x)

    def partner_normalizable(self):
        return is_normalizable(self.partner_ground_state, self.a, self.b)


def partner_eigenfunction(psi_j, dpsi_j, gamma_j, seed):
    """Partner eigenfunction ``(gamma_j**2 - eps)**-1/2 [psi_j' - (ln psi)' psi_j]``."""
    gap = gamma_j**2 - seed.epsilon
    if gap <= 0.0:
        raise DomainError("partner map needs gamma_j**2 > epsilon")
    scale = 1.0 / math.sqrt(gap)

    def mapped(x):
        return scale * (dpsi_j(x) - seed.log_slope(x) * psi_j(x))

    return mapped


def box_partner_eigenfunction(j, x):
    """Closed form for the box with seed ``psi = x``: ``-sqrt(2) t j1(t)``, ``t = j pi x``."""
    t = j * math.pi * np.asarray(x, dtype=float)
    value = -math.sqrt(2.0) * t * specfun.spherical_j1(t)
    return float(value) if np.ndim(value) == 0 else value


def box_seed():
    """``psi = x`` at ``eps = 0`` in the Dirichlet box."""
    return SeedSolution(0.0, lambda x: x, lambda x: 1.0, lambda x: 0.0)


def box_four_way(tol=1e-11):
    """``sum (j pi)**-4`` four ways: two double integrals and two single ones."""
    seed = box_seed()
    base = base_kernel(seed, 0.0, 1.0, inv_sq=lambda x: 1.0 - 1.0 / x)
    partner = partner_kernel(seed, 0.0, 1.0, sq=lambda x: x**3 / 3.0)
    single = second_order_sum(base.diag, partner.diag, (0.0, 1.0), tol=tol)
    return {
        "double_base": base.double_integral(tol=tol),
        "double_partner": partner.double_integral(tol=tol),
        "single_partner": single.via_partner,
        "single_base": single.via_base,
    }


def oscillator_seed():
    """``psi = exp(x**2/2)`` at ``eps = -1`` for ``U = x**2``; even at the origin."""

    def psi(x):
        # saturates to inf far out, so 1/psi and psi**-2 go cleanly to zero
        with np.errstate(over="ignore"):
            return float(np.exp(0.5 * x * x))

    return SeedSolution(-1.0, psi, lambda x: x * psi(x), lambda x: x * x)


def oscillator_greens_diag(x):
    """``G(x, x; -1) = -exp(x**2) int_x^inf exp(-z**2) dz = -(sqrt(pi)/2) erfcx(x)``."""
    return -0.5 * math.sqrt(math.pi) * specfun.erfcx(x)


def oscillator_partner_diag(x):
    """``G'(x, x; -1) = -exp(-x**2) int_0^x exp(y**2) dy = -F(x)``, F the Dawson integral."""
    return -specfun.dawson(x)


@dataclass(frozen=True)
class OscillatorReport:
    ss1: float
    ss2: float
    ss3: float
    series: float

    @property
    def residuals(self):
        return {"ss1": abs(self.ss1 - self.ss3), "ss2": abs(self.ss2 - self.ss3)}


def oscillator_suite(tol=1e-11):
    """Second-order sum rule for the even oscillator states at ``eps = -1``.

    ``ss1 = -2 int G**2 G'`` and ``ss2 = -2 int G'**2 G`` over ``[0, inf)``,
    ``ss3 = pi**2/32`` and ``series`` the direct sum over ``(4j + 2)**-2``.
    """
    pair = second_order_sum(oscillator_greens_diag, oscillator_partner_diag, (0.0, math.inf), tol=tol)
    j = np.arange(2_000_000, dtype=float)
    series = float(np.sum(1.0 / (4.0 * j + 2.0) ** 2)[()]) + 1.0 / (16.0 * (j[-1] + 1.5))
    return OscillatorReport(pair.via_partner, pair.via_base, math.pi**2 / 32.0, series)


def oscillator_log_slope(n_lo=1_000, n_hi=100_000, points=21):
    """Least-squares slope of ``sum_{n<N} 1/(2n+1)`` against ``ln N`` on ``[n_lo, n_hi]``."""
    partial = np.cumsum(1.0 / (2.0 * np.arange(n_hi) + 1.0))
    ns = np.unique(np.geomspace(n_lo, n_hi, points).astype(int))
    slope, _ = np.polyfit(np.log(ns), partial[ns - 1], 1)
    return float(slope)


def is_nodeless(psi, a, b, samples=1000):
    """True when ``psi`` keeps one sign on ``samples`` interior points of ``(a, b)``."""
    xs = np.linspace(a, b, samples + 2)[1:-1]
    vals = np.array([psi(x) for x in xs])
    return bool(np.all(vals > 0) or np.all(vals < 0))


def is_normalizable(f, a, b, growth=1e3):
    """Decide whether ``int_a^b f**2`` is finite.

    The integral is taken over ``[a + d, b - d]`` (or ``[a + d, R]`` for an
    infinite ``b``) for a shrinking sequence of cut-offs; it is called finite
    when successive values settle instead of growing.
    """
    cuts = [1e-2, 1e-4, 1e-6, 1e-8]
    values = []
    for d in cuts:
        hi = 1.0 / d if math.isinf(b) else b - d
        marks = a + np.geomspace(1e-3, hi - a, 24)
        try:
            v = integrate_finite(lambda t: f(t) ** 2, a + d, hi, tol=1e-10, hints=marks).value
        except (QuadratureError, OverflowError, ZeroDivisionError):
            return False
        if not math.isfinite(v):
            return False
        values.append(v)
    steps = np.abs(np.diff(values))
    if values[-1] > growth * max(values[0], 1e-300):
        return False
    return bool(steps[-1] <= 1e-6 * max(abs(values[-1]), 1.0))
