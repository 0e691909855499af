"""The single-soliton reflectionless well and its Lax-hierarchy densities.

For ``U = -2 alpha**2 sech(alpha x)**2`` there is one bound state,
``psi0 = sqrt(alpha/2) sech(alpha x)`` at ``E = -alpha**2``, and

    U = -4 alpha psi0**2,      L_k = -2 (2 alpha)**(2k+1) psi0**2.

Each ``L_k`` integrates to ``-2 (2 alpha)**(2k+1)`` and consecutive members
obey ``L_{k+1}' = (d3 - 4 U d - 2 U') L_k``.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import eigensolve
from .errors import DomainError
from .quadrature import integrate_finite

__all__ = [
    "SolitonSpectrum",
    "soliton_potential",
    "lax_diag",
    "lax_integral",
    "lax_recursion_residual",
    "lax_prefactor",
    "line_integral",
    "LineIntegral",
    "bound_states",
]


def _check_alpha(alpha):
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError("alpha must be positive and finite")


def _sech2(alpha, x):
    return 1.0 / np.cosh(alpha * np.asarray(x, dtype=float)) ** 2


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SolitonSpectrum:
    """Bound states at ``-alpha_j**2``.

    Several ``alphas`` can be stored, but only the single-soliton member has
    explicit eigenfunctions here.
    """

    alphas: tuple

    def __post_init__(self):
        if len(self.alphas) == 0:
            raise DomainError("need at least one bound state")
        for a in self.alphas:
            _check_alpha(a)

    @classmethod
    def single(cls, alpha):
        return cls((float(alpha),))

    @property
    def energies(self):
        return tuple(-a * a for a in self.alphas)

    def _alpha(self):
        if len(self.alphas) != 1:
            raise NotImplementedError("multi-soliton eigenfunctions are not constructed")
        return self.alphas[0]

    def psi(self, x):
        a = self._alpha()
        return _scalar(math.sqrt(a / 2.0) / np.cosh(a * np.asarray(x, dtype=float)))

    def potential(self, x):
        return _scalar(-4.0 * self._alpha() * np.asarray(self.psi(x)) ** 2)


def soliton_potential(alpha, x):
    """``-2 alpha**2 sech(alpha x)**2``."""
    _check_alpha(alpha)
    return _scalar(-2.0 * alpha**2 * _sech2(alpha, x))


def lax_diag(k, alpha, x):
    """``L_k(x) = -2 (2 alpha)**(2k+1) psi0(x)**2``; ``k = 0`` is the potential."""
    if k < 0 or int(k) != k:
        raise DomainError("k must be a non-negative integer")
    _check_alpha(alpha)
    return _scalar(-((2.0 * alpha) ** (2 * k + 1)) * alpha * _sech2(alpha, x))


def lax_integral(k, alpha):
    """Closed value ``-2 (2 alpha)**(2k+1)`` of ``int L_k dx``."""
    return -2.0 * (2.0 * alpha) ** (2 * k + 1)


@dataclass(frozen=True)
class LineIntegral:
    value: float
    error_estimate: float
    tail_bound: float
    cutoff: float


def line_integral(f, alpha, tol=1e-12):
    """``int f`` over ``|x| <= 30/alpha`` for a sech**2-decaying ``f``.

    ``tail_bound`` bounds the dropped part relative to the scale of ``f(0)``:
    ``int_{L}^{inf} sech**2(alpha x) dx < 2 exp(-2 alpha L) / alpha``, twice.
    """
    _check_alpha(alpha)
    cut = 30.0 / alpha
    res = integrate_finite(lambda x: float(f(x)), -cut, cut, tol=tol, hints=(0.0,))
    tail = 4.0 * math.exp(-2.0 * alpha * cut) / alpha * abs(float(f(0.0)))
    return LineIntegral(res.value, res.error_estimate, tail, cut)


def _central(f, x, h):
    # fourth-order central stencils for the first and third derivatives
    f1, f2, f3 = f(x + h) - f(x - h), f(x + 2 * h) - f(x - 2 * h), f(x + 3 * h) - f(x - 3 * h)
    d1 = (8 * f1 - f2) / (12 * h)
    d3 = (-13 * f1 + 8 * f2 - f3) / (8 * h**3)
    return d1, d3


def lax_recursion_residual(k, alpha, x, h=1e-3):
    """``L_{k+1}' - (L_k''' - 4 U L_k' - 2 U' L_k)`` by central differences."""
    x = np.asarray(x, dtype=float)
    lk = lambda t: lax_diag(k, alpha, t)
    lk1 = lambda t: lax_diag(k + 1, alpha, t)
    u = lambda t: soliton_potential(alpha, t)
    d1, d3 = _central(lk, x, h)
    lhs, _ = _central(lk1, x, h)
    du, _ = _central(u, x, h)
    return _scalar(lhs - (d3 - 4.0 * u(x) * d1 - 2.0 * du * lk(x)))


def _ipow(n):
    # i**n as a Gaussian integer (re, im)
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[n % 4]


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def lax_prefactor(k):
    """Coefficient of ``alpha**(2k+1)`` in ``-2 (-2i)**(2k+1) (i alpha)**(2k+1)``.

    Exact Gaussian-integer arithmetic; the result is ``(-2 * 2**(2k+1), 0)``.
    """
    n = 2 * k + 1
    coeff = (-2 * (-2) ** n, 0)
    coeff = _gmul(coeff, _ipow(n))
    return _gmul(coeff, _ipow(n))


def bound_states(alpha, x_max=None, h=1e-3):
    """Shooting eigenvalues below zero of the sech**2 well on the line.

    Even and odd sectors are solved on the half line; returns the sorted
    negative eigenvalues.
    """
    _check_alpha(alpha)
    if x_max is None:
        x_max = 20.0 / alpha
    pot = lambda x: soliton_potential(alpha, x)
    found = []
    for parity in ("even", "odd"):
        prob = eigensolve.EigenProblem.parity(pot, parity, x_max, h=h)
        n = eigensolve.count_below(prob, 0.0)
        if n:
            found.extend(eigensolve.solve_spectrum(prob, n, tol=1e-12).values)
    return sorted(float(v) for v in found)
