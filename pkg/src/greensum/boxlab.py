"""Free particle in the unit box under the four wall combinations.

Case 1: psi(0) = psi(1) = 0,    gamma_j = j pi,          sqrt(2) sin
Case 2: psi'(0) = psi(1) = 0,   gamma_j = (j - 1/2) pi,  sqrt(2) cos
Case 3: psi(0) = psi'(1) = 0,   gamma_j = (j - 1/2) pi,  sqrt(2) sin
Case 4: psi'(0) = psi'(1) = 0,  gamma_j = j pi,          sqrt(2) cos  (j >= 1; the
        constant zero mode is left out of every k != 0 series)

The closed forms for ``g_{-1}`` are logarithms of trigonometric ratios;
``g_{-2}`` is piecewise quadratic and ``g_{-4}`` is known on the diagonal.
The alternating series ``f_{-1}`` are logarithms for Cases 1 and 4 and step
functions for Cases 2 and 3.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularPointError
from .quadrature import integrate_finite
from .spectral import KernelSeries, Spectrum, second_derivative

__all__ = [
    "BoundaryCase",
    "closed_form_g",
    "greens",
    "alternating_f1",
    "half_wave_sum",
    "half_wave_partial",
    "IDENTITIES",
    "IdentityReport",
    "identity_check",
    "default_grid",
    "case4_weak_check",
    "diagonal_sum",
    "series_sum",
    "SUM_RULES",
]

_PI = math.pi


class BoundaryCase(enum.Enum):
    DIRICHLET_DIRICHLET = 1
    NEUMANN_DIRICHLET = 2
    DIRICHLET_NEUMANN = 3
    NEUMANN_NEUMANN = 4

    @classmethod
    def of(cls, case):
        """Accept a member or its case number 1..4."""
        if isinstance(case, cls):
            return case
        try:
            return cls(int(case))
        except (ValueError, TypeError):
            raise DomainError(f"unknown box case {case!r}; expected 1..4") from None

    @property
    def half_integer(self):
        return self in (BoundaryCase.NEUMANN_DIRICHLET, BoundaryCase.DIRICHLET_NEUMANN)

    @property
    def kind(self):
        return "cos" if self in (BoundaryCase.NEUMANN_DIRICHLET, BoundaryCase.NEUMANN_NEUMANN) else "sin"

    @property
    def walls(self):
        """Boundary conditions at (0, 1) as used by the eigensolver."""
        left = "neumann" if self.kind == "cos" else "dirichlet"
        right = "neumann" if self in (BoundaryCase.DIRICHLET_NEUMANN, BoundaryCase.NEUMANN_NEUMANN) else "dirichlet"
        return left, right

    def gamma(self, j):
        j = np.asarray(j, dtype=float)
        return (j - 0.5) * _PI if self.half_integer else j * _PI

    def spectrum(self, J=10_000):
        gammas = self.gamma(np.arange(1, J + 1))
        trig = np.cos if self.kind == "cos" else np.sin

        def basis(x, count):
            return math.sqrt(2.0) * trig(np.multiply.outer(gammas[:count], np.asarray(x, dtype=float)))

        return Spectrum(0.0, 1.0, gammas, basis)


def _check_square(x, xp):
    if np.any((np.asarray(x) < 0) | (np.asarray(x) > 1) | (np.asarray(xp) < 0) | (np.asarray(xp) > 1)):
        raise DomainError("box kernels are defined on the unit square only")


def _g_minus_two(case, x, xp):
    lo = np.minimum(x, xp)
    hi = np.maximum(x, xp)
    if case is BoundaryCase.DIRICHLET_DIRICHLET:
        return lo * (1.0 - hi)
    if case is BoundaryCase.NEUMANN_DIRICHLET:
        return 1.0 - hi
    if case is BoundaryCase.DIRICHLET_NEUMANN:
        return lo
    return 1.0 / 3.0 - hi + 0.5 * (x * x + xp * xp)


def _g_minus_one(case, x, xp):
    if np.any(np.asarray(x) == np.asarray(xp)):
        raise SingularPointError("g_{-1} has a logarithmic singularity at x = x'")
    d = np.abs(x - xp)
    s = x + xp
    if case is BoundaryCase.DIRICHLET_DIRICHLET:
        return np.log(np.sin(s * _PI / 2) / np.sin(d * _PI / 2)) / _PI
    if case is BoundaryCase.NEUMANN_DIRICHLET:
        return np.log(1.0 / (np.tan(s * _PI / 4) * np.tan(d * _PI / 4))) / _PI
    if case is BoundaryCase.DIRICHLET_NEUMANN:
        return np.log(np.tan(s * _PI / 4) / np.tan(d * _PI / 4)) / _PI
    return -np.log(4.0 * np.sin(d * _PI / 2) * np.sin(s * _PI / 2)) / _PI


def _g_minus_four_diag(case, x):
    if case is BoundaryCase.DIRICHLET_DIRICHLET:
        return x * x * (1.0 - x) ** 2 / 3.0
    if case is BoundaryCase.NEUMANN_DIRICHLET:
        return (1.0 - x) ** 2 * (2.0 * x + 1.0) / 3.0
    if case is BoundaryCase.DIRICHLET_NEUMANN:
        return x * x - 2.0 * x**3 / 3.0
    return 1.0 / 45.0 - x * x * (1.0 - x) ** 2 / 3.0


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


def closed_form_g(case, k, x, xp):
    """Closed form of ``g_k(x, x')`` for ``k`` in ``{-1, -2, -4}``.

    ``k = -4`` is known on the diagonal only; off-diagonal requests raise
    :class:`DomainError`.
    """
    case = BoundaryCase.of(case)
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    _check_square(x, xp)
    if k == -2:
        return _scalar(_g_minus_two(case, x, xp))
    if k == -1:
        return _scalar(_g_minus_one(case, x, xp))
    if k == -4:
        if np.any(x != xp):
            raise DomainError("g_{-4} closed forms are diagonal only")
        return _scalar(_g_minus_four_diag(case, x))
    raise DomainError(f"no closed form for k={k}; expected -1, -2 or -4")


def greens(case, x, xp):
    """Zero-energy Green's function ``-g_{-2}``.

    For Case 4 this is the kernel with the constant mode projected out, so
    that ``d2/dx2 G = delta(x - x') - 1``.
    """
    return _scalar(-np.asarray(closed_form_g(case, -2, x, xp)))


def alternating_f1(case, x, xp):
    """Closed form of ``f_{-1}(x, x')``.

    Cases 2 and 3 are step functions in ``x + x'`` and take the value 1 on
    the line ``x + x' = 1``.  Cases 1 and 4 are logarithmic, singular on
    that line.
    """
    case = BoundaryCase.of(case)
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    _check_square(x, xp)
    s = x + xp
    if case is BoundaryCase.NEUMANN_DIRICHLET:
        return _scalar(np.where(s <= 1.0, 1.0, 0.0))
    if case is BoundaryCase.DIRICHLET_NEUMANN:
        return _scalar(np.where(s >= 1.0, 1.0, 0.0))
    c_minus = np.cos((x - xp) * _PI / 2)
    c_plus = np.abs(np.cos(s * _PI / 2))
    if np.any(c_plus == 0.0) or np.any(s == 1.0) or np.any(c_minus <= 0.0):
        raise SingularPointError("f_{-1} is singular on the line x + x' = 1")
    if case is BoundaryCase.DIRICHLET_DIRICHLET:
        return _scalar(np.log(c_minus / c_plus) / _PI)
    return _scalar(np.log(4.0 * c_minus * c_plus) / _PI)


def half_wave_sum(u):
    """Limit of ``sum_j (-1)**(j-1) cos((j - 1/2) pi u) / (j - 1/2)`` on ``[0, 2]``.

    The series is ``pi/2`` for ``0 <= u < 1`` and ``-pi/2`` for ``1 < u <= 2``;
    it converges to the midpoint 0 at the jump.
    """
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 2)):
        raise DomainError("half-wave series is tabulated on [0, 2]")
    return _scalar(np.where(u < 1.0, _PI / 2, np.where(u > 1.0, -_PI / 2, 0.0)))


def half_wave_partial(u, J):
    j = np.arange(1, J + 1) - 0.5
    signs = np.where(np.arange(J) % 2 == 0, 1.0, -1.0)
    return _scalar(np.tensordot(signs / j, np.cos(np.multiply.outer(j * _PI, np.asarray(u, dtype=float))), axes=1))


# id -> (case, left/right kernel family, right-hand side)
IDENTITIES = {
    "q1": (BoundaryCase.DIRICHLET_DIRICHLET, "g"),
    "q2": (BoundaryCase.NEUMANN_DIRICHLET, "g"),
    "q3": (BoundaryCase.DIRICHLET_NEUMANN, "g"),
    "q4": (BoundaryCase.NEUMANN_NEUMANN, "g"),
    "q5": (BoundaryCase.DIRICHLET_DIRICHLET, "f"),
    "q6": (BoundaryCase.NEUMANN_DIRICHLET, "f"),
    "q7": (BoundaryCase.DIRICHLET_NEUMANN, "f"),
    "q8": (BoundaryCase.NEUMANN_NEUMANN, "f"),
}


@dataclass(frozen=True)
class IdentityReport:
    id: str
    points: tuple
    lhs: tuple
    rhs: tuple
    max_residual: float


def default_grid(k=5, lo=0.1, hi=0.9):
    axis = np.linspace(lo, hi, k)
    return [(float(x), float(y)) for x in axis for y in axis]


def identity_check(identity, grid=None, tol=1e-10):
    """Compare ``int_0^1 K(x, z) K(z, x') dz`` with the closed ``g_{-2}``.

    ``K`` is ``g_{-1}`` for q1..q4 and ``f_{-1}`` for q5..q8.  Each quadrature
    is split at every point where the integrand is singular or jumps:
    ``z = x, x', 1 - x, 1 - x'``.
    """
    if identity not in IDENTITIES:
        raise DomainError(f"unknown identity {identity!r}; expected q1..q8")
    case, family = IDENTITIES[identity]
    if grid is None:
        grid = default_grid()
    if family == "g":
        kernel = lambda u, v: _g_minus_one(case, u, v)  # noqa: E731
    else:
        kernel = lambda u, v: float(alternating_f1(case, u, v))  # noqa: E731
    def integrand(x, z, xp):
        # deep bisection can round a node onto the singular endpoint itself;
        # that single point carries no weight
        try:
            return kernel(x, z) * kernel(z, xp)
        except SingularPointError:
            return 0.0

    lhs, rhs = [], []
    for x, xp in grid:
        cuts = (x, xp, 1.0 - x, 1.0 - xp)
        value = integrate_finite(lambda z: integrand(x, z, xp), 0.0, 1.0, tol=tol, hints=cuts).value
        lhs.append(value)
        rhs.append(float(closed_form_g(case, -2, x, xp)))
    residual = float(np.max(np.abs(np.subtract(lhs, rhs))))
    return IdentityReport(identity, tuple(grid), tuple(lhs), tuple(rhs), residual)


def case4_weak_check(phi, d2phi=None, xs=None, tol=1e-9):
    """Max over ``xs`` of ``|int G(x, x') phi''(x') dx' - (phi(x) - int phi)|``.

    ``phi`` must satisfy ``phi'(0) = phi'(1) = 0``.  Without ``d2phi`` the second
    derivative is taken by Richardson-combined central differences.
    """
    case = BoundaryCase.NEUMANN_NEUMANN
    if d2phi is None:
        d2phi = lambda t: second_derivative(phi, t)  # noqa: E731
    if xs is None:
        xs = np.linspace(0.05, 0.95, 7)
    mean = integrate_finite(phi, 0.0, 1.0, tol=tol).value
    worst = 0.0
    for x in xs:
        lhs = integrate_finite(lambda t: greens(case, x, t) * d2phi(t), 0.0, 1.0, tol=tol, hints=(x,)).value
        worst = max(worst, abs(lhs - (phi(x) - mean)))
    return worst


SUM_RULES = {
    # case -> (sum gamma**-2, sum gamma**-4)
    BoundaryCase.DIRICHLET_DIRICHLET: (1.0 / 6.0, 1.0 / 90.0),
    BoundaryCase.NEUMANN_DIRICHLET: (0.5, 1.0 / 6.0),
    BoundaryCase.DIRICHLET_NEUMANN: (0.5, 1.0 / 6.0),
    BoundaryCase.NEUMANN_NEUMANN: (1.0 / 6.0, 1.0 / 90.0),
}


def diagonal_sum(case, k, tol=1e-12):
    """``int_0^1 g_k(x, x) dx`` from the closed-form diagonal (``k`` = -2 or -4)."""
    case = BoundaryCase.of(case)
    return integrate_finite(lambda x: closed_form_g(case, k, x, x), 0.0, 1.0, tol=tol).value


def series_sum(case, k, J=10_000, intervals=2048, chunk=256):
    """``int_0^1`` of the ``J``-term series diagonal, by the trapezoid rule.

    Each term is ``gamma_j**k (1 -+ cos(2 gamma_j x))``; the trapezoid rule on
    ``intervals`` equal steps integrates the cosine to zero unless its
    frequency aliases onto a multiple of the grid, which first happens at
    ``j = intervals`` where the weight is already below ``1e-7``.
    """
    case = BoundaryCase.of(case)
    series = KernelSeries(case.spectrum(J), k)
    xs = np.linspace(0.0, 1.0, intervals + 1)
    w = np.full(xs.size, 1.0 / intervals)
    w[[0, -1]] *= 0.5
    total = 0.0
    for lo in range(0, xs.size, chunk):
        total += float(np.dot(series.diag(xs[lo : lo + chunk]), w[lo : lo + chunk]))
    return total
