"""Eigenfunction bilinear series and the recursions that connect them.

For an orthonormal spectrum ``{gamma_j, psi_j}`` on ``[a, b]``

    g_k(x, x') = sum_j gamma_j**k psi_j(x) psi_j(x'),
    f_k(x, x') = sum_j (-1)**(j-1) gamma_j**k psi_j(x) psi_j(x'),

``g_{k+n} = int g_k g_n`` (and likewise ``int f_k f_n``), and the diagonals
obey the third-order relation

    g''' - 4 U g' - 2 U' g = -4 (g_{k+2})',   g = g_k(x, x),

which this module runs in both directions.  Integrating a diagonal over the
domain gives the eigenvalue sum ``sum_j gamma_j**k``.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import BoundaryConditionError, DifferentiationError
from .quadrature import integrate_finite, integrate_semi_infinite

__all__ = [
    "Spectrum",
    "KernelSeries",
    "g_k_eval",
    "convolve",
    "second_derivative",
    "recur_up",
    "recur_down",
    "DETERMINED",
    "sum_rule",
]

DETERMINED = None
"""Marker for a boundary constant fixed by the far-end condition in :func:`recur_down`."""

_FD_STEP = 1e-4
_FD_RTOL = 1e-5


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ``gamma_j**2`` on ``[a, b]`` with a vectorised basis.

    ``basis(x, count)`` must return an array of shape ``(count, *np.shape(x))``
    holding ``psi_1(x) ... psi_count(x)``.
    """

    a: float
    b: float
    gammas: np.ndarray
    basis: object
    parity: tuple = None

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float)
        if g.ndim != 1 or g.size == 0:
            raise ValueError("gammas must be a non-empty 1-D array")
        if np.any(g <= 0) or np.any(np.diff(g) <= 0):
            raise ValueError("gammas must be positive and strictly increasing")
        object.__setattr__(self, "gammas", g)

    def __len__(self):
        return self.gammas.size

    def psi(self, x, count=None):
        return np.asarray(self.basis(x, count or len(self)), dtype=float)

    def gram(self, count=5, tol=1e-11):
        """Overlap matrix ``int psi_j psi_k`` for the first ``count`` states."""
        m = np.empty((count, count))
        for j in range(count):
            for k in range(j, count):
                val = integrate_finite(
                    lambda x: self.psi(x, count)[j] * self.psi(x, count)[k],
                    self.a,
                    self.b,
                    tol=tol,
                ).value
                m[j, k] = m[k, j] = val
        return m


@dataclass(frozen=True)
class KernelSeries:
    """Truncated ``g_k`` (``alternating=False``) or ``f_k`` partial sum of ``J`` terms."""

    spectrum: Spectrum
    k: int
    alternating: bool = False
    J: int = None
    _weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        J = len(self.spectrum) if self.J is None else int(self.J)
        if J < 1 or J > len(self.spectrum):
            raise ValueError(f"J must lie in [1, {len(self.spectrum)}]")
        object.__setattr__(self, "J", J)
        w = self.spectrum.gammas[:J] ** float(self.k)
        if self.alternating:
            w = w * np.where(np.arange(J) % 2 == 0, 1.0, -1.0)
        object.__setattr__(self, "_weights", w)

    def __call__(self, x, xp):
        return g_k_eval(self, x, xp)

    def partial(self, x, xp, J):
        """Partial sum with only the first ``J`` terms."""
        px = self.spectrum.psi(x, self.J)[:J]
        pxp = px if xp is x else self.spectrum.psi(xp, self.J)[:J]
        return np.tensordot(self._weights[:J], px * pxp, axes=1)

    def richardson(self, x, xp):
        """Partial sum at ``J`` corrected by ``S_J - S_{J/2}`` for a ``1/J`` tail."""
        full = self.partial(x, xp, self.J)
        half = self.partial(x, xp, max(1, self.J // 2))
        return 2.0 * full - half

    def diag(self, x):
        return g_k_eval(self, x, x)


def g_k_eval(series, x, xp):
    """Truncated series at ``(x, x')``.

    The summand is ``w_j * (psi_j(x) * psi_j(x'))``; the product commutes, so
    the result is exactly symmetric under ``x <-> x'``.
    """
    value = series.partial(x, xp, series.J)
    return float(value) if np.ndim(value) == 0 else value


def _hint_list(hints, x, xp):
    if callable(hints):
        return tuple(hints(x, xp))
    return tuple(hints)


def convolve(left, right, a, b, tol=1e-9, hints=()):
    """``(x, x') -> int_a^b left(x, z) right(z, x') dz``.

    ``left`` and ``right`` are any two-argument kernels (series or closed
    forms).  The integration is split at ``z = x`` and ``z = x'``, plus any
    extra ``hints``, given either as a sequence or as ``hints(x, x')``.
    """

    def composed(x, xp):
        cuts = (x, xp, *_hint_list(hints, x, xp))
        return integrate_finite(lambda z: left(x, z) * right(z, xp), a, b, tol=tol, hints=cuts).value

    return composed


def second_derivative(f, x, h=_FD_STEP, rtol=_FD_RTOL):
    """Central second difference at steps ``h`` and ``h/2``, Richardson-combined.

    Raises :class:`DifferentiationError` when the two estimates disagree by
    more than ``rtol * (1 + |f''|)``.
    """
    f0 = f(x)

    def d2(step):
        return (f(x + step) - 2.0 * f0 + f(x - step)) / (step * step)

    coarse = d2(h)
    fine = d2(0.5 * h)
    if not (math.isfinite(coarse) and math.isfinite(fine)):
        raise DifferentiationError(f"non-finite second difference at x={x}")
    if abs(fine - coarse) > rtol * (1.0 + abs(fine)):
        raise DifferentiationError(
            f"second difference unstable at x={x}: {coarse:.10g} vs {fine:.10g}"
        )
    return (4.0 * fine - coarse) / 3.0


def _derivative(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def recur_up(diag, U=None, a=0.0, anchor_value=0.0, dU=None, h=_FD_STEP):
    """Raise the order: from ``g_k(x, x)`` build ``g_{k+2}(x, x)``.

        g_{k+2}(x) = g_{k+2}(a) + 1/4 { [(-d2/dx2 + 4U) g_k]_a^x - 2 int_a^x U' g_k }

    ``anchor_value`` is ``g_{k+2}(a, a)``; it vanishes when ``a`` is a
    Dirichlet wall.  ``dU`` defaults to a central difference of ``U``.
    """
    if U is None:
        U = lambda x: 0.0  # noqa: E731
        dU = lambda x: 0.0  # noqa: E731
    elif dU is None:
        dU = lambda x: _derivative(U, x)  # noqa: E731

    def bracket(x):
        return -second_derivative(diag, x, h) + 4.0 * U(x) * diag(x)

    base = bracket(a)

    def raised(x):
        x = float(x)
        if x == a:
            return float(anchor_value)
        lo, hi = (a, x) if x > a else (x, a)
        sign = 1.0 if x > a else -1.0
        drift = sign * integrate_finite(lambda y: dU(y) * diag(y), lo, hi, tol=1e-12).value
        return anchor_value + 0.25 * (bracket(x) - base - 2.0 * drift)

    return raised


class DownwardSolution:
    """``g_{k-2}(x, x)`` with its resolved boundary constants at the anchor."""

    def __init__(self, evaluate, anchor, value, slope, curvature):
        self._evaluate = evaluate
        self.anchor = anchor
        self.value = value
        self.slope = slope
        self.curvature = curvature

    def __call__(self, x):
        return self._evaluate(x, self.value, self.slope, self.curvature)[0]

    def derivatives(self, x):
        """``(g, g', g'')`` at ``x``."""
        return self._evaluate(x, self.value, self.slope, self.curvature)


def _free_evaluator(diag, anchor):
    # U = 0: g'' = c2 - 4 (d(x) - d(a)); the remaining two integrations collapse
    # by Cauchy's formula for repeated integrals into one quadrature each.
    d_a = diag(anchor)

    def evaluate(x, c0, c1, c2):
        x = float(x)
        t = x - anchor
        if t == 0.0:
            return c0, c1, c2
        lo, hi = (anchor, x) if t > 0 else (x, anchor)
        sign = 1.0 if t > 0 else -1.0
        excess = lambda y: diag(y) - d_a  # noqa: E731
        i1 = sign * integrate_finite(excess, lo, hi, tol=1e-13).value
        i2 = sign * integrate_finite(lambda y: (x - y) * excess(y), lo, hi, tol=1e-13).value
        g2 = c2 - 4.0 * excess(x)
        g1 = c1 + c2 * t - 4.0 * i1
        g0 = c0 + c1 * t + 0.5 * c2 * t * t - 4.0 * i2
        return g0, g1, g2

    return evaluate


def _potential_evaluator(diag, U, dU, anchor):
    # With r = g'' + 4 d the system needs no derivative of the input diagonal:
    # g' = p, p' = r - 4 d, r' = 4 U p + 2 U' g.
    def rhs(x, y):
        g, p, r = y
        return [p, r - 4.0 * diag(x), 4.0 * U(x) * p + 2.0 * dU(x) * g]

    def evaluate(x, c0, c1, c2):
        x = float(x)
        if x == anchor:
            return c0, c1, c2
        y0 = [c0, c1, c2 + 4.0 * diag(anchor)]
        sol = solve_ivp(rhs, (anchor, x), y0, method="DOP853", rtol=1e-12, atol=1e-14)
        if not sol.success:
            raise BoundaryConditionError(sol.message)
        g, p, r = sol.y[:, -1]
        return g, p, r - 4.0 * diag(x)

    return evaluate


_ORDER = {"value": 0, "slope": 1, "curvature": 2}


def recur_down(diag, U=None, anchor=0.0, value=0.0, slope=0.0, curvature=DETERMINED, far=None, dU=None):
    """Lower the order: solve ``g''' - 4Ug' - 2U'g = -4 (g_k diag)'`` for ``g = g_{k-2}``.

    ``value``, ``slope`` and ``curvature`` are ``g``, ``g'`` and ``g''`` at
    ``anchor``.  At most one may be :data:`DETERMINED`, in which case ``far``
    must be ``(x_far, kind, target)`` with ``kind`` one of ``"value"``,
    ``"slope"``, ``"curvature"``; the solution is affine in the unknown, so two
    trial solves fix it.

    With ``U`` omitted the three integrations are done by quadrature; a
    nonzero potential goes through an explicit Runge-Kutta solve.
    """
    consts = [value, slope, curvature]
    unknown = [i for i, c in enumerate(consts) if c is DETERMINED]
    if len(unknown) > 1:
        raise BoundaryConditionError("at most one boundary constant may be left undetermined")
    if U is None:
        evaluate = _free_evaluator(diag, anchor)
    else:
        if dU is None:
            dU = lambda x: _derivative(U, x)  # noqa: E731
        evaluate = _potential_evaluator(diag, U, dU, anchor)

    if unknown:
        if far is None:
            raise BoundaryConditionError("an undetermined constant needs a far-end condition")
        x_far, kind, target = far
        if kind not in _ORDER:
            raise ValueError(f"far-end kind must be one of {sorted(_ORDER)}")
        idx = unknown[0]
        trial = []
        for guess in (0.0, 1.0):
            c = [0.0 if v is DETERMINED else float(v) for v in consts]
            c[idx] = guess
            trial.append(evaluate(x_far, *c)[_ORDER[kind]])
        gain = trial[1] - trial[0]
        if abs(gain) < 1e-12:
            raise BoundaryConditionError(
                f"far-end {kind} at x={x_far} does not depend on the free constant"
            )
        consts[idx] = (target - trial[0]) / gain
    return DownwardSolution(evaluate, anchor, *(float(c) for c in consts))


def sum_rule(diag, a, b, tol=1e-12, hints=()):
    """``int_a^b g_k(x, x) dx``; ``b = inf`` switches to the semi-infinite map."""
    if math.isinf(b):
        return integrate_semi_infinite(diag, a, tol=tol, hints=hints).value
    return integrate_finite(diag, a, b, tol=tol, hints=hints).value
