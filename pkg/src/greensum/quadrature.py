"""Adaptive integration on finite and semi-infinite intervals.

Thin layer over QUADPACK (``scipy.integrate.quad``): intervals are split at
declared singular or kink points, convergence is checked against the caller's
tolerance, and failures raise instead of warning.
"""

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .errors import QuadratureError

__all__ = [
    "QuadratureResult",
    "integrate_finite",
    "integrate_semi_infinite",
    "separable_double_integral",
    "iterated_double_integral",
]

_LIMIT = 400


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int

    def __float__(self):
        return self.value


def _quad_piece(f, a, b, tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info = integrate.quad(
            f, a, b, epsabs=tol, epsrel=tol, limit=_LIMIT, full_output=1
        )[:3]
    if not (math.isfinite(value) and math.isfinite(err)):
        raise QuadratureError(f"non-finite integral on [{a}, {b}]")
    return value, err, info["neval"]


def integrate_finite(f, a, b, tol=1e-10, hints=()):
    """Integrate ``f`` over ``[a, b]``.

    ``hints`` lists points where ``f`` is non-smooth or has an integrable
    singularity; the interval is split there so every singularity sits on a
    subinterval endpoint, where QUADPACK's extrapolation handles it.
    Each piece gets an equal share of ``tol``.
    Raises :class:`QuadratureError` when the summed error estimate exceeds
    ``max(tol, tol * |value|)``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    cuts = sorted({float(h) for h in hints if a < h < b})
    edges = [a, *cuts, b]
    value = err = 0.0
    neval = 0
    share = tol / (len(edges) - 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 0.0:
            continue
        v, e, n = _quad_piece(f, lo, hi, share)
        value += v
        err += e
        neval += n
    if err > max(tol, tol * abs(value)):
        raise QuadratureError(
            f"integral on [{a}, {b}] did not converge: value {value:.6g}, error estimate {err:.3g} > tol {tol:.3g}"
        )
    return QuadratureResult(value, err, neval)


def integrate_semi_infinite(f, a, tol=1e-10, hints=()):
    """Integrate ``f`` over ``[a, inf)`` through the map ``x = a + t / (1 - t)``.

    The map sends ``[a, inf)`` to ``[0, 1)``; an algebraic decay ``x**-p`` turns
    into an integrable endpoint singularity ``(1 - t)**(p - 2)`` at ``t = 1``.
    Hints are given in ``x`` and mapped to ``t``.
    """

    def mapped(t):
        if t >= 1.0:
            return 0.0
        s = 1.0 - t
        return f(a + t / s) / (s * s)

    thints = [(h - a) / (1.0 + h - a) for h in hints if h > a]
    return integrate_finite(mapped, 0.0, 1.0, tol=tol, hints=thints)


def separable_double_integral(f, g, a, b, tol=1e-10):
    """Double integral of the kernel ``F(x, x') = f(x_<) g(x_>)`` over the square.

    Swapping the order of integration in the upper triangle shows both halves
    are equal, leaving ``2 * int_a^b g(x) * [int_a^x f] dx``.
    """

    def outer(x):
        if x <= a:
            return 0.0
        return g(x) * integrate_finite(f, a, x, tol=tol * 1e-2).value

    return 2.0 * integrate_finite(outer, a, b, tol=tol).value


def iterated_double_integral(kernel, a, b, tol=1e-9):
    """Brute-force ``int_a^b int_a^b kernel(x, y) dy dx``.

    The inner integral is split at ``y = x`` because Green's-function kernels
    have a derivative jump on the diagonal.
    """

    def inner(x):
        return integrate_finite(lambda y: kernel(x, y), a, b, tol=tol * 1e-2, hints=(x,)).value

    return integrate_finite(inner, a, b, tol=tol).value

