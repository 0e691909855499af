"""Numerov shooting solver for bound states of ``psi'' = (U - E) psi``.

The solver is an independent oracle for the sum rules: eigenvalues come
from Sturm node counting alone (the number of sign changes of the outward
solution equals the number of eigenvalues below the trial energy), refined
by multisection until the bracket is narrower than the tolerance.  Many trial
energies are integrated at once as columns of one numpy array.

The recurrence is written in summed form,

    w_n = (1 - g_n) y_n,   g_n = h**2 (U_n - E) / 12,
    d_n = d_{n-1} + c_n w_n,   w_{n+1} = w_n + d_n,   c_n = 12 g_n / (1 - g_n),

which keeps the energy dependence out of the ``12 - 10 f_n`` cancellation
that spoils the textbook form at small steps.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .errors import BracketError

__all__ = [
    "EigenProblem",
    "Eigenvalues",
    "solve_spectrum",
    "eigenfunction",
    "count_below",
    "rayleigh_quotient",
    "x_max_for",
]

_RESCALE_EVERY = 32
_HUGE = 1e200


@dataclass(frozen=True)
class EigenProblem:
    """Bound-state problem on ``[x_min, x_max]``.

    ``left`` and ``right`` are ``"dirichlet"`` or ``"neumann"``.  For an even
    potential on the line, even states use a Neumann condition at 0 and odd
    states a Dirichlet one; the far wall at ``x_max`` stands in for decay at
    infinity and must sit deep in the classically forbidden region.
    """

    potential: object
    x_max: float
    left: str = "neumann"
    right: str = "dirichlet"
    x_min: float = 0.0
    h: float = 1e-3

    def __post_init__(self):
        for side in (self.left, self.right):
            if side not in ("dirichlet", "neumann"):
                raise ValueError(f"unknown boundary condition {side!r}")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @classmethod
    def even(cls, potential, x_max, h=1e-3):
        return cls(potential, x_max, left="neumann", h=h)

    @classmethod
    def odd(cls, potential, x_max, h=1e-3):
        return cls(potential, x_max, left="dirichlet", h=h)

    @classmethod
    def parity(cls, potential, parity, x_max, h=1e-3):
        if parity == "even":
            return cls.even(potential, x_max, h)
        if parity == "odd":
            return cls.odd(potential, x_max, h)
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")

    @classmethod
    def box(cls, potential=None, a=0.0, b=1.0, left="dirichlet", right="dirichlet", h=1e-3):
        if potential is None:
            potential = np.zeros_like
        return cls(potential, b, left=left, right=right, x_min=a, h=h)

    def grid(self):
        n = int(round((self.x_max - self.x_min) / self.h))
        xs = self.x_min + self.h * np.arange(n + 1)
        xs[-1] = self.x_max
        return xs

    def sample(self, xs):
        u = np.asarray(self.potential(xs), dtype=float)
        if u.shape != np.shape(xs):
            u = np.vectorize(self.potential, otypes=[float])(xs)
        return u


@dataclass(frozen=True)
class Eigenvalues:
    values: np.ndarray
    nodes: np.ndarray

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


class _Grid:
    """Potential sampled once; node counts for batches of trial energies."""

    def __init__(self, prob):
        self.prob = prob
        self.h = (prob.x_max - prob.x_min) / int(round((prob.x_max - prob.x_min) / prob.h))
        self.xs = prob.grid()
        self.u = prob.sample(self.xs)
        self.u_ghost_left = float(prob.sample(np.array([prob.x_min - self.h]))[0])
        self.u_ghost_right = float(prob.sample(np.array([prob.x_max + self.h]))[0])
        if not np.all(np.isfinite(self.u)):
            raise ValueError("potential is not finite on the grid")

    def _coeffs(self, energies):
        g = self.h**2 * (self.u[:, None] - energies[None, :]) / 12.0
        if np.any(g >= 0.5):
            raise ValueError("step too coarse for this potential; reduce h or x_max")
        return g, 12.0 * g / (1.0 - g)

    def _start(self, g, c):
        h = self.h
        m = g.shape[1]
        if self.prob.left == "dirichlet":
            w0 = np.zeros(m)
            w1 = (1.0 - g[1]) * h
        else:
            w0 = np.ones(m)
            e = self._energies
            gm = self.h**2 * (self.u_ghost_left - e) / 12.0
            ratio = (1.0 - gm) / (1.0 - g[1])
            w1 = (2.0 + c[0]) * w0 / (1.0 + ratio)
        return w0, w1

    def counts(self, energies):
        """Number of eigenvalues strictly below each trial energy."""
        energies = np.atleast_1d(np.asarray(energies, dtype=float))
        self._energies = energies
        g, c = self._coeffs(energies)
        n = len(self.xs) - 1
        w_prev, w = self._start(g, c)
        d = w - w_prev
        count = np.zeros(len(energies), dtype=int)
        for i in range(1, n):
            d = d + c[i] * w
            w_new = w + d
            count += (w_new * w) < 0
            w = w_new
            if i % _RESCALE_EVERY == 0:
                big = np.abs(w) > _HUGE
                if big.any():
                    scale = np.where(big, np.abs(w), 1.0)
                    w = w / scale
                    d = d / scale
        if self.prob.right == "neumann":
            gn = self.h**2 * (self.u_ghost_right - energies) / 12.0
            cn = c[n]
            d_next = d + cn * w
            w_ghost = w + d_next  # w at x_max + h
            w_before = w - d
            y_ghost = w_ghost / (1.0 - gn)
            y_before = w_before / (1.0 - g[n - 1])
            count += (w * (y_ghost - y_before)) < 0
        return count

    def solution(self, energy):
        """Outward solution y on the grid at one energy (unnormalized)."""
        energies = np.array([float(energy)])
        self._energies = energies
        g, c = self._coeffs(energies)
        g = g[:, 0]
        c = c[:, 0]
        n = len(self.xs) - 1
        w = np.empty(n + 1)
        w0, w1 = self._start(g[:, None], c[:, None])
        w[0], w[1] = w0[0], w1[0]
        d = w[1] - w[0]
        for i in range(1, n):
            d += c[i] * w[i]
            w[i + 1] = w[i] + d
        return w / (1.0 - g)

    def inward(self, energy, stop):
        """Solution integrated from x_max down to index ``stop``, zero at the wall."""
        g = self.h**2 * (self.u - energy) / 12.0
        c = 12.0 * g / (1.0 - g)
        n = len(self.xs) - 1
        w = np.zeros(n + 1)
        if self.prob.right == "dirichlet":
            w[n] = 0.0
            w[n - 1] = (1.0 - g[n - 1]) * 1e-30
        else:
            w[n] = 1e-30
            gp = self.h**2 * (self.u_ghost_right - energy) / 12.0
            ratio = (1.0 - gp) / (1.0 - g[n - 1])
            w[n - 1] = (2.0 + c[n]) * w[n] / (1.0 + ratio)
        d = w[n - 1] - w[n]
        for i in range(n - 1, stop, -1):
            d += c[i] * w[i]
            w[i - 1] = w[i] + d
            if abs(w[i - 1]) > _HUGE:
                w[i - 1 :] /= _HUGE
                d /= _HUGE
        return w / (1.0 - g)


def count_below(prob, energy):
    """Number of eigenvalues of ``prob`` strictly below ``energy``."""
    return int(_Grid(prob).counts([energy])[0])


def solve_spectrum(prob, count, tol=1e-10):
    """Lowest ``count`` eigenvalues, each located to ``tol`` absolute.

    State ``k`` is the energy at which the node count steps from ``k`` to
    ``k + 1``, so the returned node counts are ``0, 1, ..., count - 1``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    grid = _Grid(prob)
    e_lo = float(grid.u.min()) - 1.0
    span = 1.0
    e_hi = e_lo + span
    for _ in range(200):
        if grid.counts([e_hi])[0] >= count:
            break
        span *= 2.0
        e_hi = e_lo + span
    else:
        raise BracketError(f"could not bracket {count} states; raise x_max or refine the grid")

    lo = np.full(count, e_lo)
    hi = np.full(count, e_hi)
    for _ in range(400):
        width = hi - lo
        if np.all(width <= tol * np.maximum(1.0, np.abs(hi))):
            break
        active = width > tol * np.maximum(1.0, np.abs(hi))
        trial = lo[active, None] + width[active, None] * np.array([0.25, 0.5, 0.75])[None, :]
        trial = np.unique(trial.ravel())
        counts = grid.counts(trial)
        for k in np.nonzero(active)[0]:
            below = trial[(counts <= k) & (trial > lo[k])]
            above = trial[(counts >= k + 1) & (trial < hi[k])]
            if below.size:
                lo[k] = below.max()
            if above.size:
                hi[k] = above.min()
    else:
        raise BracketError("multisection did not converge")
    return Eigenvalues(0.5 * (lo + hi), np.arange(count))


def _turning_index(grid, energy):
    allowed = np.nonzero(grid.u < energy)[0]
    if allowed.size == 0:
        return None
    return int(allowed[-1])


def eigenfunction(prob, index, energy=None, tol=1e-10):
    """Eigenfunction ``index`` as a cubic-spline evaluator with unit L2 norm on the grid.

    Integrates outward to the last classical turning point and inward from
    the wall, then splices the two so the growing mode never dominates.
    The returned spline also exposes ``.energy`` and ``.nodes``.
    """
    if energy is None:
        energy = solve_spectrum(prob, index + 1, tol=tol).values[index]
    grid = _Grid(prob)
    y = grid.solution(energy)
    n = len(grid.xs) - 1
    m = _turning_index(grid, energy)
    if m is not None and m < n - 20:
        m = max(m, 10)
        yin = grid.inward(energy, m)
        if yin[m] == 0.0:
            raise BracketError("inward solution vanished at the matching point")
        y = np.concatenate([y[: m + 1], yin[m + 1 :] * (y[m] / yin[m])])
    norm = np.sqrt(simpson(y * y, x=grid.xs))
    y = y / norm
    first = y[1] if prob.left == "dirichlet" else y[0]
    if first < 0:
        y = -y
    spline = CubicSpline(grid.xs, y)
    spline.energy = float(energy)
    inner = y[1:-1]
    spline.nodes = int(np.sum(inner[1:] * inner[:-1] < 0))
    return spline


def rayleigh_quotient(prob, psi):
    """``<psi, (-d2/dx2 + U) psi> / <psi, psi>`` by Simpson's rule on a fine grid."""
    xs = np.linspace(prob.x_min, prob.x_max, 2 * int(round((prob.x_max - prob.x_min) / prob.h)) + 1)
    y = psi(xs)
    dy = psi(xs, 1)
    u = prob.sample(xs)
    return simpson(dy * dy + u * y * y, x=xs) / simpson(y * y, x=xs)


def x_max_for(potential, energy, margin=20.0, action=20.0, start=1.0, step=1e-2):
    """Wall position for states up to ``energy`` in an even confining potential.

    Returns the smallest x beyond the turning point where both
    ``U(x) >= energy + margin`` and the tunnelling action
    ``int sqrt(U - energy) dx`` from the turning point reaches ``action``,
    so the wall shifts eigenvalues by roughly ``exp(-2 * action)``.
    """
    x = start
    acc = 0.0
    for _ in range(1_000_000):
        u = float(potential(np.array([x]))[0])
        if u > energy:
            acc += np.sqrt(u - energy) * step
        if u >= energy + margin and acc >= action:
            return x
        x += step
    raise BracketError("potential does not confine up to the requested energy")
