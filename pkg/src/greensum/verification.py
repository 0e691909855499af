"""Registry of numerical checks behind ``greensum verify`` and the acceptance tests.

Each check computes a value and a reference and passes when the error is
within its tolerance.  ``kind`` selects the comparison:

``"abs"``    ``|value - reference| <= tolerance``
``"rel"``    ``|value - reference| <= tolerance * |reference|``
``"below"``  ``value < reference`` (the reference is an upper bound)

Every check carries the acceptance criterion it belongs to (1-12) and the
source of its reference value: ``closed-form`` for an exact expression,
``oracle`` for an independent numerical computation, ``identity`` for a
relation that holds by construction.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import boxlab, eigensolve, powerlaw, reflectionless, specfun, spectral, susy
from .quadrature import integrate_finite, iterated_double_integral, separable_double_integral

__all__ = ["Check", "VerificationReport", "CHECKS", "MODULES", "select", "run_check", "run_checks"]


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    module: str
    criterion: int
    description: str
    value: float
    reference: float
    provenance: str
    abs_error: float
    rel_error: float
    tolerance: float
    kind: str
    passed: bool
    wall_time: float
    note: str = ""

    def as_dict(self, timing=False):
        out = asdict(self)
        for key in ("value", "reference", "abs_error", "rel_error", "tolerance", "wall_time"):
            v = out[key]
            out[key] = float(v) if math.isfinite(v) else None
        if not timing:
            del out["wall_time"]
        return out

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (
            f"{flag} {self.check_id}: value={self.value:.12g} reference={self.reference:.12g} "
            f"err={self.abs_error:.3g} tol={self.tolerance:.3g} [{self.provenance}]"
        )


@dataclass(frozen=True)
class Check:
    check_id: str
    module: str
    criterion: int
    description: str
    provenance: str
    tolerance: float
    compute: object
    kind: str = "abs"

    def run(self):
        start = time.perf_counter()
        try:
            out = self.compute()
        except Exception as exc:  # a crashing check is a failing check
            out = (math.nan, math.nan, f"{type(exc).__name__}: {exc}")
        elapsed = time.perf_counter() - start
        value, reference = float(out[0]), float(out[1])
        note = out[2] if len(out) > 2 else ""
        err = abs(value - reference)
        rel = err / abs(reference) if reference != 0 else err
        if self.kind == "below":
            passed = value < reference
        elif self.kind == "rel":
            passed = rel <= self.tolerance
        else:
            passed = err <= self.tolerance
        passed = bool(passed and math.isfinite(value))
        return VerificationReport(
            self.check_id,
            self.module,
            self.criterion,
            self.description,
            value,
            reference,
            self.provenance,
            err,
            rel,
            self.tolerance,
            self.kind,
            passed,
            elapsed,
            note,
        )


CHECKS = []


def _add(check_id, module, criterion, description, provenance, tolerance, compute, kind="abs"):
    CHECKS.append(Check(check_id, module, criterion, description, provenance, tolerance, compute, kind))


# -- 1: box sum rules ------------------------------------------------------

for _case in boxlab.BoundaryCase:
    for _k, _slot in ((-2, 0), (-4, 1)):
        _ref = boxlab.SUM_RULES[_case][_slot]
        _add(
            f"boxlab.sumrule.case{_case.value}.k{_k}.closed",
            "boxlab",
            1,
            f"Case {_case.value}: int g_{_k}(x,x) dx from the closed form",
            "closed-form",
            1e-10,
            lambda c=_case, k=_k, r=_ref: (boxlab.diagonal_sum(c, k), r),
        )
        _add(
            f"boxlab.sumrule.case{_case.value}.k{_k}.series",
            "boxlab",
            1,
            f"Case {_case.value}: int g_{_k}(x,x) dx from the J=10^4 eigenfunction series",
            "closed-form",
            1e-3,
            lambda c=_case, k=_k, r=_ref: (boxlab.series_sum(c, k), r),
        )

# -- 2: integral identities ------------------------------------------------

for _q in sorted(boxlab.IDENTITIES):
    _tol = 1e-8 if _q in ("q6", "q7") else 1e-6
    _add(
        f"boxlab.identity.{_q}",
        "boxlab",
        2,
        f"identity {_q}: max |lhs - rhs| over a 5x5 interior grid",
        "closed-form",
        _tol,
        lambda q=_q: (boxlab.identity_check(q).max_residual, 0.0),
    )

# -- 3: downward recursion -------------------------------------------------

_XS = np.linspace(0.0, 1.0, 21)


def _recur_case1():
    sol = spectral.recur_down(lambda x: x * (1 - x), value=0.0, slope=0.0, far=(1.0, "value", 0.0))
    return sol, lambda x: x**2 * (1 - x) ** 2 / 3


def _recur_case2():
    sol = spectral.recur_down(lambda x: 1 - x, anchor=1.0, value=0.0, slope=0.0, far=(0.0, "slope", 0.0))
    return sol, lambda x: (1 - x) ** 2 * (2 * x + 1) / 3


def _sup_error(make):
    sol, exact = make()
    return max(abs(sol(x) - exact(x)) for x in _XS), 0.0


_add("spectral.recur_down.case1.curvature", "spectral", 3, "Case 1: g''(0) fixed by g(1) = 0", "closed-form", 1e-7,
     lambda: (_recur_case1()[0].curvature, 2.0 / 3.0))
_add("spectral.recur_down.case1.sup", "spectral", 3, "Case 1: g_-4 diag against x^2(1-x)^2/3", "closed-form", 1e-7,
     lambda: _sup_error(_recur_case1))
_add("spectral.recur_down.case2.curvature", "spectral", 3, "Case 2: g''(1) fixed by g'(0) = 0", "closed-form", 1e-7,
     lambda: (_recur_case2()[0].curvature, 2.0))
_add("spectral.recur_down.case2.sup", "spectral", 3, "Case 2: g_-4 diag against (1-x)^2(2x+1)/3", "closed-form", 1e-7,
     lambda: _sup_error(_recur_case2))

# -- 4: four-way S2 in the box ---------------------------------------------

for _route in ("double_base", "double_partner", "single_partner", "single_base"):
    _add(f"susy.box_s2.{_route}", "susy", 4, f"box S2 via {_route.replace('_', ' ')}", "closed-form", 1e-8,
         lambda r=_route: (susy.box_four_way()[r], 1.0 / 90.0))


def _four_way_spread():
    vals = list(susy.box_four_way().values())
    return max(vals) - min(vals), 0.0


_add("susy.box_s2.spread", "susy", 4, "box S2: largest disagreement among the four routes", "closed-form", 1e-8,
     _four_way_spread)

# -- 5: box partner eigenfunctions -----------------------------------------


def _box_partner_gram():
    seed = susy.box_seed()
    funcs = []
    for j in range(1, 6):
        g = j * math.pi
        psi = lambda x, g=g: math.sqrt(2.0) * math.sin(g * x)
        dpsi = lambda x, g=g: math.sqrt(2.0) * g * math.cos(g * x)
        funcs.append(susy.partner_eigenfunction(psi, dpsi, g, seed))
    worst = 0.0
    for a in range(5):
        for b in range(a, 5):
            v = integrate_finite(lambda x: funcs[a](x) * funcs[b](x), 0.0, 1.0, tol=1e-13).value
            worst = max(worst, abs(v - (1.0 if a == b else 0.0)))
    return worst, 0.0


_add("susy.box_partner.gram", "susy", 5, "partner states j<=5: max |Gram - I|", "closed-form", 1e-8, _box_partner_gram)
_add("susy.box_partner.left", "susy", 5, "partner states j<=5: max |psi'_j(0)|", "closed-form", 1e-8,
     lambda: (max(abs(susy.box_partner_eigenfunction(j, 0.0)) for j in range(1, 6)), 0.0))
_add("susy.box_partner.right", "susy", 5, "partner states j<=5: max |psi'_j(1)^2 - 2|", "closed-form", 1e-8,
     lambda: (max(abs(susy.box_partner_eigenfunction(j, 1.0) ** 2 - 2.0) for j in range(1, 6)), 0.0))

# -- 6: oscillator ---------------------------------------------------------

_add("susy.oscillator.ss1", "susy", 6, "-2 int G^2 G' over [0, inf) at eps = -1", "closed-form", 1e-6,
     lambda: (susy.oscillator_suite().ss1, math.pi**2 / 32))
_add("susy.oscillator.ss2", "susy", 6, "-2 int G'^2 G over [0, inf) at eps = -1", "closed-form", 1e-6,
     lambda: (susy.oscillator_suite().ss2, math.pi**2 / 32))


def _oscillator_partner_levels():
    pot = lambda x: x * x - 2.0
    x_max = eigensolve.x_max_for(pot, 12.0)
    levels = []
    for parity in ("even", "odd"):
        prob = eigensolve.EigenProblem.parity(pot, parity, x_max)
        levels.extend(eigensolve.solve_spectrum(prob, 3, tol=1e-12).values)
    levels = np.sort(levels)
    return float(np.max(np.abs(levels - (2.0 * np.arange(6) - 1.0)))), 0.0, f"levels {np.round(levels, 9).tolist()}"


_add("eigensolve.oscillator_partner", "eigensolve", 6, "U' = x^2 - 2: max |E'_n - (2n - 1)| for n <= 5", "closed-form",
     1e-6, _oscillator_partner_levels)
_add("susy.oscillator.log_slope", "susy", 6, "sum 1/(2n+1) against ln N on [1e3, 1e5]", "closed-form", 0.05,
     lambda: (susy.oscillator_log_slope(), 0.5), kind="rel")

# -- 7: power-law sums against shooting ------------------------------------


def _resolved(parity):
    res = powerlaw.resolve_parity(4.0)
    sums = powerlaw.shooting_sums(4.0)
    nu = 1.0 / 6.0
    formulas = (powerlaw.sum_even(nu), powerlaw.sum_odd(nu))
    if not res.resolved:
        return math.nan, formulas[0], "parity assignment unresolved"
    if not res.direct:
        formulas = formulas[::-1]
    shoot = sums.even if parity == "even" else sums.odd
    ref = formulas[0] if parity == "even" else formulas[1]
    return shoot, ref, res.assignment


_add("powerlaw.shooting.alternating", "powerlaw", 7,
     "alpha=4: sum (-1)^n / E_n (40 states per parity + WKB tail) against the Gamma formula", "oracle", 1e-4,
     lambda: (powerlaw.shooting_sums(4.0).alternating, powerlaw.sum_alternating(1.0 / 6.0)))
_add("powerlaw.shooting.even", "powerlaw", 7, "alpha=4: sum over even states 1/E against its resolved Gamma formula",
     "oracle", 1e-3, lambda: _resolved("even"))
_add("powerlaw.shooting.odd", "powerlaw", 7, "alpha=4: sum over odd states 1/E against its resolved Gamma formula",
     "oracle", 1e-3, lambda: _resolved("odd"))

# -- 8: Bessel integral identities -----------------------------------------

for _nu, _label in ((1.0 / 6.0, "1/6"), (1.0 / 5.0, "1/5")):
    for _sign in ("-", "+"):
        _tag = f"nu{_label.replace('/', '_')}.{'minus' if _sign == '-' else 'plus'}"
        _add(f"powerlaw.bessel.{_tag}", "powerlaw", 8,
             f"int z^(4nu-1) I_({_sign}nu) K_nu dz at nu={_label} against the Gamma formula", "oracle", 1e-8,
             lambda n=_nu, s=_sign: (lambda r: (r.lhs, r.rhs))(powerlaw.bessel_identity(n, s, nested=False)))
        _add(f"powerlaw.bessel.{_tag}.nested", "powerlaw", 8,
             f"nested double-integral form at nu={_label}, sign {_sign}", "oracle", 1e-5,
             lambda n=_nu, s=_sign: (lambda r: (r.nested, r.rhs))(powerlaw.bessel_identity(n, s)))

# -- 9: partner spectrum ----------------------------------------------------


def _augmented():
    base = sorted(powerlaw.spectrum(4.0, "even", 3) + powerlaw.spectrum(4.0, "odd", 3))
    partner = sorted(powerlaw.partner_spectrum(4.0, "even", 3) + powerlaw.partner_spectrum(4.0, "odd", 3))
    expected = np.array([0.0] + base[:5])
    return float(np.max(np.abs(np.array(partner[:6]) - expected))), 0.0


def _zero_mode():
    p = powerlaw.PowerLawPotential(4.0)
    x_max = eigensolve.x_max_for(p, 30.0)
    prob = eigensolve.EigenProblem.even(lambda x: powerlaw.partner_potential(p, x), x_max)
    psi = eigensolve.eigenfunction(prob, 0)
    return psi.energy, 0.0, f"nodes={psi.nodes}"


def _zero_mode_nodes():
    e, _, note = _zero_mode()
    return float(note.split("=")[1]), 0.0


_add("powerlaw.partner.augmentation", "powerlaw", 9, "alpha=4: lowest 6 partner levels against {0} + base levels",
     "oracle", 1e-5, _augmented)
_add("powerlaw.partner.zero_mode", "powerlaw", 9, "alpha=4: partner ground state sits at E = 0", "oracle", 1e-5,
     _zero_mode)
_add("powerlaw.partner.zero_mode_nodes", "powerlaw", 9, "alpha=4: partner E = 0 state is nodeless", "identity", 0.0,
     _zero_mode_nodes)

# -- 10: soliton sum rules -------------------------------------------------

for _alpha, _alabel in ((0.5, "0.5"), (1.0, "1")):
    for _k in (0, 1, 2):
        _add(f"reflectionless.lax_integral.alpha{_alabel}.k{_k}", "reflectionless", 10,
             f"int L_{_k} dx at alpha={_alabel}", "closed-form", 1e-8,
             lambda a=_alpha, k=_k: (
                 reflectionless.line_integral(lambda x: reflectionless.lax_diag(k, a, x), a).value,
                 reflectionless.lax_integral(k, a),
             ))
_add("reflectionless.lax_recursion", "reflectionless", 10,
     "k=0, alpha=1: max recursion residual on [-3, 3] (h=1e-3 central differences)", "oracle", 1e-5,
     lambda: (float(np.max(np.abs(reflectionless.lax_recursion_residual(0, 1.0, np.linspace(-3, 3, 601))))), 0.0))

# -- 11: WKB ----------------------------------------------------------------


def _wkb_errors():
    p = powerlaw.PowerLawPotential(4.0)
    ev = powerlaw.spectrum(4.0, "even", 40)
    errs = {}
    for n in (10, 20, 40):
        exact = ev[n // 2]
        errs[n] = abs(powerlaw.wkb_eigenvalue(p, n) - exact) / exact
    printed = abs(powerlaw.wkb_eigenvalue_as_printed(p, 20) - ev[10]) / ev[10]
    note = "relative errors " + ", ".join(f"n={n}: {e:.3g}" for n, e in errs.items())
    return errs, note + f"; Gamma((a+2)/a) variant at n=20: {printed:.3g}"


_add("powerlaw.wkb.n20", "powerlaw", 11, "alpha=4: WKB relative error at n=20 below 0.5%", "oracle", 5e-3,
     lambda: (lambda e: (e[0][20], 5e-3, e[1]))(_wkb_errors()), kind="below")
_add("powerlaw.wkb.monotone", "powerlaw", 11, "alpha=4: WKB error ratios err(20)/err(10) and err(40)/err(20) below 1",
     "oracle", 1.0, lambda: (lambda e: (max(e[0][20] / e[0][10], e[0][40] / e[0][20]), 1.0, e[1]))(_wkb_errors()),
     kind="below")

# -- 12: property suites ----------------------------------------------------


def _box_jump():
    worst = 0.0
    h = 1e-6
    for case in (1, 2, 3):
        for xp in (0.2, 0.5, 0.8):
            right = (boxlab.greens(case, xp + h, xp) - boxlab.greens(case, xp, xp)) / h
            left = (boxlab.greens(case, xp, xp) - boxlab.greens(case, xp - h, xp)) / h
            worst = max(worst, abs(right - left - 1.0))
    return worst, 0.0


def _susy_wronskians():
    seed = susy.box_seed()
    k = susy.base_kernel(seed, 0.0, 1.0, inv_sq=lambda x: 1.0 - 1.0 / x)
    osc = susy.base_kernel(susy.oscillator_seed(), 0.0, math.inf)
    vals = [k.wronskian(x) for x in (0.1, 0.4, 0.9)] + [osc.wronskian(x) for x in (0.1, 1.0, 3.0)]
    return max(abs(v - vals[0]) for v in vals), 0.0


def _susy_jump():
    osc = susy.base_kernel(susy.oscillator_seed(), 0.0, math.inf)
    return max(abs(osc.jump(xp) - 1.0) for xp in (0.5, 1.0, 2.0)), 0.0


def _bessel_wronskian():
    worst = 0.0
    for nu in (1 / 6, 1 / 5, 1 / 4, 1 / 3):
        for x in (0.1, 1.0, 5.0, 20.0):
            w = specfun.bessel_i(nu, x) * specfun.bessel_k(nu + 1, x) + specfun.bessel_i(nu + 1, x) * specfun.bessel_k(nu, x)
            worst = max(worst, abs(w * x - 1.0))
    return worst, 0.0


def _series_symmetry():
    s = spectral.KernelSeries(boxlab.BoundaryCase.of(2).spectrum(2000), -1)
    pts = [(0.13, 0.71), (0.4, 0.9), (0.05, 0.55)]
    return max(abs(s(x, y) - s(y, x)) for x, y in pts), 0.0


def _powerlaw_jump():
    p = powerlaw.PowerLawPotential(4.0)
    h, off = 1e-6, 1e-5
    d = lambda x: (powerlaw.greens_even(p, x + h, 1.0) - powerlaw.greens_even(p, x - h, 1.0)) / (2 * h)
    return d(1.0 + off) - d(1.0 - off), 1.0


def _grid_convergence():
    pot = lambda x: x**4
    x_max = eigensolve.x_max_for(pot, 40.0)
    coarse = eigensolve.solve_spectrum(eigensolve.EigenProblem.even(pot, x_max, h=1e-3), 5, tol=1e-12).values
    fine = eigensolve.solve_spectrum(eigensolve.EigenProblem.even(pot, x_max, h=5e-4), 5, tol=1e-12).values
    return float(np.max(np.abs(coarse - fine))), 0.0


def _separable():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(3):
        cf, cg = rng.normal(size=5), rng.normal(size=5)
        f = np.polynomial.Polynomial(cf)
        g = np.polynomial.Polynomial(cg)
        fast = separable_double_integral(f, g, 0.0, 1.0, tol=1e-11)
        slow = iterated_double_integral(lambda x, y: f(min(x, y)) * g(max(x, y)), 0.0, 1.0, tol=1e-10)
        worst = max(worst, abs(fast - slow))
    return worst, 0.0


def _round_trip():
    down = spectral.recur_down(lambda x: x * (1 - x), value=0.0, slope=0.0, far=(1.0, "value", 0.0))
    up = spectral.recur_up(down)
    return max(abs(up(x) - x * (1 - x)) for x in (0.1, 0.3, 0.5, 0.7, 0.9)), 0.0


_add("boxlab.greens.jump", "boxlab", 12, "Cases 1-3: jump of dG/dx across x = x' equals 1", "closed-form", 1e-8, _box_jump)
_add("susy.wronskian", "susy", 12, "box and oscillator kernels: Wronskian spread across the domain", "identity", 1e-8,
     _susy_wronskians)
_add("susy.jump", "susy", 12, "oscillator kernel: jump of dG/dx across x = x' minus 1", "identity", 1e-5, _susy_jump)
_add("specfun.bessel_wronskian", "specfun", 12, "x (I_nu K_nu+1 + I_nu+1 K_nu) - 1 over the nu, x grid", "identity",
     1e-11, _bessel_wronskian)
_add("spectral.symmetry", "spectral", 12, "series g_k(x, x') - g_k(x', x)", "identity", 0.0, _series_symmetry)
_add("spectral.round_trip", "spectral", 12, "recur_up(recur_down(diag)) against diag, Case 1", "identity", 1e-6,
     _round_trip)
_add("powerlaw.greens.jump", "powerlaw", 12, "alpha=4 even kernel: jump of dG/dx at x' = 1", "identity", 1e-4,
     _powerlaw_jump)
_add("eigensolve.grid_convergence", "eigensolve", 12, "U = x^4 even: lowest 5 levels, h=1e-3 against h=5e-4",
     "oracle", 1e-7, _grid_convergence)
_add("quadrature.separable", "quadrature", 12, "separable reduction against iterated 2-D quadrature", "oracle", 1e-8,
     _separable)
_add("reflectionless.bound_state", "reflectionless", 12, "alpha=1 well: single shooting bound state at -1",
     "oracle", 1e-6, lambda: (lambda b: (b[0] if len(b) == 1 else math.nan, -1.0))(reflectionless.bound_states(1.0)))

CHECKS.sort(key=lambda c: c.check_id)
MODULES = tuple(sorted({c.module for c in CHECKS}))
_BY_ID = {c.check_id: c for c in CHECKS}


def select(module=None, criterion=None):
    """Checks for one module and/or one acceptance criterion, in id order."""
    if module is not None and module not in MODULES:
        raise KeyError(f"no checks for module {module!r}; choose from {', '.join(MODULES)}")
    return [
        c for c in CHECKS if (module is None or c.module == module) and (criterion is None or c.criterion == criterion)
    ]


def run_check(check_id):
    return _BY_ID[check_id].run()


def run_checks(checks, jobs=1):
    """Run ``checks``, in worker processes when ``jobs > 1``; results come back sorted by id."""
    ids = [c.check_id for c in checks]
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_check, ids))
    else:
        reports = [run_check(i) for i in ids]
    return sorted(reports, key=lambda r: r.check_id)
