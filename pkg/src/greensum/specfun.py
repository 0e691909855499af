"""Special functions used by the closed forms.

Everything here is double precision and scalar at heart; the public
functions broadcast over numpy arrays through :func:`numpy.vectorize`.

Modified Bessel functions follow Temme's method: a series for K near the
origin (x < 2), Steed's continued fraction for K above that, and the
Wronskian plus a continued fraction for I'/I to recover I.  Beyond x = 50
the Hankel asymptotic series takes over.  All branches return
exponentially scaled values so that I(z) K(z') products stay finite
for large arguments.
"""

import math
from functools import wraps

import numpy as np

from .errors import DomainError, PoleError

__all__ = [
    "gamma",
    "bessel_i",
    "bessel_k",
    "bessel_ie",
    "bessel_ke",
    "spherical_j1",
    "dawson",
    "erfc",
    "erfcx",
]

_EPS = 1e-16
_FPMIN = 1e-300
_MAXIT = 100000
_SQRT_PI = math.sqrt(math.pi)

# Stirling series coefficients B_2k / (2k (2k-1)).
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Taylor coefficients of 1/Gamma(1+z) about z = 0.
_RGAMMA1P = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
)


def _elementwise(func):
    vec = np.vectorize(func, otypes=[float])

    @wraps(func)
    def wrapper(*args):
        if any(np.ndim(a) for a in args):
            return vec(*args)
        return func(*(float(a) for a in args))

    return wrapper


def _gamma_positive(x):
    # x >= 0.5: shift up to the Stirling range, then divide the shift back out
    shift = 1.0
    while x < _STIRLING_MIN:
        shift *= x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    lg = (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series * inv
    return math.exp(lg) / shift


@_elementwise
def gamma(x):
    """Gamma function for real ``x``; raises :class:`PoleError` at 0, -1, -2, ..."""
    if not math.isfinite(x):
        raise DomainError(f"gamma needs a finite argument, got {x}")
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > 171.62:
        raise OverflowError(f"gamma({x}) overflows double precision")
    if x >= 0.5:
        return _gamma_positive(x)
    # reflection; reduce the sine argument first so sin(pi x) keeps full accuracy
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r) * (-1.0 if n % 2 else 1.0)
    return math.pi / (s * _gamma_positive(1.0 - x))


def _rgamma1p_parts(mu):
    """Return 1/Gamma(1+mu), 1/Gamma(1-mu) and Temme's gam1, gam2 for |mu| <= 1/2."""
    mu2 = mu * mu
    even = 0.0  # sum over even m of b_m mu^m
    odd = 0.0  # sum over odd m of b_m mu^(m-1)
    p = 1.0
    for m in range(0, len(_RGAMMA1P), 2):
        even += _RGAMMA1P[m] * p
        if m + 1 < len(_RGAMMA1P):
            odd += _RGAMMA1P[m + 1] * p
        p *= mu2
    return even + mu * odd, even - mu * odd, -odd, even


_ASYMPTOTIC_X = 50.0


def _bessel_ik_asymptotic(nu, x):
    # Hankel expansions; the e^{-2x} correction to I is below double precision here
    mu = 4.0 * nu * nu
    term = 1.0
    si = sk = 1.0
    k = 0
    while True:
        k += 1
        new = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(new) >= abs(term) or abs(new) < _EPS:
            break
        term = new
        sk += term
        si += term if k % 2 == 0 else -term
    return si / math.sqrt(2.0 * math.pi * x), sk * math.sqrt(math.pi / (2.0 * x))


def _bessel_ik_scaled(nu, x):
    """e^{-x} I_nu(x) and e^{x} K_nu(x) for nu >= 0, x > 0."""
    if x > _ASYMPTOTIC_X:
        return _bessel_ik_asymptotic(nu, x)
    nl = int(nu + 0.5)
    mu = nu - nl
    mu2 = mu * mu
    xi = 1.0 / x
    xi2 = 2.0 * xi

    # CF1: h = I'_nu / I_nu
    h = max(nu * xi, _FPMIN)
    b = xi2 * nu
    d = 0.0
    c = h
    for _ in range(_MAXIT):
        b += xi2
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"continued fraction for I'/I failed at x={x}")

    ril = _FPMIN
    ripl = h * ril
    ril1 = ril
    fact = nu * xi
    for _ in range(nl):
        ritemp = fact * ril + ripl
        fact -= xi
        ripl = fact * ritemp + ril
        ril = ritemp
    f = ripl / ril

    if x < 2.0:
        x2 = 0.5 * x
        pimu = math.pi * mu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = mu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gampl, gammi, gam1, gam2 = _rgamma1p_parts(mu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - mu2)
            c *= d / i
            p /= i - mu
            q /= i + mu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if abs(delta) < abs(total) * _EPS:
                break
        scale = math.exp(x)
        rkmu = total * scale
        rk1 = total1 * xi2 * scale
    else:
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = delh = d
        q1 = 0.0
        q2 = 1.0
        a1 = 0.25 - mu2
        q = c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, _MAXIT):
            a -= 2 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1 = q2
            q2 = qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < _EPS:
                break
        else:
            raise ArithmeticError(f"continued fraction for K failed at x={x}")
        h = a1 * h
        rkmu = math.sqrt(math.pi / (2.0 * x)) / s
        rk1 = rkmu * (mu + x + 0.5 - h) * xi

    rkmup = mu * xi * rkmu - rk1
    rimu = xi / (f * rkmu - rkmup)
    ri = rimu * ril1 / ril
    for i in range(1, nl + 1):
        rktemp = (mu + i) * xi2 * rk1 + rkmu
        rkmu = rk1
        rk1 = rktemp
    return ri, rkmu


def _check_bessel_args(nu, x):
    if not x > 0.0:
        raise DomainError(f"modified Bessel functions need x > 0, got {x}")
    if abs(nu) > 2.0:
        raise DomainError(f"order |nu| <= 2 supported, got {nu}")


@_elementwise
def bessel_ie(nu, x):
    """Exponentially scaled ``exp(-x) * I_nu(x)``."""
    _check_bessel_args(nu, x)
    if nu >= 0.0:
        return _bessel_ik_scaled(nu, x)[0]
    ie, ke = _bessel_ik_scaled(-nu, x)
    if -nu == math.floor(-nu):
        return ie
    return ie + (2.0 / math.pi) * math.sin(-nu * math.pi) * ke * math.exp(-2.0 * x)


@_elementwise
def bessel_ke(nu, x):
    """Exponentially scaled ``exp(x) * K_nu(x)``."""
    _check_bessel_args(nu, x)
    return _bessel_ik_scaled(abs(nu), x)[1]


@_elementwise
def bessel_i(nu, x):
    """Modified Bessel function of the first kind, real order ``|nu| <= 2``."""
    return bessel_ie(nu, x) * math.exp(x)


@_elementwise
def bessel_k(nu, x):
    """Modified Bessel function of the second kind, real order ``|nu| <= 2``."""
    return bessel_ke(nu, x) * math.exp(-x)


@_elementwise
def spherical_j1(x):
    """Spherical Bessel function ``j1(x) = sin x / x**2 - cos x / x``."""
    if abs(x) < 0.1:
        x2 = x * x
        return x * (1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 * (1.0 / 45360.0 - x2 / 3991680.0))))
    return math.sin(x) / (x * x) - math.cos(x) / x


@_elementwise
def dawson(x):
    """Dawson's integral ``F(x) = exp(-x**2) * int_0^x exp(t**2) dt``."""
    ax = abs(x)
    if ax <= 6.0:
        # int_0^x e^{t^2} dt = sum x^{2n+1} / (n! (2n+1)); positive terms, no cancellation
        x2 = ax * ax
        term = ax
        total = ax
        n = 0
        while True:
            n += 1
            term *= x2 / n
            add = term / (2 * n + 1)
            total += add
            if add <= total * _EPS:
                break
        val = total * math.exp(-x2)
    else:
        # asymptotic: F ~ (1/2x) sum (2n-1)!! / (2x^2)^n
        inv = 1.0 / (2.0 * ax * ax)
        term = 1.0
        total = 1.0
        n = 0
        while True:
            n += 1
            new = term * (2 * n - 1) * inv
            if new > term or new < total * _EPS:
                break
            term = new
            total += term
        val = total / (2.0 * ax)
    return math.copysign(val, x)


def _erfcx_nonneg(x):
    if x <= 2.0:
        # erf(x) = (2/sqrt(pi)) e^{-x^2} sum 2^n x^{2n+1} / (2n+1)!!
        x2 = x * x
        term = x
        total = x
        n = 0
        while term > total * _EPS:
            n += 1
            term *= 2.0 * x2 / (2 * n + 1)
            total += term
        erf_val = 2.0 / _SQRT_PI * math.exp(-x2) * total
        return math.exp(x2) * (1.0 - erf_val)
    # sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz
    f = x
    c = x
    d = 0.0
    for k in range(1, _MAXIT):
        ak = 0.5 * k
        d = x + ak * d
        d = 1.0 / (d if d != 0.0 else _FPMIN)
        c = x + ak / c
        if c == 0.0:
            c = _FPMIN
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return 1.0 / (_SQRT_PI * f)


@_elementwise
def erfcx(x):
    """Scaled complementary error function ``exp(x**2) * erfc(x)``."""
    if x >= 0.0:
        return _erfcx_nonneg(x)
    return 2.0 * math.exp(x * x) - _erfcx_nonneg(-x)


@_elementwise
def erfc(x):
    """Complementary error function ``(2/sqrt(pi)) * int_x^inf exp(-t**2) dt``."""
    if x >= 0.0:
        if x > 27.3:
            return 0.0
        return _erfcx_nonneg(x) * math.exp(-x * x)
    if x < -6.0:
        return 2.0
    return 2.0 - _erfcx_nonneg(-x) * math.exp(-x * x)
