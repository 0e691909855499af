"""One-off extended-precision reference values.

Run once with ``python tools/oracles.py``; the printed numbers are frozen
into the test-suite.  Nothing in ``src/`` imports this file, and mpmath is
only needed here.
"""

import mpmath as mp

mp.mp.dps = 40


def gamma_product(x):
    # Gamma via Euler's limit product, accelerated by the recurrence:
    # Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)), Stirling for Gamma(x + n).
    n = 60
    shifted = x + n
    lg = (shifted - mp.mpf(1) / 2) * mp.log(shifted) - shifted + mp.log(2 * mp.pi) / 2
    corr = mp.mpf(0)
    bern = [mp.bernoulli(2 * k) for k in range(1, 12)]
    for k, b in enumerate(bern, start=1):
        corr += b / (2 * k * (2 * k - 1) * shifted ** (2 * k - 1))
    g = mp.exp(lg + corr)
    for i in range(n):
        g /= x + i
    return g


def bessel_i_series(nu, x, terms=200):
    half = mp.mpf(x) / 2
    total = mp.mpf(0)
    for m in range(terms):
        total += half ** (2 * m + nu) / (mp.factorial(m) * mp.gamma(m + nu + 1))
    return total


def spherical_j1_series(x, terms=30):
    # j1(x) = sum_k (-1)^k x^(2k+1) / (2^k k! (2k+3)!!)
    total = mp.mpf(0)
    for k in range(terms):
        total += (-1) ** k * x ** (2 * k + 1) / (2**k * mp.factorial(k) * mp.fac2(2 * k + 3))
    return total


def dawson_taylor(x, terms=200):
    # F(x) = sum_n (-1)^n 2^n x^(2n+1) / (2n+1)!!
    total = mp.mpf(0)
    for n in range(terms):
        total += (-1) ** n * 2**n * x ** (2 * n + 1) / mp.fac2(2 * n + 1)
    return total


def quartic_ground_state(h=1e-4, xmax=6.0):
    """Scalar Numerov + bisection for U = x^4, even parity, in floats.

    Uses the summed (difference) form w_{n+1} - w_n = d_n, d_n - d_{n-1} = c_n w_n
    so the energy enters through c_n rather than through 12 - 10 f_n, which
    loses ~7 digits to cancellation at h = 1e-4.
    """
    n = int(round(xmax / h))

    def nodes(e):
        def c(x):
            g = h * h * (x**4 - e) / 12.0
            return 12.0 * g / (1.0 - g)

        # even start: w_{-1} = w_1  =>  w_1 - w_0 = c_0 w_0 / 2
        w = 1.0
        d = 0.5 * c(0.0) * w
        count = 0
        prev = w
        for i in range(1, n + 1):
            w = w + d
            if w * prev < 0:
                count += 1
            prev = w
            d = d + c(i * h) * w
        return count

    lo, hi = 0.5, 2.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if nodes(mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


if __name__ == "__main__":
    print("gamma(1/3)          ", mp.nstr(gamma_product(mp.mpf(1) / 3), 20))
    print("I_{1/6}(2)          ", mp.nstr(bessel_i_series(mp.mpf(1) / 6, 2), 20))
    print("j1(0.05)            ", mp.nstr(spherical_j1_series(mp.mpf("0.05")), 20))
    print("dawson(1)           ", mp.nstr(dawson_taylor(mp.mpf(1)), 20))
    print("quartic E0 (Numerov)", repr(quartic_ground_state()))
