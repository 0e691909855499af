import math

import numpy as np
import pytest

from greensum import reflectionless as rl
from greensum.errors import DomainError


def test_soliton_potential():
    assert rl.soliton_potential(1.0, 0.0) == -2.0
    xs = np.linspace(-3, 3, 13)
    assert np.allclose(rl.soliton_potential(0.7, xs), rl.SolitonSpectrum.single(0.7).potential(xs), rtol=1e-14)
    with pytest.raises(DomainError):
        rl.soliton_potential(-1.0, 0.0)


def test_potential_integral():
    r = rl.line_integral(lambda x: rl.soliton_potential(1.0, x), 1.0)
    assert r.value == pytest.approx(-4.0, abs=1e-8)
    assert r.tail_bound < 1e-20


def test_psi_normalised():
    s = rl.SolitonSpectrum.single(0.5)
    assert rl.line_integral(lambda x: s.psi(x) ** 2, 0.5).value == pytest.approx(1.0, abs=1e-10)
    assert s.energies == (-0.25,)


def test_multi_soliton_eigenfunctions_not_built():
    s = rl.SolitonSpectrum((1.0, 2.0))
    assert s.energies == (-1.0, -4.0)
    with pytest.raises(NotImplementedError):
        s.psi(0.0)
    with pytest.raises(DomainError):
        rl.SolitonSpectrum(())


def test_lax_k0_is_potential():
    xs = np.linspace(-4, 4, 17)
    assert np.allclose(rl.lax_diag(0, 1.3, xs), rl.soliton_potential(1.3, xs), rtol=1e-14)


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_lax_sum_rules(k, alpha):
    r = rl.line_integral(lambda x: rl.lax_diag(k, alpha, x), alpha)
    assert r.value == pytest.approx(-2 * (2 * alpha) ** (2 * k + 1), abs=1e-8)
    assert rl.lax_integral(k, alpha) == -2 * (2 * alpha) ** (2 * k + 1)


def test_lax_examples():
    assert rl.lax_integral(1, 1.0) == -16.0
    assert rl.lax_integral(2, 0.5) == -2.0
    with pytest.raises(DomainError):
        rl.lax_diag(-1, 1.0, 0.0)


def test_recursion_residual():
    xs = np.linspace(-3, 3, 61)
    assert np.max(np.abs(rl.lax_recursion_residual(0, 1.0, xs))) < 1e-5
    assert np.max(np.abs(rl.lax_recursion_residual(0, 1.0, np.array([-40.0, 40.0])))) < 1e-12


def test_recursion_scale_covariance():
    # L_k at alpha scales as alpha**(2k+3) f(alpha x); the residual picks up alpha**(2k+6)
    xs = np.linspace(-2, 2, 9)
    r1 = rl.lax_recursion_residual(0, 1.0, xs, h=1e-3)
    r2 = rl.lax_recursion_residual(0, 2.0, xs / 2, h=5e-4)
    assert np.allclose(r2, 2.0**6 * r1, atol=64 * 1e-5)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_prefactor(k):
    assert rl.lax_prefactor(k) == (-2 * 2 ** (2 * k + 1), 0)


def test_bound_states():
    assert rl.bound_states(1.0) == pytest.approx([-1.0], abs=1e-6)
    assert rl.bound_states(0.5) == pytest.approx([-0.25], abs=1e-6)
    assert len(rl.bound_states(2.0)) == 1
