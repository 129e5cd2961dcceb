import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from zetakit.specfun import zeta
from zetakit.testfn import (DivergenceError, bump, bump_on, conductor_contract, dilate,
                            enforce_moments, fractional_part_dilate, indicator, integral,
                            integral_over_t, involute, mellin, mellin_left, power_weight)


def _quad_mellin(f, s):
    a, b = f.support
    re = quad(lambda t: (f(t) * t ** (-s)).real, a, b, limit=400, epsabs=1e-14)[0]
    im = quad(lambda t: (f(t) * t ** (-s)).imag, a, b, limit=400, epsabs=1e-14)[0]
    return re + 1j * im


def test_bump_basics():
    g = bump(0.0, math.log(2), 1.0)
    assert np.allclose(g.support, (0.5, 2.0), rtol=1e-15)
    assert abs(g(1.0) - math.exp(-1)) < 1e-15
    assert g(0.5) == 0 and g(2.0) == 0 and g(3.0) == 0
    assert abs(g.derivative(0.5 + 1e-9)) < 1e-15
    assert abs(g.derivative(2.0 - 1e-9)) < 1e-15
    with pytest.raises(ValueError):
        bump(0.0, 0.0)


def test_bump_derivative_by_differences():
    g = bump_on(0.7, 3.0, 2.5)
    t = np.linspace(0.8, 2.9, 37)
    h = 1e-6
    fd = (g(t + h) - g(t - h)) / (2 * h)
    assert np.max(np.abs(fd - g.derivative(t))) < 1e-7


def test_dilate():
    g = bump_on(0.5, 2.0)
    assert dilate(g, 1.0) is g
    d = dilate(g, 0.25)
    assert np.allclose(d.support, (0.125, 0.5))
    s = 0.3 + 4.0j
    assert abs(mellin(d, s) - 0.25 ** (1 - s) * mellin(g, s)) < 1e-10
    assert abs(mellin(d, s) - _quad_mellin(d, s)) < 1e-10


def test_involute():
    g = bump_on(0.3, 1.7, 1.3)
    ii = involute(involute(g))
    t = np.linspace(0.2, 2.0, 301)
    assert np.max(np.abs(ii(t) - g(t))) < 1e-14
    assert np.allclose(involute(bump_on(0.5, 2.0)).support, (0.5, 2.0))
    s = 0.2 + 3.0j
    # involution swaps right and left transforms
    assert abs(mellin(involute(g), s) - mellin_left(g, s)) < 1e-11


def test_conductor_contract():
    g = bump_on(1.0, 2.0)
    assert conductor_contract(g, 1) is g
    c = conductor_contract(g, 4)
    assert np.allclose(c.support, (0.25, 0.5))
    s = 0.5 + 7.0j
    assert abs(mellin(c, s) - 4 ** (s - 0.5) * mellin(g, s)) < 1e-10
    with pytest.raises(ValueError):
        conductor_contract(g, 0)


def test_power_weight_shift():
    g = bump_on(0.5, 3.0)
    s = 0.4 + 2.0j
    assert abs(mellin(power_weight(g, 0.5), s) - mellin(g, s - 0.5)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(-1.5, 1.5), st.floats(0.05, 1.5), st.floats(-2, 3), st.floats(-30, 30))
def test_mellin_matches_adaptive_quadrature(m, h, sr, si):
    g = bump(m, h)
    s = complex(sr, si)
    ref = _quad_mellin(g, s)
    assert abs(mellin(g, s) - ref) < 1e-9 * max(1.0, abs(ref))


def test_mellin_order_doubling():
    g = bump_on(0.2, 9.0)
    s = np.array([0.5 + 1j * t for t in (0.0, 10.0, 80.0, 400.0)])
    assert np.max(np.abs(mellin(g, s, order=256) - mellin(g, s, order=512))) < 1e-10


def test_mellin_vectorised_equals_scalar():
    g = bump_on(0.5, 2.0)
    s = np.array([0.5 + 2j, 1.5 - 40j, -1 + 700j])
    vec = mellin(g, s)
    assert np.allclose(vec, [mellin(g, complex(x)) for x in s], atol=1e-15)


def test_left_mellin_of_frac_is_zeta():
    f = fractional_part_dilate(1.0)
    for s in (0.5 + 2j, 0.3 + 11j, 0.8 - 5j):
        assert abs(mellin_left(f, s) + zeta(s) / s) < 1e-10


def test_frac_mellin_dilation():
    s = 0.5 + 3j
    a = 0.37
    assert abs(mellin(fractional_part_dilate(a), s)
               - a ** (1 - s) * mellin(fractional_part_dilate(1.0), s)) < 1e-12


def test_frac_divergence():
    with pytest.raises(DivergenceError):
        mellin(fractional_part_dilate(1.0), 1.2 + 0j)
    with pytest.raises(DivergenceError):
        mellin(fractional_part_dilate(1.0), -0.1 + 1j)


def test_indicator_mellin():
    for s in (0.5 + 2j, -1.0 + 0j, 0.9 + 0.1j):
        assert abs(mellin(indicator(), s) - 1 / (1 - s)) < 1e-14
    with pytest.raises(DivergenceError):
        mellin(indicator(), 1.5 + 0j)


def test_fractional_part_values():
    f = fractional_part_dilate(1.0)
    assert abs(f(2.5) - 0.4) < 1e-15
    assert abs(f(0.4) - 0.5) < 1e-15
    g = fractional_part_dilate(0.7)
    t = np.array([0.8, 1.0, 5.0])
    assert np.allclose(g(t), 0.7 / t, rtol=0, atol=1e-16)
    bp = g.breakpoints(0.3)
    assert np.all(np.diff(bp) > 0) and bp[-1] <= 0.3
    assert np.allclose(bp[::-1][:10], 0.7 / np.arange(3, 13), rtol=1e-15)
    with pytest.raises(ValueError):
        fractional_part_dilate(0.0)


def test_integrals():
    g = bump_on(0.5, 2.0)
    ref = quad(g, 0.5, 2.0, epsabs=1e-15)[0]
    assert abs(integral(g) - ref) < 1e-13
    ref_t = quad(lambda t: g(t) / t, 0.5, 2.0, epsabs=1e-15)[0]
    assert abs(integral_over_t(g) - ref_t) < 1e-13


@pytest.mark.parametrize("a,b", [(0.5, 2.0), (1.0, 40.0), (0.1, 0.3)])
def test_enforce_moments(a, b):
    g = bump_on(a, b)
    h = enforce_moments(g)
    scale = integral(g)
    assert abs(integral(h)) < 1e-12 * scale
    assert abs(integral_over_t(h)) < 1e-12 * max(scale, integral_over_t(g))
    assert h.support == g.support
    again = enforce_moments(h)
    t = np.linspace(a, b, 201)
    assert np.max(np.abs(again(t) - h(t))) < 1e-12 * np.max(np.abs(g(t)))


def test_enforce_single_moment():
    g = bump_on(0.5, 2.0)
    assert abs(integral(enforce_moments(g, "mass"))) < 1e-14
    assert abs(integral_over_t(enforce_moments(g, "inverse"))) < 1e-14
    with pytest.raises(ValueError):
        enforce_moments(g, "neither")


def test_linear_structure():
    f = bump_on(0.5, 2.0)
    g = bump_on(1.0, 3.0, 2.0)
    t = np.linspace(0.4, 3.1, 50)
    assert np.allclose((f + g)(t), f(t) + g(t))
    assert np.allclose((f - 2.0 * g)(t), f(t) - 2 * g(t))
    assert np.allclose((-f)(t), -f(t))
    assert np.allclose((f + g).support, (0.5, 3.0), rtol=1e-15)
    s = 0.5 + 5j
    assert abs(mellin(f + g, s) - mellin(f, s) - mellin(g, s)) < 1e-10


def test_support_validation():
    with pytest.raises(ValueError):
        dilate(bump_on(1, 2), -1.0)
