import json
import math

import numpy as np
import pytest

from zetakit.explicit import (ExplicitFormulaReport, convergence_csv, convergence_table,
                              count_check, default_tau_grid, identity_residual,
                              local_factor_line_integral, log_chi_derivative,
                              von_mangoldt_sides, weil_arch_term, weil_prime_side,
                              weil_report, weil_zero_side, zero_tail_estimate, zeros_below)
from zetakit.specfun import chi_plus, digamma, mangoldt
from zetakit.testfn import bump, bump_on, dilate, involute, mellin_left
from zetakit.zeros import ZeroList


@pytest.fixture(scope="module")
def zeros500(zeros2000):
    return zeros2000.head(500)


def _prime_oracle(g):
    a, b = g.support
    total = 0.0
    for n in range(2, int(max(b, 1 / a)) + 2):
        lam = mangoldt(n)
        if lam:
            total += lam * (g(float(n)) + g(1.0 / n) / n)
    return -total


def test_zero_function(zeros500):
    z = bump_on(1, 40) * 0.0
    assert weil_zero_side(z, zeros500) == 0
    assert weil_prime_side(z) == 0
    assert weil_arch_term(z, np.linspace(-10, 10, 201)) == 0


def test_zero_side_real_for_symmetric_g(zeros500):
    g = bump_on(0.5, 2.0)
    s = g + involute(g)
    zs = weil_zero_side(s, zeros500)
    assert abs(zs.imag) < 1e-10


@pytest.mark.parametrize("a,b", [(1.0, 50.0), (0.05, 1.0), (0.1, 8.0), (0.3, 3.5)])
def test_prime_side_support(a, b):
    g = bump_on(a, b)
    assert abs(weil_prime_side(g) - _prime_oracle(g)) < 1e-13


def test_prime_side_one_sided():
    hi = bump_on(1.0, 50.0)
    # only n <= 50 enter, and none of the g(1/n) terms
    ref = -sum(mangoldt(n) * hi(float(n)) for n in range(2, 50))
    assert abs(weil_prime_side(hi) - ref) < 1e-13
    lo = bump_on(0.02, 1.0)
    ref = -sum(mangoldt(n) * lo(1.0 / n) / n for n in range(2, 51))
    assert abs(weil_prime_side(lo) - ref) < 1e-13


def test_prime_side_narrow_bump():
    g = bump(math.log(3), 0.05)
    assert abs(weil_prime_side(g) + math.log(3) * g(3.0)) < 1e-15


def test_log_chi_derivative():
    for s in (0.5 + 3j, 0.5 + 40j, 2.0 - 1j):
        h = 1e-6
        num = (np.log(chi_plus(s + h)) - np.log(chi_plus(s - h))) / (2 * h)
        assert abs(log_chi_derivative(s) - num) < 1e-7
    s = 0.5 + 7j
    ref = math.log(math.pi) - 0.5 * digamma((1 - s) / 2) - 0.5 * digamma(s / 2)
    assert abs(log_chi_derivative(s) - ref) < 1e-15


def test_arch_grid_halving():
    g = bump_on(1.0, 40.0)
    tau = default_tau_grid(g)
    coarse = weil_arch_term(g, tau)
    fine = weil_arch_term(g, default_tau_grid(g, step=0.05))
    assert abs(coarse - fine) < 1e-8


@pytest.mark.parametrize("p", [2, 3, 5])
def test_single_prime_line_integral(p):
    g = bump_on(0.5, 20.0)
    line = local_factor_line_integral(g, p)
    direct = 0.0
    k = 1
    while p ** -k >= g.support[0] or p ** k <= g.support[1]:
        direct += g(float(p ** k)) + p ** -k * g(float(p) ** -k)
        k += 1
    assert abs(line + math.log(p) * direct) < 1e-7


def test_weil_identity_closes(zeros500):
    g = bump_on(1.0, 40.0)
    rep = weil_report(g, zeros500)
    assert rep.residual < 1e-6
    assert rep.zeros_used == 500
    # the form with the archimedean sign flipped misses by a wide margin
    assert abs(rep.zero_side - (rep.arch_term - rep.prime_side)) > 1.0


def test_weil_dilation(zeros500):
    g = bump_on(1.0, 40.0)
    for theta in (0.5, 0.25):
        rep = weil_report(dilate(g, theta), zeros500)
        assert rep.residual < 1e-6
    s = 0.5 + 10j
    assert abs(mellin_left(dilate(g, 0.5), s) - 0.5 ** s * mellin_left(g, s)) < 1e-10


def test_tail_bounds_zero_doubling(zeros2000):
    g = bump_on(0.5, 20.0)
    z500, tail = weil_zero_side(g, zeros2000.head(500), return_tail=True)
    z1000 = weil_zero_side(g, zeros2000.head(1000))
    assert abs(z1000 - z500) <= tail
    assert zero_tail_estimate(g, 1e4) < zero_tail_estimate(g, 100.0)


def test_report_serialisation(zeros500):
    g = bump_on(0.5, 20.0)
    rep = weil_report(g, zeros500.head(50))
    d = json.loads(rep.to_json())
    assert set(d) == {"zero_side", "prime_side", "arch_term", "pole_terms", "residual",
                      "zeros_used", "tail_estimate"}
    assert d["zero_side"]["re"] == rep.zero_side.real
    assert d["residual"] == identity_residual(rep.zero_side, rep.prime_side, rep.arch_term)
    poles = mellin_left(g, 0.0) + mellin_left(g, 1.0)
    assert abs(rep.pole_terms - poles.real) < 1e-15
    assert isinstance(rep, ExplicitFormulaReport)


def test_von_mangoldt_at_10_5(zeros2000):
    lhs, rhs = von_mangoldt_sides(10.5, zeros2000)
    assert abs(lhs - math.log(2520)) < 1e-12
    assert abs(lhs - rhs) < 0.02


def test_von_mangoldt_below_two(zeros2000):
    lhs, rhs = von_mangoldt_sides(1.5, zeros2000)
    assert lhs == 0
    assert abs(rhs) < 0.02


def test_von_mangoldt_arguments(zeros2000):
    with pytest.raises(ValueError):
        von_mangoldt_sides(1.0, zeros2000)
    with pytest.raises(ValueError):
        von_mangoldt_sides(10.5, ZeroList(()))


def test_convergence_table(zeros2000):
    rows = convergence_table(10.5, zeros2000)
    assert [r[0] for r in rows] == [100, 200, 400, 800, 1600, 2000]
    env = [r[2] for r in rows]
    assert all(b <= a for a, b in zip(env, env[1:]))
    lhs, rhs = von_mangoldt_sides(10.5, zeros2000)
    assert abs(rows[-1][1] - (lhs - rhs)) < 1e-12
    text = convergence_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "zeros_used,residual"
    assert len(lines) == 7
    assert int(lines[1].split(",")[0]) == 100


def test_count_helpers(zeros2000):
    assert zeros_below(zeros2000, 14.0) == 0
    assert zeros_below(zeros2000, 25.1) == 3
    n, est = count_check(zeros2000, 100.0)
    assert n == 29 and abs(n - est) <= 1
