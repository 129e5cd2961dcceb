import csv
import io
import math

import numpy as np
import pytest

from zetakit.nymanbeurling import (BOUND_COLUMNS, ZeroModesError, bound_csv, bound_report,
                                   dictionary_grid, gram_matrix, ip_cross, ip_frac,
                                   product_mean, solve_distance, solve_gram)
from zetakit.zeros import zero_sum_inv_sq

GAMMA = 0.5772156649015329


def _exact_ip(a, b, U=1e6, mean=0.25):
    """int_0^U {a u}{b u} u^-2 du piece by piece in closed form, plus mean/U."""
    bp = np.unique(np.concatenate([np.arange(1, math.floor(U * a) + 1) / a,
                                   np.arange(1, math.floor(U * b) + 1) / b, [U]]))
    u1, u2 = bp[:-1], bp[1:]
    d = u2 - u1
    mid = 0.5 * (u1 + u2)
    j, k = np.floor(a * mid), np.floor(b * mid)
    # (a u - j)(b u - k) / u^2 = a b - (a k + b j)/u + j k/u^2, integrated stably
    body = a * b * d - (a * k + b * j) * np.log1p(d / u1) + j * k * d / (u1 * u2)
    # on (0, 1/max(a, b)) the integrand is a b
    return a * b / max(a, b) + math.fsum(body) + mean / U


def test_ip_frac_diagonal_closed_form():
    val, err = ip_frac(1.0, 1.0, return_error=True)
    ref = math.log(2 * math.pi) - GAMMA
    assert abs(val - ref) < 1e-12
    assert abs(ref - 1.2606614) < 1e-7
    assert err < 1e-8
    assert abs(_exact_ip(1.0, 1.0, mean=1 / 3) - ref) < 1e-10


@pytest.mark.parametrize("a,b,mean", [
    (1.0, 2.0, 0.25 + 1 / 24),
    (1.0, 2 ** 0.125, 0.25),
    (0.3, 0.7, 0.25 + 1 / 252),
    (0.5, 0.8, 0.25 + 1 / 480),
])
def test_ip_frac_exact_oracle(a, b, mean):
    assert abs(product_mean(a, b) - mean) < 1e-15
    ref = _exact_ip(a, b, mean=mean)
    val, err = ip_frac(a, b, return_error=True)
    assert abs(val - ref) < 1e-9
    assert err < 1e-7


def test_ip_frac_symmetry_and_scaling():
    rng = np.random.default_rng(3)
    for a, b in rng.uniform(0.1, 1.0, size=(5, 2)):
        assert abs(ip_frac(a, b) - ip_frac(b, a)) < 1e-12
        for c in (0.5, 3.0):
            assert abs(ip_frac(c * a, c * b) - c * ip_frac(a, b)) < 1e-9
    with pytest.raises(ValueError):
        ip_frac(0.0, 1.0)


def test_ip_cross():
    assert abs(ip_cross(1.0) - (1 - GAMMA)) < 1e-12
    for th in (0.7, 0.2, 1e-3):
        assert abs(ip_cross(th) - th * (1 - GAMMA - math.log(th))) < 1e-12
    assert ip_cross(1e-3) < 1e-3 * math.log(1e3) + 1e-3
    # increasing up to theta = e^-gamma, where d/dtheta = -gamma - log theta vanishes
    peak = math.exp(-GAMMA)
    up = np.array([ip_cross(t) for t in np.linspace(0.01, peak, 40)])
    down = np.array([ip_cross(t) for t in np.linspace(peak, 1.0, 20)])
    assert np.all(np.diff(up) > 0) and np.all(np.diff(down) < 0)
    with pytest.raises(ValueError):
        ip_cross(1.5)


def test_distance_single_function():
    sys = solve_distance(1.0, n=1)
    ref = 1 - (1 - GAMMA) ** 2 / (math.log(2 * math.pi) - GAMMA)
    assert abs(sys.D2 - ref) < 1e-10
    assert abs(sys.D2 - 0.8582) < 1e-4


def test_gram_invariants():
    sys = solve_distance(0.1)
    G = sys.G
    assert np.max(np.abs(G - G.T)) < 1e-10
    ev = np.linalg.eigvalsh(G)
    assert ev.min() >= -1e-8 * ev.max()
    assert 0 <= sys.D2 <= 1
    assert sys.normal_residual < 1e-8
    assert sys.lam == 0.1
    assert sys.n == dictionary_grid(0.1).size


def test_dictionary_nesting():
    coarse = dictionary_grid(0.1, 4)
    fine = dictionary_grid(0.1, 8)
    assert set(np.round(coarse, 14)) <= set(np.round(fine, 14))
    small = dictionary_grid(0.05, 8)
    assert set(np.round(fine, 14)) <= set(np.round(small, 14))
    assert dictionary_grid(1.0).tolist() == [1.0]
    with pytest.raises(ValueError):
        dictionary_grid(0.0)


def test_monotone_under_refinement():
    d = [solve_distance(0.1, per_octave=p).D2 for p in (2, 4, 8)]
    assert d[0] >= d[1] >= d[2]
    lam = [solve_distance(l, per_octave=4).D2 for l in (0.4, 0.2, 0.1)]
    assert lam[0] >= lam[1] >= lam[2]


def test_subdictionary_upper_bound():
    full = solve_distance(0.2)
    sub = solve_gram(full.thetas[::3])
    assert full.D2 <= sub.D2 + 1e-12


def test_n_doubling():
    a = solve_distance(0.2, n=4).D2
    b = solve_distance(0.2, n=7).D2  # geomspace with 7 points contains the 4-point grid
    assert b <= a + 1e-12


def test_zero_modes_error():
    with pytest.raises(ZeroModesError):
        solve_gram([1.0, 0.5], svd_cutoff=2.0)


def test_gram_matrix_entries():
    th = [1.0, 0.5]
    G = gram_matrix(th)
    assert abs(G[0, 1] - ip_frac(1.0, 0.5)) < 1e-15


def test_bound_report(zeros2000):
    systems = [solve_distance(l, per_octave=4) for l in (0.2, 0.1, 0.05)]
    rows = bound_report(systems, zeros2000)
    assert [r["lambda"] for r in rows] == [0.2, 0.1, 0.05]
    zs = zero_sum_inv_sq(zeros2000)
    for r, s in zip(rows, systems):
        assert r["zerosum"] == zs
        assert r["n"] == s.n
        assert math.isfinite(r["logscaled"])
        assert abs(r["logscaled"] - abs(math.log(r["lambda"])) * r["D2"]) < 1e-15
    assert abs(zero_sum_inv_sq(zeros2000, weighting="squared") - zs) == 0
    text = bound_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert tuple(parsed[0]) == BOUND_COLUMNS
    assert len(parsed) == 4
    with pytest.raises(ValueError):
        bound_report([systems[0], systems[0]], zeros2000)
