"""Nyman-Beurling distance: least-squares approximation of 1_(0,1) in
L^2(0, inf) by combinations of {theta/t}, lambda <= theta <= 1.

Inner products reduce to integrals of products of sawtooth functions,
    <{a/t}, {b/t}> = int_0^inf {a u}{b u} u^-2 du,
which are summed panel by panel between breakpoints k/a, k/b.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._quad import panel_nodes
from .specfun import digamma
from .zeros import ZeroList, zero_sum_inv_sq


class ZeroModesError(np.linalg.LinAlgError):
    """The spectral cutoff discarded every mode of the Gram matrix."""


def _smooth_step(x):
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        e0 = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        e1 = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return e0 / (e0 + e1)


def product_mean(a: float, b: float, max_den: int = 64) -> float:
    """Long-run mean of {a u}{b u}.

    1/4 + 1/(12 p q) when a/b = p/q in lowest terms, and 1/4 for
    ratios that are not rational with small denominator.
    """
    r = Fraction(a / b).limit_denominator(max_den)
    if abs(float(r) - a / b) <= 1e-12 * (a / b):
        return 0.25 + 1.0 / (12.0 * r.numerator * r.denominator)
    return 0.25


def _ip_frac_at(a: float, b: float, scale: float, nodes: int) -> float:
    lo = min(a, b)
    U0 = scale / lo
    U1 = 2.0 * U0
    edges = np.concatenate([
        np.arange(1, math.floor(U1 * a) + 1) / a,
        np.arange(1, math.floor(U1 * b) + 1) / b,
        [U0, U1],
    ])
    edges = np.unique(edges[edges <= U1])
    u, w = panel_nodes(edges, nodes)
    h = (a * u - np.floor(a * u)) * (b * u - np.floor(b * u))
    taper = 1.0 - _smooth_step((u - U0) / U0)
    # below the first breakpoint the integrand is exactly a b
    body = float(np.dot(h * taper / (u * u), w)) + lo
    tu, tw = panel_nodes(np.linspace(U0, U1, 65), 16)
    lost = float(np.dot(_smooth_step((tu - U0) / U0) / (tu * tu), tw)) + 1.0 / U1
    return body + product_mean(a, b) * lost


def ip_frac(a: float, b: float, scale: float = 1000.0, nodes: int = 10,
            return_error: bool = False):
    """int_0^inf {a/t}{b/t} dt.

    The integrand is cut off smoothly between U = scale/min(a, b) and 2U
    and the removed part is replaced by its mean value.  The error
    estimate adds the changes from halving ``scale`` and from dropping
    four nodes per panel.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    a, b = sorted((float(a), float(b)))
    val = _ip_frac_at(a, b, scale, nodes)
    if not return_error:
        return val
    err = abs(val - _ip_frac_at(a, b, 0.5 * scale, nodes)) \
        + abs(val - _ip_frac_at(a, b, scale, max(nodes - 4, 2)))
    return val, err


def ip_cross(theta: float, panels: int = 64, nodes: int = 16) -> float:
    """int_0^1 {theta/t} dt = theta int_theta^inf {v} v^-2 dv.

    Unit panels up to N, then the exact tail psi(N + 1) - log N.
    """
    if not 0 < theta <= 1:
        raise ValueError("theta must lie in (0, 1]")
    N = panels
    # {v} = v on (theta, 1)
    head = -math.log(theta)
    v, w = panel_nodes(np.arange(1, N + 1, dtype=float), nodes)
    body = float(np.dot((v - np.floor(v)) / (v * v), w))
    tail = float(np.real(digamma(N + 1.0))) - math.log(N)
    return theta * (head + body + tail)


def dictionary_grid(lam: float, per_octave: int = 8) -> np.ndarray:
    """theta_j = 2^(-j/per_octave) for all j with theta_j >= lam.

    Anchored at 1 so grids for smaller lam, or for a multiple of
    per_octave, contain the coarser ones.
    """
    if not 0 < lam <= 1:
        raise ValueError("lambda must lie in (0, 1]")
    J = math.floor(per_octave * math.log2(1.0 / lam) + 1e-9)
    return 2.0 ** (-np.arange(J + 1) / per_octave)


def gram_matrix(thetas) -> np.ndarray:
    th = np.asarray(thetas, dtype=float)
    n = th.size
    G = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = ip_frac(th[i], th[j])
    return G


@dataclass(frozen=True)
class GramSystem:
    thetas: np.ndarray
    G: np.ndarray
    b: np.ndarray
    coeffs: np.ndarray
    D2: float
    svd_cutoff: float
    cond: float
    rank: int
    normal_residual: float
    lam: float

    @property
    def n(self) -> int:
        return int(self.thetas.size)


def solve_gram(thetas, svd_cutoff: float = 1e-10, lam: float | None = None) -> GramSystem:
    """Project 1_(0,1) onto span{{theta/t}} using a spectral cutoff.

    ``lam`` labels the system and defaults to the smallest theta.
    """
    th = np.asarray(thetas, dtype=float)
    G = gram_matrix(th)
    b = np.array([ip_cross(t) for t in th])
    evals, V = np.linalg.eigh(G)
    top = float(evals.max())
    keep = evals > svd_cutoff * top
    if not np.any(keep):
        raise ZeroModesError("spectral cutoff left no modes")
    Vk, ek = V[:, keep], evals[keep]
    c = Vk @ ((Vk.T @ b) / ek)
    D2 = 1.0 - float(b @ c)
    # residual of the normal equations on the retained subspace
    r = float(np.linalg.norm(Vk.T @ (G @ c - b)))
    return GramSystem(th, G, b, c, D2, svd_cutoff, top / float(ek.min()), int(keep.sum()), r,
                       float(th.min()) if lam is None else float(lam))


def solve_distance(lam: float, n: int | None = None, svd_cutoff: float = 1e-10,
                   per_octave: int = 8) -> GramSystem:
    """Distance system on a geometric grid in [lam, 1].

    With ``n`` given the grid is geomspace(lam, 1, n) (n = 1 means theta = 1
    only); otherwise ``per_octave`` points per octave anchored at 1.
    """
    if n is not None:
        if n < 1:
            raise ValueError("n must be at least 1")
        th = np.array([1.0]) if n == 1 else np.geomspace(1.0, lam, n)
    else:
        th = dictionary_grid(lam, per_octave)
    return solve_gram(th, svd_cutoff, lam)


BOUND_COLUMNS = ("lambda", "n", "D2", "logscaled", "zerosum", "cond")


def bound_report(systems, zeros: ZeroList) -> list[dict]:
    """Rows of (lambda, n, D2, |log lambda| D2, zero sum, condition number).

    The zero-sum column is sum 1/|rho|^2 with every multiplicity taken as
    1, so the two classical lower bounds coincide.  No comparison is made.
    """
    lams = [s.lam for s in systems]
    if len(set(lams)) != len(lams):
        raise ValueError("systems must have distinct lambda")
    zs = zero_sum_inv_sq(zeros)
    rows = []
    for s in sorted(systems, key=lambda s: -s.lam):
        rows.append({
            "lambda": s.lam, "n": s.n, "D2": s.D2,
            "logscaled": abs(math.log(s.lam)) * s.D2,
            "zerosum": zs, "cond": s.cond,
        })
    return rows


def bound_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUND_COLUMNS)
    for r in rows:
        w.writerow([f"{r['lambda']:.12g}", r["n"]] +
                   [f"{r[k]:.12e}" for k in BOUND_COLUMNS[2:]])
    return buf.getvalue()


__all__ = [
    "ZeroModesError", "product_mean", "ip_frac", "ip_cross", "dictionary_grid",
    "gram_matrix", "GramSystem", "solve_gram", "solve_distance", "BOUND_COLUMNS",
    "bound_report", "bound_csv",
]
