"""Fourier cosine transform, critical-line Mellin samples and multipliers,
and the Poisson / co-Poisson summation operators.

Mellin conventions: ``right`` means int f(t) t^(-s) dt, ``left`` means
int f(t) t^(s-1) dt.  An operator with left multiplier m(s) has right
multiplier m(1 - s).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from ._quad import gauss_legendre, panel_nodes
from .specfun import PoleError, digamma, dirichlet_L, zeta  # noqa: F401
from .specfun import DirichletCharacter
from .testfn import (PiecewiseFunction, SmoothTestFunction, integral, integral_over_t,
                     mellin)


class TailWarning(UserWarning):
    """A declared tolerance could not be met because of truncation."""


@dataclass(frozen=True)
class WindowedFunction:
    """Even function on (0, inf), negligible beyond ``cutoff``.

    ``tail_bound`` is a bound on int_cutoff^inf |f| supplied by the caller;
    ``breakpoints`` are points where f is not smooth.  ``log_resolution``
    asks quadrature panels near t to be at most log_resolution * max(t, floor)
    wide, for functions whose features scale with t.
    """

    func: Callable[[np.ndarray], np.ndarray]
    cutoff: float
    breakpoints: tuple[float, ...] = ()
    tail_bound: float = 0.0
    log_resolution: float | None = None
    resolution_floor: float = 0.0

    def __call__(self, t):
        tt = np.abs(np.asarray(t, dtype=float))
        out = np.asarray(self.func(tt), dtype=float)
        return float(out) if np.ndim(t) == 0 else out


# --- cosine transform ----------------------------------------------------------

_CT_NODES = 20
_CT_CHUNK = 1 << 22


def _ct_domain(f, cutoff):
    """Integration interval, breakpoints and a tail bound for f."""
    if isinstance(f, SmoothTestFunction):
        a, b = f.support
        return a, b, (), 0.0
    if isinstance(f, PiecewiseFunction):
        if f.kind == "indicator":
            lo, hi = f.params
            return lo, hi, (), 0.0
        (a,) = f.params
        T = float(cutoff) if cutoff is not None else 1e3 * a
        delta = 1e-4 * a
        bps = tuple(float(x) for x in f.breakpoints(T) if x > delta)
        # |{a/t}| <= 1 on (0, delta); the oscillatory tail is bounded later
        return delta, T, bps, 2.0 * delta
    if isinstance(f, WindowedFunction):
        return 0.0, f.cutoff, f.breakpoints, f.tail_bound
    if cutoff is None:
        raise ValueError("a plain callable needs an explicit cutoff")
    return 0.0, float(cutoff), (), 0.0


def graded_edges(lo: float, hi: float, hmax: float, log_res: float | None = None,
                 floor: float = 0.0, bps=()) -> np.ndarray:
    """Panel edges on [lo, hi]: widths at most hmax and, if ``log_res`` is
    given, at most log_res * max(t, floor); breakpoints are always edges."""
    edges = np.unique(np.concatenate([[lo, hi], [x for x in bps if lo < x < hi]]))
    fine = []
    for a, b in zip(edges[:-1], edges[1:]):
        if log_res is None:
            k = max(1, int(math.ceil((b - a) / hmax)))
            fine.append(np.linspace(a, b, k + 1)[:-1])
            continue
        t = a
        pts = []
        while t < b:
            pts.append(t)
            t += min(hmax, log_res * max(t, floor, 1e-300))
        fine.append(np.array(pts))
    fine.append([hi])
    return np.concatenate(fine)


def _ct_nodes(f, lo, hi, bps, umax, nodes):
    width = hi - lo
    # panels no longer than one period of the fastest cosine
    hmax = min(width / 16.0, 1.0 / umax) if umax > 0 else width / 16.0
    log_res = getattr(f, "log_resolution", None)
    floor = getattr(f, "resolution_floor", 0.0)
    return panel_nodes(graded_edges(lo, hi, hmax, log_res, floor, bps), nodes)


def cosine_transform(f, u, cutoff: float | None = None, nodes: int = _CT_NODES,
                     return_error: bool = False):
    """F_+(f)(u) = 2 int_0^inf cos(2 pi u t) f(t) dt.

    Gauss-Legendre panels no wider than one period of cos(2 pi u_max t),
    split at breakpoints.  ``u`` may be an array; f is sampled once.  With
    ``return_error`` the truncation bound is returned alongside.
    """
    uu = np.atleast_1d(np.abs(np.asarray(u, dtype=float)))
    lo, hi, bps, head = _ct_domain(f, cutoff)
    x, w = _ct_nodes(f, lo, hi, bps, float(uu.max()), nodes)
    fw = np.asarray(f(x), dtype=float) * w
    out = np.empty(uu.shape)
    step = max(1, _CT_CHUNK // x.size)
    for i in range(0, uu.size, step):
        out[i:i + step] = 2.0 * (np.cos(2 * np.pi * np.outer(uu[i:i + step], x)) @ fw)
    err = np.full(uu.shape, 2.0 * head)
    if isinstance(f, PiecewiseFunction) and f.kind == "frac":
        (a,) = f.params
        with np.errstate(divide="ignore"):
            err = err + np.where(uu > 0, 2.0 * a / (np.pi * uu * hi), np.inf)
    if np.any(err > 1e-9):
        warnings.warn(f"cosine transform truncation bound {err.max():.2e} exceeds 1e-9",
                      TailWarning, stacklevel=2)
    if np.ndim(u) == 0:
        return (float(out[0]), float(err[0])) if return_error else float(out[0])
    return (out, err) if return_error else out


def hardy_average(f, t, order: int = 256):
    """(1/t) int_0^t f(u) du."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt <= 0):
        raise ValueError("t must be positive")
    if isinstance(f, PiecewiseFunction):
        if f.kind == "indicator":
            lo, hi = f.params
            out = np.clip(np.minimum(tt, hi) - lo, 0.0, None) / tt
        else:
            (a,) = f.params
            out = np.array([a * _frac_tail(a / x) / x for x in tt])
    else:
        if isinstance(f, SmoothTestFunction):
            a, b = f.support
        else:
            a, b = 0.0, math.inf
        x, w = gauss_legendre(order)
        out = np.zeros(tt.shape)
        for i, T in enumerate(tt):
            hi = min(T, b)
            if hi <= a:
                continue
            nodes = 0.5 * (a + hi) + 0.5 * (hi - a) * x
            out[i] = 0.5 * (hi - a) * np.dot(w, f(nodes)) / T
    return float(out[0]) if np.ndim(t) == 0 else out


def _frac_tail(x: float) -> float:
    """int_x^inf {v} v^(-2) dv."""
    if x < 1:
        return -math.log(x) + _frac_tail(1.0)
    m = math.floor(x)
    head = math.log((m + 1) / x) - m * (1.0 / x - 1.0 / (m + 1))
    return head + float(np.real(digamma(m + 2.0))) - math.log(m + 1)


# --- multipliers -------------------------------------------------------------

MULTIPLIER_CONVENTION = {
    "L": "left", "inverse-L": "left", "U": "left", "V": "left",
    "N": "right", "inverse-N": "right", "identity": "right",
}


def multiplier(name: str, s):
    """Multiplier of a scale-invariant operator, in its native convention.

    L, U, V are stated for the left Mellin transform, N for the right one
    (see ``MULTIPLIER_CONVENTION``).  On Re(s) = 1/2, |U| = |V| = 1.
    """
    ss = np.asarray(s, dtype=complex)
    if name not in MULTIPLIER_CONVENTION:
        raise ValueError(f"unknown multiplier {name!r}")
    if name == "identity":
        out = np.ones_like(ss)
    elif name in ("L", "N"):
        if np.any(ss == 1):
            raise PoleError(f"{name}(s) has a pole at s = 1")
        out = ss / (ss - 1)
    elif name in ("inverse-L", "inverse-N"):
        if np.any(ss == 0):
            raise PoleError(f"{name}(s) has a pole at s = 0")
        out = (ss - 1) / ss
    else:
        z = np.asarray(zeta(ss))
        if np.any(np.abs(z) == 0):
            raise PoleError(f"{name}(s) has a pole at a zero of zeta")
        ratio = np.asarray(zeta(1 - ss)) / z * ss / (1 - ss)
        out = ratio if name == "U" else ratio * (ss / (1 - ss)) ** 2
    return complex(out) if np.ndim(s) == 0 else out


def right_multiplier(name: str, s):
    """The multiplier acting on right Mellin transforms."""
    ss = np.asarray(s, dtype=complex)
    if MULTIPLIER_CONVENTION[name] == "left":
        ss = 1 - ss
    out = multiplier(name, ss)
    return complex(out) if np.ndim(s) == 0 else out


# --- critical-line samples ----------------------------------------------------

@dataclass(frozen=True)
class MellinSamples:
    """Right Mellin transform sampled at s = 1/2 + i tau."""

    grid: np.ndarray
    values: np.ndarray
    support: tuple[float, float] | None = None
    nudged: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 1 or g.size < 3 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be increasing with at least 3 points")
        if not np.allclose(g, -g[::-1], atol=1e-12 * max(1.0, abs(g[-1]))):
            raise ValueError("grid must be symmetric about 0")

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])


def line_grid(tau_max: float = 60.0, step: float = 0.05) -> np.ndarray:
    n = int(round(tau_max / step))
    return step * np.arange(-n, n + 1)


def mellin_line(f, grid=None) -> MellinSamples:
    """Samples of the right Mellin transform of f on the critical line."""
    g = line_grid() if grid is None else np.asarray(grid, dtype=float)
    vals = np.asarray(mellin(f, 0.5 + 1j * g))
    support = getattr(f, "support", None)
    return MellinSamples(g, vals, support)


def apply_multiplier(samples: MellinSamples, name: str, zeros=None) -> MellinSamples:
    """Pointwise action of a multiplier on critical-line samples.

    For U and V, grid points within 1e-3 of a zeta zero ordinate (from
    ``zeros`` or detected by |zeta| < 1e-6) take the multiplier from the
    neighbouring grid point; their indices are recorded in ``nudged``.
    """
    tau = samples.grid
    m = np.empty(tau.shape, dtype=complex)
    nudged = []
    if name in ("U", "V"):
        step = samples.step
        near = np.zeros(tau.shape, dtype=bool)
        if zeros is not None:
            g = np.asarray(zeros.array() if hasattr(zeros, "array") else zeros, float)
            d = np.abs(np.abs(tau)[:, None] - g[None, :])
            near |= np.any(d < 1e-3, axis=1)
        near |= np.abs(np.asarray(zeta(0.5 + 1j * tau))) < 1e-6
        shifted = tau + np.where(tau >= 0, step, -step)
        eval_at = np.where(near, shifted, tau)
        m[:] = right_multiplier(name, 0.5 + 1j * eval_at)
        nudged = [int(i) for i in np.nonzero(near)[0]]
    else:
        m[:] = right_multiplier(name, 0.5 + 1j * tau)
    return replace(samples, values=samples.values * m,
                   nudged=tuple(sorted(set(samples.nudged) | set(nudged))))


def _invert(grid, values, t, taper):
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt <= 0):
        raise ValueError("t must be positive")
    w = np.full(grid.shape, grid[1] - grid[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    if taper:
        w = w * np.cos(0.5 * np.pi * grid / grid[-1]) ** 2
    phase = np.exp(1j * np.outer(np.log(tt), grid))
    out = (phase @ (values * w)).real / (2 * np.pi) / np.sqrt(tt)
    return out


def invert_mellin(samples: MellinSamples, t, taper: bool = False,
                  return_error: bool = False, tol: float | None = None):
    """f(t) = (1/2 pi) int fhat(1/2 + i tau) t^(-1/2 + i tau) d tau by trapezoid.

    The error estimate is the change when every other grid point is dropped
    plus a truncation term T (|fhat(1/2 - iT)| + |fhat(1/2 + iT)|) / (2 pi sqrt t)
    from the grid edges.  ``taper`` applies a cos^2 window, useful for
    slowly decaying samples; it zeroes the edge term.
    """
    full = _invert(samples.grid, samples.values, t, taper)
    n = samples.grid.size
    mid = n // 2
    keep = np.arange(mid % 2, n, 2)
    coarse = _invert(samples.grid[keep], samples.values[keep], t, taper)
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    edge = 0.0 if taper else (abs(samples.values[0]) + abs(samples.values[-1])) \
        * samples.grid[-1] / (2 * np.pi)
    err = np.abs(full - coarse) + edge / np.sqrt(tt)
    if tol is not None and np.any(err > tol):
        warnings.warn(f"Mellin inversion refinement delta {err.max():.2e} exceeds {tol:.0e}",
                      TailWarning, stacklevel=2)
    if np.ndim(t) == 0:
        return (float(full[0]), float(err[0])) if return_error else float(full[0])
    return (full, err) if return_error else full


# --- summation operators ----------------------------------------------------------

def _dilation_sum(g, t, inner, lo_n, hi_n, weight):
    """sum_n weight(n) * g(inner(t, n)) for n in [lo_n(t), hi_n(t)], per t."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(tt.shape, dtype=complex)
    lo = np.maximum(1, np.ceil(lo_n(tt))).astype(np.int64)
    hi = np.floor(hi_n(tt)).astype(np.int64)
    counts = np.maximum(hi - lo + 1, 0)
    total = int(counts.sum())
    if total == 0:
        return tt, out
    # flatten all (t, n) pairs, in chunks to bound memory
    starts = np.concatenate([[0], np.cumsum(counts)])
    chunk = 1 << 21
    i = 0
    while i < tt.size:
        j = i
        while j < tt.size and starts[j + 1] - starts[i] <= chunk:
            j += 1
        j = max(j, i + 1)
        c = counts[i:j]
        idx = np.repeat(np.arange(i, j), c)
        n = np.repeat(lo[i:j] - starts[i:j] + starts[i], c) + np.arange(int(c.sum()))
        n = n.astype(float)
        vals = weight(n) * g(inner(tt[idx], n))
        out[i:j] = np.bincount(idx - i, weights=vals.real, minlength=j - i)
        if np.iscomplexobj(vals):
            out[i:j] += 1j * np.bincount(idx - i, weights=vals.imag, minlength=j - i)
        i = j
    return tt, out


def poisson_muntz(f: SmoothTestFunction, y):
    """sum_{n>=1} f(n y) - (int f)/y."""
    a, b = f.support
    tt, s = _dilation_sum(f, y, lambda y, n: n * y, lambda y: a / y, lambda y: b / y,
                          lambda n: np.ones_like(n))
    out = s.real - integral(f) / tt
    return float(out[0]) if np.ndim(y) == 0 else out


def copoisson_sum(g: SmoothTestFunction, t, constant: float | None = None):
    """sum_{n>=1} g(t/n)/n - int_0^inf g(u)/u du.

    ``constant`` overrides the subtracted integral (used to reuse it across
    many calls).
    """
    a, b = g.support
    c = integral_over_t(g) if constant is None else constant
    tt, s = _dilation_sum(g, t, lambda t, n: t / n, lambda t: t / b, lambda t: t / a,
                          lambda n: 1.0 / n)
    out = s.real - c
    return float(out[0]) if np.ndim(t) == 0 else out


def twisted_sums(g: SmoothTestFunction, chi: DirichletCharacter, direction: str, t):
    """P_chi g(t) = sum chi(n) g(n t) or P'_chi g(t) = sum conj(chi(n)) g(t/n)/n."""
    if chi.modulus < 2:
        raise ValueError("the principal character is excluded")
    table = np.asarray(chi.values, dtype=complex)
    q = chi.modulus
    a, b = g.support
    if direction == "poisson":
        tt, s = _dilation_sum(g, t, lambda t, n: n * t, lambda t: a / t, lambda t: b / t,
                              lambda n: table[n.astype(np.int64) % q])
    elif direction == "copoisson":
        tt, s = _dilation_sum(g, t, lambda t, n: t / n, lambda t: t / b, lambda t: t / a,
                              lambda n: np.conj(table[n.astype(np.int64) % q]) / n)
    else:
        raise ValueError("direction must be 'poisson' or 'copoisson'")
    return complex(s[0]) if np.ndim(t) == 0 else s


def mellin_windowed(func, s, lo: float, hi: float, head_constant: float = 0.0,
                    panels: int = 64, nodes: int = 24):
    """Right Mellin transform of a function equal to ``head_constant`` on (0, lo),
    given by ``func`` on [lo, hi] and negligible beyond hi.

    The head contributes c lo^(1-s)/(1-s), its analytic continuation when
    Re s >= 1.  The body uses Gauss-Legendre panels in log t.
    """
    ss = np.atleast_1d(np.asarray(s, dtype=complex))
    la, lb = math.log(lo), math.log(hi)
    tau = float(np.max(np.abs(ss.imag)))
    k = max(panels, int(math.ceil((lb - la) * tau / 2.0)))
    x, w = panel_nodes(np.linspace(la, lb, k + 1), nodes)
    vals = np.asarray(func(np.exp(x)), dtype=float) * w
    out = np.exp(np.outer(1.0 - ss, x)) @ vals
    if head_constant:
        if np.any(ss == 1):
            raise PoleError("head constant has a pole at s = 1")
        out = out + head_constant * np.exp((1.0 - ss) * la) / (1.0 - ss)
    return complex(out[0]) if np.ndim(s) == 0 else out


__all__ = [
    "WindowedFunction", "TailWarning", "cosine_transform", "hardy_average", "multiplier",
    "right_multiplier", "MULTIPLIER_CONVENTION", "MellinSamples", "line_grid",
    "mellin_line", "apply_multiplier", "invert_mellin", "poisson_muntz", "copoisson_sum",
    "twisted_sums", "mellin_windowed", "graded_edges",
]
