"""Even test functions on (0, inf) with exact support bookkeeping.

A :class:`SmoothTestFunction` carries its value and derivative rules as
closures, its compact support [a, b] in (0, inf) and a trace of how it was
built.  Dilation, involution and conductor contraction are applied lazily as
new closures, so supports transform exactly and nothing is ever resampled.
Mellin transforms are computed in the logarithmic coordinate t = e^x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._quad import gauss_legendre, panel_nodes
from .specfun import PoleError

ArrayFn = Callable[[np.ndarray], np.ndarray]

DEFAULT_ORDER = 256


@dataclass(frozen=True)
class SmoothTestFunction:
    func: ArrayFn
    deriv: ArrayFn
    support: tuple[float, float]
    layers: tuple[str, ...] = ()
    smooth: bool = True

    def __post_init__(self):
        a, b = self.support
        if not 0 < a < b < math.inf:
            raise ValueError(f"support {self.support} must be a compact interval in (0, inf)")

    def _prep(self, t):
        tt = np.abs(np.asarray(t, dtype=float))
        a, b = self.support
        inside = (tt > a) & (tt < b)
        return tt, inside

    def __call__(self, t):
        tt, inside = self._prep(t)
        out = np.zeros(tt.shape)
        if np.any(inside):
            out[inside] = self.func(tt[inside])
        return float(out) if np.ndim(t) == 0 else out

    def derivative(self, t):
        """Derivative on t > 0."""
        tt, inside = self._prep(t)
        out = np.zeros(tt.shape)
        if np.any(inside):
            out[inside] = self.deriv(tt[inside])
        return float(out) if np.ndim(t) == 0 else out

    # linear structure -------------------------------------------------
    def __add__(self, other: "SmoothTestFunction") -> "SmoothTestFunction":
        return _combine(1.0, self, 1.0, other)

    def __sub__(self, other: "SmoothTestFunction") -> "SmoothTestFunction":
        return _combine(1.0, self, -1.0, other)

    def __mul__(self, c: float) -> "SmoothTestFunction":
        c = float(c)
        return SmoothTestFunction(lambda t: c * self.func(t), lambda t: c * self.deriv(t),
                                  self.support, self.layers + (f"scale({c:g})",))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    @property
    def log_support(self) -> tuple[float, float]:
        return math.log(self.support[0]), math.log(self.support[1])


def _combine(c1, f, c2, g) -> SmoothTestFunction:
    a = min(f.support[0], g.support[0])
    b = max(f.support[1], g.support[1])
    return SmoothTestFunction(
        lambda t: c1 * f(t) + c2 * g(t),
        lambda t: c1 * f.derivative(t) + c2 * g.derivative(t),
        (a, b),
        (f"sum[{'; '.join(f.layers)}]", f"{c2:+g}*[{'; '.join(g.layers)}]"),
    )


def bump(center: float, halfwidth: float, amplitude: float = 1.0) -> SmoothTestFunction:
    """c exp(-1/(1 - x^2)), x = (log t - m)/h, supported on [e^(m-h), e^(m+h)]."""
    if halfwidth <= 0:
        raise ValueError("halfwidth must be positive")
    m, h, c = float(center), float(halfwidth), float(amplitude)

    def f(t):
        x = (np.log(t) - m) / h
        out = np.zeros_like(x)
        ok = np.abs(x) < 1
        out[ok] = c * np.exp(-1.0 / (1.0 - x[ok] ** 2))
        return out

    def df(t):
        x = (np.log(t) - m) / h
        out = np.zeros_like(x)
        ok = np.abs(x) < 1
        xo = x[ok]
        u = 1.0 - xo ** 2
        out[ok] = c * np.exp(-1.0 / u) * (-2.0 * xo / u ** 2) / (h * t[ok])
        return out

    return SmoothTestFunction(f, df, (math.exp(m - h), math.exp(m + h)),
                              (f"bump(m={m:g},h={h:g},c={c:g})",))


def bump_on(a: float, b: float, amplitude: float = 1.0) -> SmoothTestFunction:
    """Bump whose support is exactly [a, b]."""
    la, lb = math.log(a), math.log(b)
    return bump(0.5 * (la + lb), 0.5 * (lb - la), amplitude)


def dilate(f: SmoothTestFunction, theta: float) -> SmoothTestFunction:
    """t -> f(t/theta)."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    th = float(theta)
    if th == 1.0:
        return f
    a, b = f.support
    return SmoothTestFunction(lambda t: f.func(t / th), lambda t: f.deriv(t / th) / th,
                              (th * a, th * b), f.layers + (f"dilate({th:g})",))


def involute(f: SmoothTestFunction) -> SmoothTestFunction:
    """t -> f(1/t)/t."""
    a, b = f.support
    return SmoothTestFunction(
        lambda t: f.func(1.0 / t) / t,
        lambda t: -f.deriv(1.0 / t) / t ** 3 - f.func(1.0 / t) / t ** 2,
        (1.0 / b, 1.0 / a), f.layers + ("involute",))


def conductor_contract(f: SmoothTestFunction, q: int) -> SmoothTestFunction:
    """t -> sqrt(q) f(q t); Mellin multiplier q^(s - 1/2)."""
    if q < 1 or int(q) != q:
        raise ValueError("q must be a positive integer")
    if q == 1:
        return f
    r = math.sqrt(q)
    a, b = f.support
    return SmoothTestFunction(lambda t: r * f.func(q * t), lambda t: r * q * f.deriv(q * t),
                              (a / q, b / q), f.layers + (f"contract({q})",))


def power_weight(f: SmoothTestFunction, p: float) -> SmoothTestFunction:
    """t -> t^p f(t); shifts the Mellin variable by p."""
    p = float(p)
    return SmoothTestFunction(
        lambda t: t ** p * f.func(t),
        lambda t: p * t ** (p - 1) * f.func(t) + t ** p * f.deriv(t),
        f.support, f.layers + (f"power({p:g})",))


# --- Mellin transforms ----------------------------------------------------------

def _order_for(width: float, tau: float, order: int) -> int:
    extra = int(math.ceil(abs(tau) * width))
    return order + 64 * int(math.ceil(extra / 64))


def mellin(f, s, order: int = DEFAULT_ORDER):
    """Right Mellin transform int_0^inf f(t) t^(-s) dt.

    Smooth functions use Gauss-Legendre in x = log t over the support;
    piecewise functions dispatch to their own breakpoint-aware rule.
    """
    if isinstance(f, PiecewiseFunction):
        return f.mellin(s)
    ss = np.asarray(s, dtype=complex)
    la, lb = f.log_support
    width = lb - la
    out = np.empty(ss.shape, dtype=complex)
    flat = ss.ravel()
    res = out.ravel()
    taus = np.abs(flat.imag)
    # group points that share a quadrature order
    orders = np.array([_order_for(width, tau, order) for tau in taus])
    for n in np.unique(orders):
        idx = np.nonzero(orders == n)[0]
        if n <= 512:
            x, w = gauss_legendre(int(n))
            xs = 0.5 * (la + lb) + 0.5 * width * x
            ws = 0.5 * width * w
        else:
            # composite panels keep high oscillation cheap
            xs, ws = panel_nodes(np.linspace(la, lb, int(n) // 64 + 1), 64)
        vals = f(np.exp(xs)) * ws
        res[idx] = np.exp(np.outer(1.0 - flat[idx], xs)) @ vals
    return complex(out.reshape(())) if np.ndim(s) == 0 else out


def mellin_left(f, s, order: int = DEFAULT_ORDER):
    """Left Mellin transform int_0^inf f(t) t^(s-1) dt = mellin(f, 1 - s)."""
    return mellin(f, 1.0 - np.asarray(s, dtype=complex) if np.ndim(s) else 1.0 - complex(s),
                  order)


def integral(f: SmoothTestFunction, order: int = DEFAULT_ORDER) -> float:
    """int_0^inf f(t) dt."""
    return float(mellin(f, 0.0, order).real)


def integral_over_t(f: SmoothTestFunction, order: int = DEFAULT_ORDER) -> float:
    """int_0^inf f(t)/t dt."""
    return float(mellin(f, 1.0, order).real)


class SingularSystemError(np.linalg.LinAlgError):
    pass


def enforce_moments(f: SmoothTestFunction, which: str = "both") -> SmoothTestFunction:
    """Subtract multiples of two auxiliary bumps so int f dt = int f dt/t = 0.

    The auxiliary functions are the bump spanning the support of ``f``
    weighted by t^(1/2) and t^(-1/2).  ``which`` selects "both", "mass"
    (only int f dt) or "inverse" (only int f dt/t).
    """
    a, b = f.support
    base = bump_on(a, b)
    b1, b2 = power_weight(base, 0.5), power_weight(base, -0.5)
    m0 = integral(f)
    m1 = integral_over_t(f)
    if which == "both":
        A = np.array([[integral(b1), integral(b2)],
                      [integral_over_t(b1), integral_over_t(b2)]])
        if abs(np.linalg.det(A)) < 1e-14 * np.abs(A).max() ** 2:
            raise SingularSystemError("auxiliary moment matrix is singular")
        c1, c2 = np.linalg.solve(A, [m0, m1])
        out = f - (c1 * b1 + c2 * b2)
    elif which == "mass":
        out = f - (m0 / integral(b1)) * b1
    elif which == "inverse":
        out = f - (m1 / integral_over_t(b2)) * b2
    else:
        raise ValueError("which must be 'both', 'mass' or 'inverse'")
    return SmoothTestFunction(out.func, out.deriv, f.support,
                              f.layers + (f"enforce_moments({which})",))


# --- piecewise functions -----------------------------------------------------

class DivergenceError(ValueError):
    """Mellin integral evaluated outside its strip of convergence."""


@dataclass(frozen=True)
class PiecewiseFunction:
    """Piecewise-smooth function with locally finite breakpoints.

    ``kind`` is "frac" for t -> {a/t} or "indicator" for 1_{(lo, hi)}.
    """

    kind: str
    params: tuple[float, ...]
    decay: float

    def __call__(self, t):
        tt = np.abs(np.asarray(t, dtype=float))
        if self.kind == "frac":
            (a,) = self.params
            with np.errstate(divide="ignore"):
                x = a / tt
            out = np.where(tt > 0, x - np.floor(x), 0.0)
        else:
            lo, hi = self.params
            out = ((tt > lo) & (tt < hi)).astype(float)
        return float(out) if np.ndim(t) == 0 else out

    def breakpoints(self, upto: float) -> np.ndarray:
        if self.kind == "frac":
            (a,) = self.params
            kmin = max(1, int(math.ceil(a / upto)))
            k = np.arange(kmin, kmin + 10**6)
            pts = a / k
            return pts[pts <= upto][::-1]
        return np.array([p for p in self.params if 0 < p <= upto])

    @property
    def strip(self) -> tuple[float, float]:
        if self.kind == "frac":
            return (0.0, 1.0)
        lo, hi = self.params
        return (-math.inf if lo > 0 else -math.inf, 1.0 if lo == 0 else math.inf)

    def mellin(self, s):
        ss = np.asarray(s, dtype=complex)
        lo, hi = self.strip
        if np.any((ss.real <= lo) | (ss.real >= hi)):
            raise DivergenceError(f"Mellin transform of {self.kind} diverges outside {self.strip}")
        if self.kind == "indicator":
            a, b = self.params
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(ss == 1, math.log(b / a) if a > 0 else np.inf,
                               (b ** (1 - ss) - (a ** (1 - ss) if a > 0 else 0.0)) / (1 - ss))
        else:
            (a,) = self.params
            out = np.exp((1 - ss) * math.log(a)) * _frac_moment(1.0 - ss)
        return complex(np.ravel(out)[0]) if np.ndim(s) == 0 else out


def _frac_moment(w) -> np.ndarray:
    """int_0^inf {u} u^(-w-1) du for 0 < Re w < 1, by unit panels plus an
    Euler-Maclaurin tail."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    K = int(64 + 4 * np.max(np.abs(w)))
    tau = float(np.max(np.abs(w.imag)))
    edges = [1.0]
    for k in range(1, K):
        # keep the phase change of u^(-i tau) below ~1 radian per sub-panel
        n_sub = max(1, int(math.ceil(tau * math.log1p(1.0 / k))))
        edges.extend(np.linspace(k, k + 1, n_sub + 1)[1:])
    nodes, weights = panel_nodes(np.array(edges), 12)
    frac = nodes - np.floor(nodes)
    logu = np.log(nodes)
    body = np.exp(-np.outer(w + 1, logu)) @ (frac * weights)
    head = 1.0 / (1.0 - w)
    lk = math.log(K)
    hK = np.exp(-(w + 1) * lk)
    tail = np.exp(-w * lk) / (2 * w) - hK / 12.0 + (w + 1) * (w + 2) * hK / (720.0 * K * K)
    return head + body + tail


def fractional_part_dilate(a: float) -> PiecewiseFunction:
    """t -> {a/t}, breakpoints at t = a/k."""
    if a <= 0:
        raise ValueError("a must be positive")
    return PiecewiseFunction("frac", (float(a),), decay=1.0)


def indicator(lo: float = 0.0, hi: float = 1.0) -> PiecewiseFunction:
    return PiecewiseFunction("indicator", (float(lo), float(hi)), decay=math.inf)


__all__ = [
    "SmoothTestFunction", "PiecewiseFunction", "bump", "bump_on", "dilate", "involute",
    "conductor_contract", "power_weight", "mellin", "mellin_left", "integral",
    "integral_over_t", "enforce_moments", "fractional_part_dilate", "indicator",
    "DivergenceError", "SingularSystemError", "PoleError",
]
