"""Checks of the co-Poisson intertwining and of Sonine-space membership.

The co-Poisson sum of a compactly supported g is

    E(g)(t) = sum_{n>=1} g(t/n)/n - int_0^inf g(u)/u du,

and its cosine transform is E(Ig)(t) with I g(t) = g(1/t)/t.  When both
moments of g vanish, E(g) and its cosine transform vanish on (0, lam) for
g supported in [lam, 1/lam].  Kahane's construction gives Sonine functions
from a weighted delta-derivative comb instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.fft import dct
from scipy.interpolate import BSpline

from ._quad import gauss_legendre, panel_nodes
from .specfun import DirichletCharacter, gamma_ln
from .testfn import SmoothTestFunction, bump_on, enforce_moments, integral_over_t, involute
from .transforms import (WindowedFunction, copoisson_sum, cosine_transform, graded_edges,
                         mellin_windowed, twisted_sums)


class TailBoundError(ArithmeticError):
    """A truncation window is too short for the requested tolerance."""


class KahaneTruncationError(ArithmeticError):
    """The weighted comb cannot be truncated at the requested level."""


# --- windows ---------------------------------------------------------------

def decay_window(func, start: float, tail_tol: float = 1e-11, power: float = 0.0,
                 max_t: float = 1e5):
    """Smallest T = start * 1.25^k with int_T^inf |func(t)| t^power dt <= tail_tol.

    The tail is estimated from 1025 samples on [T, 4T] and doubled, which is
    safe for the super-polynomial decay of the sums used here.  Returns
    (T, tail estimate).
    """
    T = start
    best = math.inf
    while T < max_t:
        xs = np.linspace(T, 4 * T, 1025)
        tail = 2.0 * float(np.trapezoid(np.abs(func(xs)) * xs ** power, xs))
        if tail <= tail_tol:
            return T, tail
        if tail > 4 * best:
            # rounding noise in func, weighted by t^power, has taken over
            break
        best = min(best, tail)
        T *= 1.25
    raise TailBoundError(f"tail estimate stays above {tail_tol:g} (best {best:.2e})")


def copoisson_function(g: SmoothTestFunction, tail_tol: float = 1e-11,
                       power: float = 0.0) -> WindowedFunction:
    """E(g) as a windowed function, with its decay window measured."""
    c = integral_over_t(g)

    def f(t):
        return copoisson_sum(g, t, constant=c)

    T, tail = decay_window(f, 4 * g.support[1], tail_tol, power)
    return WindowedFunction(f, T, (), tail, _log_resolution(g), g.support[0])


def _log_resolution(g: SmoothTestFunction) -> float:
    # features of sum g(t/n)/n are as fine in log t as those of g itself
    la, lb = g.log_support
    return (lb - la) / 48.0


# --- intertwining ---------------------------------------------------------------

def default_grid(n: int = 100, lo: float = 0.05, hi: float = 4.0) -> np.ndarray:
    return np.linspace(lo, hi, n)


def intertwining_residual(g: SmoothTestFunction, grid=None, nodes: int = 20,
                          tail_tol: float = 1e-8) -> float:
    """sup over grid of |F_+(E g)(t) - E(I g)(t)|.

    The left side is the cosine-transform quadrature of the explicit sum on
    its measured decay window.  Raises TailBoundError if the tail beyond the
    window is not below ``tail_tol``.
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    # the cosine transform counts 2 x tail against its own 1e-9 budget
    f = copoisson_function(g, tail_tol=min(0.1 * tail_tol, 4e-10))
    if 2 * f.tail_bound > tail_tol:
        raise TailBoundError(f"tail bound {2 * f.tail_bound:.2e} exceeds {tail_tol:.0e}")
    lhs = cosine_transform(f, grid, nodes=nodes)
    rhs = copoisson_sum(involute(g), grid)
    return float(np.max(np.abs(lhs - rhs)))


def corrupted_residual(g: SmoothTestFunction, delta: float = 0.01, grid=None,
                       tail_tol: float = 1e-9) -> float:
    """Intertwining residual when the right side is built from g plus a bump
    of height ``delta`` on the support of g.  A working check must see it."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    a, b = g.support
    bad = g + bump_on(a, b, amplitude=delta * math.e)
    f = copoisson_function(g, tail_tol=0.1 * tail_tol)
    lhs = cosine_transform(f, grid)
    return float(np.max(np.abs(lhs - copoisson_sum(involute(bad), grid))))


def special_value_check(g: SmoothTestFunction, tail_tol: float = 1e-9) -> tuple[float, float]:
    """(int_0^inf E(g)(t) dt, -1/2 int g).

    E(g) equals -int g(u)/u du on (0, a); that piece is integrated exactly,
    the rest by panels on the decay window.
    """
    a = g.support[0]
    c = integral_over_t(g)
    rhs = -0.5 * float(mellin_windowed(lambda t: g(t), 0.0, a, g.support[1]).real)
    if c == 0.0 and rhs == 0.0:
        return 0.0, 0.0
    f = copoisson_function(g, tail_tol=tail_tol)
    lhs = mellin_windowed(f, 0.0, a, f.cutoff, head_constant=-c, panels=256)
    return float(lhs.real), rhs


# --- Sonine membership ----------------------------------------------------------------

@dataclass(frozen=True)
class SonineReport:
    lam: float
    sup_f_near_zero: float
    sup_Ff_near_zero: float
    l2_norm: float
    tol: float
    passed: bool


def _l2_norm(f, cutoff: float | None) -> float:
    if isinstance(f, SonineFunction):
        return f.l2_norm
    T = cutoff if cutoff is not None else getattr(f, "cutoff", None)
    if T is None:
        raise ValueError("need a cutoff to compute the L2 norm")
    hmax = T / 2048
    edges = graded_edges(0.0, T, hmax, getattr(f, "log_resolution", None),
                         getattr(f, "resolution_floor", 0.0))
    x, w = panel_nodes(edges, 16)
    return math.sqrt(float(np.dot(w, np.asarray(f(x)) ** 2)))


def sonine_check(f, lam: float, tol: float = 1e-8, fourier: Callable | None = None,
                 n_grid: int = 200, cutoff: float | None = None) -> SonineReport:
    """Do f and F_+ f vanish on (0, lam), relative to the L2 norm of f?

    ``fourier`` overrides the cosine transform of f (computed by quadrature
    otherwise).  ``cutoff`` bounds the support used for plain callables.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    grid = lam * np.arange(1, n_grid + 1) / (n_grid + 1)
    fv = np.abs(np.asarray(f(grid), dtype=float))
    if fourier is None:
        if isinstance(f, SonineFunction):
            fourier = f.fourier
        else:
            fourier = lambda u: cosine_transform(f, u, cutoff=cutoff)  # noqa: E731
    Fv = np.abs(np.asarray(fourier(grid), dtype=float))
    norm = _l2_norm(f, cutoff)
    sf, sF = float(fv.max()), float(Fv.max())
    return SonineReport(float(lam), sf, sF, norm, float(tol),
                        bool(sf <= tol * norm and sF <= tol * norm))


@dataclass(frozen=True)
class SonineFunction:
    """An even function with its cosine transform and both right Mellin transforms."""

    func: Callable
    fourier: Callable
    mellin: Callable
    fourier_mellin: Callable
    lam: float
    l2_norm: float
    label: str = ""

    def __call__(self, t):
        return self.func(t)


def copoisson_sonine(lam: float, g: SmoothTestFunction | None = None,
                     tail_tol: float = 1e-9) -> SonineFunction:
    """Sonine function E(g) for a moment-free g supported in [lam, 1/lam], 0 < lam < 1.

    The cosine transform is E(I g) (the intertwining identity, checked on its
    own by :func:`intertwining_residual`); Mellin transforms are direct
    quadratures of the two explicit sums, windowed at ``tail_tol``.
    """
    if not 0 < lam < 1:
        raise ValueError("co-Poisson generation needs 0 < lam < 1")
    if g is None:
        g = enforce_moments(bump_on(lam, 1.0 / lam))
    a, b = g.support
    if a < lam * (1 - 1e-12) or b > (1 + 1e-12) / lam:
        raise ValueError("g must be supported in [lam, 1/lam]")
    f = copoisson_function(g, tail_tol)
    Ig = involute(g)
    F = copoisson_function(Ig, tail_tol)
    c_f = integral_over_t(g)
    c_F = integral_over_t(Ig)

    def mel(s):
        return mellin_windowed(f, s, a, f.cutoff, head_constant=-c_f, panels=256)

    def fmel(s):
        return mellin_windowed(F, s, 1.0 / b, F.cutoff, head_constant=-c_F, panels=256)

    return SonineFunction(f, F, mel, fmel, float(lam), _l2_norm(f, f.cutoff),
                          f"copoisson(lam={lam:g})")


# --- Kahane's construction -------------------------------------------------------

def comb_polynomial(N: int) -> np.polynomial.Polynomial:
    """x^3 prod_{1<=j<=N} (x^2 - j^2)^2."""
    P = np.polynomial.Polynomial([0, 0, 0, 1])
    for j in range(1, N + 1):
        P = P * np.polynomial.Polynomial([-j * j, 0, 1]) ** 2
    return P


def comb_weights(N: int, n):
    """(P(n)/N, P'(n)/sqrt N): weights of phi'(x - x_n) and -phi(x - x_n)."""
    P = comb_polynomial(N)
    nn = np.asarray(n, dtype=float)
    return P(nn) / N, P.deriv()(nn) / math.sqrt(N)


def _term_envelope(N: int, eps: float, k: int, n: np.ndarray) -> np.ndarray:
    """log of an upper bound for the size of the n-th term of f."""
    h = 2 * eps / k
    w0, w1 = comb_weights(N, n)
    x = n / math.sqrt(N)
    # |sinc| on [x - eps, x + eps], bounded by its largest sample there
    off = np.linspace(-eps, eps, 9)
    s = np.abs(np.sinc(h * (x[:, None] + off[None, :]))).max(axis=1)
    with np.errstate(divide="ignore"):
        ls = k * np.log(np.maximum(s, 1e-300))
        amp = np.log(np.abs(w0) * (k / eps) + np.abs(w1) + 1e-300) + math.log(k / (2 * eps))
    # |sinc|^k is not monotone; use the running max from the right
    env = np.maximum.accumulate((ls + amp)[::-1])[::-1]
    return env


def _choose_spline(N: int, eps: float, rel: float, n_cap: int):
    best = None
    n = np.arange(N + 1, n_cap + 1)
    for k in range(4 * N + 8, 4 * N + 128, 4):
        env = _term_envelope(N, eps, k, n)
        above = np.nonzero(env >= env.max() + math.log(rel))[0]
        last = int(n[above[-1]])
        if last < n_cap and (best is None or last < best[1]):
            best = (k, last)
    return best


class KahaneSonine:
    """f(x) = F(phi)(x) * (T_N * phi)(x) with phi a centred B-spline on (-eps, eps).

    T_N = sum_{|n|>N} [P(n)/N delta'(x - n/sqrt N) - P'(n)/sqrt N delta(x - n/sqrt N)],
    P(x) = x^3 prod (x^2 - j^2)^2.  f is normalised to unit L2 norm on (0, inf).
    """

    def __init__(self, N: int, eps: float, k: int, n_max: int):
        self.N, self.eps, self.k, self.n_max = int(N), float(eps), int(k), int(n_max)
        knots = np.linspace(-eps, eps, k + 1)
        self._phi = BSpline.basis_element(knots, extrapolate=False)
        self._dphi = self._phi.derivative()
        self._mass = k / (2 * eps)
        self._h = 2 * eps / k
        self._n = np.arange(N + 1, n_max + 1)
        self._w0, self._w1 = comb_weights(N, self._n)
        self._xn = self._n / math.sqrt(N)
        # signed weights for n = -n_max..n_max; they vanish for |n| <= N
        self._sw0, self._sw1 = comb_weights(N, np.arange(-n_max, n_max + 1))
        self._scale = 1.0
        # quadrature nodes on (0, inf): panels between all knots of all pieces
        edges = np.unique((self._xn[:, None] + knots[None, :]).ravel())
        edges = edges[edges > 0]
        self._qx, self._qw = panel_nodes(edges, k // 2 + 6)
        self._qf = self._raw(self._qx)
        self._scale = 1.0 / math.sqrt(float(np.dot(self._qw, self._qf ** 2)))
        self._qf = self._qf * self._scale
        self.lambda_achieved = math.sqrt(N) - eps * (1 + 1 / math.sqrt(N))
        self._dct = None

    def fourier_phi(self, x):
        """F(phi)(x) = sinc(h x)^k."""
        return np.sinc(self._h * np.asarray(x, dtype=float)) ** self.k

    def _raw(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        rN = math.sqrt(self.N)
        lo = np.ceil(rN * (x - self.eps)).astype(np.int64)
        hi = np.floor(rN * (x + self.eps)).astype(np.int64)
        span = int((hi - lo).max(initial=-1)) + 1 if x.size else 0
        for off in range(span):
            n = lo + off
            ok = (n <= hi) & (np.abs(n) > self.N) & (np.abs(n) <= self.n_max)
            if not np.any(ok):
                continue
            nn = n[ok]
            d = x[ok] - nn / rN
            w0 = self._sw0[nn + self.n_max]
            w1 = self._sw1[nn + self.n_max]
            phi = np.nan_to_num(self._phi(d)) * self._mass
            dphi = np.nan_to_num(self._dphi(d)) * self._mass
            out[ok] += w0 * dphi - w1 * phi
        return out * self.fourier_phi(x)

    def __call__(self, x):
        out = self._raw(x) * self._scale
        return float(out) if np.ndim(x) == 0 else out

    @property
    def support_start(self) -> float:
        return (self.N + 1) / math.sqrt(self.N) - self.eps

    @property
    def extent(self) -> float:
        return self.n_max / math.sqrt(self.N) + self.eps

    def fourier(self, u):
        """F_+ f(u) by Gauss-Legendre on the knot panels."""
        uu = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.empty(uu.shape)
        fw = self._qf * self._qw
        step = max(1, (1 << 22) // self._qx.size)
        for i in range(0, uu.size, step):
            out[i:i + step] = 2.0 * (np.cos(2 * np.pi * np.outer(uu[i:i + step], self._qx)) @ fw)
        return float(out[0]) if np.ndim(u) == 0 else out

    def mellin(self, s):
        ss = np.atleast_1d(np.asarray(s, dtype=complex))
        out = np.exp(-np.outer(ss, np.log(self._qx))) @ (self._qf * self._qw)
        return complex(out[0]) if np.ndim(s) == 0 else out

    def dct_grid(self):
        """(u_k, F_+ f(u_k)) on a uniform grid via the trapezoid rule and DCT-I.

        The trapezoid sum equals the true transform up to aliases F_+ f(u + r/d);
        the transform is concentrated in |u| < extent, so d = 1/(2.5 extent).
        """
        if self._dct is None:
            L = 1.5 * self.extent
            d = 1.0 / (2.5 * self.extent)
            M = int(math.ceil(L / d))
            x = d * np.arange(M + 1)
            vals = d * dct(self(x), type=1)
            u = np.arange(M + 1) / (2 * M * d)
            self._dct = (u, vals)
        return self._dct

    def fourier_mellin(self, s):
        """Right Mellin transform of F_+ f by the trapezoid rule on the DCT grid."""
        u, v = self.dct_grid()
        keep = u > 0.5 * self.lambda_achieved
        uu, vv = u[keep], v[keep]
        du = u[1] - u[0]
        ss = np.atleast_1d(np.asarray(s, dtype=complex))
        out = np.exp(-np.outer(ss, np.log(uu))) @ vv * du
        return complex(out[0]) if np.ndim(s) == 0 else out

    def as_sonine(self) -> SonineFunction:
        return SonineFunction(self, self.fourier, self.mellin, self.fourier_mellin,
                              self.lambda_achieved, 1.0, f"kahane(N={self.N},eps={self.eps:g})")


def kahane_sonine(N: int, eps: float, max_n: int | None = None,
                  rel_tol: float = 1e-14) -> tuple[SonineFunction, float]:
    """Kahane's regularised comb, truncated where its terms fall below rel_tol.

    Raises KahaneTruncationError if no B-spline order reaches ``rel_tol``
    within |n| <= max_n (default 64 N).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if not 0 < eps < math.sqrt(N) / 4:
        raise ValueError("need 0 < eps < sqrt(N)/4")
    cap = 64 * N if max_n is None else int(max_n)
    choice = _choose_spline(N, eps, rel_tol, cap)
    if choice is None:
        raise KahaneTruncationError(
            f"terms do not fall below {rel_tol:g} of their peak within |n| <= {cap}")
    k, n_max = choice
    fn = KahaneSonine(N, eps, k, n_max)
    return fn.as_sonine(), fn.lambda_achieved


# --- completed Mellin ------------------------------------------------------------

def completed_mellin(mellin_values, s):
    """pi^(-s/2) Gamma(s/2) times the right Mellin transform."""
    ss = np.asarray(s, dtype=complex)
    return np.exp(-0.5 * ss * math.log(math.pi) + np.asarray(gamma_ln(ss / 2))) * mellin_values


def completed_mellin_fe_residual(f: SonineFunction, s, completed: bool = True) -> float:
    """max over s of |M(F_+ f)(s) - M(f)(1 - s)|.

    With ``completed=False`` the identity is divided by pi^(-s/2) Gamma(s/2):
    |fhat_F(s) - rho(s) fhat(1 - s)| with |rho| = 1 on the critical line.
    This form stays informative at heights where Gamma(s/2) underflows the
    completed values.
    """
    ss = np.atleast_1d(np.asarray(s, dtype=complex))
    Ff = np.asarray(f.fourier_mellin(ss))
    f1 = np.asarray(f.mellin(1 - ss))
    if completed:
        lhs = completed_mellin(Ff, ss)
        rhs = completed_mellin(f1, 1 - ss)
    else:
        lp = math.log(math.pi)
        rho = np.exp(np.asarray(gamma_ln((1 - ss) / 2)) - np.asarray(gamma_ln(ss / 2))
                     - (0.5 - ss) * lp)
        lhs, rhs = Ff, rho * f1
    return float(np.max(np.abs(lhs - rhs)))


def line_points(n: int = 21, tau_max: float = 20.0, tau_min: float | None = None) -> np.ndarray:
    """n points on the critical line, tau in [-tau_max, tau_max] or [tau_min, tau_max]."""
    lo = -tau_max if tau_min is None else tau_min
    return 0.5 + 1j * np.linspace(lo, tau_max, n)


# --- perpendicularity at zeros -------------------------------------------------------

def copoisson_mellin(g: SmoothTestFunction, s, tail_tol: float = 1e-9):
    """Right Mellin transform of E(g) by quadrature of the explicit sum."""
    power = max(0.0, -float(np.min(np.real(s))))
    f = copoisson_function(g, tail_tol=tail_tol, power=power)
    return mellin_windowed(f, s, g.support[0], f.cutoff, head_constant=-integral_over_t(g),
                           panels=256)


def zero_perp_check(g: SmoothTestFunction, points, scale_grid=None,
                    tail_tol: float = 1e-8) -> np.ndarray:
    """|E(g)^(s)| at each point, relative to its maximum over a line grid.

    ``scale_grid`` defaults to s = 1/2 + i tau, tau in [0, 40].  Points with
    Re s < 0 weight the tail by t^(-Re s), where rounding noise in the sum
    limits the attainable ``tail_tol``.
    """
    grid = 0.5 + 1j * np.linspace(0, 40, 81) if scale_grid is None else scale_grid
    vals = np.abs(np.asarray(copoisson_mellin(g, np.concatenate(
        [np.atleast_1d(np.asarray(points, dtype=complex)), np.asarray(grid, dtype=complex)]),
        tail_tol=tail_tol)))
    npts = np.atleast_1d(points).size
    scale = float(vals[npts:].max())
    return vals[:npts] / scale


def evaluation_condition(gs, points) -> float:
    """Condition number of the Gram matrix A^H A, A[i, j] = E(g_i)^(s_j)."""
    A = np.array([np.asarray(copoisson_mellin(g, np.asarray(points, dtype=complex)))
                  for g in gs])
    return float(np.linalg.cond(A.conj().T @ A))


# --- twisted intertwining ----------------------------------------------------------

def _twisted_window(g, chi, tail_tol=1e-9, power=0.0):
    last = {}

    def both(t):
        # real and imaginary parts are requested at the same nodes in turn
        t = np.asarray(t, dtype=float)
        key = (t.shape, t.tobytes())
        if last.get("key") != key:
            last["key"], last["val"] = key, twisted_sums(g, chi, "copoisson", t)
        return last["val"]

    def re(t):
        return np.real(both(t))

    def im(t):
        return np.imag(both(t))

    T, tail = decay_window(lambda t: np.abs(twisted_sums(g, chi, "copoisson", t)),
                           4 * g.support[1], tail_tol, power)
    res, floor = _log_resolution(g), g.support[0]
    return (WindowedFunction(re, T, (), tail, res, floor),
            WindowedFunction(im, T, (), tail, res, floor))


def twisted_transform(g: SmoothTestFunction, chi: DirichletCharacter, u) -> np.ndarray:
    """F_+(P'_chi g)(u) by quadrature of the explicit twisted sum."""
    fr, fi = _twisted_window(g, chi, tail_tol=4e-10)
    out = cosine_transform(fr, u)
    if not chi.is_real:
        out = out + 1j * cosine_transform(fi, u)
    return out


def twisted_intertwining_residual(g: SmoothTestFunction, chi: DirichletCharacter,
                                  grid=None) -> float:
    """sup |F_+(P'_chi g)(t) - w_conj(chi) sqrt(q) P'_conj(chi)(I g)(q t)|."""
    if chi.modulus < 2:
        raise ValueError("the principal character is excluded")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    q = chi.modulus
    cc = chi.conjugate()
    lhs = twisted_transform(g, chi, grid)
    rhs = cc.root_number * math.sqrt(q) * twisted_sums(involute(g), cc, "copoisson", q * grid)
    return float(np.max(np.abs(lhs - rhs)))


def twisted_support_sup(g: SmoothTestFunction, chi: DirichletCharacter, n: int = 200) -> float:
    """sup of |F_+(P'_chi g)| on (0, 1/(q b)), b the upper end of supp g."""
    end = 1.0 / (chi.modulus * g.support[1])
    grid = end * np.arange(1, n + 1) / (n + 1)
    return float(np.max(np.abs(twisted_transform(g, chi, grid))))


def twisted_mellin(g: SmoothTestFunction, chi: DirichletCharacter, s):
    """Right Mellin transform of P'_chi g by quadrature of the explicit sum."""
    fr, fi = _twisted_window(g, chi, power=max(0.0, -float(np.min(np.real(s)))))
    out = mellin_windowed(fr, s, g.support[0], fr.cutoff, panels=256)
    if not chi.is_real:
        out = out + 1j * mellin_windowed(fi, s, g.support[0], fi.cutoff, panels=256)
    return out


# --- L-zero input file ----------------------------------------------------------------

LZERO_HEADER = "# zetakit-lzeros v1"


def write_lzero_file(path, rows) -> None:
    """rows: iterable of (q, character_index, gamma)."""
    lines = [LZERO_HEADER] + [f"{int(q)},{int(i)},{float(g):.12f}" for q, i, g in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def read_lzero_file(path) -> dict[tuple[int, int], list[float]]:
    out: dict[tuple[int, int], list[float]] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        q, i, g = line.split(",")
        out.setdefault((int(q), int(i)), []).append(float(g))
    return out


__all__ = [
    "TailBoundError", "KahaneTruncationError", "decay_window", "copoisson_function",
    "intertwining_residual", "corrupted_residual", "special_value_check", "SonineReport", "sonine_check",
    "SonineFunction", "copoisson_sonine", "comb_polynomial", "comb_weights", "KahaneSonine",
    "kahane_sonine", "completed_mellin", "completed_mellin_fe_residual", "line_points",
    "copoisson_mellin", "zero_perp_check", "evaluation_condition", "twisted_transform",
    "twisted_intertwining_residual", "twisted_support_sup", "twisted_mellin",
    "write_lzero_file", "read_lzero_file", "LZERO_HEADER",
]
