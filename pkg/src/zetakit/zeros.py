"""Critical-line zeros of zeta: Hardy Z function, sign-change scan, cache file."""

from __future__ import annotations

import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .specfun import LOG_PI, gamma_ln, zeta

CACHE_HEADER = "# zetakit-zeros v1"
CACHE_ENV = "ZETAKIT_ZERO_CACHE"


class ZeroScanError(RuntimeError):
    """The scan disagrees with the zero counting function."""


def rs_theta(t):
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi."""
    tt = np.asarray(t, dtype=float)
    val = np.imag(gamma_ln(0.25 + 0.5j * tt)) - 0.5 * tt * LOG_PI
    return float(val) if np.ndim(t) == 0 else val


def hardy_Z(t):
    """Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t."""
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0):
        raise ValueError("hardy_Z is defined here for t >= 0")
    val = np.exp(1j * np.asarray(rs_theta(tt))) * np.asarray(zeta(0.5 + 1j * tt))
    if np.any(np.abs(val.imag) > 1e-8 * np.maximum(1.0, np.abs(val.real))):
        raise ArithmeticError("Hardy Z has a non-negligible imaginary part")
    return float(val.real) if np.ndim(t) == 0 else val.real


def riemann_von_mangoldt(T: float) -> float:
    """Smooth zero-count estimate (T/2pi) log(T/2pi e) + 7/8."""
    x = T / (2 * math.pi)
    return x * math.log(x / math.e) + 7.0 / 8.0


@dataclass(frozen=True)
class ZeroList:
    ordinates: tuple[float, ...]
    precision: float = 1e-9

    def __post_init__(self):
        g = np.asarray(self.ordinates)
        if g.size and (np.any(g <= 0) or np.any(np.diff(g) <= 0)):
            raise ValueError("ordinates must be positive and strictly increasing")

    @property
    def count(self) -> int:
        return len(self.ordinates)

    def array(self) -> np.ndarray:
        return np.asarray(self.ordinates, dtype=float)

    def head(self, n: int) -> "ZeroList":
        return ZeroList(self.ordinates[:n], self.precision)

    def __len__(self) -> int:
        return len(self.ordinates)


def _scan_interval(args):
    lo, hi, step = args
    n = max(2, int(math.ceil((hi - lo) / step)) + 1)
    grid = np.linspace(lo, hi, n)
    z = hardy_Z(grid)
    roots = []
    for i in np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]:
        a, b = grid[i], grid[i + 1]
        roots.append(brentq(hardy_Z, a, b, xtol=1e-11, maxiter=200))
    for i in np.nonzero(z == 0.0)[0]:
        roots.append(float(grid[i]))
    return sorted(roots)


def _scan(lo: float, hi: float, step: float, workers: int) -> list[float]:
    edges = np.arange(lo, hi, 25.0)
    pieces = [(float(a), float(min(a + 25.0, hi)), step) for a in edges]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_interval, pieces))
    else:
        parts = [_scan_interval(p) for p in pieces]
    roots = sorted(r for part in parts for r in part)
    # a root sitting exactly on a shared edge shows up twice
    out = []
    for r in roots:
        if not out or r - out[-1] > 1e-8:
            out.append(r)
    return out


def _count_defect(roots: list[float], k: int) -> float:
    """S(T) at the midpoint between the k-th and (k+1)-th root (1-based k)."""
    T = 0.5 * (roots[k - 1] + roots[k])
    return k - (rs_theta(T) / math.pi + 1.0)


def find_zeros(count: int, step: float = 0.05, workers: int = 1) -> ZeroList:
    """First ``count`` positive zero ordinates of zeta on the critical line.

    Sign changes of Z on a grid of spacing ``step`` are refined with Brent's
    method; every block of 50 zeros is checked against theta(T)/pi + 1 and
    rescanned at a finer step if a pair of zeros was jumped over.
    """
    if not 0 <= count <= 10_000:
        raise ValueError("count must lie in [0, 10000]")
    if count == 0:
        return ZeroList(())
    roots: list[float] = []
    lo = 0.0
    while len(roots) < count + 1:
        # mean spacing 2 pi / log(t / 2 pi); scan about 50 zeros per block
        spacing = 2 * math.pi / max(1.0, math.log(max(lo, 20.0) / (2 * math.pi)))
        hi = lo + max(50.0, 50 * spacing)
        s = step
        for _ in range(4):
            block = _scan(lo, hi, s, workers)
            trial = roots + block
            k = len(trial) - 1
            if k < 1 or abs(_count_defect(trial, k)) < 1.6:
                break
            s /= 4
        else:
            raise ZeroScanError(
                f"zero count on [{lo:.3f}, {hi:.3f}] disagrees with theta(T)/pi + 1")
        roots = trial
        lo = hi
    out = roots[:count]
    return ZeroList(tuple(float(r) for r in out), precision=1e-9)


def hardy_Z_derivative(t: float, h: float = 1e-5) -> float:
    return (hardy_Z(t + h) - hardy_Z(t - h)) / (2 * h)


def zero_sum_inv_sq(zeros: ZeroList, multiplicities=None, weighting: str = "once") -> float:
    """Sum over zeros rho = 1/2 + i gamma (both signs of gamma) of w/|rho|^2.

    ``weighting`` is ``"once"`` (each zero counted once) or ``"squared"``
    (weight m_rho^2).  Multiplicities default to 1.
    """
    g = zeros.array()
    if g.size == 0:
        return 0.0
    m = np.ones_like(g) if multiplicities is None else np.asarray(multiplicities, float)
    if weighting == "once":
        w = np.ones_like(g)
    elif weighting == "squared":
        w = m ** 2
    else:
        raise ValueError("weighting must be 'once' or 'squared'")
    return float(np.sum(2.0 * w / (0.25 + g * g)))


# --- cache file -------------------------------------------------------------

def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "zetakit" / "zeros.txt"


def format_zero_cache(zeros: ZeroList) -> str:
    lines = [CACHE_HEADER]
    lines += [f"{i},{g:.12f}" for i, g in enumerate(zeros.ordinates, start=1)]
    return "\n".join(lines) + "\n"


def write_zero_cache(path, zeros: ZeroList) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".zeros-")
    with os.fdopen(fd, "w") as fh:
        fh.write(format_zero_cache(zeros))
    os.replace(tmp, path)


def read_zero_cache(path) -> ZeroList:
    text = Path(path).read_text().splitlines()
    if not text or text[0].strip() != CACHE_HEADER:
        raise ValueError(f"{path}: missing '{CACHE_HEADER}' header")
    ords = []
    for n, line in enumerate(text[1:], start=1):
        if not line.strip():
            continue
        idx, gamma = line.split(",")
        if int(idx) != n:
            raise ValueError(f"{path}: zero index {idx} out of sequence")
        ords.append(float(gamma))
    return ZeroList(tuple(ords), precision=5e-13)


def load_zeros(count: int, path=None, workers: int = 1) -> ZeroList:
    """Zeros from the cache file, extending (and rewriting) it when too short."""
    path = Path(path) if path is not None else default_cache_path()
    if path.exists():
        cached = read_zero_cache(path)
        if cached.count >= count:
            return cached.head(count)
    zeros = find_zeros(count, workers=workers)
    write_zero_cache(path, zeros)
    return read_zero_cache(path)
