"""The explicit formula for zeta: von Mangoldt's psi(X) form and Weil's
test-function form.

For g smooth with compact support in (0, inf) and
ghat(s) = int g(u) u^(s-1) du (left Mellin transform),

    sum_rho ghat(rho) - ghat(0) - ghat(1)
        = -sum_{p,k} log p (g(p^k) + p^-k g(p^-k))
          - (1/2 pi) int_{Re s = 1/2} (log chi_+)'(s) ghat(s) |ds|,

with (log chi_+)'(s) = log pi - psi((1-s)/2)/2 - psi(s/2)/2.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .specfun import LOG_2PI, LOG_PI, chebyshev_psi, digamma, mangoldt_table
from .testfn import SmoothTestFunction, mellin_left
from .zeros import ZeroList, riemann_von_mangoldt


class ArchTailWarning(UserWarning):
    pass


# --- von Mangoldt ---------------------------------------------------------------

def von_mangoldt_terms(X: float, zeros: ZeroList) -> np.ndarray:
    """2 Re(X^rho / rho) for each ordinate, rho = 1/2 + i gamma."""
    g = zeros.array()
    rho = 0.5 + 1j * g
    return 2.0 * np.real(np.exp(rho * math.log(X)) / rho)


def von_mangoldt_sides(X: float, zeros: ZeroList, weight_boundary: bool = True):
    """(psi(X), X - sum_rho X^rho/rho - log 2 pi - log(1 - X^-2)/2)."""
    if X <= 1:
        raise ValueError("X must exceed 1")
    if zeros.count == 0:
        raise ValueError("need at least one zero")
    lhs = chebyshev_psi(X, weight_boundary)
    rhs = X - float(np.sum(von_mangoldt_terms(X, zeros))) - LOG_2PI \
        - 0.5 * math.log(1.0 - X ** -2)
    return lhs, rhs


def convergence_table(X: float, zeros: ZeroList, checkpoints=None):
    """Rows (zeros_used, residual, envelope) of the von Mangoldt formula.

    ``envelope`` is the largest |residual| over zero counts in the block
    ending at that checkpoint (after the previous one).
    """
    if checkpoints is None:
        checkpoints = [c for c in (100, 200, 400, 800, 1600, 2000) if c <= zeros.count]
    terms = von_mangoldt_terms(X, zeros)
    lhs = chebyshev_psi(X, True)
    base = X - LOG_2PI - 0.5 * math.log(1.0 - X ** -2)
    resid = lhs - (base - np.cumsum(terms))
    rows = []
    prev = 0
    for c in checkpoints:
        block = np.abs(resid[prev:c])
        rows.append((int(c), float(resid[c - 1]), float(block.max())))
        prev = c
    return rows


def convergence_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["zeros_used", "residual"])
    for n, r, *_ in rows:
        w.writerow([n, f"{r:.12e}"])
    return buf.getvalue()


# --- Weil form -----------------------------------------------------------------

def weil_zero_side(g: SmoothTestFunction, zeros: ZeroList, return_tail: bool = False):
    """sum over zeros of ghat(rho) + ghat(conj rho), minus ghat(0) + ghat(1).

    The tail beyond the last ordinate is estimated by integrating
    2 |ghat(1/2 + i tau)| against the zero density log(tau/2pi)/2pi.
    """
    gam = zeros.array()
    if gam.size:
        up = np.asarray(mellin_left(g, 0.5 + 1j * gam))
        down = np.asarray(mellin_left(g, 0.5 - 1j * gam))
        total = complex(np.sum(up + down))
    else:
        total = 0j
    poles = complex(mellin_left(g, 0.0)) + complex(mellin_left(g, 1.0))
    value = total - poles
    if not return_tail:
        return value
    return value, zero_tail_estimate(g, float(gam[-1]) if gam.size else 0.0)


def zero_tail_estimate(g: SmoothTestFunction, T: float, span: float = 400.0) -> float:
    tau = np.linspace(max(T, 1.0), max(T, 1.0) + span, 801)
    dens = np.log(np.maximum(tau, 2 * math.pi + 1e-9) / (2 * math.pi)) / (2 * math.pi)
    vals = 2.0 * np.abs(np.asarray(mellin_left(g, 0.5 + 1j * tau))) * dens
    return float(np.trapezoid(vals, tau))


def weil_prime_side(g: SmoothTestFunction) -> float:
    """-sum_{p^k} log p (g(p^k) + p^-k g(p^-k)), finite by support."""
    a, b = g.support
    total = 0.0
    if b > 2:
        lim = int(math.floor(b))
        lam = mangoldt_table(lim)
        n = np.nonzero(lam[: lim + 1])[0]
        total += float(np.sum(lam[n] * g(n.astype(float))))
    if a < 0.5:
        lim = int(math.floor(1.0 / a))
        lam = mangoldt_table(lim)
        n = np.nonzero(lam[: lim + 1])[0]
        total += float(np.sum(lam[n] * g(1.0 / n) / n))
    return -total


def log_chi_derivative(s):
    """(d/ds) log chi_+(s) = log pi - psi((1-s)/2)/2 - psi(s/2)/2."""
    ss = np.asarray(s, dtype=complex)
    return LOG_PI - 0.5 * np.asarray(digamma((1 - ss) / 2)) - 0.5 * np.asarray(digamma(ss / 2))


def default_tau_grid(g: SmoothTestFunction, step: float = 0.1, tol: float = 1e-13,
                     max_tau: float = 5000.0):
    """Symmetric grid out to where |ghat(1/2 + i tau)| log tau drops below tol.

    Growth also stops once the edge value stops shrinking (round-off floor).
    """
    T = 50.0
    prev = math.inf
    while T < max_tau:
        # envelope over the band (T/1.25, T], since ghat oscillates
        band = np.linspace(T / 1.25, T, 32)
        edge = float(np.abs(np.asarray(mellin_left(g, 0.5 + 1j * band))).max()) * math.log(T)
        if edge < tol or (edge >= prev and edge < 1e-10):
            break
        prev = edge
        T *= 1.25
    n = int(math.ceil(T / step))
    return step * np.arange(-n, n + 1)


def weil_arch_term(g: SmoothTestFunction, tau_grid=None) -> float:
    """(1/2 pi) int (log chi_+)'(1/2 + i tau) ghat(1/2 + i tau) d tau by trapezoid."""
    tau = default_tau_grid(g) if tau_grid is None else np.asarray(tau_grid, dtype=float)
    s = 0.5 + 1j * tau
    vals = log_chi_derivative(s) * np.asarray(mellin_left(g, s))
    w = np.full(tau.shape, tau[1] - tau[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    value = complex(np.dot(vals, w)) / (2 * math.pi)
    if abs(value.imag) > 1e-10 * (1 + abs(value.real)):
        warnings.warn(f"archimedean term has imaginary part {value.imag:.2e}", ArchTailWarning,
                      stacklevel=2)
    edge = float(np.abs(vals[[0, -1]]).max())
    if edge > 1e-12:
        warnings.warn(f"integrand at the grid edge is {edge:.2e}", ArchTailWarning,
                      stacklevel=2)
    return float(value.real)


def local_factor_line_integral(g: SmoothTestFunction, p: int, tau_grid=None) -> float:
    """(1/2 pi) int (d/ds) log[(1 - p^(s-1))/(1 - p^-s)] ghat(s) d tau on Re s = 1/2.

    Equals -log p sum_k (g(p^k) + p^-k g(p^-k)) by Mellin inversion.
    """
    tau = default_tau_grid(g, step=0.05) if tau_grid is None else np.asarray(tau_grid, float)
    s = 0.5 + 1j * tau
    lp = math.log(p)
    a = np.exp((s - 1) * lp)
    b = np.exp(-s * lp)
    dlog = -lp * (a / (1 - a) + b / (1 - b))
    vals = dlog * np.asarray(mellin_left(g, s))
    w = np.full(tau.shape, tau[1] - tau[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return float(np.real(np.dot(vals, w))) / (2 * math.pi)


@dataclass(frozen=True)
class ExplicitFormulaReport:
    zero_side: complex
    prime_side: float
    arch_term: float
    pole_terms: float
    residual: float
    zeros_used: int
    tail_estimate: float

    def to_dict(self) -> dict:
        d = asdict(self)
        z = complex(self.zero_side)
        d["zero_side"] = {"re": z.real, "im": z.imag}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def identity_residual(zero_side: complex, prime_side: float, arch_term: float) -> float:
    """|zero_side - (prime_side - arch_term)|."""
    return abs(complex(zero_side) - (prime_side - arch_term))


def weil_report(g: SmoothTestFunction, zeros: ZeroList, tau_grid=None) -> ExplicitFormulaReport:
    zs, tail = weil_zero_side(g, zeros, return_tail=True)
    ps = weil_prime_side(g)
    arch = weil_arch_term(g, tau_grid)
    poles = float((complex(mellin_left(g, 0.0)) + complex(mellin_left(g, 1.0))).real)
    return ExplicitFormulaReport(zs, ps, arch, poles, identity_residual(zs, ps, arch),
                                 zeros.count, tail)


def zeros_below(zeros: ZeroList, T: float) -> int:
    return int(np.searchsorted(zeros.array(), T))


def count_check(zeros: ZeroList, T: float) -> tuple[int, float]:
    """(number of ordinates below T, Riemann-von Mangoldt estimate)."""
    return zeros_below(zeros, T), riemann_von_mangoldt(T)


__all__ = [
    "von_mangoldt_terms", "von_mangoldt_sides", "convergence_table", "convergence_csv",
    "weil_zero_side", "zero_tail_estimate", "weil_prime_side", "log_chi_derivative",
    "default_tau_grid", "weil_arch_term", "local_factor_line_integral",
    "ExplicitFormulaReport", "identity_residual", "weil_report", "zeros_below", "count_check",
    "ArchTailWarning",
]
