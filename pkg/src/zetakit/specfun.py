"""Complex special functions and arithmetic functions.

Everything here accepts Python complex/float scalars or numpy arrays and
returns the same shape.  Complex points are plain ``complex`` values.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

EULER_GAMMA = 0.57721566490153286061
LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)


class PoleError(ArithmeticError):
    """Raised when a function is evaluated at one of its poles."""


# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS_P = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])


def _as_complex_array(s):
    arr = np.asarray(s, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite complex point")
    return arr


def _restore(arr, like):
    if np.ndim(like) == 0:
        return complex(arr.reshape(()))
    return arr


def _nonpositive_integer(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _lanczos_loggamma(z: np.ndarray) -> np.ndarray:
    # valid for Re z >= 1/2
    z = z - 1.0
    x = np.full(z.shape, _LANCZOS_P[0], dtype=complex)
    for i in range(1, len(_LANCZOS_P)):
        x = x + _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def gamma_ln(s):
    """Principal branch of log Gamma(s).

    For Re(s) < 1/2 the value is shifted up with
    ``log Gamma(s) = log Gamma(s + n) - sum log(s + k)``, which keeps the
    branch cut on the negative real axis.
    """
    z = _as_complex_array(s)
    if np.any(_nonpositive_integer(z)):
        raise PoleError("log Gamma has a pole at non-positive integers")
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = _lanczos_loggamma(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        n = np.ceil(0.5 - zl.real).astype(int)
        nmax = int(n.max())
        acc = np.zeros(zl.shape, dtype=complex)
        for k in range(nmax):
            mask = k < n
            acc[mask] += np.log(zl[mask] + k)
        out[left] = _lanczos_loggamma(zl + n) - acc
    return _restore(out, s)


def gamma(s):
    return np.exp(gamma_ln(s)) if np.ndim(s) else cmath.exp(gamma_ln(s))


# B_{2k}/(2k) for the digamma asymptotic series, k = 1..8
_PSI_ASYM = [float(b) / (2 * k) for k, b in
             ((k, bernoulli(2 * k)[2 * k]) for k in range(1, 9))]


def digamma(s):
    """psi(s) = Gamma'(s)/Gamma(s)."""
    z = np.atleast_1d(_as_complex_array(s))
    if np.any(_nonpositive_integer(z)):
        raise PoleError("digamma has a pole at non-positive integers")
    out = np.empty(z.shape, dtype=complex)
    refl = z.real < 0
    w = np.where(refl, 1.0 - z, z)
    acc = np.zeros(w.shape, dtype=complex)
    while True:
        low = w.real < 10.0
        if not np.any(low):
            break
        acc[low] -= 1.0 / w[low]
        w = np.where(low, w + 1.0, w)
    inv2 = 1.0 / (w * w)
    series = np.zeros(w.shape, dtype=complex)
    for c in reversed(_PSI_ASYM):
        series = (series + c) * inv2
    val = np.log(w) - 0.5 / w - series + acc
    out[:] = val
    if np.any(refl):
        zr = z[refl]
        out[refl] = val[refl] - np.pi / np.tan(np.pi * zr)
    return _restore(out, s)


def chi_plus(s):
    """pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2); equals zeta(s)/zeta(1-s)."""
    z = _as_complex_array(s)
    out = np.zeros(z.shape, dtype=complex)
    denom_pole = _nonpositive_integer(z / 2)
    num_pole = _nonpositive_integer((1 - z) / 2)
    if np.any(num_pole & ~denom_pole):
        raise PoleError("chi_+ has poles at s = 1, 3, 5, ...")
    ok = ~denom_pole
    zo = z[ok]
    out[ok] = np.exp((zo - 0.5) * LOG_PI + gamma_ln((1 - zo) / 2) - gamma_ln(zo / 2))
    return _restore(out, s)


# --- zeta ---------------------------------------------------------------

@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> np.ndarray:
    """Weights (d_n - d_k)/d_n, k = 0..n-1, of the accelerated eta series."""
    i = np.arange(n + 1, dtype=float)
    lt = (math.log(n) + np.array([math.lgamma(n + k) for k in i])
          - np.array([math.lgamma(n - k + 1) for k in i])
          - np.array([math.lgamma(2 * k + 1) for k in i]) + i * math.log(4.0))
    terms = np.exp(lt - lt.max())
    suffix = np.cumsum(terms[::-1])[::-1]  # suffix[k] = sum_{i >= k}
    total = suffix[0]
    w = suffix[1:] / total  # (d_n - d_k)/d_n = sum_{i > k} / sum_all
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return signs * w


def _eta_terms(t_abs: float) -> int:
    return int(40 + 1.2 * t_abs)


def _zeta_eta(z: np.ndarray) -> np.ndarray:
    out = np.empty(z.shape, dtype=complex)
    need = np.array([_eta_terms(abs(v.imag)) for v in z.ravel()]).reshape(z.shape)
    # bucket by term count so each chunk shares one weight vector
    buckets = {}
    for idx, n in np.ndenumerate(need):
        n = int(64 * math.ceil(n / 64))
        buckets.setdefault(n, []).append(idx)
    for n, idxs in buckets.items():
        w = _borwein_weights(n)
        logk = np.log(np.arange(1, n + 1, dtype=float))
        zs = np.array([z[i] for i in idxs])
        for lo in range(0, len(zs), 256):
            chunk = zs[lo:lo + 256]
            eta = np.exp(-np.outer(chunk, logk)) @ w
            val = eta / (1.0 - np.exp((1.0 - chunk) * math.log(2.0)))
            for j, i in enumerate(idxs[lo:lo + 256]):
                out[i] = val[j]
    return out


def zeta(s):
    """Riemann zeta function.

    Uses the Borwein-accelerated alternating series for Re(s) > 0, the
    reflection zeta(s) = chi_+(s) zeta(1-s) for Re(s) <= 0, and the
    Euler-Maclaurin sum where those are ill-conditioned (near s = 0 and
    near the zeros of 1 - 2^(1-s)).
    """
    z = _as_complex_array(s)
    if np.any(z == 1.0):
        raise PoleError("zeta has a pole at s = 1")
    out = np.empty(z.shape, dtype=complex)
    flat_z = z.ravel()
    flat = out.ravel()
    eta_factor = np.abs(1.0 - np.exp((1.0 - flat_z) * math.log(2.0)))
    use_em = ((flat_z.real <= 0) & (np.abs(flat_z) < 1.0)) | (
        (flat_z.real > 0) & (eta_factor < 1e-2))
    use_eta = (flat_z.real > 0) & ~use_em
    use_refl = ~(use_em | use_eta)
    if np.any(use_eta):
        flat[use_eta] = _zeta_eta(flat_z[use_eta])
    if np.any(use_em):
        flat[use_em] = hurwitz_zeta(flat_z[use_em], 1.0)
    if np.any(use_refl):
        zr = flat_z[use_refl]
        flat[use_refl] = chi_plus(zr) * zeta(1.0 - zr)
    return _restore(out, s)


_EM_TERMS = 14
_EM_COEF = [float(bernoulli(2 * j)[2 * j]) / math.factorial(2 * j)
            for j in range(1, _EM_TERMS + 1)]


def _hurwitz_em(sv: complex, a: float) -> complex:
    n = int(30 + 1.2 * abs(sv))
    k = np.arange(n, dtype=float) + a
    head = np.sum(np.exp(-sv * np.log(k)))
    x = n + a
    xs = x ** (-sv)
    tail = x * xs / (sv - 1.0) + 0.5 * xs
    rising = sv  # s (s+1) ... (s+2j-2)
    xp = xs / x
    corr = 0.0
    for j, c in enumerate(_EM_COEF, start=1):
        corr += c * rising * xp
        rising *= (sv + 2 * j - 1) * (sv + 2 * j)
        xp /= x * x
    return complex(head + tail + corr)


def _hurwitz_reflected(sv: complex, frac: Fraction) -> complex:
    """Hurwitz's formula for a = p/q, evaluated with Re(1 - s) > 1.

    zeta(s, a) = 2 Gamma(1-s) (2 pi)^(s-1) [sin(pi s/2) C + cos(pi s/2) S],
    where C + i S = sum_n e(n a) n^(s-1) = q^(s-1) sum_r e(r a) zeta(1-s, r/q).
    """
    p, q = frac.numerator, frac.denominator
    w = 1.0 - sv
    cs = 0j
    sn = 0j
    for r in range(1, q + 1):
        z = _hurwitz_em(w, r / q)
        ang = 2 * math.pi * ((r * p) % q) / q
        cs += math.cos(ang) * z
        sn += math.sin(ang) * z
    scale = cmath.exp(-w * math.log(q))
    t = abs(sv.imag)
    half = 0.5 * math.pi * sv
    # split off exp(pi |t| / 2) so neither factor overflows
    pre = cmath.exp(complex(gamma_ln(w)) - w * math.log(2 * math.pi) + 0.5 * math.pi * t)
    damp = math.exp(-0.5 * math.pi * t)
    trig = cmath.sin(half) * damp * cs + cmath.cos(half) * damp * sn
    return 2.0 * pre * scale * trig


def hurwitz_zeta(s, a: float):
    """Hurwitz zeta(s, a) = sum_{k>=0} (k + a)^(-s), by Euler-Maclaurin.

    For Re s < -1/2 the direct sum cancels badly.  When a = p/q with q <= 64
    (every use from dirichlet_L) Hurwitz's formula moves the evaluation
    to Re(1 - s) > 1; other a fall back to the direct sum.
    """
    if not 0.0 < a <= 1.0:
        raise ValueError("a must lie in (0, 1]")
    z = _as_complex_array(s)
    if np.any(z == 1.0):
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    frac = Fraction(a).limit_denominator(64)
    rational = abs(float(frac) - a) <= 1e-15 * a
    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for i, sv in enumerate(flat):
        sv = complex(sv)
        if rational and sv.real < -0.5:
            out[i] = _hurwitz_reflected(sv, frac)
        else:
            out[i] = _hurwitz_em(sv, a)
    return _restore(out.reshape(z.shape), s)


# --- Dirichlet characters -------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _primitive_root_prime_power(p: int, e: int) -> int:
    phi = p - 1
    factors = _factorize(phi)
    for g in range(2, p):
        if all(pow(g, phi // r, p) != 1 for r in factors):
            break
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _group_generators(q: int) -> list[tuple[int, int]]:
    """(generator mod q, order) pairs decomposing (Z/q)^x as a direct product."""
    gens = []
    for p, e in sorted(_factorize(q).items()):
        pe = p ** e
        rest = q // pe
        local = []
        if p == 2:
            if e == 2:
                local = [(3, 2)]
            elif e >= 3:
                local = [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(_primitive_root_prime_power(p, e), pe - pe // p)]
        for g, order in local:
            # lift: g mod p^e, 1 mod the rest
            if rest == 1:
                lifted = g % q
            else:
                inv = pow(rest, -1, pe)
                lifted = (1 + rest * (((g - 1) * inv) % pe)) % q
            gens.append((lifted, order))
    return gens


def _discrete_logs(q: int, gens: list[tuple[int, int]]) -> dict[int, tuple[int, ...]]:
    table = {}
    for exps in itertools.product(*[range(o) for _, o in gens]):
        v = 1
        for (g, _), k in zip(gens, exps):
            v = v * pow(g, k, q) % q
        table[v] = exps
    return table


def _character_table(q: int, index: int) -> tuple[complex, ...]:
    gens = _group_generators(q)
    orders = [o for _, o in gens]
    combos = list(itertools.product(*[range(o) for o in orders]))
    if not 0 <= index < len(combos):
        raise ValueError(f"character index {index} out of range for modulus {q}")
    ks = combos[index]
    logs = _discrete_logs(q, gens)
    vals = []
    for n in range(q):
        if math.gcd(n, q) != 1:
            vals.append(0j)
            continue
        phase = sum(k * j / o for k, j, o in zip(ks, logs[n % q], orders))
        ang = 2 * math.pi * (phase % 1.0)
        vals.append(complex(round(math.cos(ang), 15), round(math.sin(ang), 15)))
    if q == 1:
        vals = [1 + 0j]
    return tuple(vals)


def character_count(q: int) -> int:
    return math.prod(o for _, o in _group_generators(q)) if q > 1 else 1


def _is_primitive(q: int, values: tuple[complex, ...]) -> bool:
    for d in range(1, q):
        if q % d:
            continue
        induced = True
        for n in range(1, q):
            if math.gcd(n, q) == 1 and (n - 1) % d == 0 and abs(values[n] - 1) > 1e-12:
                induced = False
                break
        if induced:
            return False
    return True


@dataclass(frozen=True)
class DirichletCharacter:
    """A primitive even Dirichlet character mod q (q > 1)."""

    modulus: int
    index: int
    values: tuple[complex, ...] = field(repr=False)
    gauss_sum: complex = field(repr=False)
    root_number: complex = field(repr=False)

    @classmethod
    def from_index(cls, q: int, index: int) -> "DirichletCharacter":
        if q < 2:
            raise ValueError("the principal character mod 1 is excluded")
        values = _character_table(q, index)
        if abs(values[q - 1] - 1) > 1e-12:
            raise ValueError(f"character {index} mod {q} is odd")
        if not _is_primitive(q, values):
            raise ValueError(f"character {index} mod {q} is not primitive")
        tau = sum(values[a] * cmath.exp(2j * math.pi * a / q) for a in range(1, q))
        w = tau / math.sqrt(q)
        if abs(abs(w) - 1) > 1e-12:
            raise ArithmeticError(f"|w_chi| - 1 = {abs(w) - 1:.3e}")
        return cls(q, index, values, tau, w)

    @property
    def even(self) -> bool:
        return True

    @property
    def primitive(self) -> bool:
        return True

    @property
    def is_real(self) -> bool:
        return all(abs(v.imag) < 1e-12 for v in self.values)

    def __call__(self, n):
        return np.asarray(self.values)[np.asarray(n) % self.modulus] if np.ndim(n) \
            else self.values[n % self.modulus]

    def conjugate(self) -> "DirichletCharacter":
        conj = np.conj(np.asarray(self.values))
        for idx in range(character_count(self.modulus)):
            if np.allclose(_character_table(self.modulus, idx), conj, atol=1e-12):
                return DirichletCharacter.from_index(self.modulus, idx)
        raise ArithmeticError("conjugate character not found")  # pragma: no cover


def even_primitive_characters(q: int) -> list[DirichletCharacter]:
    chars = []
    for idx in range(character_count(q)):
        try:
            chars.append(DirichletCharacter.from_index(q, idx))
        except ValueError:
            continue
    return chars


def real_character(q: int) -> DirichletCharacter:
    """The real (quadratic) primitive even character mod q, if it exists."""
    for chi in even_primitive_characters(q):
        if chi.is_real:
            return chi
    raise ValueError(f"no real primitive even character mod {q}")


def dirichlet_L(s, chi: DirichletCharacter):
    """L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q)."""
    if not isinstance(chi, DirichletCharacter):
        raise TypeError("chi must be a DirichletCharacter")
    q = chi.modulus
    z = _as_complex_array(s)
    total = np.zeros(z.shape, dtype=complex)
    for a in range(1, q):
        c = chi.values[a]
        if c != 0:
            total = total + c * np.asarray(hurwitz_zeta(z, a / q))
    total = total * np.exp(-z * math.log(q))
    return _restore(total, s)


# --- arithmetic functions ---------------------------------------------------

@lru_cache(maxsize=8)
def _spf_table(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
    return spf


def _smallest_prime_factor(n: int) -> int:
    if n < 2:
        return n
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def mangoldt(n: int) -> float:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 0.0
    p = _smallest_prime_factor(n)
    while n % p == 0:
        n //= p
    return math.log(p) if n == 1 else 0.0


def mangoldt_table(limit: int) -> np.ndarray:
    """Lambda(n) for n = 0..limit (entry 0 unused)."""
    spf = _spf_table(max(limit, 2))
    lam = np.zeros(limit + 1)
    for n in range(2, limit + 1):
        p = int(spf[n])
        m = n
        while m % p == 0:
            m //= p
        if m == 1:
            lam[n] = math.log(p)
    return lam


def chebyshev_psi(X: float, weight_boundary: bool = True) -> float:
    """sum_{n < X} Lambda(n), plus Lambda(X)/2 at integral X when flagged."""
    if X <= 1:
        raise ValueError("X must exceed 1")
    top = math.floor(X)
    lam = mangoldt_table(top)
    if X == top:
        total = float(np.sum(lam[2:top]))
        if weight_boundary:
            total += 0.5 * lam[top]
        return total
    return float(np.sum(lam[2:top + 1]))


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    mu = 1
    for p, e in _factorize(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu
