"""Command-line front end.

Every suite writes a ``zetakit-report v1`` JSON document (or a CSV table)
atomically.  Exit codes: 0 all checks pass, 1 a tolerance check failed,
2 bad configuration, 3 a numerical tail bound could not be met.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np
import scipy

from . import __version__

SCHEMA_VERSION = "zetakit-report v1"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

SCHEMA_FIELDS = {
    "schema": "the string 'zetakit-report v1'",
    "command": "suite name",
    "config": "every option of the run, echoed",
    "versions": "zetakit, numpy and scipy versions",
    "results": "suite-specific numbers (see below)",
    "checks": "list of {name, value, tol, bound, passed}; bound 'upper' passes when "
              "value <= tol, 'lower' when value >= tol",
    "passed": "true iff every check passed",
}

SUITE_RESULTS = {
    "zeros": "count, first and last ordinate, Riemann-von Mangoldt count check at T",
    "copoisson": "intertwining residual, corrupted-input residual, special value lhs/rhs, "
                 "Sonine report, completed-Mellin residual",
    "sonine": "Sonine report and completed-Mellin residual for a co-Poisson or Kahane function",
    "explicit": "zero side, prime side, archimedean term, pole terms, residual, tail estimate",
    "vonmangoldt": "psi(X), right-hand side, convergence table rows",
    "nb": "rows of lambda, n, D2, |log lambda| D2, zero sum, condition number",
    "lfun": "functional-equation residual, optional Mellin values at supplied L-zeros",
}


class ConfigError(ValueError):
    pass


def report_schema() -> str:
    lines = [SCHEMA_VERSION, "", "Top-level fields:"]
    lines += [f"  {k}: {v}" for k, v in SCHEMA_FIELDS.items()]
    lines += ["", "Suite results:"]
    lines += [f"  {k}: {v}" for k, v in SUITE_RESULTS.items()]
    return "\n".join(lines) + "\n"


def validate_report(doc: dict) -> None:
    """Raise ValueError unless ``doc`` has the v1 report layout."""
    missing = set(SCHEMA_FIELDS) - set(doc)
    if missing:
        raise ValueError(f"report lacks {sorted(missing)}")
    if doc["schema"] != SCHEMA_VERSION:
        raise ValueError(f"unknown schema {doc['schema']!r}")
    if doc["command"] not in SUITE_RESULTS:
        raise ValueError(f"unknown command {doc['command']!r}")
    for c in doc["checks"]:
        if set(c) != {"name", "value", "tol", "bound", "passed"} \
                or c["bound"] not in ("upper", "lower"):
            raise ValueError(f"malformed check {c}")
    if doc["passed"] != all(c["passed"] for c in doc["checks"]):
        raise ValueError("'passed' disagrees with the checks")


def _clean(x):
    """JSON-safe copy: numpy scalars to Python, complex to {re, im}."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Suite:
    def __init__(self):
        self.results: dict = {}
        self.checks: list[dict] = []
        self.table: str | None = None

    def check(self, name: str, value: float, tol: float, bound: str = "upper") -> None:
        value = float(value)
        ok = value <= tol if bound == "upper" else value >= tol
        self.checks.append({"name": name, "value": value, "tol": float(tol),
                            "bound": bound, "passed": bool(ok)})


# --- suites ----------------------------------------------------------------------

def _zeros(args, suite: Suite):
    from .explicit import count_check
    from .zeros import format_zero_cache, load_zeros

    zl = load_zeros(args.count, workers=args.workers)
    suite.results["count"] = zl.count
    suite.results["first"] = zl.ordinates[0]
    suite.results["last"] = zl.ordinates[-1]
    if zl.ordinates[-1] >= args.count_T:
        n, est = count_check(zl, args.count_T)
        suite.results["count_below_T"] = n
        suite.results["rvm_estimate"] = est
        suite.check("count_vs_estimate", abs(n - est), args.tol_count)
    suite.table = format_zero_cache(zl)


def _copoisson(args, suite: Suite):
    from .copoisson import (completed_mellin_fe_residual, copoisson_sonine,
                            corrupted_residual, intertwining_residual, line_points,
                            sonine_check, special_value_check)
    from .testfn import bump_on, enforce_moments

    lam = args.lam
    if not 0 < lam < 1:
        raise ConfigError("--lambda must lie in (0, 1)")
    g = bump_on(lam, 1.0 / lam)
    r = intertwining_residual(g)
    suite.results["intertwining_residual"] = r
    suite.check("intertwining", r, args.tol_intertwining)

    # corrupted input: the right side built from g plus a small bump
    rng = np.random.default_rng(args.seed)
    delta = 0.01 * (1.0 + rng.random())
    bad = corrupted_residual(g, delta)
    suite.results["corrupted_residual"] = bad
    suite.results["corruption_height"] = delta
    suite.check("corruption_detected", bad, args.tol_sensitivity, bound="lower")

    lhs, rhs = special_value_check(g)
    suite.results["special_value"] = {"lhs": lhs, "rhs": rhs}
    suite.check("special_value", abs(lhs - rhs), args.tol_special)

    sf = copoisson_sonine(lam, enforce_moments(g))
    rep = sonine_check(sf, lam, tol=args.tol_sonine)
    suite.results["sonine"] = rep.__dict__
    suite.check("sonine", 0.0 if rep.passed else 1.0, 0.5)
    fe = completed_mellin_fe_residual(sf, line_points())
    suite.results["completed_mellin_residual"] = fe
    suite.check("completed_mellin", fe, args.tol_fe)


def _sonine(args, suite: Suite):
    from .copoisson import (completed_mellin_fe_residual, copoisson_sonine, kahane_sonine,
                            line_points, sonine_check)

    if args.kind == "copoisson":
        if not 0 < args.lam < 1:
            raise ConfigError("--lambda must lie in (0, 1) for co-Poisson generation")
        sf, lam = copoisson_sonine(args.lam), args.lam
        pts = line_points()
        completed = True
    else:
        if args.N < 1 or not 0 < args.eps < math.sqrt(args.N) / 4:
            raise ConfigError("need N >= 1 and 0 < eps < sqrt(N)/4")
        sf, lam = kahane_sonine(args.N, args.eps, max_n=args.max_n)
        # completed values underflow at moderate heights; compare the
        # unimodular form where the transforms are still sizeable
        pts = line_points(21, tau_max=1000.0, tau_min=300.0)
        completed = False
    rep = sonine_check(sf, lam, tol=args.tol_sonine)
    suite.results["label"] = sf.label
    suite.results["sonine"] = rep.__dict__
    suite.check("sonine", 0.0 if rep.passed else 1.0, 0.5)
    fe = completed_mellin_fe_residual(sf, pts, completed=completed)
    suite.results["mellin_residual"] = fe
    suite.results["mellin_form"] = "completed" if completed else "unimodular"
    suite.check("mellin_functional_equation", fe, args.tol_fe)


def _explicit(args, suite: Suite):
    from .explicit import weil_report
    from .testfn import bump_on
    from .zeros import load_zeros

    a, b = args.support
    if not 0 < a < b:
        raise ConfigError("--support needs 0 < a < b")
    zl = load_zeros(args.zeros, workers=args.workers)
    rep = weil_report(bump_on(a, b), zl)
    suite.results.update(rep.to_dict())
    suite.check("identity", rep.residual, args.tol)
    suite.table = ("zero_side,prime_side,arch_term,residual\n"
                   f"{rep.zero_side.real:.12e},{rep.prime_side:.12e},"
                   f"{rep.arch_term:.12e},{rep.residual:.12e}\n")


def _vonmangoldt(args, suite: Suite):
    from .explicit import convergence_csv, convergence_table, von_mangoldt_sides
    from .zeros import load_zeros

    if args.X <= 1:
        raise ConfigError("--X must exceed 1")
    zl = load_zeros(args.zeros, workers=args.workers)
    lhs, rhs = von_mangoldt_sides(args.X, zl)
    rows = convergence_table(args.X, zl)
    suite.results.update({"lhs": lhs, "rhs": rhs, "zeros_used": zl.count,
                          "table": [{"zeros_used": n, "residual": r, "envelope": e}
                                    for n, r, e in rows]})
    suite.check("sides", abs(lhs - rhs), args.tol)
    env = [e for *_, e in rows]
    rises = max((b - a for a, b in zip(env, env[1:])), default=0.0)
    suite.check("envelope_nonincreasing", max(rises, 0.0), 0.0)
    suite.table = convergence_csv(rows)


def _nb(args, suite: Suite):
    from .nymanbeurling import bound_csv, bound_report, solve_distance
    from .zeros import load_zeros

    lams = sorted(set(args.lam), reverse=True)
    if any(not 0 < x < 1 for x in lams) or args.per_octave < 1:
        raise ConfigError("need 0 < lambda < 1 and --per-octave >= 1")
    systems = [solve_distance(x, per_octave=args.per_octave, svd_cutoff=args.svd_cutoff)
               for x in lams]
    for s in systems:
        asym = float(np.max(np.abs(s.G - s.G.T)))
        lo = float(np.linalg.eigvalsh(s.G).min())
        suite.check(f"symmetric[{s.lam:g}]", asym, 1e-10)
        suite.check(f"psd[{s.lam:g}]", max(-lo, 0.0), 1e-8 * float(np.abs(s.G).max()))
        suite.check(f"D2_in_unit_interval[{s.lam:g}]",
                    0.0 if 0.0 <= s.D2 <= 1.0 else 1.0, 0.5)
    rows = bound_report(systems, load_zeros(args.zeros, workers=args.workers))
    suite.results["rows"] = rows
    suite.table = bound_csv(rows)


def _lfun(args, suite: Suite):
    from .copoisson import read_lzero_file, twisted_mellin
    from .specfun import DirichletCharacter, chi_plus, dirichlet_L, even_primitive_characters
    from .testfn import bump_on

    chars = even_primitive_characters(args.modulus)
    if not chars:
        raise ConfigError(f"no even primitive character mod {args.modulus}")
    chi = DirichletCharacter.from_index(args.modulus, args.index) if args.index else next(
        (c for c in chars if c.is_real), chars[0])
    rng = np.random.default_rng(args.seed)
    s = rng.uniform(-1.0, 2.0, args.points) + 1j * rng.uniform(-args.height, args.height,
                                                                args.points)
    q = args.modulus
    # Lambda(s) = (q/pi)^(s/2) Gamma(s/2) L(s, chi) = w Lambda(1 - s, conj chi)
    L1 = np.asarray(dirichlet_L(s, chi))
    L2 = np.asarray(dirichlet_L(1 - s, chi.conjugate()))
    factor = chi.root_number * q ** (0.5 - s) * np.asarray(chi_plus(s))
    res = np.abs(L1 - factor * L2) / (1.0 + np.abs(L1))
    suite.results["character"] = {"modulus": q, "index": chi.index,
                                  "root_number": chi.root_number}
    suite.results["fe_residual"] = float(res.max())
    suite.check("functional_equation", float(res.max()), args.tol)
    if args.lzeros:
        table = read_lzero_file(args.lzeros)
        gammas = table.get((q, chi.index), [])
        if not gammas:
            raise ConfigError(f"no zeros for ({q}, {chi.index}) in {args.lzeros}")
        g = bump_on(0.5, 2.0)
        at = np.asarray(twisted_mellin(g, chi, 0.5 + 1j * np.asarray(gammas)))
        ref = np.asarray(twisted_mellin(g, chi, 0.5 + 1j * np.linspace(0.0, 20.0, 41)))
        rel = np.abs(at) / np.abs(ref).max()
        suite.results["lzero_values"] = rel
        suite.check("perpendicular_at_lzeros", float(rel.max()), args.tol_perp)


SUITES = {"zeros": _zeros, "copoisson": _copoisson, "sonine": _sonine,
          "explicit": _explicit, "vonmangoldt": _vonmangoldt, "nb": _nb, "lfun": _lfun}


# --- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zetakit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"zetakit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--out", help="report path (default: standard output)")
        sp.add_argument("--format", choices=["json", "csv"], default=fmt)
        sp.add_argument("--write-config", metavar="PATH",
                        help="also write the effective configuration as JSON")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1, help="processes for zero finding")
        return sp

    sp = common(sub.add_parser("zeros", help="critical-line zeros of zeta"), fmt="csv")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--count-T", type=float, default=200.0)
    sp.add_argument("--tol-count", type=float, default=1.0)

    sp = common(sub.add_parser("copoisson", help="co-Poisson intertwining and Sonine suite"))
    sp.add_argument("--lambda", dest="lam", type=float, default=0.5)
    sp.add_argument("--tol-intertwining", type=float, default=1e-6)
    sp.add_argument("--tol-sensitivity", type=float, default=1e-3)
    sp.add_argument("--tol-special", type=float, default=1e-7)
    sp.add_argument("--tol-sonine", type=float, default=1e-8)
    sp.add_argument("--tol-fe", type=float, default=1e-6)

    sp = common(sub.add_parser("sonine", help="Sonine membership of one function"))
    sp.add_argument("--kind", choices=["copoisson", "kahane"], default="copoisson")
    sp.add_argument("--lambda", dest="lam", type=float, default=0.5)
    sp.add_argument("--N", type=int, default=4)
    sp.add_argument("--eps", type=float, default=0.2)
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--tol-sonine", type=float, default=1e-8)
    sp.add_argument("--tol-fe", type=float, default=1e-5)

    sp = common(sub.add_parser("explicit", help="Weil explicit formula for a bump"))
    sp.add_argument("--support", type=float, nargs=2, default=[1.0, 40.0], metavar=("A", "B"))
    sp.add_argument("--zeros", type=int, default=500)
    sp.add_argument("--tol", type=float, default=1e-6)

    sp = common(sub.add_parser("vonmangoldt", help="psi(X) against the zero sum"))
    sp.add_argument("--X", type=float, default=10.5)
    sp.add_argument("--zeros", type=int, default=2000)
    sp.add_argument("--tol", type=float, default=0.02)

    sp = common(sub.add_parser("nb", help="Nyman-Beurling distance table"), fmt="csv")
    sp.add_argument("--lambda", dest="lam", type=float, nargs="+", default=[0.1])
    sp.add_argument("--per-octave", type=int, default=8)
    sp.add_argument("--svd-cutoff", type=float, default=1e-10)
    sp.add_argument("--zeros", type=int, default=2000)

    sp = common(sub.add_parser("lfun", help="Dirichlet L functional equation and L-zeros"))
    sp.add_argument("--modulus", type=int, default=5)
    sp.add_argument("--index", type=int, default=None)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--height", type=float, default=30.0)
    sp.add_argument("--lzeros", help="file of q,character_index,gamma lines")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--tol-perp", type=float, default=1e-5)

    sub.add_parser("schema", help="print the report schema")
    return p


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "write_config")}


def run(argv=None) -> int:
    from .copoisson import KahaneTruncationError, TailBoundError
    from .nymanbeurling import ZeroModesError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG
    if args.command == "schema":
        sys.stdout.write(report_schema())
        return EXIT_OK
    config = _config(args)
    if args.write_config:
        atomic_write(args.write_config, json.dumps(_clean(config), indent=2, sort_keys=True) + "\n")

    suite = Suite()
    try:
        SUITES[args.command](args, suite)
    except ConfigError as e:
        print(f"zetakit: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (TailBoundError, KahaneTruncationError, ZeroModesError) as e:
        print(f"zetakit: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC

    passed = all(c["passed"] for c in suite.checks)
    if args.format == "csv":
        if suite.table is None:
            print(f"zetakit: {args.command} has no CSV output", file=sys.stderr)
            return EXIT_CONFIG
        text = suite.table
    else:
        doc = {
            "schema": SCHEMA_VERSION,
            "command": args.command,
            "config": config,
            "versions": {"zetakit": __version__, "numpy": np.__version__,
                         "scipy": scipy.__version__},
            "results": suite.results,
            "checks": suite.checks,
            "passed": passed,
        }
        text = json.dumps(_clean(doc), indent=2, sort_keys=True) + "\n"
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    for c in suite.checks:
        if not c["passed"]:
            op = ">" if c["bound"] == "upper" else "<"
            print(f"zetakit: check {c['name']} failed: {c['value']:.3e} {op} {c['tol']:.3e}",
                  file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
