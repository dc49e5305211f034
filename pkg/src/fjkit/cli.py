"""Command line: ``fjkit weil``, ``fjkit eval`` and ``fjkit verify``.

Exit codes: 0 success, 1 failed verification, 2 bad input or a broken
invariant, 3 a zero-dimensional space was requested.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

import numpy as np

from .errors import DimensionZero, FjkitError, ParameterError
from .fjspherical import Complementary, DiscreteHalf, PrincipalHalf, XVariable, leading_formula
from .jacobi import CASE_IDS, JacobiPoint, assemble_example, load_half_integral_table
from .metaplectic import SL2Int, weil_matrix
from .verify import SUITES, RunConfig, report, run_suite
from .whittaker import (
    PJPS,
    PS,
    AntiholDS,
    CharacterN0,
    HolDS,
    LargeDS,
    TorusPoint,
    largeds_chamber2_leading,
    largeds_leading,
    pjps_whittaker,
    ps_whittaker,
    whittaker_dim,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DIM0 = 0, 1, 2, 3
UNITARITY_TOL = 1e-10


# ------------------------------------------------------------------ parsing

def parse_rep(text: str):
    """holds:l1,l2 | antiholds:l1,l2 | largeds:l1,l2 | pjps:n,sign,parity,z | ps:z1,z2[,s1,s2[,k1,k2]]"""
    try:
        kind, _, body = text.partition(":")
        parts = [p.strip() for p in body.split(",")] if body else []
        kind = kind.strip().lower()
        if kind in ("holds", "antiholds", "largeds"):
            l1, l2 = (int(p) for p in parts)
            return {"holds": HolDS, "antiholds": AntiholDS, "largeds": LargeDS}[kind](l1, l2)
        if kind == "pjps":
            n, sign, parity, z = parts
            return PJPS(int(n), int(sign), parity, complex(z))
        if kind == "ps":
            z1, z2 = complex(parts[0]), complex(parts[1])
            sigma = (int(parts[2]), int(parts[3])) if len(parts) >= 4 else (1, 1)
            ktype = (int(parts[4]), int(parts[5])) if len(parts) >= 6 else None
            if len(parts) not in (2, 4, 6):
                raise ValueError("ps takes 2, 4 or 6 fields")
            return PS(z1, z2, sigma, ktype)
    except (ValueError, TypeError) as exc:
        raise ParameterError(f"cannot parse representation {text!r}: {exc}") from exc
    raise ParameterError(f"unknown representation kind in {text!r}")


def parse_pi1(text: str):
    """P:s,tau | C:s,tau | D+:n1 | D-:n1 (tau and n1 as fractions such as 1/2)."""
    try:
        kind, _, body = text.partition(":")
        kind = kind.strip().upper()
        if kind in ("P", "C"):
            s, tau = body.split(",")
            if kind == "P":
                return PrincipalHalf(complex(s), Fraction(tau.strip()))
            return Complementary(float(s), Fraction(tau.strip()))
        if kind in ("D+", "D-"):
            return DiscreteHalf(Fraction(body.strip()), 1 if kind == "D+" else -1)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse pi1 {text!r}: {exc}") from exc
    raise ParameterError(f"unknown pi1 kind in {text!r}")


def parse_grid(text: str, allowed: Sequence[str]) -> Dict[str, np.ndarray]:
    """'a1=0.5:2:4,a2=1:3:5' -> {name: linspace}; a bare value is a single point."""
    axes: Dict[str, np.ndarray] = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, eq, spec = item.partition("=")
        name = name.strip()
        if not eq or name not in allowed:
            raise ParameterError(f"grid axis {name!r} not in {list(allowed)}")
        fields = spec.split(":")
        try:
            if len(fields) == 1:
                axes[name] = np.array([float(fields[0])])
            elif len(fields) == 3:
                n = int(fields[2])
                if n < 1:
                    raise ValueError("point count must be positive")
                axes[name] = np.linspace(float(fields[0]), float(fields[1]), n)
            else:
                raise ValueError("use start:stop:n or a single value")
        except ValueError as exc:
            raise ParameterError(f"bad grid axis {item!r}: {exc}") from exc
    return axes


def parse_params(text: str) -> dict:
    out = {}
    for item in filter(None, (p.strip() for p in (text or "").split(","))):
        k, _, v = item.partition("=")
        try:
            out[k.strip()] = int(v)
        except ValueError as exc:
            raise ParameterError(f"bad case parameter {item!r}") from exc
    return out


def fmt(v: float, precision: int) -> str:
    """Shortest repr of v rounded to ``precision`` significant digits."""
    v = float(v)
    if not np.isfinite(v):
        return repr(v)
    return repr(float(f"{v:.{precision}g}"))


# ------------------------------------------------------------- families

def _whittaker_branch(rep, psi: CharacterN0) -> str:
    if isinstance(rep, (HolDS, AntiholDS)):
        return "Whittaker: holomorphic and anti-holomorphic discrete series have no Whittaker model"
    if not psi.nondegenerate:
        return "Whittaker: degenerate character (m0 m3 = 0) has no rapidly decreasing solution"
    if isinstance(rep, LargeDS):
        need = "m3 < 0" if rep.chamber == "III" else "m3 > 0"
        return f"Whittaker: large discrete series chamber {rep.chamber} needs {need}"
    if isinstance(rep, PJPS):
        return f"Whittaker: P_J-principal series from D^{'+' if rep.sign > 0 else '-'} needs sign(m3) = {rep.sign:+d}"
    return "Whittaker: dimension 0"


def whittaker_family(rep, m0: float, m3: float):
    psi = CharacterN0(m0, m3)
    if whittaker_dim(rep, psi) == 0:
        raise DimensionZero(f"no Whittaker function for {rep} at (m0, m3) = ({m0}, {m3})",
                            _whittaker_branch(rep, psi))
    if isinstance(rep, LargeDS):
        fn = largeds_leading if rep.chamber == "III" else largeds_chamber2_leading
        names = ["c"]

        def values(pt, q):
            return (fn(rep, psi, TorusPoint(pt["a1"], pt["a2"]), q),)
    elif isinstance(rep, PJPS):
        names = ["c0"] if rep.parity == "even" else ["c0", "c1"]

        def values(pt, q):
            return pjps_whittaker(rep, psi, TorusPoint(pt["a1"], pt["a2"]), q)
    else:
        names = ["c0"] if rep.ktype in ((0, 0), (1, 1), (-1, -1)) else ["c0", "c1"]

        def values(pt, q):
            return ps_whittaker(rep, psi, TorusPoint(pt["a1"], pt["a2"]), q)
    return ("a1", "a2"), names, values


def fj_family(rep, pi1, m: int):
    f = leading_formula(rep, pi1, m)

    def values(pt, q):
        X = XVariable(m, pt["a1"]).positive
        return (X, f.evaluate(X, q))

    return ("a1",), ["x", "c"], values, f


def jacobi_family(table, case_id: str, params: dict, K):
    m = table.m

    def values(pt, q):
        p = JacobiPoint(pt["u0"], pt["u1"], pt["u2"], pt["x"], pt["y"])
        return (assemble_example(case_id, table, m, p, K, params=params,
                                 abs_tol=max(q.abs_tol, 1e-300))[1],)

    return ("u0", "u1", "u2", "x", "y"), ["phi"], values


JACOBI_DEFAULTS = {"u0": 0.0, "u1": 0.0, "u2": 0.0, "x": 0.0, "y": 1.0}


# ---------------------------------------------------------------- output

def _grid_points(axes: Dict[str, np.ndarray], coords: Sequence[str], defaults: dict) -> List[dict]:
    for c in coords:
        if c not in axes and c not in defaults:
            raise ParameterError(f"grid needs axis {c!r}")
    lists = [axes.get(c, np.array([defaults.get(c)])) for c in coords]
    return [dict(zip(coords, map(float, combo))) for combo in itertools.product(*lists)]


def _evaluate_grid(points, values: Callable, cfg: RunConfig):
    q = cfg.quadrature()
    q_fine = replace(q, rel_tol=q.rel_tol / 100, abs_tol=q.abs_tol / 100)

    def one(pt):
        v = [complex(x) for x in values(pt, q)]
        w = [complex(x) for x in values(pt, q_fine)]
        err = max(abs(a - b) for a, b in zip(v, w))
        return v, err

    workers = max(1, cfg.threads)
    if workers == 1:
        return [one(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, points))


def _write_csv(out, coords, names, points, results, precision, real_cols=()):
    writer = csv.writer(out, lineterminator="\n")
    header = list(coords)
    for n in names:
        header += [n] if n in real_cols else [f"{n}_re", f"{n}_im"]
    writer.writerow(header + ["err"])
    for pt, (vals, err) in zip(points, results):
        row = [fmt(pt[c], precision) for c in coords]
        for n, v in zip(names, vals):
            row += [fmt(v.real, precision)] if n in real_cols else [fmt(v.real, precision), fmt(v.imag, precision)]
        writer.writerow(row + [fmt(err, 3)])


# --------------------------------------------------------------- commands

def cmd_weil(args, cfg: RunConfig) -> int:
    g = SL2Int.parse(args.gamma)
    W = weil_matrix(args.m, g)
    lines = []
    # round-off from e(x) at exact rationals prints as 6e-17; show it as 0
    ent = W.entries.copy()
    floor = 1e-15 * np.abs(ent).max()
    ent.real[np.abs(ent.real) < floor] = 0.0
    ent.imag[np.abs(ent.imag) < floor] = 0.0
    for row in ent:
        lines.append(" ".join(f"{fmt(z.real, cfg.precision)}{'+' if z.imag >= 0 else '-'}"
                              f"{fmt(abs(z.imag), cfg.precision)}j" for z in row))
    res = W.unitarity_residual()
    lines.append(f"unitarity_residual {res:.3e}")
    _emit("\n".join(lines) + "\n", args.out)
    if not res < UNITARITY_TOL:
        print(f"error: unitarity residual {res:.3e} exceeds {UNITARITY_TOL:g}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_eval(args, cfg: RunConfig) -> int:
    real_cols = ()
    if args.family == "whittaker":
        if args.rep is None:
            raise ParameterError("--rep is required")
        coords, names, values = whittaker_family(parse_rep(args.rep), args.m0, args.m3)
        defaults = {}
    elif args.family == "fj":
        if args.rep is None or args.pi1 is None or args.m is None:
            raise ParameterError("--rep, --pi1 and --m are required")
        coords, names, values, f = fj_family(parse_rep(args.rep), parse_pi1(args.pi1), args.m)
        print(f"# branch: {f.branch}; index (j, k, l) = ({f.index.j}, {f.index.k}, {f.index.l})",
              file=sys.stderr)
        defaults = {}
        real_cols = ("x",)
    else:
        if args.table is None or args.case is None:
            raise ParameterError("--table and --case are required")
        table = load_half_integral_table(args.table)
        coords, names, values = jacobi_family(table, args.case, parse_params(args.params), cfg.trunc)
        defaults = JACOBI_DEFAULTS
    points = _grid_points(parse_grid(args.grid, coords), coords, defaults)
    results = _evaluate_grid(points, values, cfg)
    buf = io.StringIO()
    _write_csv(buf, coords, names, points, results, cfg.precision, real_cols)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    checks = run_suite(args.suite, cfg)
    rep = report(checks, cfg)
    rep["suite"] = args.suite
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} [{c.suite}] {c.name}: residual {c.residual:.3e} "
              f"(tol {c.tol:g}){' ' + c.detail if c.detail and not c.passed else ''}", file=sys.stderr)
    print(f"{rep['n_checks'] - rep['n_failed']}/{rep['n_checks']} passed in "
          f"{time.perf_counter() - t0:.1f} s", file=sys.stderr)
    _emit(json.dumps(rep, indent=2, default=str) + "\n", args.out)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ main

def _default_threads() -> int:
    env = os.environ.get("FJKIT_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="relative quadrature tolerance")
    common.add_argument("--abs-tol", type=float, default=1e-14, help="absolute quadrature tolerance")
    common.add_argument("--trunc", type=int, default=None, help="theta truncation K")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default FJKIT_THREADS or 1)")
    common.add_argument("--precision", type=int, default=15, help="significant digits in output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="fjkit", description="Whittaker and Fourier-Jacobi spherical functions on Sp(2,R).")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weil", parents=[common], help="print the Weil matrix Omega_m(gamma)")
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--gamma", required=True, help="a,b,c,d")

    e = sub.add_parser("eval", parents=[common], help="evaluate on a grid and emit CSV")
    e.add_argument("family", choices=["whittaker", "fj", "jacobi"])
    e.add_argument("--rep", help="holds:l1,l2 | antiholds:l1,l2 | largeds:l1,l2 | pjps:n,sign,parity,z | "
                                 "ps:z1,z2[,s1,s2[,k1,k2]]")
    e.add_argument("--pi1", help="P:s,tau | C:s,tau | D+:n1 | D-:n1")
    e.add_argument("--m", type=int, help="Fourier-Jacobi index")
    e.add_argument("--m0", type=float, default=1.0, help="Whittaker character m0")
    e.add_argument("--m3", type=float, default=-1.0, help="Whittaker character m3")
    e.add_argument("--table", help="half-integral form JSON (jacobi family)")
    e.add_argument("--case", choices=CASE_IDS, help="worked example (jacobi family)")
    e.add_argument("--params", default="", help="case parameters, e.g. n=2,delta=1")
    e.add_argument("--grid", required=True, help="a1=start:stop:n,a2=...")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = args.threads if args.threads is not None else _default_threads()
    try:
        cfg = RunConfig(rel_tol=args.tol, abs_tol=args.abs_tol, trunc=args.trunc,
                        threads=threads, precision=args.precision, seed=args.seed)
        cfg.quadrature()
        return {"weil": cmd_weil, "eval": cmd_eval, "verify": cmd_verify}[args.command](args, cfg)
    except DimensionZero as exc:
        print(f"dimension zero: {exc.branch}: {exc}", file=sys.stderr)
        return EXIT_DIM0
    except (FjkitError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
