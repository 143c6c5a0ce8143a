"""Command-line interface.

Verbs: poly, code, lp, curve, spectrum, reliability, oracle, rerun.
Output formats: table (default), csv, json. Exact rationals print as
"p/q" next to a float mirror. Every sweep or optimizer run can emit a
run manifest (JSON) that reproduces the output byte for byte via
`polybound rerun manifest.json`.

Exit codes: 0 ok, 2 usage error, 3 domain error, 4 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import BracketError, ConvergenceError, DomainError, ResourceError
from . import asymptotics, codes, lp, orthopoly, reliability, spectra
from .numerics import DEFAULT_TOL

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4


@dataclass
class RunManifest:
    argv: list[str]
    version: str = __version__
    tolerance: float = DEFAULT_TOL
    grids: dict = field(default_factory=dict)
    normalization: dict = field(
        default_factory=lambda: {"hahn": "Q_k(0) = C(n,k) - C(n,k-1)"}
    )
    timestamp: float = 0.0

    def to_json(self) -> str:
        return json.dumps(
            {
                "argv": self.argv,
                "version": self.version,
                "tolerance": self.tolerance,
                "grids": self.grids,
                "normalization": self.normalization,
                "timestamp": self.timestamp,
            },
            indent=2,
        )


def _fmt_float(x: float) -> str:
    return f"{x:.12g}"


def _cell(value) -> dict:
    if isinstance(value, Fraction):
        return {"rational": f"{value.numerator}/{value.denominator}", "float": float(value)}
    return value


def _rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        out = []
        for v in row:
            if isinstance(v, Fraction):
                out.append(f"{v.numerator}/{v.denominator}")
            elif isinstance(v, float):
                out.append(_fmt_float(v))
            else:
                out.append(v)
        w.writerow(out)
    return buf.getvalue()


def _emit(args, header: list[str], rows: list[list], meta: dict | None = None) -> None:
    fmt = getattr(args, "format", "table")
    text_out = None
    if fmt == "csv":
        text_out = _rows_to_csv(header, rows)
    elif fmt == "json":
        payload = {
            "columns": header,
            "rows": [[_cell(v) for v in row] for row in rows],
        }
        if meta:
            payload["meta"] = meta
        text_out = json.dumps(payload, indent=2, default=str) + "\n"
    else:
        widths = [
            max(len(str(h)), *(len(_plain(r[i])) for r in rows)) if rows else len(str(h))
            for i, h in enumerate(header)
        ]
        lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
        for row in rows:
            lines.append("  ".join(_plain(v).ljust(w) for v, w in zip(row, widths)))
        text_out = "\n".join(lines) + "\n"
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="") as fh:
            fh.write(text_out)
    else:
        sys.stdout.write(text_out)
    manifest_path = getattr(args, "manifest", None)
    if manifest_path:
        manifest = RunManifest(argv=list(args._argv), grids=meta.get("grids", {}) if meta else {})
        manifest.timestamp = time.time()
        with open(manifest_path, "w", encoding="ascii") as fh:
            fh.write(manifest.to_json())


def _plain(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator} ({float(v):.6g})"
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _parse_range(spec: str) -> list[float]:
    """start:stop:step, half-open at stop (grid points start, start+step, ...)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"range must be start:stop:step, got {spec!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise DomainError("range step must be positive")
    out = []
    k = 0
    while True:
        x = start + k * step
        if x >= stop - 1e-15:
            break
        out.append(round(x, 12))
        k += 1
    return out


def _parse_rational(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# poly


def _cmd_poly(args) -> None:
    if args.poly_cmd == "kraw":
        v = orthopoly.krawtchouk(args.n, args.k, Fraction(args.x))
        _emit(args, ["n", "k", "x", "value"], [[args.n, args.k, args.x, v]])
    elif args.poly_cmd == "hahn":
        v = orthopoly.hahn(args.n, args.v, args.k, args.i)
        _emit(args, ["n", "v", "k", "i", "value"], [[args.n, args.v, args.k, args.i, v]])
    elif args.poly_cmd == "jacobi":
        v = orthopoly.jacobi(args.alpha, args.beta, args.k, args.x)
        _emit(
            args,
            ["alpha", "beta", "k", "x", "value"],
            [[args.alpha, args.beta, args.k, args.x, v]],
        )
    elif args.poly_cmd == "kraw-zero":
        v = orthopoly.smallest_zero_krawtchouk(args.n, args.k)
        _emit(args, ["n", "k", "smallest_zero"], [[args.n, args.k, v]])
    elif args.poly_cmd == "jacobi-zeros":
        lo, hi = orthopoly.extreme_zeros_jacobi(args.a, args.b, args.k)
        _emit(
            args,
            ["a", "b", "k", "smallest", "largest", "largest_limit"],
            [[args.a, args.b, args.k, lo, hi, orthopoly.jacobi_largest_zero_limit(args.a, args.b)]],
        )
    elif args.poly_cmd == "exponent":
        if args.family == "kraw":
            v = orthopoly.krawtchouk_exponent(args.tau, args.arg)
            row = [["krawtchouk", f"tau={args.tau}", args.arg, v]]
        elif args.family == "hahn":
            v = orthopoly.hahn_exponent(args.alpha, args.beta, args.arg)
            row = [["hahn", f"alpha={args.alpha},beta={args.beta}", args.arg, v]]
        else:
            v = orthopoly.jacobi_exponent(args.a, args.b, args.arg)
            row = [["jacobi", f"a={args.a},b={args.b}", args.arg, v]]
        _emit(args, ["family", "shape", "arg", "exponent"], row)


# ---------------------------------------------------------------------------
# code


def _cmd_code(args) -> None:
    code = codes.BinaryCode.from_file(args.file)
    if args.code_cmd == "info":
        _emit(
            args,
            ["n", "size", "distance"],
            [[code.n, code.size, code.distance() if code.size > 1 else ""]],
        )
        return
    dist = codes.distance_distribution(code)
    if args.code_cmd == "dist":
        rows = [[i, v] for i, v in enumerate(dist.values)]
        _emit(args, ["i", "A_i"], rows)
    elif args.code_cmd == "dual":
        dual = codes.macwilliams(dist, code.size)
        rows = [[k, v] for k, v in enumerate(dual.values)]
        _emit(args, ["k", "Aprime_k"], rows)
    elif args.code_cmd == "feasible":
        ok, witness = codes.delsarte_feasible(dist, code.size)
        _emit(args, ["feasible", "violating_index"], [[str(ok), "" if witness is None else witness]])
    elif args.code_cmd == "pue":
        p = _parse_rational(args.p)
        v = codes.undetected_error_prob(dist, p)
        _emit(args, ["p", "P_ue"], [[p, v]])
    elif args.code_cmd == "moment":
        v = codes.binomial_moment(dist, args.w)
        _emit(args, ["w", "F_w"], [[args.w, v]])


# ---------------------------------------------------------------------------
# lp


def _cmd_lp(args) -> None:
    if args.lp_cmd == "hamming":
        res = lp.delsarte_lp_hamming(args.n, args.d, full=True)
        if args.export_lp:
            # rebuild and export the underlying instance
            from .orthopoly import krawtchouk_matrix
            from .numerics import binomial

            K = krawtchouk_matrix(args.n)
            idx = list(range(args.d, args.n + 1))
            inst = lp.LPInstance(
                tuple(Fraction(1) for _ in idx),
                tuple(tuple(Fraction(-K[k][i]) for i in idx) for k in range(1, args.n + 1)),
                ("<=",) * args.n,
                tuple(Fraction(binomial(args.n, k)) for k in range(1, args.n + 1)),
            )
            with open(args.export_lp, "w", encoding="ascii") as fh:
                fh.write(inst.to_text())
        rows = [[args.n, args.d, res.value, res.normalization]]
        meta = {
            "distribution": {str(k): _cell(v) for k, v in res.distribution.items()},
            "poly_coeffs": [_cell(c) for c in res.poly_coeffs],
        }
        _emit(args, ["n", "d", "bound", "normalization"], rows, meta)
    elif args.lp_cmd == "johnson":
        res = lp.delsarte_lp_johnson(args.n, args.v, args.d_half, full=True)
        rows = [[args.n, args.v, args.d_half, res.value, res.normalization]]
        _emit(args, ["n", "v", "d_half", "bound", "normalization"], rows)
    elif args.lp_cmd == "elias":
        v = lp.elias_lp_bound(args.n, args.d)
        _emit(args, ["n", "d", "bound"], [[args.n, args.d, v]])


# ---------------------------------------------------------------------------
# curve


def _cmd_curve(args) -> None:
    rs = _parse_range(args.r)
    rows = []
    if args.curve_cmd == "rdelta":
        if args.method == "gv":
            for r in rs:
                rows.append([r, asymptotics.gv_delta(r), "", ""])
        else:
            for r in rs:
                d, (al, be) = asymptotics.mrrw_delta(r)
                rows.append([r, d, al, be])
        _emit(args, ["R", "delta", "alpha", "beta"], rows, {"units": "bits"})
    else:
        if args.method == "shannon":
            for r in rs:
                rows.append([r, asymptotics.shannon_d(r), ""])
        else:
            for r in rs:
                rows.append([r, asymptotics.kl_d(r), asymptotics.solve_rho(r)])
        _emit(args, ["R", "d", "rho"], rows, {"units": "nats"})


# ---------------------------------------------------------------------------
# spectrum


def _cmd_spectrum(args) -> None:
    if args.spectrum_cmd == "hamming":
        rows = [
            [xi, ex, tau]
            for (xi, ex, tau) in spectra.hamming_spectrum_best(
                args.r, _parse_range(args.xi) if args.xi else None
            )
        ]
        _emit(args, ["xi", "exponent", "argmax_tau"], rows, {"units": "bits"})
    elif args.spectrum_cmd == "moment":
        rows = []
        for om in _parse_range(args.omega):
            try:
                rows.append([om, spectra.binom_moment_exponent(args.r, om)])
            except DomainError:
                continue
        _emit(args, ["omega", "exponent"], rows, {"units": "bits"})
    else:  # sphere
        rows = []
        for x in _parse_range(args.x):
            try:
                rows.append([x, spectra.sphere_spectrum_exponent(args.r, args.gamma, x)])
            except DomainError:
                continue
        _emit(args, ["x", "exponent"], rows, {"units": "nats"})


# ---------------------------------------------------------------------------
# reliability


def _cmd_reliability(args) -> None:
    if args.rel_cmd == "detection":
        rows = []
        for r in _parse_range(args.r):
            rows.append([r, reliability.error_detection_upper(r, args.p)])
        _emit(args, ["R", "exponent"], rows, {"p": args.p, "units": "bits"})
    elif args.rel_cmd == "bsc":
        res = reliability.bsc_reliability_upper(
            args.r,
            args.p,
            beta_points=args.grid,
            xi_points=args.grid,
            delta_points=args.grid,
            eta_points=args.grid,
            xi_bracket_sign=args.xi_bracket_sign,
        )
        rows = [[args.r, args.p, res.value, res.alpha, res.beta, res.xi, res.delta, res.eta]]
        _emit(
            args,
            ["R", "p", "bound", "alpha", "beta", "xi", "delta", "eta"],
            rows,
            res.metadata,
        )
    elif args.rel_cmd == "gaussian":
        res = reliability.gaussian_reliability_upper(
            args.r, args.a, gamma_points=args.grid, w_points=args.grid, d_points=args.grid
        )
        rows = [[args.r, args.a, res.value, res.gamma, res.w, res.d]]
        _emit(args, ["R", "A", "bound", "gamma", "w", "d"], rows, res.metadata)
    elif args.rel_cmd == "sphere-packing":
        rows = []
        for r in _parse_range(args.r):
            try:
                rows.append([r, reliability.sphere_packing_exponent(r, args.p)])
            except DomainError:
                continue
        _emit(
            args,
            ["R", "exponent"],
            rows,
            {"p": args.p, "source": "externally sourced (standard divergence form)"},
        )
    else:  # straightline
        sp = _read_curve(args.sp)
        up = _read_curve(args.upper)
        line, combined = reliability.straight_line_bound(sp, up)
        rows = [[x, y] for x, y in combined]
        meta = {
            "tangent": {
                "left": list(line.left_point),
                "right": list(line.right_point),
                "slope": line.slope,
                "intercept": line.intercept,
            }
        }
        _emit(args, ["R", "value"], rows, meta)


def _read_curve(path: str) -> list[tuple[float, float]]:
    out = []
    with open(path, "r", encoding="ascii") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        for row in rd:
            out.append((float(row[0]), float(row[1])))
    return out


# ---------------------------------------------------------------------------
# oracle


def _cmd_oracle(args) -> None:
    size, witness = codes.bruteforce_max_code(args.n, args.d, node_budget=args.node_budget)
    rows = [[args.n, args.d, size]]
    meta = {"witness": witness.to_strings()} if args.witness else None
    _emit(args, ["n", "d", "max_size"], rows, meta)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polybound",
        description="Exact and asymptotic linear-programming bounds for codes",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--manifest", help="write a reproducible run manifest (JSON)")

    poly = sub.add_parser("poly", help="polynomial values, zeros, exponents")
    ps = poly.add_subparsers(dest="poly_cmd", required=True)
    p = ps.add_parser("kraw")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=str, required=True)
    add_common(p)
    p = ps.add_parser("hahn")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    add_common(p)
    p = ps.add_parser("jacobi")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    add_common(p)
    p = ps.add_parser("kraw-zero")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    add_common(p)
    p = ps.add_parser("jacobi-zeros")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    add_common(p)
    p = ps.add_parser("exponent")
    p.add_argument("--family", choices=["kraw", "hahn", "jacobi"], required=True)
    p.add_argument("--tau", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--arg", type=float, required=True)
    add_common(p)

    code = sub.add_parser("code", help="distance distributions of explicit codes")
    cs = code.add_subparsers(dest="code_cmd", required=True)
    for name in ("info", "dist", "dual", "feasible"):
        p = cs.add_parser(name)
        p.add_argument("--file", required=True)
        add_common(p)
    p = cs.add_parser("pue")
    p.add_argument("--file", required=True)
    p.add_argument("--p", required=True, help="crossover probability, e.g. 1/10")
    add_common(p)
    p = cs.add_parser("moment")
    p.add_argument("--file", required=True)
    p.add_argument("--w", type=int, required=True)
    add_common(p)

    lpp = sub.add_parser("lp", help="Delsarte linear programming bounds")
    ls = lpp.add_subparsers(dest="lp_cmd", required=True)
    p = ls.add_parser("hamming")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--export-lp", help="write the LP instance in text form")
    add_common(p)
    p = ls.add_parser("johnson")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--d-half", dest="d_half", type=int, required=True)
    add_common(p)
    p = ls.add_parser("elias")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    add_common(p)

    curve = sub.add_parser("curve", help="asymptotic bound curves")
    us = curve.add_subparsers(dest="curve_cmd", required=True)
    p = us.add_parser("rdelta")
    p.add_argument("--method", choices=["gv", "mrrw"], required=True)
    p.add_argument("--r", required=True, help="grid start:stop:step (half-open)")
    add_common(p)
    p = us.add_parser("sphere")
    p.add_argument("--method", choices=["shannon", "kl"], required=True)
    p.add_argument("--r", required=True)
    add_common(p)

    spec = sub.add_parser("spectrum", help="distance-spectrum lower bounds")
    ss = spec.add_subparsers(dest="spectrum_cmd", required=True)
    p = ss.add_parser("hamming")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--xi", help="grid start:stop:step")
    add_common(p)
    p = ss.add_parser("moment")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--omega", required=True, help="grid start:stop:step")
    add_common(p)
    p = ss.add_parser("sphere")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--x", required=True, help="grid start:stop:step")
    add_common(p)

    rel = sub.add_parser("reliability", help="reliability-function upper bounds")
    rs = rel.add_subparsers(dest="rel_cmd", required=True)
    p = rs.add_parser("detection")
    p.add_argument("--r", required=True, help="grid start:stop:step")
    p.add_argument("--p", type=float, required=True)
    add_common(p)
    p = rs.add_parser("bsc")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--xi-bracket-sign", choices=["plus", "minus"], default="plus")
    add_common(p)
    p = rs.add_parser("gaussian")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--grid", type=int, default=24)
    add_common(p)
    p = rs.add_parser("sphere-packing")
    p.add_argument("--r", required=True, help="grid start:stop:step")
    p.add_argument("--p", type=float, required=True)
    add_common(p)
    p = rs.add_parser("straightline")
    p.add_argument("--sp", required=True, help="CSV of the sphere-packing curve")
    p.add_argument("--upper", required=True, help="CSV of the other convex bound")
    add_common(p)

    orc = sub.add_parser("oracle", help="exact brute-force code bounds")
    os_ = orc.add_subparsers(dest="oracle_cmd", required=True)
    p = os_.add_parser("maxcode")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=200_000_000)
    p.add_argument("--witness", action="store_true")
    add_common(p)

    rer = sub.add_parser("rerun", help="re-run a sweep from its manifest")
    rer.add_argument("manifest")
    rer.add_argument("--out", help="override the output path")
    return ap


def dispatch(argv: list[str]) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.cmd == "rerun":
        with open(args.manifest, "r", encoding="ascii") as fh:
            data = json.load(fh)
        stored = list(data["argv"])
        if args.out:
            if "--out" in stored:
                i = stored.index("--out")
                stored[i + 1] = args.out
            else:
                stored += ["--out", args.out]
        return dispatch(stored)
    args._argv = list(argv)
    try:
        if args.cmd == "poly":
            _cmd_poly(args)
        elif args.cmd == "code":
            _cmd_code(args)
        elif args.cmd == "lp":
            _cmd_lp(args)
        elif args.cmd == "curve":
            _cmd_curve(args)
        elif args.cmd == "spectrum":
            _cmd_spectrum(args)
        elif args.cmd == "reliability":
            _cmd_reliability(args)
        elif args.cmd == "oracle":
            _cmd_oracle(args)
    except (DomainError, BracketError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ResourceError, ConvergenceError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
