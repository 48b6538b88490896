"""Command line front end.

Exit codes: 0 when every requested check passes, 1 when some fail (the
count is printed to stderr), 2 for usage errors and malformed input, 3
for I/O errors.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import os
import sys

import numpy as np

from . import conics as C
from . import dpc as D
from . import harness as H
from . import lines as L
from . import rng
from . import uhe as U
from .errors import ConicsError
from .neutral import DEFAULT_TOL
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

HYPERBOLA_V_BASIS = np.array([[0.0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]])


class UsageError(Exception):
    pass


class InputOutputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _uint64(text):
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _default_tol():
    env = os.environ.get("NC_DEFAULT_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        v = float(env)
    except ValueError:
        raise UsageError(f"NC_DEFAULT_TOL is not a number: {env!r}")
    if not v > 0:
        raise UsageError("NC_DEFAULT_TOL must be positive")
    return v


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputOutputError(f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputOutputError(f"cannot write {args.out}: {exc.strerror}")
    else:
        sys.stdout.write(text)


def _timestamp(args):
    if args.no_timestamp:
        return None
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def _csv(header, rows, timestamp=None):
    buf = io.StringIO()
    if timestamp is not None:
        buf.write(f"# generated {timestamp}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["%.17g" % v if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _dumps(obj):
    return json.dumps(obj, indent=2)


def _named_pair(name, tol):
    table = {
        "standard": lambda: C.standard_pair(tol),
        "parabola": lambda: C.parabola_pair(tol),
        "line": lambda: C.line_pair(tol),
        "hyperbola": lambda: C.pair_from_basis(HYPERBOLA_V_BASIS, tol),
    }
    if name not in table:
        raise UsageError(f"unknown pair {name!r}; choose from {sorted(table)}")
    return table[name]()


def _load_pair(args, tol):
    if getattr(args, "infile", None):
        data = _read_json(args.infile)
        if isinstance(data, list):
            if not 0 <= args.index < len(data):
                raise UsageError(f"{args.infile} holds {len(data)} pair(s); --index {args.index} is out of range")
            data = data[args.index]
        try:
            return C.ConicPair.from_dict(data, tol)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed pair file {args.infile}: {exc}")
    return _named_pair(args.pair or "standard", tol)


def _pairs_from_arg(spec_text, seed, tol):
    """``standard`` / ``parabola`` / ``hyperbola`` / ``line``, ``CLASS:COUNT``, or a JSON file of pairs."""
    if ":" in spec_text:
        cls, count = spec_text.split(":", 1)
        try:
            n = int(count)
        except ValueError:
            raise UsageError(f"bad pair count in {spec_text!r}")
        try:
            pairs = H.generate_pairs(seed, n, cls)
        except ValueError as exc:
            raise UsageError(str(exc))
        return pairs, [f"{cls}_{i}" for i in range(n)]
    if os.path.splitext(spec_text)[1] == ".json":
        data = _read_json(spec_text)
        items = data if isinstance(data, list) else [data]
        try:
            pairs = [C.ConicPair.from_dict(d, tol) for d in items]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed pair file {spec_text}: {exc}")
        return pairs, [f"file_{i}" for i in range(len(pairs))]
    return [_named_pair(spec_text, tol)], [spec_text]


def _solutions_from_arg(text):
    sets = {
        "builtin": U.builtin_solutions,
        "gaussian": U.gaussian_decay_solutions,
        "mean_value": U.mean_value_solutions,
        "quadratics": U.builtin_quadratics,
        "plane_waves": U.builtin_plane_waves,
        "xray": U.builtin_xray_mixes,
    }
    if text in sets:
        return sets[text]()
    data = _read_json(text)
    items = data if isinstance(data, list) else [data]
    try:
        out = [U.solution_from_dict(d) for d in items]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed solution file {text}: {exc}")
    return [u if u.name else _renamed(u, f"file_{i}") for i, u in enumerate(out)]


def _renamed(u, name):
    object.__setattr__(u, "name", name)
    return u


def _spec(args):
    return QuadratureSpec(rel_tol=args.rel_tol) if getattr(args, "rel_tol", None) else QuadratureSpec()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_dpc_encode(args, tol):
    if args.infile:
        try:
            H_ = D.Hypersphere.from_dict(_read_json(args.infile))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed hypersphere file: {exc}")
    elif args.center is not None and args.radius_sq is not None:
        H_ = D.Hypersphere.proper(args.center, args.radius_sq)
    elif args.normal is not None and args.offset is not None:
        H_ = D.Hypersphere.plane(args.normal, args.offset, tol)
    else:
        raise UsageError("give --center/--radius-sq, --normal/--offset, or --in")
    s = D.dpc_from_hypersphere(H_)
    if args.format == "csv":
        _emit(args, _csv(["s0", "s1", "s2", "s3", "s4", "s5"], [list(map(float, s))]))
    else:
        _emit(args, D.dpc_to_json(s))
    return 0


def cmd_dpc_decode(args, tol):
    if args.infile:
        try:
            s = D.dpc_from_json(json.dumps(_read_json(args.infile)))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed DPC file: {exc}")
    elif args.dpc is not None:
        s = np.asarray(args.dpc, dtype=float)
    else:
        raise UsageError("give --dpc or --in")
    _emit(args, _dumps(D.hypersphere_from_dpc(s, tol).to_dict()))
    return 0


def cmd_pair_gen(args, tol):
    try:
        pairs = H.generate_pairs(args.seed, args.count, args.cls, n_generators=args.generators)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "csv":
        rows = []
        for i, p in enumerate(pairs):
            for side, B in (("V", p.V.basis), ("Vp", p.Vp.basis)):
                for j, row in enumerate(B):
                    rows.append([i, side, j] + [float(v) for v in row])
        _emit(args, _csv(["pair", "side", "row", "s0", "s1", "s2", "s3", "s4", "s5"], rows))
    else:
        _emit(args, _dumps([p.to_dict() for p in pairs]))
    return 0


def _classification_dict(pair):
    cl = C.classify_pair(pair)
    out = {
        "class": cl.cls.value,
        "line_side": cl.line_side,
        "dim_V_cap_P": cl.dim_S,
        "dim_Vp_cap_P": cl.dim_Sperp,
        "lambda_S": C.classify_by_lambda(pair.S).roots,
        "lambda_Sperp": C.classify_by_lambda(pair.Sperp).roots,
    }
    if cl.sig_S is not None:
        out["signature_V_cap_P"] = [cl.sig_S.pos, cl.sig_S.neg, cl.sig_S.zero]
        out["signature_Vp_cap_P"] = [cl.sig_Sperp.pos, cl.sig_Sperp.neg, cl.sig_Sperp.zero]
        data = C.extract_case2_data(pair)
        if data.center is not None:
            out["center"] = data.center.tolist()
            out["radius_sq"] = [data.radius_sq, data.radius_sq_perp]
        else:
            out["p"] = data.p.tolist()
            out["p_tilde"] = data.p_tilde.tolist()
    return out


def cmd_pair_classify(args, tol):
    pair = _load_pair(args, tol)
    d = _classification_dict(pair)
    if args.format == "csv":
        _emit(args, _csv(list(d), [[json.dumps(v) if isinstance(v, list) else v for v in d.values()]]))
    else:
        _emit(args, _dumps(d))
    return 0


def cmd_pair_sample(args, tol):
    pair = _load_pair(args, tol)
    thetas = 2.0 * np.pi * np.arange(args.samples) / args.samples
    samples = C.parametrize(pair.side(args.side), thetas)
    rows = [[s.theta, *map(float, s.point), s.speed, "true" if s.finite else "false"] for s in samples]
    if args.format == "json":
        _emit(args, _dumps([{"theta": r[0], "x": r[1:5], "speed": r[5], "finite": s.finite}
                            for r, s in zip(rows, samples)]))
    else:
        _emit(args, _csv(["theta", "x1", "x2", "x3", "x4", "speed", "finite"], rows, _timestamp(args)))
    return 0


def _threshold_for(cls_value, args):
    if args.threshold is not None:
        return args.threshold
    return {"circles": 1e-8, "hyperbolae": 1e-7, "parabolae": 1e-7}.get(cls_value, 1e-7)


def _report_out(args, reports):
    if args.format == "json":
        _emit(args, _dumps([r.__dict__ for r in reports]))
    else:
        _emit(args, H.report_csv(reports, _timestamp(args)))


def cmd_mv_run(args, tol):
    pairs, ids = _pairs_from_arg(args.pairs, args.seed, tol)
    sols = _solutions_from_arg(args.solutions)
    reports = H.run_grid(pairs, sols, _spec(args), ids)
    _report_out(args, reports)
    return sum(1 for r in reports if r.ok and r.rel_diff > _threshold_for(r.pair_class, args))


def cmd_asgeirsson(args, tol):
    sols = _solutions_from_arg(args.solutions)
    spec = _spec(args)
    reports = []
    for i in range(args.count):
        g = rng.stream(args.seed, 0xA5, i)
        a, b, c, d = g.uniform(-1.0, 1.0, size=4)
        r = g.uniform(0.25, 2.0)
        for u in sols:
            rep = H.asgeirsson_check(u, a, b, c, d, r, spec)
            rep.pair_id = f"circles_{i}"
            reports.append(rep)
    _report_out(args, reports)
    thr = args.threshold if args.threshold is not None else 1e-9
    return sum(1 for r in reports if not r.ok or r.rel_diff > thr)


def cmd_ruled_verify(args, tol):
    pair = _load_pair(args, tol)
    rep = L.verify_rulsurf(pair, args.samples)
    summary = {
        "checks": rep.checks,
        "passed": rep.passed,
        "lines": list(rep.n_lines),
        "chart_absent": list(rep.absent),
        "cross_incidence_max": rep.cross_max,
        "same_side_incident": list(rep.same_side_incident),
        "quadric": rep.quadric.matrix.tolist(),
        "quadric_kind": rep.quadric.kind(),
        "quadric_residual": rep.quadric_residual,
        "regulus_max": rep.regulus_max,
        "h0_deviation": rep.quadric.deviation_from(L.H0_MATRIX),
    }
    if args.lines_csv or args.surface_csv:
        z_grid = np.linspace(-2.0, 2.0, 9)
        ts = _timestamp(args)
        line_rows, surf_rows = [], []
        for side, ls, th in (("S", rep.lines_S, rep.thetas_S), ("Sperp", rep.lines_Sp, rep.thetas_Sp)):
            for l, t in zip(ls, th):
                line_rows.append([side, float(t), l.A, l.B, l.C, l.D])
                for z, P in zip(z_grid, l.point(z_grid)):
                    surf_rows.append([side, float(t), float(z), *map(float, P)])
        for path, header, rows in ((args.lines_csv, ["side", "theta", "A", "B", "C", "D"], line_rows),
                                   (args.surface_csv, ["side", "theta", "z", "X", "Y", "Z"], surf_rows)):
            if path:
                try:
                    with open(path, "w", encoding="utf-8", newline="") as fh:
                        fh.write(_csv(header, rows, ts))
                except OSError as exc:
                    raise InputOutputError(f"cannot write {path}: {exc.strerror}")
    if args.format == "csv":
        _emit(args, _csv(list(rep.checks), [["true" if v else "false" for v in rep.checks.values()]]))
    else:
        _emit(args, _dumps(summary))
    return sum(1 for v in rep.checks.values() if not v)


def cmd_xray_check(args, tol):
    if args.infile:
        data = _read_json(args.infile)
        try:
            sols = [U.solution_from_dict(d) for d in (data if isinstance(data, list) else [data])]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed solution file: {exc}")
    else:
        sols = U.builtin_xray_mixes()
    rows, fails = [], 0
    for i, u in enumerate(sols):
        cert = U.uhe_certificate(u, args.n, args.seed)
        ok = cert.max_residual <= args.threshold
        fails += not ok
        rows.append([u.name or f"solution_{i}", cert.max_residual, cert.max_residual_half, cert.order,
                     "OK" if ok else "FAIL"])
    header = ["solution_id", "residual_h", "residual_h_half", "order", "status"]
    if args.format == "json":
        _emit(args, _dumps([dict(zip(header, r)) for r in rows]))
    else:
        _emit(args, _csv(header, rows, _timestamp(args)))
    return fails


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=_uint64, default=d(0), help="64-bit unsigned seed")
    parser.add_argument("--tol", type=float, default=d(None), help="geometric tolerance (default NC_DEFAULT_TOL or 1e-9)")
    parser.add_argument("--out", default=d(None), help="output file (default stdout)")
    parser.add_argument("--format", choices=["json", "csv"], default=d(None))
    parser.add_argument("--no-timestamp", action="store_true", default=d(False),
                        help="omit the timestamp line from CSV output")


def build_parser():
    p = argparse.ArgumentParser(prog="conjconics", description="Conjugate conics and mean values of ultrahyperbolic solutions.")
    _global_options(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    dp = sub.add_parser("dpc", help="hypersphere <-> DPC conversions", parents=[common])
    dsub = dp.add_subparsers(dest="action", required=True)
    enc = dsub.add_parser("encode", parents=[common])
    enc.add_argument("--center", type=float, nargs=4)
    enc.add_argument("--radius-sq", type=float)
    enc.add_argument("--normal", type=float, nargs=4)
    enc.add_argument("--offset", type=float)
    enc.add_argument("--in", dest="infile")
    enc.set_defaults(func=cmd_dpc_encode, fmt="json")
    dec = dsub.add_parser("decode", parents=[common])
    dec.add_argument("--dpc", type=float, nargs=6)
    dec.add_argument("--in", dest="infile")
    dec.set_defaults(func=cmd_dpc_decode, fmt="json")

    pp = sub.add_parser("pair", help="generate, classify and sample conic pairs", parents=[common])
    psub = pp.add_subparsers(dest="action", required=True)
    gen = psub.add_parser("gen", parents=[common])
    gen.add_argument("--class", dest="cls", default="any",
                     choices=["any", "circles", "hyperbolae", "parabolae", "line_empty"])
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--generators", type=int, default=5)
    gen.set_defaults(func=cmd_pair_gen, fmt="json")
    for name, func, fmt in (("classify", cmd_pair_classify, "json"), ("sample", cmd_pair_sample, "csv")):
        q = psub.add_parser(name, parents=[common])
        q.add_argument("--in", dest="infile")
        q.add_argument("--pair", choices=["standard", "parabola", "line", "hyperbola"])
        q.add_argument("--index", type=int, default=0, help="entry to use when --in holds a list")
        if name == "sample":
            q.add_argument("--samples", type=int, default=64)
            q.add_argument("--side", choices=["S", "Sperp"], default="S")
        q.set_defaults(func=func, fmt=fmt)

    mv = sub.add_parser("mv", help="conformal mean-value experiments", parents=[common])
    msub = mv.add_subparsers(dest="action", required=True)
    run = msub.add_parser("run", parents=[common])
    run.add_argument("--pairs", default="standard",
                     help="standard|parabola|hyperbola|line, CLASS:COUNT, or a JSON file of pairs")
    run.add_argument("--solutions", default="builtin",
                     help="builtin|gaussian|mean_value|quadratics|plane_waves|xray, or a JSON file")
    run.add_argument("--threshold", type=float, default=None, help="rel_diff limit (default by class)")
    run.add_argument("--rel-tol", type=float, default=None)
    run.set_defaults(func=cmd_mv_run, fmt="csv")

    asg = sub.add_parser("asgeirsson", help="classical circle-pair sweep", parents=[common])
    asg.add_argument("--count", type=int, default=10)
    asg.add_argument("--solutions", default="builtin")
    asg.add_argument("--threshold", type=float, default=None)
    asg.add_argument("--rel-tol", type=float, default=None)
    asg.set_defaults(func=cmd_asgeirsson, fmt="csv")

    rp = sub.add_parser("ruled", help="doubly ruled surface verifier", parents=[common])
    rsub = rp.add_subparsers(dest="action", required=True)
    ver = rsub.add_parser("verify", parents=[common])
    ver.add_argument("--in", dest="infile")
    ver.add_argument("--pair", choices=["standard", "parabola", "hyperbola"])
    ver.add_argument("--index", type=int, default=0, help="entry to use when --in holds a list")
    ver.add_argument("--samples", type=int, default=16)
    ver.add_argument("--lines-csv")
    ver.add_argument("--surface-csv")
    ver.set_defaults(func=cmd_ruled_verify, fmt="json")

    xp = sub.add_parser("xray", help="finite-difference certificates", parents=[common])
    xsub = xp.add_subparsers(dest="action", required=True)
    chk = xsub.add_parser("check", parents=[common])
    chk.add_argument("--in", dest="infile", help="JSON solution spec (default: built-in X-ray mixtures)")
    chk.add_argument("--n", type=int, default=200)
    chk.add_argument("--threshold", type=float, default=1e-4)
    chk.set_defaults(func=cmd_xray_check, fmt="csv")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.format is None:
        args.format = args.fmt
    try:
        tol = args.tol if args.tol is not None else _default_tol()
        failures = args.func(args, tol)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputOutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConicsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if failures:
        print(f"{failures} check(s) failed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
