"""Command-line interface.

Subcommands: dims, basis, weights, classify, verify-bounds, poisson,
growth, support, roundtrip.  Every run emits a JSON report carrying the
artifact version and the full configuration echo; identical arguments
(including --seed) produce byte-identical reports.  Exit codes: 0
success, 1 usage or input error, 2 a verified mathematical statement
failed.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classify import classify_dual, classify_function
from .derivative_bounds import (
    ANGULAR_SUP,
    SOLID_SUP,
    STEP_L2,
    SURFACE_SUP,
    campaign,
)
from .errors import SphereBVError
from .expansion import Expansion
from .harmonics import build_basis, dim_h
from .poisson import bv_roundtrip, growth_classify, poisson_transform
from .polynomials import angles_to_points
from .reports import _jsonable
from .support import detect_support
from .weights import (
    WeightSequence,
    associated_m,
    associated_mstar,
    check_conditions,
    petzsche_vogt_bound,
    verify_assoc_inequality,
)

INEQUALITY_FLAGS = {
    "a": SOLID_SUP,
    "b": ANGULAR_SUP,
    "c": SURFACE_SUP,
    "step": STEP_L2,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def _build_parser():
    p = _Parser(prog="spherebv", description=__doc__)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized campaigns")
    p.add_argument("--out", type=str, default=None, help="directory for report files")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command")

    d = sub.add_parser("dims", parents=[], add_help=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--jmax", type=int, required=True)

    b = sub.add_parser("basis")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--j", type=int, required=True)

    w = sub.add_parser("weights")
    w.add_argument("--weights", type=str, required=True)
    w.add_argument("--check", action="store_true")
    w.add_argument("--eval-m", type=float, default=None, metavar="T")
    w.add_argument("--eval-mstar", type=float, default=None, metavar="T")
    w.add_argument("--pv-search", action="store_true")
    w.add_argument("--assoc-eta", type=float, default=None, metavar="ETA")

    c = sub.add_parser("classify")
    c.add_argument("--weights", type=str, required=True)
    c.add_argument("--expansion", type=str, required=True)
    c.add_argument("--q", type=str, default="2")
    c.add_argument("--jmax", type=int, default=None)

    v = sub.add_parser("verify-bounds")
    v.add_argument("--inequality", choices=tuple(INEQUALITY_FLAGS), required=True)
    v.add_argument("--n", type=int, action="append", default=None)
    v.add_argument("--jmax", type=int, default=10)
    v.add_argument("--alphamax", type=int, default=4)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--samples", type=int, default=2048)

    po = sub.add_parser("poisson")
    po.add_argument("--expansion", type=str, required=True)
    po.add_argument("--r", type=float, required=True)
    po.add_argument("--grid", type=int, default=64)

    g = sub.add_parser("growth")
    g.add_argument("--weights", type=str, required=True)
    g.add_argument("--expansion", type=str, required=True)

    s = sub.add_parser("support")
    s.add_argument("--expansion", type=str, required=True)
    s.add_argument("--delta", type=float, default=0.05)
    s.add_argument("--tau", type=float, default=1e-6)
    s.add_argument("--weights", type=str, default=None)
    s.add_argument("--profiles", action="store_true")

    rt = sub.add_parser("roundtrip")
    rt.add_argument("--expansion", type=str, default=None)
    rt.add_argument("--trials", type=int, default=10)
    rt.add_argument("--jmax", type=int, default=5)
    rt.add_argument("--n", type=int, default=3)
    rt.add_argument("--tol", type=float, default=1e-9)
    return p


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SphereBVError(f"input file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SphereBVError(
            f"malformed JSON in {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        )


def _emit(report, args, extra_files=None):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / f"{report['command']}_report.json").write_text(text)
        for name, content in (extra_files or {}).items():
            (outdir / name).write_text(content)
    else:
        sys.stdout.write(text)
        for name, content in (extra_files or {}).items():
            sys.stdout.write(f"# --- {name} ---\n{content}")


def _envelope(command, config, results):
    return {
        "artifact": {"name": "spherebv", "version": __version__},
        "command": command,
        "config": _jsonable(config),
        "results": _jsonable(results),
    }


def _config_echo(args, keys):
    d = {"seed": args.seed, "format": args.format}
    for k in keys:
        d[k] = getattr(args, k.replace("-", "_"))
    return d


def _cmd_dims(args):
    rows = [{"j": j, "d": dim_h(args.n, j)} for j in range(args.jmax + 1)]
    report = _envelope("dims", _config_echo(args, ["n", "jmax"]), rows)
    if args.format == "csv":
        csv = "j,d\n" + "\n".join(f"{r['j']},{r['d']}" for r in rows) + "\n"
        _emit(report, args, {"dims.csv": csv})
    else:
        _emit(report, args)
    return 0


def _cmd_basis(args):
    basis = build_basis(args.n, args.j)
    results = {
        "basis": basis.to_json(),
        "dim": basis.dim,
        "gram_identity_certificate": basis.gram_certificate(),
    }
    _emit(_envelope("basis", _config_echo(args, ["n", "j"]), results), args)
    return 0


def _cmd_weights(args):
    seq = WeightSequence.from_json(_load_json(args.weights))
    results = {"weights": seq.describe()}
    failed = False
    no_action = (
        args.eval_m is None
        and args.eval_mstar is None
        and not args.pv_search
        and args.assoc_eta is None
    )
    if args.check or no_action:
        results["conditions"] = check_conditions(seq).to_dict()
    if args.eval_m is not None:
        results["m"] = {"t": args.eval_m, "value": associated_m(seq, args.eval_m)}
    if args.eval_mstar is not None:
        results["mstar"] = {"t": args.eval_mstar, "value": associated_mstar(seq, args.eval_mstar)}
    if args.assoc_eta is not None:
        ts = np.logspace(-1, 4, 120)
        verdict = verify_assoc_inequality(seq, args.assoc_eta, ts)
        results["assoc_inequality"] = verdict.to_dict()
        failed = failed or not verdict.holds
    if args.pv_search:
        ts = np.logspace(0, 3, 24)
        results["pv_search"] = petzsche_vogt_bound(seq, ts).to_dict()
    _emit(_envelope("weights", _config_echo(args, ["weights"]), results), args)
    return 2 if failed else 0


def _parse_q(q):
    return math.inf if q in ("inf", "infinity") else int(q)


def _cmd_classify(args):
    seq = WeightSequence.from_json(_load_json(args.weights))
    e = Expansion.from_json(_load_json(args.expansion))
    q = _parse_q(args.q)
    fn = classify_dual if e.kind == "dual" else classify_function
    rep = fn(e, seq, q=q, jmax=args.jmax)
    _emit(
        _envelope(
            "classify",
            _config_echo(args, ["weights", "expansion", "q", "jmax"]),
            rep.to_dict(),
        ),
        args,
    )
    return 0


def _cmd_verify_bounds(args):
    ns = tuple(args.n) if args.n else (2, 3)
    verdicts, summary = campaign(
        INEQUALITY_FLAGS[args.inequality],
        trials=args.trials,
        ns=ns,
        jmax=args.jmax,
        alphamax=args.alphamax,
        seed=args.seed,
        samples=args.samples,
    )
    results = {"summary": summary, "verdicts": [v.to_dict() for v in verdicts]}
    print(
        f"{summary['inequality']}: trials={summary['trials']} "
        f"failures={summary['failures']} "
        f"min_slack={summary['min_slack_ratio']:.3e} "
        f"max_slack={summary['max_slack_ratio']:.3e}",
        file=sys.stderr,
    )
    _emit(
        _envelope(
            "verify-bounds",
            _config_echo(args, ["inequality", "jmax", "alphamax", "trials", "samples"]),
            results,
        ),
        args,
    )
    return 2 if summary["failures"] else 0


def _cmd_poisson(args):
    e = Expansion.from_json(_load_json(args.expansion))
    G = args.grid
    m = e.n - 1
    axes = [np.linspace(0.0, math.pi, G) for _ in range(m - 1)]
    axes.append(np.linspace(0.0, 2.0 * math.pi, G, endpoint=False))
    mesh = np.meshgrid(*axes, indexing="ij")
    thetas = np.column_stack([ax.ravel() for ax in mesh])
    pts = angles_to_points(thetas)
    vals = poisson_transform(e, args.r, pts)
    rows = np.column_stack([thetas, vals])
    header = ",".join(f"theta{i+1}" for i in range(m)) + ",value"
    csv = header + "\n" + "\n".join(",".join(f"{x!r}" for x in row) for row in rows) + "\n"
    results = {"r": args.r, "grid": G, "count": int(rows.shape[0])}
    if args.format == "json":
        results["samples"] = [[float(x) for x in row] for row in rows]
        _emit(_envelope("poisson", _config_echo(args, ["expansion", "r", "grid"]), results), args)
    else:
        _emit(
            _envelope("poisson", _config_echo(args, ["expansion", "r", "grid"]), results),
            args,
            {"poisson_samples.csv": csv},
        )
    return 0


def _cmd_growth(args):
    seq = WeightSequence.from_json(_load_json(args.weights))
    e = Expansion.from_json(_load_json(args.expansion))
    rep = growth_classify(e, seq)
    _emit(
        _envelope("growth", _config_echo(args, ["weights", "expansion"]), rep.to_dict()),
        args,
    )
    return 0


def _cmd_support(args):
    e = Expansion.from_json(_load_json(args.expansion))
    seq = WeightSequence.from_json(_load_json(args.weights)) if args.weights else None
    rep = detect_support(
        e, weights=seq, delta=args.delta, tau=args.tau, keep_profiles=True
    )
    results = rep.to_dict(include_profiles=False)
    profiles = np.asarray(rep.profiles)
    nodes = np.asarray(rep.nodes)
    lines = ["node_index," + ",".join(f"x{i+1}" for i in range(e.n)) + ",classified,"
             + ",".join(f"r_{k}" for k in range(len(rep.r_levels)))]
    for k in range(nodes.shape[0]):
        lines.append(
            f"{k},"
            + ",".join(repr(float(x)) for x in nodes[k])
            + f",{rep.classified[k]},"
            + ",".join(repr(float(v)) for v in profiles[:, k])
        )
    csv = "\n".join(lines) + "\n"
    _emit(
        _envelope(
            "support",
            _config_echo(args, ["expansion", "delta", "tau", "weights"]),
            results,
        ),
        args,
        {"support_profiles.csv": csv} if args.profiles or args.format == "csv" else None,
    )
    return 0


def _cmd_roundtrip(args):
    results = {"cases": [], "tol": args.tol}
    worst = 0.0
    if args.expansion:
        e = Expansion.from_json(_load_json(args.expansion))
        dev = bv_roundtrip(e)
        results["cases"].append({"source": args.expansion, "deviation": dev})
        worst = dev
    else:
        rng = np.random.default_rng(args.seed)
        for t in range(args.trials):
            coeffs = {
                j: rng.normal(size=dim_h(args.n, j)) for j in range(args.jmax + 1)
            }
            e = Expansion.from_coefficients(args.n, coeffs)
            dev = bv_roundtrip(e)
            results["cases"].append({"trial": t, "deviation": dev})
            worst = max(worst, dev)
    results["max_deviation"] = worst
    results["holds"] = worst <= args.tol
    _emit(
        _envelope(
            "roundtrip",
            _config_echo(args, ["expansion", "trials", "jmax", "n", "tol"]),
            results,
        ),
        args,
    )
    return 0 if worst <= args.tol else 2


_HANDLERS = {
    "dims": _cmd_dims,
    "basis": _cmd_basis,
    "weights": _cmd_weights,
    "classify": _cmd_classify,
    "verify-bounds": _cmd_verify_bounds,
    "poisson": _cmd_poisson,
    "growth": _cmd_growth,
    "support": _cmd_support,
    "roundtrip": _cmd_roundtrip,
}


def run(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except SphereBVError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
