"""Command-line front end: norms and transforms for serialized inputs, and
the verification suites with a CI-friendly exit-code contract.

Exit codes: 0 pass/vacuous, 1 property failure, 2 hypothesis missing,
64 usage/parse error, 65 input not in the space.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .engine import NotInSpaceError, f_norm, luxemburg_s_norm
from .lab import SUITES, TrialConfig, seven_way_dashboard
from .spaces import builtin_matrix, dashboard_matrix, load_function, load_space
from .stepfun import StepFunction

EX_OK, EX_FAIL, EX_HYP, EX_USAGE, EX_NOTINSPACE = 0, 1, 2, 64, 65


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _meta(paths) -> dict:
    return {"version": __version__,
            "inputs": {p: _digest(p) for p in paths if Path(p).exists()}}


def _emit(payload: dict, out_dir, name: str) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        Path(out_dir, name).write_text(text + "\n")
    else:
        print(text)


def _emit_csv(lines, header: str, meta: dict, out_dir, name: str) -> None:
    body = [f"# fnorms {meta['version']} inputs={json.dumps(meta['inputs'], sort_keys=True)}",
            header, *lines]
    text = "\n".join(body)
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        Path(out_dir, name).write_text(text + "\n")
    else:
        print(text)


def cmd_norm(args) -> int:
    if not args.inputs:
        print("norm: no input functions given", file=sys.stderr)
        return EX_USAGE
    try:
        pair = load_space(args.space)
        functions = [(p, load_function(p)) for p in args.inputs]
    except (OSError, ValueError, KeyError) as exc:
        print(f"norm: parse error: {exc}", file=sys.stderr)
        return EX_USAGE
    meta = _meta([args.space, *args.inputs])
    for path, x in functions:
        try:
            res = f_norm(pair, x)
        except NotInSpaceError as exc:
            print(f"norm: {path}: not in the semimodular space ({exc})", file=sys.stderr)
            return EX_NOTINSPACE
        payload = res.to_json()
        if args.oracle == "luxemburg":
            if pair.f.tag != "max":
                print("norm: the luxemburg oracle applies to f = max only", file=sys.stderr)
                return EX_USAGE
            payload["oracle_luxemburg"] = luxemburg_s_norm(pair.family, x)
        payload["input"] = path
        payload["meta"] = meta
        _emit(payload, args.out, Path(path).stem + ".norm.json")
    return EX_OK


def cmd_transform(args) -> int:
    try:
        x = load_function(args.input)
    except (OSError, ValueError, KeyError) as exc:
        print(f"transform: parse error: {exc}", file=sys.stderr)
        return EX_USAGE
    meta = _meta([args.input])
    stem = Path(args.input).stem
    which = args.which

    if which == "rearrange":
        payload = x.decreasing_rearrangement().to_json()
        payload["meta"] = meta
        _emit(payload, args.out, f"{stem}.rearranged.json")
        return EX_OK

    if which == "distribution":
        if args.at is not None:
            _emit({"lambda": args.at, "value": x.distribution(args.at), "meta": meta},
                  args.out, f"{stem}.distribution.json")
            return EX_OK
        levels = sorted({abs(v) for v in x.values} | {0.0})
        mids = [(a + b) / 2.0 for a, b in zip(levels, levels[1:])]
        grid = sorted(set(levels) | set(mids) | {levels[-1] + 1.0})
        lines = [f"{lam!r},{x.distribution(lam)!r}" for lam in grid]
        _emit_csv(lines, "lambda,measure", meta, args.out, f"{stem}.distribution.csv")
        return EX_OK

    curve = x.cesaro() if which == "cesaro" else x.maximal()
    if args.at is not None:
        if args.at <= 0:
            print("transform: --at must be positive for curve transforms", file=sys.stderr)
            return EX_USAGE
        _emit({"t": args.at, "value": curve(args.at), "meta": meta},
              args.out, f"{stem}.{which}.json")
        return EX_OK
    T = x.domain.horizon
    ts = np.geomspace(T * 1e-4, T, 1000)
    vals = curve(ts)
    lines = [f"{t!r},{v!r}" for t, v in zip(ts, vals)]
    _emit_csv(lines, "t,value", meta, args.out, f"{stem}.{which}.csv")
    return EX_OK


def cmd_verify(args) -> int:
    cfg = TrialConfig(seed=args.seed, trials=args.trials)
    reports = []
    if args.matrix:
        eligible = dashboard_matrix()
        skipped = sorted(set(builtin_matrix()) - set(eligible))
        for name, pair in eligible.items():
            rep = seven_way_dashboard(pair, cfg)
            payload = rep.to_json()
            payload["space"] = name
            payload["meta"] = {"version": __version__}
            _emit(payload, args.out, f"dashboard.{name}.json")
            reports.append(rep)
        if skipped:
            print(f"verify: skipped (outside the seven-way hypotheses): {', '.join(skipped)}",
                  file=sys.stderr)
    else:
        if not args.space or not args.suites:
            print("verify: need --space and --suite (or --matrix)", file=sys.stderr)
            return EX_USAGE
        unknown = [s for s in args.suites if s not in SUITES]
        if unknown:
            print(f"verify: unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
            return EX_USAGE
        try:
            pair = load_space(args.space)
        except (OSError, ValueError, KeyError) as exc:
            print(f"verify: parse error: {exc}", file=sys.stderr)
            return EX_USAGE
        meta = _meta([args.space])
        for suite in args.suites:
            rep = SUITES[suite](pair, cfg)
            payload = rep.to_json()
            payload["meta"] = meta
            _emit(payload, args.out, f"{suite}.json")
            reports.append(rep)

    codes = [r.exit_code for r in reports]
    if EX_FAIL in codes:
        return EX_FAIL
    if EX_HYP in codes:
        return EX_HYP
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fnorms",
                                     description="norms and property suites for "
                                                 "semimodular step-function spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="compute the constructed norm of inputs")
    p_norm.add_argument("--space", required=True, help="space spec: path, fixture or builtin name")
    p_norm.add_argument("--in", dest="inputs", nargs="*", default=[], metavar="PATH",
                        help="step function JSON files")
    p_norm.add_argument("--oracle", choices=["luxemburg"], default=None,
                        help="cross-print the bisection oracle (f = max only)")
    p_norm.add_argument("--out", default=None, help="output directory (default: stdout)")
    p_norm.set_defaults(fn=cmd_norm)

    p_tr = sub.add_parser("transform", help="rearrangement / maximal / cesaro / distribution")
    p_tr.add_argument("which", choices=["rearrange", "maximal", "cesaro", "distribution"])
    p_tr.add_argument("--in", dest="input", required=True, metavar="PATH")
    p_tr.add_argument("--at", type=float, default=None,
                      help="evaluate at a point instead of emitting a CSV table")
    p_tr.add_argument("--out", default=None)
    p_tr.set_defaults(fn=cmd_transform)

    p_ver = sub.add_parser("verify", help="run property suites")
    p_ver.add_argument("--space", default=None)
    p_ver.add_argument("--suite", dest="suites", nargs="*", default=[],
                       help=f"suites: {', '.join(sorted(SUITES))}")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--trials", type=int, default=25)
    p_ver.add_argument("--matrix", action="store_true",
                       help="run the seven-way dashboard across the builtin matrix")
    p_ver.add_argument("--out", default=None)
    p_ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EX_USAGE if exc.code not in (0, None) else 0
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
