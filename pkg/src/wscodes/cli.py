"""Command-line front end.

Subcommands: construct, verify, bounds, estimate, sweep, oracle.
Data goes to stdout or the -o file; diagnostics go to stderr.

Exit codes: 0 success, 1 verification failed, 2 usage or domain error,
3 capacity guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import BoundTable, prob_violation
from .construct import (
    DEFAULT_N_GUARD,
    CapacityError,
    ConstructionConfig,
    alteration_construct,
    cff_alteration_construct,
)
from .experiments import (
    estimate_success_probability,
    estimate_violation_probability,
    rate_sweep,
    sweep_to_csv,
)
from .matrix import ParseError, dumps_wsc, read_wsc
from .verify import cff_verify, max_code_exhaustive, verify_locally_thin, verify_weak


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_threads(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="cap on worker threads; results do not depend on it",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wscodes",
        description="Construct, verify, and analyze weak superimposed codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="randomized alteration construction")
    p.add_argument("--kind", choices=["weak", "cff"], default="weak")
    p.add_argument("--t", type=int, help="strength (weak kind)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--f", type=float, default=2.0)
    p.add_argument("--w", type=int, help="intersection size (cff kind)")
    p.add_argument("--r", type=int, help="union size (cff kind)")
    p.add_argument("--n", type=int, default=None, help="override the size formula")
    p.add_argument("--p", type=float, default=None, help="override the bit probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-guard", type=int, default=DEFAULT_N_GUARD)
    p.add_argument("-o", "--output", default="-", help="output .wsc path, - for stdout")
    p.add_argument("--log", default=None, help="write the JSON construction log here")

    p = sub.add_parser("verify", help="check a .wsc file")
    p.add_argument("file")
    p.add_argument("--kind", choices=["weak", "thin", "cff"], default="weak")
    p.add_argument("--t", type=int, default=None, help="override the header strength")
    p.add_argument("--d", type=int, default=None, help="override the header d")
    p.add_argument("--u", type=int, default=None, help="subset size (thin kind)")
    p.add_argument("--w", type=int, default=None, help="cff kind")
    p.add_argument("--r", type=int, default=None, help="cff kind")
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("-o", "--output", default="-")
    _add_threads(p)

    p = sub.add_parser("bounds", help="rate bound table over a strength grid")
    p.add_argument("--t-max", type=int, default=8)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--l", type=int, default=64)
    p.add_argument("--f", type=float, default=2.0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("estimate", help="Monte-Carlo estimators")
    p.add_argument("--mode", choices=["violation", "success"], required=True)
    p.add_argument("--s", type=int, help="subset size (violation mode)")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, help="strength (success mode)")
    p.add_argument("--n", type=int, default=None, help="initial size (success mode)")
    p.add_argument("--f", type=float, default=2.0)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    _add_threads(p)

    p = sub.add_parser("sweep", help="achieved rate across lengths")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--f", type=float, default=2.0)
    p.add_argument("--l", required=True, help="comma-separated lengths, e.g. 8,12,16")
    p.add_argument("--n", type=int, default=None, help="override the size formula")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-guard", type=int, default=DEFAULT_N_GUARD)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("oracle", help="exhaustive maximum code size for l <= 4")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-o", "--output", default="-")

    return parser


def _cmd_construct(args) -> int:
    if args.kind == "weak":
        if args.t is None:
            raise ValueError("construct --kind weak needs --t")
        cfg = ConstructionConfig(
            t=args.t,
            d=args.d,
            l=args.l,
            f=args.f,
            seed=args.seed,
            p_override=args.p,
            n_override=args.n,
            n_guard=args.n_guard,
        )
        out, log = alteration_construct(cfg)
        header_t, header_d = args.t, args.d
    else:
        if args.w is None or args.r is None:
            raise ValueError("construct --kind cff needs --w and --r")
        out, log = cff_alteration_construct(
            args.w,
            args.r,
            args.d,
            args.l,
            f=args.f,
            n_override=args.n,
            seed=args.seed,
            p_override=args.p,
            n_guard=args.n_guard,
        )
        # header strength: a (w,r;d) family is checked over w+r columns
        header_t, header_d = max(args.w + args.r, 2), args.d
    _write_output(dumps_wsc(out, header_t, header_d), args.output)
    if args.log:
        _write_output(_dump_json(log.to_dict()), args.log)
    return 0


def _cmd_verify(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        matrix, header_t, header_d = read_wsc(fh)
    t = args.t if args.t is not None else header_t
    d = args.d if args.d is not None else header_d
    if args.t is not None and args.t != header_t:
        print(
            f"warning: overriding header t={header_t} with --t {args.t}",
            file=sys.stderr,
        )
    if args.d is not None and args.d != header_d:
        print(
            f"warning: overriding header d={header_d} with --d {args.d}",
            file=sys.stderr,
        )
    if args.kind == "weak":
        result = verify_weak(matrix, t, d, cap=args.cap)
        report = result.to_dict()
        ok = result.ok
    elif args.kind == "thin":
        if args.u is None:
            raise ValueError("verify --kind thin needs --u")
        ok = verify_locally_thin(matrix, args.u)
        report = {"ok": ok, "params": {"kind": "locally_thin", "u": args.u}}
    else:
        if args.w is None or args.r is None:
            raise ValueError("verify --kind cff needs --w and --r")
        ok = cff_verify(matrix, args.w, args.r, d)
        report = {
            "ok": ok,
            "params": {"kind": "cff", "w": args.w, "r": args.r, "d": d},
        }
    _write_output(_dump_json(report), args.output)
    return 0 if ok else 1


def _cmd_bounds(args) -> int:
    if args.t_max < 2:
        raise ValueError("--t-max must be >= 2")
    table = BoundTable.build(range(2, args.t_max + 1), args.d, args.l, args.f)
    if args.format == "csv":
        _write_output(table.to_csv(), args.output)
    else:
        _write_output(_dump_json(table.to_dict()), args.output)
    return 0


def _cmd_estimate(args) -> int:
    if args.mode == "violation":
        if args.s is None:
            raise ValueError("estimate --mode violation needs --s")
        p = args.p if args.p is not None else 1.0 / args.s
        est = estimate_violation_probability(
            args.s, p, args.l, args.d, args.trials, args.seed, threads=args.threads
        )
        payload = est.to_dict()
        payload["exact"] = prob_violation(args.s, p, args.l, args.d)
    else:
        if args.t is None:
            raise ValueError("estimate --mode success needs --t")
        cfg = ConstructionConfig(
            t=args.t,
            d=args.d,
            l=args.l,
            f=args.f,
            seed=args.seed,
            p_override=args.p,
            n_override=args.n,
        )
        summary = estimate_success_probability(cfg, args.trials, threads=args.threads)
        payload = summary.to_dict()
    _write_output(_dump_json(payload), args.output)
    return 0


def _cmd_sweep(args) -> int:
    try:
        l_values = [int(x) for x in args.l.split(",") if x]
    except ValueError as exc:
        raise ValueError(f"--l must be comma-separated integers, got {args.l!r}") from exc
    if not l_values:
        raise ValueError("--l must name at least one length")
    rows = rate_sweep(
        args.t,
        args.d,
        args.f,
        l_values,
        seed=args.seed,
        n_override=args.n,
        n_guard=args.n_guard,
    )
    if args.format == "csv":
        _write_output(sweep_to_csv(rows), args.output)
    else:
        _write_output(_dump_json([row.to_dict() for row in rows]), args.output)
    return 0


def _cmd_oracle(args) -> int:
    size, witness = max_code_exhaustive(args.l, args.t, args.d)
    payload = {
        "l": args.l,
        "t": args.t,
        "d": args.d,
        "max_size": size,
        "witness": [witness.column_string(j) for j in range(witness.n)],
    }
    _write_output(_dump_json(payload), args.output)
    return 0


_COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "bounds": _cmd_bounds,
    "estimate": _cmd_estimate,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
