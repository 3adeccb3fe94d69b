"""Command-line interface: ``symnc {certify,construct,scan-fig1,scan-fig2,selfcheck}``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import statefile
from .entcert import DEFAULT_GRID, DEFAULT_REFINE
from .families import MixtureSpec, mixture_state, rank2_state
from .nocorr import DEFAULT_TOL
from .pipeline import CertifierContradiction, certify_all, scan_fig1, scan_fig2
from .selfcheck import run_selfcheck
from .symrep import BlochVector, InvalidStateError, coherent_state, dicke_state, to_tensor

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_CONTRADICTION = 4


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _number(text: str) -> float:
    return float(Fraction(text.strip()))


def cmd_certify(args) -> int:
    try:
        state = statefile.load(args.state)
        rho = state.density()
    except statefile.StateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        result = certify_all(rho, tol=args.tol, grid=args.grid)
    except InvalidStateError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CertifierContradiction as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    _emit(json.dumps(result, indent=1) + "\n", args.output)
    return 0


def cmd_construct(args) -> int:
    try:
        if args.n is None:
            raise ValueError("--n is required")
        if args.kind == "dicke":
            state = dicke_state(args.n, args.k)
        elif args.kind == "coherent":
            state = coherent_state(args.n, BlochVector(_number(args.theta), _number(args.phi)))
        elif args.kind == "rank2":
            state = rank2_state(args.n, args.r)
        else:
            if not args.weights:
                raise ValueError("--weights is required for a mixture")
            weights = tuple(_number(w) for w in args.weights.split(","))
            state = mixture_state(MixtureSpec(args.n, weights))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.repr == "tensor":
        rho = state if state.ndim == 2 else np.outer(state, state.conj())
        doc = statefile.encode_tensor(to_tensor(rho))
    elif state.ndim == 1:
        doc = statefile.encode_pure(state)
    else:
        doc = statefile.encode_matrix(state)
    _emit(statefile.dumps(doc) + "\n", args.output)
    return 0


def cmd_scan_fig1(args) -> int:
    try:
        text = scan_fig1(args.resolution)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.output)
    return 0


def cmd_scan_fig2(args) -> int:
    if args.n not in (3, 5):
        print(f"note: N={args.n} scans are experimental; N=3 and N=5 are the supported sizes",
              file=sys.stderr)
    try:
        text = scan_fig2(args.n, args.resolution, grid=args.grid)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.output)
    return 0


def cmd_selfcheck(args) -> int:
    try:
        report = run_selfcheck(args.max_n, args.seed, fault=args.inject_fault)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit("\n".join(report.lines()) + "\n", args.output)
    if not report.ok:
        print(f"selfcheck failed: {', '.join(report.failures)}", file=sys.stderr)
        return EXIT_FAIL
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symnc", description=__doc__)

    def add_globals(p, default):
        # subparsers use SUPPRESS so a flag given before the subcommand survives
        kw = (lambda v: {"default": v}) if default else (lambda v: {"default": argparse.SUPPRESS})
        p.add_argument("--tol", type=float, help="SNC tolerance", **kw(DEFAULT_TOL))
        p.add_argument("--grid", type=int, help="latitude points of the sphere mesh",
                       **kw(DEFAULT_GRID))
        p.add_argument("--seed", type=int, help="RNG seed", **kw(42))
        p.add_argument("--output", "-o", help="write here instead of stdout", **kw(None))

    add_globals(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="certify a state file")
    p.add_argument("state")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("construct", parents=[common], help="write a state file")
    p.add_argument("kind", choices=["dicke", "coherent", "rank2", "mixture"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--theta", default="0")
    p.add_argument("--phi", default="0")
    p.add_argument("--weights", help="comma separated, fractions allowed: 1/16,7/16")
    p.add_argument("--repr", choices=["dicke", "tensor"], default="dicke")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("scan-fig1", parents=[common], help="A-eigenvalue region CSV")
    p.add_argument("--resolution", type=int, default=200)
    p.set_defaults(func=cmd_scan_fig1)

    p = sub.add_parser("scan-fig2", parents=[common], help="mixture-weight region CSV")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--resolution", type=int, default=200)
    p.set_defaults(func=cmd_scan_fig2)

    p = sub.add_parser("selfcheck", parents=[common], help="run the invariant suite")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--inject-fault", choices=["smatrix"], default=None,
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
