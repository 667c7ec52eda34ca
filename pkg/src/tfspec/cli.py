"""Command-line entry point ``tfspec``.

Sub-commands::

    tfspec run    --case adv_h3 --alpha1 0.5 [--ns 8,16,32] [--csv out.csv] [--svg out.svg]
    tfspec sweep  --case adv_jump --alpha1-list 0.3,0.6,0.9 [--alpha2-list ...]
    tfspec verify [--criteria 6,7] [--pytest [PATH]]

Every option may also come from a JSON file given with ``--config``; its keys
are the long option names (``alpha1_list`` or ``alpha1-list``). Flags given on
the command line win over the file.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import subprocess
import sys
from pathlib import Path
from typing import Sequence

from .cases import CaseId, get_case
from .convergence import DEFAULT_NS, CaseError, ConvergenceReport, run_case
from .report import csv_text, emit_report, svg_text, write_text

log = logging.getLogger("tfspec")


def _floats(text: str) -> list[float]:
    return [float(t) for t in str(text).split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    out = [int(t) for t in str(text).split(",") if t.strip()]
    if any(n < 1 for n in out):
        raise argparse.ArgumentTypeError(f"N-values must be positive: {text}")
    return out


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-v", "--verbose", action="store_true", help="log fitted rates")
    p.add_argument("--config", type=Path, help="JSON file with default option values")
    p.add_argument("--case", choices=[c.value for c in CaseId])
    p.add_argument("--d", type=float)
    p.add_argument("--lambda", dest="lam", type=float, help="tempering parameter (default 1)")
    p.add_argument("--ns", type=_ints, help="comma-separated N-values (default 8,...,256)")
    p.add_argument("--m", type=int, help="adv_dterm: integer smoothness index (default 3)")
    p.add_argument("--gamma", type=float, help="adv_dterm: exponent shift (default 0.3)")
    p.add_argument("--csv", type=Path, help="CSV output path (default: stdout)")
    p.add_argument("--svg", type=Path, help="optional SVG chart path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfspec", description="Spectral convergence studies for tempered fractional problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one parameter set")
    _common(run)
    run.add_argument("--alpha1", type=float)
    run.add_argument("--alpha2", type=float)

    sweep = sub.add_parser("sweep", help="several parameter sets on one chart")
    _common(sweep)
    sweep.add_argument("--alpha1-list", dest="alpha1_list", type=_floats)
    sweep.add_argument("--alpha2-list", dest="alpha2_list", type=_floats)
    sweep.add_argument("--d-list", dest="d_list", type=_floats)

    verify = sub.add_parser("verify", help="run the acceptance criteria")
    verify.add_argument("-v", "--verbose", action="store_true")
    verify.add_argument("--criteria", type=_ints, help="subset of criterion numbers")
    verify.add_argument(
        "--pytest",
        nargs="?",
        const="tests",
        metavar="PATH",
        help="also run pytest on PATH (default ./tests)",
    )
    return parser


_LIST_KEYS = {"ns": _ints, "alpha1_list": _floats, "alpha2_list": _floats, "d_list": _floats, "criteria": _ints}


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    path = getattr(args, "config", None)
    if path is None:
        return args
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(f"tfspec: cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SystemExit(f"tfspec: config {path} must hold a JSON object")
    for key, value in data.items():
        key = key.replace("-", "_")
        if key == "lambda":
            key = "lam"
        if not hasattr(args, key):
            raise SystemExit(f"tfspec: unknown config key {key!r} in {path}")
        if getattr(args, key) is not None:
            continue
        if key in _LIST_KEYS and not isinstance(value, list):
            value = _LIST_KEYS[key](value)
        if key in ("csv", "svg") and value is not None:
            value = Path(value)
        setattr(args, key, value)
    return args


def _case(args):
    if args.case is None:
        raise SystemExit("tfspec: --case is required")
    kw = {}
    if args.case == CaseId.ADV_DTERM.value:
        if args.m is not None:
            kw["m"] = args.m
        if args.gamma is not None:
            kw["gamma"] = args.gamma
    elif args.m is not None or args.gamma is not None:
        raise SystemExit("tfspec: --m/--gamma only apply to adv_dterm")
    return get_case(args.case, **kw)


def _emit(reports: list[ConvergenceReport], args) -> None:
    if args.csv is not None:
        emit_report(reports, args.csv, args.svg)
    else:
        sys.stdout.write(csv_text(reports).replace("\r\n", "\n"))
        if args.svg is not None:
            write_text(args.svg, svg_text(reports))
    for r in reports:
        log.info("%s a1=%g a2=%g d=%g: rate %.3f", r.case, r.alpha1, r.alpha2, r.d, r.fitted_rate)


def _param_sets(args, case) -> list[tuple[float, float, float]]:
    defaults = case.defaults
    if args.command == "run":
        if args.alpha1 is None:
            raise SystemExit("tfspec: --alpha1 is required")
        a1s = [args.alpha1]
        a2s = [args.alpha2 if args.alpha2 is not None else defaults["alpha2"]]
        ds = [args.d if args.d is not None else defaults["d"]]
    else:
        if not args.alpha1_list:
            raise SystemExit("tfspec: --alpha1-list is required")
        a1s = args.alpha1_list
        a2s = args.alpha2_list or [defaults["alpha2"]]
        ds = args.d_list or [args.d if args.d is not None else defaults["d"]]
    return list(itertools.product(a1s, a2s, ds))


def cmd_study(args) -> int:
    case = _case(args)
    lam = 1.0 if args.lam is None else args.lam
    ns = args.ns or list(DEFAULT_NS)
    reports = []
    for a1, a2, d in _param_sets(args, case):
        try:
            reports.append(run_case(case, a1, a2, d, lam, ns))
        except CaseError as exc:
            print(f"tfspec: {exc}", file=sys.stderr)
            return 2
    try:
        _emit(reports, args)
    except OSError as exc:
        print(f"tfspec: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_verify(args) -> int:
    from .acceptance import run_all

    ok = True
    for result in run_all(args.criteria):
        print(result.line(), flush=True)
        ok &= result.passed
    if args.pytest is not None:
        code = subprocess.call([sys.executable, "-m", "pytest", "-q", args.pytest])
        ok &= code == 0
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(name)s: %(message)s")
    args = _merge_config(args)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_study(args)


if __name__ == "__main__":
    sys.exit(main())
