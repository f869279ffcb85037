"""Command-line interface: ``jnum validate|closure|jumping|scan|gen-example2``.

Exit codes: 0 success, 2 input or oracle failure, 3 some supercandidate left
Undetermined, 4 brute-force scan disagrees with the supercandidate loop.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import jumping
from .datasets import data_path
from .errors import DTooSmall, IterationCapExceeded, JnumError, UnknownEffectivity
from .model import (
    DIVISOR,
    Divisor,
    dumps,
    format_rational,
    load_resolution,
    make_example2,
    parse_rational,
    validate,
)
from .unloading import BATCH, DEFAULT_ITER_CAP, SEQUENTIAL, antieffective_closure

EXIT_OK, EXIT_INPUT, EXIT_UNDETERMINED, EXIT_DISAGREE = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: Optional[str] = None
    bound: Optional[Fraction] = None
    mode: str = BATCH
    certify: bool = False
    fmt: str = "table"
    iter_cap: int = DEFAULT_ITER_CAP
    r6_cap: int = jumping.DEFAULT_R6_CAP
    trace: bool = False

    def __post_init__(self):
        if self.bound is not None and self.bound <= 0:
            raise ValueError("--up-to must be positive")
        if self.iter_cap < 1 or self.r6_cap < 1:
            raise ValueError("caps must be at least 1")


def resolve_path(path: str) -> Path:
    """Use the path as given, falling back to the bundled copy for ``data/<name>``."""
    p = Path(path)
    if p.exists():
        return p
    if p.parent.name == "data" or str(p.parent) == "data":
        bundled = data_path(p.name)
        if bundled.exists():
            return bundled
    return p


def _load(path):
    r = load_resolution(resolve_path(path))
    rep = validate(r)
    if rep.errors:
        raise _InputFailure("\n".join(f"error: {m}" for m in rep.errors))
    return r


class _InputFailure(Exception):
    pass


def _emit(obj):
    print(json.dumps(obj, indent=2))


# -- commands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    r = load_resolution(resolve_path(args.path))
    rep = validate(r)
    if args.format == "json":
        _emit({"errors": rep.errors, "warnings": rep.warnings})
    else:
        print(rep.format())
    return EXIT_OK if rep.ok else EXIT_INPUT


def cmd_closure(args, cfg: RunConfig) -> int:
    r = _load(args.path)
    D = Divisor.parse(args.divisor)
    result, trace = antieffective_closure(r, D, mode=cfg.mode, iter_cap=cfg.iter_cap)
    if cfg.fmt == "json":
        doc = {
            "input": {lab: D[lab] for lab in r.labels},
            "closure": {lab: result[lab] for lab in r.labels},
        }
        if cfg.trace:
            doc["trace"] = [{"sweep": i, "added": [lab for lab in r.labels if lab in s]} for i, s in trace.steps]
        _emit(doc)
    else:
        print(result.format(r.labels))
        if cfg.trace:
            for i, s in trace.steps:
                print(f"  sweep {i}: + {' '.join(lab for lab in r.labels if lab in s)}")
    return EXIT_OK


def _bound_for(r, cfg):
    return cfg.bound if cfg.bound is not None else jumping.default_bound(r)


def cmd_jumping(args, cfg: RunConfig) -> int:
    r = _load(args.path)
    bound = _bound_for(r, cfg)
    recs = jumping.supercandidates(
        r, bound, mode=cfg.mode, iter_cap=cfg.iter_cap, certify_records=cfg.certify, r6_cap=cfg.r6_cap
    )
    undetermined = [rec for rec in recs if rec.status is not None and rec.status.verdict == jumping.UNDETERMINED]
    certified = [rec.lam for rec in recs if rec.status is not None and rec.status.verdict == jumping.CERTIFIED_JUMPING]
    extension = None
    if cfg.certify:
        window = Fraction(r.skoda_threshold)
        base = [rec for rec in recs if rec.lam <= window]
        if bound >= window:
            extension = jumping.extend_by_periodicity(r, base, bound, window=window)

    if cfg.fmt == "json":
        doc = {
            "bound": format_rational(bound),
            "input_kind": r.input_kind,
            "records": [rec.to_json(r) for rec in recs],
        }
        if cfg.certify:
            doc["jumping_numbers"] = [format_rational(x) for x in certified]
            doc["undetermined"] = [format_rational(rec.lam) for rec in undetermined]
            if extension is not None:
                doc["periodicity_extension"] = [format_rational(x) for x in extension]
        _emit(doc)
    else:
        rows = [("lambda", "G_lambda", "verdict", "rule", "closure")]
        for rec in recs:
            g = "+".join(lab for lab in r.labels if lab in rec.g_lambda)
            st = rec.status
            rows.append(
                (
                    format_rational(rec.lam),
                    g,
                    st.verdict if st else "-",
                    (st.rule or "-") if st else "-",
                    rec.d_lambda.format(r.labels),
                )
            )
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        for row in rows:
            print("  ".join(c.ljust(w) for c, w in zip(row, widths)) + "  " + row[4])
        if cfg.certify:
            print("jumping numbers: " + ", ".join(format_rational(x) for x in certified))
            if undetermined:
                print("UNDETERMINED: " + ", ".join(format_rational(rec.lam) for rec in undetermined))
            if extension is not None:
                kind = "periodicity" if r.input_kind == DIVISOR else "Skoda periodicity"
                print(
                    f"{kind} from (0, {format_rational(Fraction(r.skoda_threshold))}]: "
                    + ", ".join(format_rational(x) for x in extension)
                )
    if cfg.certify and undetermined:
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    r = _load(args.path)
    bound = _bound_for(r, cfg)
    scan = jumping.brute_scan(r, bound, mode=cfg.mode, iter_cap=cfg.iter_cap)
    loop = [rec.lam for rec in jumping.supercandidates(r, bound, mode=cfg.mode, iter_cap=cfg.iter_cap)]
    agree = scan == loop
    verdict = "AGREE" if agree else "DISAGREE"
    if cfg.fmt == "json":
        _emit(
            {
                "bound": format_rational(bound),
                "scan": [format_rational(x) for x in scan],
                "supercandidates": [format_rational(x) for x in loop],
                "verdict": verdict,
            }
        )
    else:
        print("scan: " + ", ".join(format_rational(x) for x in scan))
        print("supercandidates: " + ", ".join(format_rational(x) for x in loop))
        print(verdict)
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_gen_example2(args) -> int:
    r = make_example2(args.d)
    text = dumps(r)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} (Ep count {r.prime('Ep').count})")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------

def _rational_arg(text):
    try:
        q = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if q <= 0:
        raise argparse.ArgumentTypeError("bound must be positive")
    return q


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jnum", description="Jumping numbers from log resolution data.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="resolution data (JSON)")
    common.add_argument("--format", choices=("table", "json"), default="table")

    unload = argparse.ArgumentParser(add_help=False)
    unload.add_argument("--mode", choices=(BATCH, SEQUENTIAL), default=BATCH)
    unload.add_argument("--iter-cap", type=_positive_int, default=DEFAULT_ITER_CAP)

    sub.add_parser("validate", parents=[common], help="check a dataset")

    c = sub.add_parser("closure", parents=[common, unload], help="pi-antieffective closure of a divisor")
    c.add_argument("-d", "--divisor", required=True, help='e.g. "E2:1,E4:1"')
    c.add_argument("--trace", action="store_true", help="print each unloading sweep")

    j = sub.add_parser("jumping", parents=[common, unload], help="supercandidates and certification")
    j.add_argument("--up-to", type=_rational_arg, default=None)
    j.add_argument("--certify", action="store_true")
    j.add_argument("--r6-cap", type=_positive_int, default=jumping.DEFAULT_R6_CAP)

    s = sub.add_parser("scan", parents=[common, unload], help="brute-force cross-check")
    s.add_argument("--up-to", type=_rational_arg, default=None)

    g = sub.add_parser("gen-example2", help="write the threefold example for a given d")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        path=getattr(args, "path", None),
        bound=getattr(args, "up_to", None),
        mode=getattr(args, "mode", BATCH),
        certify=getattr(args, "certify", False),
        fmt=getattr(args, "format", "table"),
        iter_cap=getattr(args, "iter_cap", DEFAULT_ITER_CAP),
        r6_cap=getattr(args, "r6_cap", jumping.DEFAULT_R6_CAP),
        trace=getattr(args, "trace", False),
    )
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "closure":
            return cmd_closure(args, cfg)
        if args.command == "jumping":
            return cmd_jumping(args, cfg)
        if args.command == "scan":
            return cmd_scan(args, cfg)
        return cmd_gen_example2(args)
    except UnknownEffectivity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _InputFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except (DTooSmall, IterationCapExceeded, JnumError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
