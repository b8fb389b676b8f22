"""Command-line surface: python -m mfk {catalog,verify,blowup,oracle,export}.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from mfk import blowup, catalog, export, suites
from mfk.config import Caps, configure_logging, settings
from mfk.errors import BadIndex, CapExceeded, MfkError, UsageError
from mfk.mcm import MatFac
from mfk.reports import RunReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


# -----------------------------
# Helpers
# -----------------------------
def _caps(args) -> Caps:
    caps = settings.gb_caps()
    updates = {}
    if getattr(args, "max_degree", None) is not None:
        updates["max_degree"] = args.max_degree
    if getattr(args, "max_basis", None) is not None:
        updates["max_basis"] = args.max_basis
    return caps.model_copy(update=updates) if updates else caps


def _parse_pivots(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise BadIndex(f"pivots must be comma-separated row indices, got {text!r}", {"pivots": text}) from None


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(
            f"{args.series} needs --{' --'.join(missing)}",
            {"series": args.series, "missing": missing},
        )


def matfac_from_args(args) -> MatFac:
    series = args.series
    if series == "A":
        _need(args, "n", "k")
        return catalog.an_family(args.n, args.k, deformed=not args.undeformed, split=args.split)
    if series == "D":
        _need(args, "n", "k")
        return catalog.dn_gsv_matfac(args.n, args.k) if args.gsv else catalog.dn_family(args.n, args.k)
    if series in export.E_TARGETS:
        _need(args, "label")
        if args.stable:
            return catalog.e_stabilized(series, args.label)
        return catalog.e_series(series, args.label)
    if series == "UF1":
        return catalog.universal_flop1()
    if series == "UF2":
        return catalog.universal_flop2()
    if series == "REID":
        _need(args, "n")
        return catalog.reid_pagoda(args.n)
    raise UsageError(f"unknown series {series!r}", {"series": series, "known": list(catalog.SERIES)})


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        print(f"Wrote: {path}")
    else:
        sys.stdout.write(text)


def _report_exit(run: RunReport, out: Optional[str], with_times: bool) -> int:
    payload = export.dumps(run.to_dict(with_times=with_times))
    _emit(payload, out)
    s = run.summary
    print(f"{run.suite}: {s.passed}/{s.total} passed", file=sys.stderr)
    return EXIT_OK if run.passed else EXIT_FAILED


# -----------------------------
# Commands
# -----------------------------
def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = [e for e in catalog.manifest() if args.series is None or e.series == args.series]
        if args.format == "json":
            _emit(export.dumps([{**e.model_dump(), "key": e.key} for e in entries]), args.out)
        else:
            _emit("".join(f"{e.key} ell={e.ell}\n" for e in entries), args.out)
        return EXIT_OK

    if args.series is None:
        raise UsageError("catalog show needs --series", {"action": "show"})
    m = matfac_from_args(args)
    _emit(export.render(m, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    filters = {"series": args.series, "n": args.n, "k": args.k}
    run = suites.run_suite(args.suite, threads=args.threads, caps=_caps(args), **filters)
    return _report_exit(run, args.out, not args.no_times)


def cmd_blowup(args) -> int:
    if args.series == "UF2" and args.pivots:
        m = catalog.universal_flop2()
        pivots = _parse_pivots(args.pivots)
        c = blowup.make_chart(m, args.side, pivots)
        payload = c.to_dict()
        payload["f_membership"] = blowup.membership_check(c).to_dict()
        _emit(export.dumps(payload), args.out)
        return EXIT_OK

    if args.series == "UF2":
        c, cls = blowup.flop_pipeline(args.chart)
    elif args.series == "D":
        _need(args, "n", "k")
        c, cls = blowup.dn_pipeline(args.n, args.k, args.chart)
    elif args.series in ("A", "UF1", "REID"):
        c, cls = blowup.pair_pipeline(matfac_from_args(args), args.chart)
    else:
        raise UsageError(
            f"no chart pipeline for series {args.series!r}",
            {"series": args.series, "known": ["A", "D", "UF1", "UF2", "REID"]},
        )

    payload = c.to_dict(cls)
    if args.series == "D" and args.chart == 2:
        payload["tyurina"] = blowup.tyurina(c, catalog.dn_invariants(args.n, args.k).G).to_dict()
    _emit(export.dumps(payload), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    filters = {"series": args.series, "n": args.n, "k": args.k}
    run = suites.run_suite("oracle", threads=args.threads, caps=_caps(args), **filters)
    capped = [r for r in run.records if isinstance(r.detail, dict) and r.detail.get("error") == CapExceeded.code]
    code = _report_exit(run, args.out, not args.no_times)
    if capped:
        print(f"Groebner caps exceeded in {len(capped)} run(s): {capped[0].detail.get('message')}", file=sys.stderr)
        return EXIT_INTERNAL
    return code


def cmd_export(args) -> int:
    if args.golden:
        targets = export.golden_targets() if args.golden == "all" else [args.golden]
        if args.write:
            for t in targets:
                print(f"Wrote: {export.write_golden(t, args.golden_dir)}")
            return EXIT_OK
        if args.check:
            diffs = [d for d in (export.golden_diff(t, args.golden_dir) for t in targets) if d]
            if diffs:
                print(export.dumps(diffs), end="")
                return EXIT_FAILED
            print(f"golden: {len(targets)} target(s) match")
            return EXIT_OK
        _emit("".join(export.render_golden(t) for t in targets), args.out)
        return EXIT_OK

    if args.series is None:
        raise UsageError("export needs --series or --golden", {})
    _emit(export.render(matfac_from_args(args), args.format), args.out)
    return EXIT_OK


# -----------------------------
# Parser
# -----------------------------
def _family_args(p: argparse.ArgumentParser, series_required: bool = False) -> None:
    p.add_argument("--series", choices=catalog.SERIES, required=series_required)
    p.add_argument("--n", type=int, help="rank")
    p.add_argument("--k", type=int, help="marked vertex")
    p.add_argument("--label", help="table label for E6/E7/E8 (e.g. 3, 2', 1+)")
    p.add_argument("--undeformed", action="store_true", help="A: g = z^k, h = z^(n-k)")
    p.add_argument("--split", action="store_true", help="A: split form over (u, v, z)")
    p.add_argument("--gsv", action="store_true", help="D: the GSV specialization")
    p.add_argument("--stable", action="store_true", help="E pairs: stabilized Xi of size 2l")


def _run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None, help=f"fan-out (default MFK_THREADS={settings.threads})")
    p.add_argument("--max-degree", type=int, default=None, help="Groebner degree cap")
    p.add_argument("--max-basis", type=int, default=None, help="Groebner basis-size cap")
    p.add_argument("--no-times", action="store_true", help="omit wall times from the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfk", description="Exact matrix factorizations and their blowup charts.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show catalog entries")
    p.add_argument("action", choices=("list", "show"))
    _family_args(p)
    p.add_argument("--format", choices=export.FORMATS, default="text")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=suites.VERIFY_SUITES + ("all",), default="all")
    p.add_argument("--series", choices=catalog.SERIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="write the JSON report here")
    _run_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("blowup", help="run one Grassmann chart")
    _family_args(p, series_required=True)
    p.add_argument("--chart", type=int, choices=(1, 2), default=1)
    p.add_argument("--pivots", help="UF2 only: explicit pivot rows, e.g. 0,3")
    p.add_argument("--side", choices=("psi", "phi"), default="psi")
    p.add_argument("--out")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("oracle", help="Groebner cross-checks of the chart residuals")
    p.add_argument("--series", choices=("A", "D"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    _run_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", help="canonical text, JSON or TeX of an entry; golden files")
    _family_args(p)
    p.add_argument("--format", choices=export.FORMATS, default="text")
    p.add_argument("--golden", help="golden target (E6, E7, E8, D4..D8) or all")
    p.add_argument("--golden-dir", default=None, help=f"default MFK_GOLDEN_DIR={settings.golden_dir}")
    p.add_argument("--write", action="store_true", help="rewrite the golden files")
    p.add_argument("--check", action="store_true", help="compare the golden files, exit 1 on drift")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: "", 1: "INFO"}.get(args.verbose, "DEBUG")
    try:
        configure_logging(level)
        return args.func(args)
    except UsageError as e:
        print(json.dumps(e.to_dict(), ensure_ascii=False), file=sys.stderr)
        return EXIT_USAGE
    except MfkError as e:
        logger.error("%s: %s", e.code, e.message)
        print(json.dumps(e.to_dict(), ensure_ascii=False), file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:
        logger.exception("internal error: %s", e)
        return EXIT_INTERNAL
