"""Configuration-driven verification runner.

Exit codes: 0 when every requested suite passes or is routed not-applicable,
1 when any suite fails its tolerance band, 2 on configuration or evaluation
errors (including unwritable report paths).

The machine-readable report is JSON with a schema_version field; reruns with
the same plan and seed are byte-identical apart from the timestamp.  The
worker count for the sample pool defaults to the PROJCURV_WORKERS
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import config as config_mod
from .errors import GeometryError
from .verify import SUITE_TAGS, run_suite

SCHEMA_VERSION = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projcurv",
        description="certify curvature inequalities for energy densities "
                    "on projectivized tangent bundles")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites from a plan")
    v.add_argument("--config", required=True, help="path to the YAML plan")
    v.add_argument("--suite", nargs="*", default=None, metavar="NAME",
                   help="override the plan's suite list "
                        f"(known: {', '.join(SUITE_TAGS)})")
    v.add_argument("--samples", type=int, default=None,
                   help="override the sample count")
    v.add_argument("--seed", type=int, default=None, help="override the seed")
    v.add_argument("--quadrature-order", type=int, default=None,
                   help="override the fiber quadrature order")
    v.add_argument("--tol-relative", type=float, default=None,
                   help="override the relative tolerance band")
    v.add_argument("--report", default=None, help="override the report path")
    v.add_argument("--format", choices=("text", "structured"), default=None,
                   help="report file format")
    v.add_argument("--workers", type=int, default=None,
                   help="worker count (default: PROJCURV_WORKERS or 1)")
    return parser


def execute(cfg: config_mod.RunConfig) -> tuple[int, dict]:
    """Run a resolved plan; returns (exit_code, report_document)."""
    doc = {"schema_version": SCHEMA_VERSION, "timestamp": None, "reports": [],
           "verdict": "pass"}
    try:
        pair = cfg.resolved_pair()
        workers = cfg.workers or int(os.environ.get("PROJCURV_WORKERS", "1"))
        reports = run_suite(pair, cfg.suites, samples=cfg.samples, seed=cfg.seed,
                            quadrature_order=cfg.quadrature_order,
                            tol_relative=cfg.tol_relative, tol_exact=cfg.tol_exact,
                            workers=workers)
    except GeometryError as exc:
        doc["verdict"] = "error"
        doc["error"] = str(exc)
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
        return 2, doc

    any_fail = False
    for rep in reports:
        doc["reports"].append(rep.to_dict())
        if rep.status == "fail":
            any_fail = True
        if rep.status == "error":
            doc["verdict"] = "error"
    if doc["verdict"] == "error":
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
        return 2, doc
    doc["verdict"] = "fail" if any_fail else "pass"
    doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    return (1 if any_fail else 0), doc


def _human_summary(doc: dict) -> str:
    lines = []
    for rep in doc.get("reports", []):
        status = rep["status"].upper().replace("_", "-")
        extra = ""
        if rep["residuals"]:
            worst = rep.get("worst", {}).get("residual")
            if worst is not None:
                extra = f"  worst residual {worst: .3e}"
        if rep.get("message"):
            extra += f"  [{rep['message']}]"
        lines.append(f"{rep['suite']:<12} {rep['pair']:<24} {status:<14}{extra}")
    lines.append(f"verdict: {doc.get('verdict', 'error')}")
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    return "\n".join(lines)


def _render_text_report(doc: dict) -> str:
    lines = [f"schema_version: {doc['schema_version']}",
             f"timestamp: {doc['timestamp']}",
             f"verdict: {doc['verdict']}"]
    for rep in doc.get("reports", []):
        lines.append(f"suite {rep['suite']} pair {rep['pair']} "
                     f"status {rep['status']} samples {rep['samples']}")
        if rep["residuals"]:
            lines.append(f"  residual range [{min(rep['residuals']):.6e}, "
                         f"{max(rep['residuals']):.6e}]")
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = config_mod.parse_config(fh.read())
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    if args.suite is not None:
        unknown = [s for s in args.suite if s not in SUITE_TAGS]
        if unknown:
            print(f"unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
            return 2
        cfg.suites = list(args.suite)
    if args.samples is not None:
        cfg.samples = args.samples
    if args.seed is not None:
        cfg.seed = args.seed
    if args.quadrature_order is not None:
        cfg.quadrature_order = args.quadrature_order
    if args.tol_relative is not None:
        cfg.tol_relative = args.tol_relative
    if args.report is not None:
        cfg.report = args.report
    if args.format is not None:
        cfg.format = args.format
    if args.workers is not None:
        cfg.workers = args.workers
    if cfg.workers is None:
        cfg.workers = int(os.environ.get("PROJCURV_WORKERS", "1"))

    code, doc = execute(cfg)

    for rep in doc.get("reports", []):
        if rep["status"] == "not_applicable":
            print(f"warning: suite {rep['suite']} not applicable: "
                  f"{rep['message']}", file=sys.stderr)

    if cfg.report:
        try:
            payload = (json.dumps(doc, sort_keys=True, indent=2) + "\n"
                       if cfg.format == "structured" else _render_text_report(doc))
            with open(cfg.report, "w", encoding="utf-8") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return 2

    print(_human_summary(doc))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
