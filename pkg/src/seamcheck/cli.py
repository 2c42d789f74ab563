"""Command-line entry point.

Four subcommands mirror the flow phases: ``profile`` summarizes cell
libraries, ``generate`` writes the abutment testcases (Verilog + DEF +
count manifest), ``verify`` runs the checkers and writes reports, and
``report`` renders the summary table and violation SVGs from a prior
verify run.

Options may come from a YAML config file (--config); explicit flags win.
Exit codes: 0 clean, 1 violations found (or a failed self-check), 2
execution error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import yaml

from . import defio, netlist, report
from .abutment import coverage_check, enumerate_library, expected_count
from .checks import (DptOption, Violation, ViolationKind, case_layout,
                     run_all)
from .floorplan import DEFAULT_MAX_ROW_WIDTH, plan_floorplan
from .geometry import Rect
from .library import parse_library, profile
from .rules import parse_rules


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_libraries(paths):
    libs = []
    for path in paths:
        lib = parse_library(_read(path))
        libs.append((path, lib))
    return libs


class _Options:
    """Merged view of config-file values and command-line flags."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.cfg = {}
        if getattr(args, "config", None):
            doc = yaml.safe_load(_read(args.config))
            if doc is None:
                doc = {}
            if not isinstance(doc, dict):
                raise ValueError("config file must be a YAML mapping")
            self.cfg = doc

    def get(self, key: str, default=None, required: bool = False):
        value = getattr(self.args, key, None)
        if value is None:
            value = self.cfg.get(key, default)
        if required and value is None:
            flag = "--" + key.replace("_", "-")
            raise ValueError(f"missing required option {flag}")
        return value


def _dpt_options(opt: _Options) -> list[DptOption]:
    token = str(opt.get("dpt_option", "both"))
    if token == "both":
        return [DptOption.OPTION_I, DptOption.OPTION_II]
    return [DptOption(token)]


def cmd_profile(args) -> int:
    opt = _Options(args)
    out_dir = str(opt.get("out", "out"))
    os.makedirs(out_dir, exist_ok=True)
    for path, lib in _load_libraries(opt.get("libs", required=True)):
        stats = profile(lib)
        lines = [f"Library {lib.name}: {len(lib.cells)} cells "
                 f"({stats.n_single} single, {stats.n_multi} multi)",
                 "Width histogram (DBU):"]
        for width, count in stats.width_hist.items():
            lines.append(f"  {width:>8}  {'#' * min(count, 60)} {count}")
        lines.append("Height histogram (rows):")
        for rows, count in stats.height_rows_hist.items():
            lines.append(f"  {rows:>8}  {'#' * min(count, 60)} {count}")
        text = "\n".join(lines) + "\n"
        sys.stdout.write(text)
        _write(os.path.join(out_dir, f"profile_{lib.name}.txt"), text)
        _write(os.path.join(out_dir, f"profile_{lib.name}.json"),
               json.dumps({
                   "library": lib.name, "path": path,
                   "cells": len(lib.cells),
                   "n_single": stats.n_single, "n_multi": stats.n_multi,
                   "width_hist": stats.width_hist,
                   "height_rows_hist": stats.height_rows_hist,
               }, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_generate(args) -> int:
    opt = _Options(args)
    out_dir = str(opt.get("out", "out"))
    os.makedirs(out_dir, exist_ok=True)
    rules = parse_rules(_read(opt.get("rules", required=True)))
    max_row_width = int(opt.get("max_row_width", DEFAULT_MAX_ROW_WIDTH))
    status = 0
    for path, lib in _load_libraries(opt.get("libs", required=True)):
        cases = enumerate_library(lib)
        fp = plan_floorplan(cases, rules, max_row_width)
        _write(os.path.join(out_dir, f"testcases_{lib.name}.v"),
               netlist.emit_verilog(cases))
        _write(os.path.join(out_dir, f"testcases_{lib.name}.def"),
               defio.emit_def(cases, lib, fp))
        stats = profile(lib)
        placements = sum(len(c.placements) for c in cases)
        expected = (expected_count(stats.n_single, "proposed")
                    if stats.n_multi == 0 else None)
        coverage = coverage_check(cases, lib)
        manifest = {
            "library": lib.name,
            "path": path,
            "cells": len(lib.cells),
            "n_single": stats.n_single,
            "n_multi": stats.n_multi,
            "cases": len(cases),
            "placements": placements,
            "formula": "4*N + 5*N*(N-1)/2 (single-height libraries)",
            "expected_placements": expected,
            "matches_expected": expected is None or placements == expected,
            "coverage_classes": coverage.universe,
            "coverage_complete": coverage.complete,
        }
        _write(os.path.join(out_dir, f"manifest_{lib.name}.json"),
               json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        sys.stdout.write(
            f"{lib.name}: {len(cases)} cases, {placements} placements"
            + ("" if expected is None else f" (expected {expected})")
            + f", coverage {'complete' if coverage.complete else 'INCOMPLETE'}\n")
        if not manifest["matches_expected"] or not coverage.complete:
            print(f"error: self-check failed for library {lib.name}",
                  file=sys.stderr)
            status = 1
    return status


def _verify_results(opt: _Options):
    rules = parse_rules(_read(opt.get("rules", required=True)))
    max_row_width = int(opt.get("max_row_width", DEFAULT_MAX_ROW_WIDTH))
    jobs = int(opt.get("jobs", 1))
    results = []
    for path, lib in _load_libraries(opt.get("libs", required=True)):
        for option in _dpt_options(opt):
            res = run_all(lib, rules, option, max_row_width, jobs)
            results.append((path, res))
    return rules, max_row_width, results


def cmd_verify(args) -> int:
    opt = _Options(args)
    out_dir = str(opt.get("out", "out"))
    os.makedirs(out_dir, exist_ok=True)
    rules, max_row_width, results = _verify_results(opt)
    window = rules.interaction_distance

    payload = {"rules": opt.get("rules"), "max_row_width": max_row_width,
               "window": window, "libraries": []}
    by_lib: dict[str, dict] = {}
    for path, res in results:
        name = res.library.name
        if name not in by_lib:
            by_lib[name] = {"name": name, "path": path, "runs": []}
            payload["libraries"].append(by_lib[name])
        reports, residual = report.attribute_to_seams(
            res.violations, res.cases, res.floorplan, window)
        records = [report.violation_record(v, res.cases, reports)
                   for v in res.violations]
        by_lib[name]["runs"].append({
            "option": res.option.value,
            "counts": res.counts_by_kind(),
            "drc": res.drc_count,
            "drcplus": res.drcplus_count,
            "seam_attributed": sum(len(r.violations) for r in reports),
            "residual": len(residual),
            "recolor_diff": dict(sorted(res.recolor_diff.items())),
            "violations": records,
        })
        _write(os.path.join(
            out_dir, f"violations_{name}_opt{res.option.value}.jsonl"),
            report.render_jsonl(res, window))

    table = report.summarize([res for _, res in results])
    _write(os.path.join(out_dir, "summary.txt"), table.render())
    _write(os.path.join(out_dir, "summary.json"),
           json.dumps(table.to_dict(), indent=2, sort_keys=True) + "\n")
    _write(os.path.join(out_dir, "results.json"),
           json.dumps(payload, indent=2, sort_keys=True) + "\n")
    sys.stdout.write(table.render())
    total = sum(len(res.violations) for _, res in results)
    return 0 if total == 0 else 1


def cmd_report(args) -> int:
    opt = _Options(args)
    out_dir = str(opt.get("out", "out"))
    results_path = os.path.join(out_dir, "results.json")
    if not os.path.exists(results_path):
        raise ValueError(f"no results.json under {out_dir}; run verify first")
    payload = json.loads(_read(results_path))
    svg_cap = int(opt.get("svg_cap", 50))
    margin = 200

    rules = parse_rules(_read(opt.get("rules", payload.get("rules"),
                                      required=True)))
    lib_paths = opt.get("libs") or [entry["path"]
                                    for entry in payload["libraries"]]
    libs = {lib.name: lib for _, lib in _load_libraries(lib_paths)}
    max_row_width = int(payload.get("max_row_width", DEFAULT_MAX_ROW_WIDTH))
    window = int(payload.get("window", rules.interaction_distance))

    rows = []
    svg_count = 0
    for entry in payload["libraries"]:
        counts = {}
        lib = libs.get(entry["name"])
        for run in entry["runs"]:
            counts[f"drc_{run['option']}"] = run["drc"]
            counts[f"drcplus_{run['option']}"] = run["drcplus"]
            if lib is None:
                continue
            cases = enumerate_library(lib)
            fp = plan_floorplan(cases, rules, max_row_width)
            seams = report.global_seams(cases, fp)
            module_index = {c.module_name: i for i, c in enumerate(cases)}
            option = DptOption(run["option"])
            rendered = 0
            for vi, rec in enumerate(run["violations"]):
                if rendered >= svg_cap:
                    break
                idx = module_index.get(rec["case"])
                if idx is None:
                    continue
                violation = Violation(
                    ViolationKind(rec["kind"]), rec["layer"],
                    Rect(*rec["bbox"]), tuple(rec["shape_ids"]),
                    rec["pattern"], idx)
                layout = case_layout(idx, cases, lib, fp, rules, option)
                near = tuple(s for s in seams if s.case_index == idx
                             and s.band(window).intersects(violation.bbox))
                svg = report.render_svg(layout, violation, margin, near)
                svg_dir = os.path.join(out_dir, "svg")
                os.makedirs(svg_dir, exist_ok=True)
                _write(os.path.join(
                    svg_dir,
                    f"{entry['name']}_opt{run['option']}_{vi:04d}_"
                    f"{rec['kind']}.svg"), svg)
                rendered += 1
            svg_count += rendered
        rows.append(report.SummaryRow(entry["name"], counts))

    table = report.SummaryTable(tuple(rows))
    _write(os.path.join(out_dir, "summary.txt"), table.render())
    sys.stdout.write(table.render())
    sys.stdout.write(f"wrote {svg_count} svg file(s)\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seamcheck",
        description="Standard-cell abutment testcase generation and "
                    "seam-level lithography-compliance checking")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="YAML config file; flags override it")
        p.add_argument("--libs", nargs="+", help="library file paths")
        p.add_argument("--out", help="output directory (default: out)")

    p = sub.add_parser("profile", help="cell library statistics")
    common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("generate", help="write testcase netlist + DEF")
    common(p)
    p.add_argument("--rules", help="rule deck path")
    p.add_argument("--max-row-width", type=int, dest="max_row_width")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run all checks and write reports")
    common(p)
    p.add_argument("--rules", help="rule deck path")
    p.add_argument("--dpt-option", choices=["I", "II", "both"],
                   dest="dpt_option")
    p.add_argument("--max-row-width", type=int, dest="max_row_width")
    p.add_argument("--jobs", type=int, help="parallel case workers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="render summary and SVGs from a verify run")
    common(p)
    p.add_argument("--rules", help="rule deck path")
    p.add_argument("--svg-cap", type=int, dest="svg_cap",
                   help="max SVG files per run (default 50)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
