"""Violation reporting: seam attribution, summary tables, structured
records and SVG neighborhood rendering.

Violations are attributed to every abutment seam whose band (the seam
line widened by the attribution window, limited to the rows the seam
spans) intersects the violation box; anything touching no seam lands in
the residual (intra-cell) list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .abutment import AbutmentCase
from .checks import VerificationResult, Violation
from .floorplan import Floorplan
from .geometry import FlatLayout, Mask, Rect


@dataclass(frozen=True)
class GlobalSeam:
    case_index: int
    seam_index: int
    module: str
    x: int
    y_lo: int
    y_hi: int
    left: tuple[str, str]   # (cell, orientation name)
    right: tuple[str, str]

    def band(self, window: int) -> Rect:
        return Rect(self.x - window, self.y_lo - window,
                    self.x + window, self.y_hi + window)

    def label(self) -> str:
        return (f"{self.module} seam@{self.x} "
                f"{self.left[0]}:{self.left[1]}|{self.right[0]}:{self.right[1]}")


@dataclass(frozen=True)
class SeamReport:
    seam: GlobalSeam
    violations: tuple[Violation, ...]


def global_seams(cases: list[AbutmentCase],
                 floorplan: Floorplan) -> list[GlobalSeam]:
    out = []
    rh = floorplan.row_height
    for idx, case in enumerate(cases):
        ox, oy = floorplan.origin_of(idx)
        for j, seam in enumerate(case.seams):
            out.append(GlobalSeam(
                idx, j, case.module_name, seam.x + ox,
                oy + seam.row_lo * rh, oy + (seam.row_hi + 1) * rh,
                (seam.left[0], seam.left[1].value),
                (seam.right[0], seam.right[1].value)))
    return out


def attribute_to_seams(violations, cases, floorplan: Floorplan,
                       window: int) -> tuple[list[SeamReport], list[Violation]]:
    """Assign each violation to every seam of its case whose widened band
    intersects the violation box. Returns per-seam reports (seams with at
    least one hit) and the residual list. Every violation appears either
    in >= 1 seam report or in the residual, never both."""
    seams = global_seams(cases, floorplan)
    by_case: dict[int, list[GlobalSeam]] = {}
    for s in seams:
        by_case.setdefault(s.case_index, []).append(s)
    hits: dict[tuple[int, int], list[Violation]] = {}
    residual: list[Violation] = []
    for v in violations:
        candidates = (seams if v.case_index is None
                      else by_case.get(v.case_index, []))
        attributed = False
        for s in candidates:
            if s.band(window).intersects(v.bbox):
                hits.setdefault((s.case_index, s.seam_index), []).append(v)
                attributed = True
        if not attributed:
            residual.append(v)
    reports = [SeamReport(s, tuple(hits[key]))
               for s in seams
               if (key := (s.case_index, s.seam_index)) in hits]
    return reports, residual


CLEAN = "Clean"
_COLUMNS = ("drc_I", "drcplus_I", "drc_II", "drcplus_II")
_HEADERS = ("DRC (Opt I)", "DRC+ (Opt I)", "DRC (Opt II)", "DRC+ (Opt II)")


@dataclass(frozen=True)
class SummaryRow:
    library: str
    counts: dict  # column key -> int, absent when the option was not run

    def cell(self, column: str) -> str:
        if column not in self.counts:
            return "-"
        n = self.counts[column]
        return CLEAN if n == 0 else str(n)


@dataclass(frozen=True)
class SummaryTable:
    rows: tuple[SummaryRow, ...]

    def render(self) -> str:
        names = ["Library"] + list(_HEADERS)
        table = [names] + [
            [r.library] + [r.cell(c) for c in _COLUMNS] for r in self.rows]
        widths = [max(len(row[i]) for row in table)
                  for i in range(len(names))]
        lines = []
        for ri, row in enumerate(table):
            lines.append("  ".join(
                cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
            if ri == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"rows": [{"library": r.library, **r.counts}
                         for r in self.rows]}


def summarize(results: list[VerificationResult]) -> SummaryTable:
    """One row per library, DRC and DRC+ counts per option, zeroes
    rendered as Clean."""
    order: list[str] = []
    by_lib: dict[str, dict] = {}
    for res in results:
        name = res.library.name
        if name not in by_lib:
            order.append(name)
            by_lib[name] = {}
        suffix = res.option.value
        by_lib[name][f"drc_{suffix}"] = res.drc_count
        by_lib[name][f"drcplus_{suffix}"] = res.drcplus_count
    return SummaryTable(tuple(SummaryRow(name, by_lib[name])
                              for name in order))


def violation_record(v: Violation, cases, seam_reports) -> dict:
    """JSON-able record for one violation, including the seams it was
    attributed to."""
    seams = []
    for rep in seam_reports:
        if any(x is v for x in rep.violations):
            s = rep.seam
            seams.append({"x": s.x,
                          "left": f"{s.left[0]}:{s.left[1]}",
                          "right": f"{s.right[0]}:{s.right[1]}"})
    case = cases[v.case_index].module_name if v.case_index is not None else None
    return {
        "kind": v.kind.value,
        "layer": v.layer,
        "bbox": list(v.bbox),
        "case": case,
        "seams": seams,
        "shape_ids": list(v.shape_ids),
        "pattern": v.pattern_name,
    }


def render_jsonl(result: VerificationResult, window: int) -> str:
    """One line per violation: kind, layer, bbox, case, attributed seams,
    shape ids, pattern."""
    reports, _ = attribute_to_seams(result.violations, result.cases,
                                    result.floorplan, window)
    lines = [json.dumps(violation_record(v, result.cases, reports),
                        sort_keys=True)
             for v in result.violations]
    return "".join(line + "\n" for line in lines)


_FILL = {Mask.E1: "#5588cc", Mask.E2: "#dd7766", Mask.NONE: "#bbbbbb"}


def render_svg(layout: FlatLayout, violation: Violation, margin: int = 0,
               seams: tuple[GlobalSeam, ...] = ()) -> str:
    """Static SVG of the violation neighborhood: every shape within the
    violation box plus margin, mask-colored, with the violation outlined
    and any attributed seam drawn as a vertical line. Output bytes are a
    pure function of the inputs."""
    vp = violation.bbox.inflated(margin)
    w, h = vp.width, vp.height

    def fx(x: int) -> int:
        return x - vp.x1

    def fy(y: int) -> int:
        return vp.y2 - y  # SVG y grows downward

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]
    for sid in sorted(layout.query_window(vp)):
        s = layout.shape(sid)
        r = s.rect
        parts.append(
            f'<rect x="{fx(r.x1)}" y="{fy(r.y2)}" width="{r.width}" '
            f'height="{r.height}" fill="{_FILL[s.mask]}" stroke="#333333" '
            f'stroke-width="2">'
            f'<title>{escape(f"{sid} {s.layer} {s.source_instance}")}</title>'
            f'</rect>')
    for seam in seams:
        if vp.x1 <= seam.x <= vp.x2:
            parts.append(
                f'<line x1="{fx(seam.x)}" y1="0" x2="{fx(seam.x)}" '
                f'y2="{h}" stroke="#222222" stroke-width="2" '
                f'stroke-dasharray="16 8"/>')
    b = violation.bbox
    parts.append(
        f'<rect x="{fx(b.x1)}" y="{fy(b.y2)}" width="{b.width}" '
        f'height="{b.height}" fill="none" stroke="#cc0022" '
        f'stroke-width="4" stroke-dasharray="12 6"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
