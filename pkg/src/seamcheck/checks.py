"""The three checking engines: rule-based DRC (width/spacing), DPT color
verification and decomposition, and hotspot pattern matching.

Two DPT flows are supported. Option I verifies the pre-assigned cell
colors as drawn: same-mask spacing and missing-color checks apply.
Option II recolors each flattened testcase from scratch (two-coloring the
conflict graph) before checking; spacing is then only checked across
masks, and uncolorable odd cycles are reported as violations.
"""

from __future__ import annotations

import enum
from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Mapping

from .abutment import enumerate_library
from .errors import IncompleteAssignmentError
from .floorplan import DEFAULT_MAX_ROW_WIDTH, Floorplan, plan_floorplan
from .geometry import (FlatLayout, Mask, Rect, connected_components, flatten,
                       parallel_runs, run_between)
from .library import CellLibrary
from .rules import HotspotPattern, RuleDeck


class ViolationKind(enum.Enum):
    WIDTH = "Width"
    SPACING_SAME_MASK = "SpacingSameMask"
    SPACING_ANY_MASK = "SpacingAnyMask"
    COLOR_MISSING = "ColorMissing"
    ODD_CYCLE = "OddCycle"
    HOTSPOT = "Hotspot"


#: Kinds that exist only because of mask assignment.
COLOR_RELATED = frozenset({ViolationKind.SPACING_SAME_MASK,
                           ViolationKind.COLOR_MISSING,
                           ViolationKind.ODD_CYCLE})


class DptOption(enum.Enum):
    OPTION_I = "I"
    OPTION_II = "II"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    layer: str
    bbox: Rect
    shape_ids: tuple[int, ...]
    pattern_name: str | None = None
    case_index: int | None = None

    def sort_key(self):
        return (self.layer, self.kind.value, self.bbox, self.shape_ids,
                self.pattern_name or "")


def check_width(layout: FlatLayout, rules: RuleDeck) -> list[Violation]:
    """One Width violation per shape whose short side is below the layer
    minimum. Exactly minimum passes."""
    out = []
    for layer in layout.layers():
        rule = rules.layer_rule(layer)
        if rule is None:
            continue
        for s in layout.shapes_on(layer):
            if min(s.rect.width, s.rect.height) < rule.min_width:
                out.append(Violation(ViolationKind.WIDTH, layer, s.rect,
                                     (s.shape_id,)))
    out.sort(key=Violation.sort_key)
    return out


def check_spacing(layout: FlatLayout, rules: RuleDeck,
                  option: DptOption) -> list[Violation]:
    """Spacing checks between unconnected shapes (touching shapes form one
    net and are exempt). Every pair closer than the any-mask minimum is a
    SpacingAnyMask violation. Under Option I, DPT layers additionally get
    SpacingSameMask for same-colored pairs below the same-mask minimum and
    ColorMissing for uncolored shapes."""
    out = []
    for layer in layout.layers():
        rule = rules.layer_rule(layer)
        if rule is None:
            continue
        dpt_fixed = rule.dpt and option is DptOption.OPTION_I
        reach = (rule.min_spacing_same_mask if dpt_fixed
                 else rule.min_spacing_any_mask)
        comp = connected_components(layout, layer)
        for run in parallel_runs(layout, layer, reach):
            if comp[run.shape_a] == comp[run.shape_b]:
                continue
            a = layout.shape(run.shape_a)
            b = layout.shape(run.shape_b)
            bbox = a.rect.union(b.rect)
            if run.spacing < rule.min_spacing_any_mask:
                out.append(Violation(ViolationKind.SPACING_ANY_MASK, layer,
                                     bbox, (a.shape_id, b.shape_id)))
            if (dpt_fixed and a.mask is b.mask and a.mask is not Mask.NONE
                    and run.spacing < rule.min_spacing_same_mask):
                out.append(Violation(ViolationKind.SPACING_SAME_MASK, layer,
                                     bbox, (a.shape_id, b.shape_id)))
        if dpt_fixed:
            for s in layout.shapes_on(layer):
                if s.mask is Mask.NONE:
                    out.append(Violation(ViolationKind.COLOR_MISSING, layer,
                                         s.rect, (s.shape_id,)))
    out.sort(key=Violation.sort_key)
    return out


@dataclass(frozen=True)
class ConflictGraph:
    """Same-mask conflict graph of one DPT layer: nodes are touch-connected
    shape groups, edges join groups with a sub-S_same parallel run."""

    layer: str
    nodes: dict[int, tuple[int, ...]]  # root shape id -> member shape ids
    edges: frozenset[tuple[int, int]]  # (u, v) node pairs, u < v
    node_bbox: dict[int, Rect]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj.values():
            lst.sort()
        return adj


def build_conflict_graph(layout: FlatLayout, rules: RuleDeck,
                         layer: str) -> ConflictGraph:
    rule = rules.layer_rule(layer)
    if rule is None or not rule.dpt:
        raise ValueError(f"layer {layer} is not a DPT layer")
    comp = connected_components(layout, layer)
    members: dict[int, list[int]] = defaultdict(list)
    for sid, root in sorted(comp.items()):
        members[root].append(sid)
    bbox: dict[int, Rect] = {}
    for root, sids in members.items():
        rects = [layout.shape(s).rect for s in sids]
        acc = rects[0]
        for r in rects[1:]:
            acc = acc.union(r)
        bbox[root] = acc
    edges = set()
    for run in parallel_runs(layout, layer, rule.min_spacing_same_mask - 1):
        u, v = comp[run.shape_a], comp[run.shape_b]
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return ConflictGraph(layer, {r: tuple(m) for r, m in members.items()},
                         frozenset(edges), bbox)


@dataclass
class DecomposeResult:
    """Either a full mask assignment (shape id -> mask) or, when some
    component has an odd conflict cycle, the witnessing violations."""

    assignment: dict[int, Mask] | None
    odd_cycles: list[Violation]

    @property
    def feasible(self) -> bool:
        return self.assignment is not None


def _other(mask: Mask) -> Mask:
    return Mask.E2 if mask is Mask.E1 else Mask.E1


def _witness_cycle(u: int, v: int, parent: dict, depth: dict) -> list[int]:
    """Nodes of the odd cycle closed by tree paths from u and v to their
    lowest common BFS ancestor plus the conflicting edge (u, v)."""
    nodes = []
    while depth[u] > depth[v]:
        nodes.append(u)
        u = parent[u]
    tail = []
    while depth[v] > depth[u]:
        tail.append(v)
        v = parent[v]
    while u != v:
        nodes.append(u)
        tail.append(v)
        u = parent[u]
        v = parent[v]
    return nodes + [u] + tail[::-1]


def color_decompose(graph: ConflictGraph) -> DecomposeResult:
    """BFS two-coloring in deterministic node order; each component root
    (smallest node id) takes E1. Returns one OddCycle violation per
    non-bipartite component."""
    adj = graph.adjacency()
    color: dict[int, Mask] = {}
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    odd: list[Violation] = []
    for start in sorted(graph.nodes):
        if start in color:
            continue
        color[start] = Mask.E1
        parent[start] = None
        depth[start] = 0
        queue = deque([start])
        component_odd = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in color:
                    color[v] = _other(color[u])
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] is color[u] and not component_odd:
                    component_odd = True
                    cycle = _witness_cycle(u, v, parent, depth)
                    bbox = graph.node_bbox[cycle[0]]
                    sids: list[int] = []
                    for n in cycle:
                        bbox = bbox.union(graph.node_bbox[n])
                        sids.extend(graph.nodes[n])
                    odd.append(Violation(ViolationKind.ODD_CYCLE, graph.layer,
                                         bbox, tuple(sorted(sids))))
    if odd:
        odd.sort(key=Violation.sort_key)
        return DecomposeResult(None, odd)
    assignment = {sid: color[root]
                  for root, sids in graph.nodes.items() for sid in sids}
    return DecomposeResult(assignment, [])


def apply_colors(layout: FlatLayout, assignment: Mapping[int, Mask],
                 layers) -> FlatLayout:
    """Overwrite the masks of every shape on the given layers. The
    assignment must cover them all; other layers are untouched."""
    missing = [s.shape_id for layer in layers for s in layout.shapes_on(layer)
               if s.shape_id not in assignment]
    if missing:
        raise IncompleteAssignmentError(
            f"assignment misses shapes {missing[:8]} on layers {list(layers)}")
    wanted = set()
    for layer in layers:
        wanted.update(s.shape_id for s in layout.shapes_on(layer))
    return layout.with_masks({sid: m for sid, m in assignment.items()
                              if sid in wanted})


def match_hotspots(layout: FlatLayout,
                   patterns) -> list[Violation]:
    """Find every group of track_count parallel shapes whose ordered masks
    equal a pattern's sequence (or its mirror), with every adjacent gap in
    (0, max_gap] and a common parallel run of at least min_run_length.
    Both track directions are searched."""
    out = []
    for pattern in patterns:
        out.extend(_match_one_pattern(layout, pattern))
    out.sort(key=Violation.sort_key)
    return out


def _match_one_pattern(layout: FlatLayout,
                       pattern: HotspotPattern) -> list[Violation]:
    targets = {pattern.masks, tuple(reversed(pattern.masks))}
    prefixes = {t[:k] for t in targets for k in range(1, len(t) + 1)}
    shapes = layout.shapes_on(pattern.layer)
    found = []
    for axis in ("vertical", "horizontal"):
        nxt: dict[int, list[int]] = {}
        for s in shapes:
            succ = []
            for sid in layout.query_window(s.rect.inflated(pattern.max_gap)):
                other = layout.shape(sid)
                if other.layer != pattern.layer or sid == s.shape_id:
                    continue
                hit = run_between(s.rect, other.rect)
                if hit is None or hit[2] != axis:
                    continue
                spacing = hit[0]
                if not 0 < spacing <= pattern.max_gap:
                    continue
                if axis == "vertical" and other.rect.x1 >= s.rect.x2:
                    succ.append(sid)
                elif axis == "horizontal" and other.rect.y1 >= s.rect.y2:
                    succ.append(sid)
            nxt[s.shape_id] = sorted(succ)

        def span(r: Rect) -> tuple[int, int]:
            return (r.y1, r.y2) if axis == "vertical" else (r.x1, r.x2)

        def grow(chain: list[int], masks: tuple[Mask, ...],
                 lo: int, hi: int):
            if hi - lo < pattern.min_run_length:
                return
            if len(chain) == pattern.track_count:
                if masks in targets:
                    rects = [layout.shape(s).rect for s in chain]
                    if axis == "vertical":
                        bbox = Rect(min(r.x1 for r in rects), lo,
                                    max(r.x2 for r in rects), hi)
                    else:
                        bbox = Rect(lo, min(r.y1 for r in rects),
                                    hi, max(r.y2 for r in rects))
                    found.append(Violation(ViolationKind.HOTSPOT,
                                           pattern.layer, bbox, tuple(chain),
                                           pattern.name))
                return
            for sid in nxt[chain[-1]]:
                m = masks + (layout.shape(sid).mask,)
                if m not in prefixes:
                    continue
                slo, shi = span(layout.shape(sid).rect)
                grow(chain + [sid], m, max(lo, slo), min(hi, shi))

        for s in shapes:
            if (s.mask,) not in prefixes:
                continue
            lo, hi = span(s.rect)
            grow([s.shape_id], (s.mask,), lo, hi)
    return found


@dataclass
class VerificationResult:
    """Aggregated outcome of one library under one DPT option."""

    library: CellLibrary
    rules: RuleDeck
    option: DptOption
    cases: list[AbutmentCase]
    floorplan: Floorplan
    violations: tuple[Violation, ...]
    recolor_diff: dict[str, int] = field(default_factory=dict)

    def counts_by_kind(self) -> dict[str, int]:
        counts = {k.value: 0 for k in ViolationKind}
        for v in self.violations:
            counts[v.kind.value] += 1
        return counts

    @property
    def drc_count(self) -> int:
        return sum(1 for v in self.violations
                   if v.kind is not ViolationKind.HOTSPOT)

    @property
    def drcplus_count(self) -> int:
        return sum(1 for v in self.violations
                   if v.kind is ViolationKind.HOTSPOT)


def case_layout(case_index: int, cases, library: CellLibrary,
                floorplan: Floorplan, rules: RuleDeck,
                option: DptOption) -> FlatLayout:
    """Flatten one case at its floorplan position, recolored when running
    Option II. Shape ids are case-local and reproducible."""
    layout, _ = _prepare_case(case_index, cases, library, floorplan, rules,
                              option)
    return layout


def _prepare_case(case_index, cases, library, floorplan, rules, option):
    case = cases[case_index]
    ox, oy = floorplan.origin_of(case_index)
    placements = [
        p._replace(instance_name=f"{case.module_name}/{p.instance_name}",
                   origin=(p.origin[0] + ox, p.origin[1] + oy))
        for p in case.placements
    ]
    cells = {c.name: c for c in library.cells}
    layout = flatten(cells, placements, floorplan.die_area,
                     bin_size=max(rules.interaction_distance, 64))
    odd: list[Violation] = []
    recolor: dict[str, int] = {}
    if option is DptOption.OPTION_II:
        for layer in rules.dpt_layers:
            if not layout.shapes_on(layer):
                continue
            graph = build_conflict_graph(layout, rules, layer)
            result = color_decompose(graph)
            odd.extend(result.odd_cycles)
            if result.assignment is not None:
                before = {s.shape_id: s.mask for s in layout.shapes_on(layer)}
                layout = apply_colors(layout, result.assignment, [layer])
                for s in layout.shapes_on(layer):
                    if s.mask is not before[s.shape_id]:
                        key = s.source_instance
                        recolor[key] = recolor.get(key, 0) + 1
    return layout, (odd, recolor)


def _verify_case(case_index, cases, library, floorplan, rules, option):
    layout, (odd, recolor) = _prepare_case(case_index, cases, library,
                                           floorplan, rules, option)
    violations = list(odd)
    violations.extend(check_width(layout, rules))
    violations.extend(check_spacing(layout, rules, option))
    violations.extend(match_hotspots(layout, rules.hotspot_patterns))
    violations.sort(key=Violation.sort_key)
    return ([replace(v, case_index=case_index) for v in violations], recolor)


def run_all(library: CellLibrary, rules: RuleDeck, option: DptOption,
            max_row_width: int = DEFAULT_MAX_ROW_WIDTH,
            jobs: int = 1) -> VerificationResult:
    """Full pipeline: enumerate cases, pack them, then verify each case in
    isolation (the floorplan gap guarantees cases cannot interact).
    Results are merged in case order, so the output is independent of the
    worker count."""
    if library.row_height != rules.row_height:
        raise ValueError(
            f"library row height {library.row_height} != rule deck row "
            f"height {rules.row_height}")
    if library.site_width != rules.site_width:
        raise ValueError(
            f"library site width {library.site_width} != rule deck site "
            f"width {rules.site_width}")
    cases = enumerate_library(library)
    floorplan = plan_floorplan(cases, rules, max_row_width)

    def one(idx: int):
        return _verify_case(idx, cases, library, floorplan, rules, option)

    if jobs <= 1:
        partials = [one(i) for i in range(len(cases))]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(one, range(len(cases))))

    violations: list[Violation] = []
    recolor: dict[str, int] = {}
    for case_violations, case_recolor in partials:
        violations.extend(case_violations)
        recolor.update(case_recolor)
    return VerificationResult(library, rules, option, cases, floorplan,
                              tuple(violations), recolor)
