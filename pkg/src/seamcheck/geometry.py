"""Integer rectangle geometry: orientation transforms, flattened layouts,
window queries and parallel-run extraction.

All coordinates are integer database units (DBU, 1000 per micron).
Rectangles are axis-parallel with x1 < x2 and y1 < y2.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from typing import Iterable, Mapping, NamedTuple


class Rect(NamedTuple):
    x1: int
    y1: int
    x2: int
    y2: int

    @property
    def width(self) -> int:
        return self.x2 - self.x1

    @property
    def height(self) -> int:
        return self.y2 - self.y1

    @property
    def area(self) -> int:
        return self.width * self.height

    def translated(self, dx: int, dy: int) -> "Rect":
        return Rect(self.x1 + dx, self.y1 + dy, self.x2 + dx, self.y2 + dy)

    def intersects(self, other: "Rect") -> bool:
        """Closed-rectangle intersection: shared edges/corners count."""
        return (self.x1 <= other.x2 and other.x1 <= self.x2
                and self.y1 <= other.y2 and other.y1 <= self.y2)

    def contains(self, other: "Rect") -> bool:
        return (self.x1 <= other.x1 and self.y1 <= other.y1
                and self.x2 >= other.x2 and self.y2 >= other.y2)

    def union(self, other: "Rect") -> "Rect":
        return Rect(min(self.x1, other.x1), min(self.y1, other.y1),
                    max(self.x2, other.x2), max(self.y2, other.y2))

    def inflated(self, margin: int) -> "Rect":
        return Rect(self.x1 - margin, self.y1 - margin,
                    self.x2 + margin, self.y2 + margin)


def union_all(rects: Iterable[Rect]) -> Rect:
    it = iter(rects)
    acc = next(it)
    for r in it:
        acc = acc.union(r)
    return acc


class Mask(enum.Enum):
    """Mask assignment of a shape on a double-patterned layer.

    E1/E2 follow the layer-name suffix convention (M1_E1, M1_E2);
    NONE means the shape is uncolored.
    """

    NONE = ""
    E1 = "E1"
    E2 = "E2"

    def __repr__(self):  # noqa: D105 - terse enum repr reads better in diffs
        return f"Mask.{self.name}"


class Orientation(enum.Enum):
    """The four legal placement orientations of a cell.

    R0 is the drawn orientation, R180 a 180-degree rotation, MX a mirror
    about the horizontal axis, MY a mirror about the vertical axis.
    """

    R0 = "R0"
    R180 = "R180"
    MX = "MX"
    MY = "MY"

    @property
    def def_code(self) -> str:
        return _DEF_CODE[self]

    @classmethod
    def from_def_code(cls, code: str) -> "Orientation":
        try:
            return _FROM_DEF_CODE[code]
        except KeyError:
            raise UnknownOrientationCodeError(
                f"unsupported DEF orientation code {code!r}") from None

    @property
    def mirrored_lr(self) -> "Orientation":
        """Orientation this cell shows after mirroring the whole layout
        about a vertical axis (R0 <-> MY, R180 <-> MX)."""
        return _MIRROR_LR[self]

    @property
    def flipped_ud(self) -> "Orientation":
        """Orientation of the same cell placed on the alternate row
        (rails swapped): R0 <-> MX, MY <-> R180."""
        return _FLIP_UD[self]

    def __repr__(self):
        return f"Orientation.{self.name}"


_DEF_CODE = {
    Orientation.R0: "N",
    Orientation.R180: "S",
    Orientation.MX: "FS",
    Orientation.MY: "FN",
}
_FROM_DEF_CODE = {code: o for o, code in _DEF_CODE.items()}
_MIRROR_LR = {
    Orientation.R0: Orientation.MY,
    Orientation.MY: Orientation.R0,
    Orientation.R180: Orientation.MX,
    Orientation.MX: Orientation.R180,
}
_FLIP_UD = {
    Orientation.R0: Orientation.MX,
    Orientation.MX: Orientation.R0,
    Orientation.MY: Orientation.R180,
    Orientation.R180: Orientation.MY,
}


class UnknownOrientationCodeError(ValueError):
    """DEF orientation code outside the supported N/S/FN/FS set."""


class UnknownCellRefError(KeyError):
    """A placement references a cell that is not in the library."""


def transform_rect(rect: Rect, cell_w: int, cell_h: int,
                   orientation: Orientation,
                   origin: tuple[int, int] = (0, 0)) -> Rect:
    """Map a cell-local rectangle into die coordinates.

    The rectangle is first reflected inside the cell frame [0,w]x[0,h]
    according to the orientation, then translated to the origin. Corners
    of the result are normalized (x1 < x2, y1 < y2).
    """
    x1, y1, x2, y2 = rect
    if orientation in (Orientation.MY, Orientation.R180):
        x1, x2 = cell_w - x2, cell_w - x1
    if orientation in (Orientation.MX, Orientation.R180):
        y1, y2 = cell_h - y2, cell_h - y1
    ox, oy = origin
    return Rect(x1 + ox, y1 + oy, x2 + ox, y2 + oy)


class FlatShape(NamedTuple):
    shape_id: int
    layer: str
    mask: Mask
    rect: Rect
    source_instance: str


class ParallelRun(NamedTuple):
    """Two same-layer shapes with facing parallel edges.

    ``spacing`` is the gap between the facing edges (0 when touching) and
    ``run_length`` the projected overlap along them. ``axis`` is the
    direction the run extends in: two side-by-side bars produce a
    "vertical" run (overlap measured in y), two stacked bars a
    "horizontal" one.
    """

    shape_a: int
    shape_b: int
    spacing: int
    run_length: int
    axis: str  # "vertical" | "horizontal"


def run_between(a: Rect, b: Rect) -> tuple[int, int, str] | None:
    """(spacing, run_length, axis) for two rects, or None if they do not
    face each other with positive projected overlap."""
    x_overlap = min(a.x2, b.x2) - max(a.x1, b.x1)
    y_overlap = min(a.y2, b.y2) - max(a.y1, b.y1)
    if x_overlap <= 0 and y_overlap > 0:
        return -x_overlap, y_overlap, "vertical"
    if y_overlap <= 0 and x_overlap > 0:
        return -y_overlap, x_overlap, "horizontal"
    return None


def rects_touch(a: Rect, b: Rect) -> bool:
    """True when two rects share area or a boundary segment of positive
    length. A bare corner-point contact does not connect shapes."""
    x_overlap = min(a.x2, b.x2) - max(a.x1, b.x1)
    y_overlap = min(a.y2, b.y2) - max(a.y1, b.y1)
    if x_overlap < 0 or y_overlap < 0:
        return False
    return x_overlap > 0 or y_overlap > 0


class FlatLayout:
    """Immutable flattened view of placed cell geometry with a uniform-grid
    spatial index. Queries are read-only and safe to share."""

    def __init__(self, die_area: Rect, shapes: list[FlatShape],
                 bin_size: int = 1024):
        if bin_size <= 0:
            raise ValueError("bin_size must be positive")
        self.die_area = die_area
        self.shapes = shapes
        self.bin_size = bin_size
        self._bins: dict[tuple[int, int], list[int]] = defaultdict(list)
        self._by_layer: dict[str, list[FlatShape]] = defaultdict(list)
        for s in shapes:
            for key in self._bin_range(s.rect):
                self._bins[key].append(s.shape_id)
            self._by_layer[s.layer].append(s)

    def _bin_range(self, rect: Rect):
        b = self.bin_size
        for bx in range(rect.x1 // b, rect.x2 // b + 1):
            for by in range(rect.y1 // b, rect.y2 // b + 1):
                yield bx, by

    def shape(self, shape_id: int) -> FlatShape:
        return self.shapes[shape_id]

    def layers(self) -> list[str]:
        return sorted(self._by_layer)

    def shapes_on(self, layer: str) -> list[FlatShape]:
        return self._by_layer.get(layer, [])

    def query_window(self, window: Rect) -> set[int]:
        """Ids of all shapes whose rect intersects the window (closed)."""
        found: set[int] = set()
        for key in self._bin_range(window):
            for sid in self._bins.get(key, ()):
                if sid not in found and self.shapes[sid].rect.intersects(window):
                    found.add(sid)
        return found

    def with_masks(self, new_masks: Mapping[int, Mask]) -> "FlatLayout":
        """Copy of this layout with the given shape masks replaced."""
        shapes = [
            s._replace(mask=new_masks[s.shape_id]) if s.shape_id in new_masks else s
            for s in self.shapes
        ]
        return FlatLayout(self.die_area, shapes, self.bin_size)


def flatten(cells: Mapping[str, "CellProfile"], placements, die_area: Rect,
            bin_size: int = 1024) -> FlatLayout:
    """Instantiate the colored shapes of every placement into die
    coordinates. Shape ids run in placement order, then cell shape order,
    so flattening is deterministic regardless of execution strategy."""
    flat: list[FlatShape] = []
    for p in placements:
        try:
            cell = cells[p.cell_ref]
        except KeyError:
            raise UnknownCellRefError(p.cell_ref) from None
        for shape in cell.shapes:
            rect = transform_rect(shape.rect, cell.width, cell.height,
                                  p.orientation, p.origin)
            if not die_area.contains(rect):
                raise ValueError(
                    f"shape of {p.instance_name} at {rect} leaves die {die_area}")
            flat.append(FlatShape(len(flat), shape.layer, shape.mask, rect,
                                  p.instance_name))
    return FlatLayout(die_area, flat, bin_size)


def parallel_runs(layout: FlatLayout, layer: str,
                  max_spacing: int) -> list[ParallelRun]:
    """All same-layer shape pairs with facing parallel edges, gap at most
    ``max_spacing`` and positive projected overlap. Each unordered pair is
    reported once, with shape_a < shape_b; output is sorted."""
    runs: list[ParallelRun] = []
    for s in layout.shapes_on(layer):
        window = s.rect.inflated(max_spacing)
        for sid in layout.query_window(window):
            if sid <= s.shape_id:
                continue
            other = layout.shape(sid)
            if other.layer != layer:
                continue
            hit = run_between(s.rect, other.rect)
            if hit is None:
                continue
            spacing, run_length, axis = hit
            if spacing <= max_spacing:
                runs.append(ParallelRun(s.shape_id, sid, spacing, run_length, axis))
    runs.sort()
    return runs


def connected_components(layout: FlatLayout, layer: str) -> dict[int, int]:
    """Union shapes that touch (share area or an edge segment) into
    components. Returns shape_id -> component root (smallest member id)."""
    parent: dict[int, int] = {s.shape_id: s.shape_id for s in layout.shapes_on(layer)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in layout.shapes_on(layer):
        for sid in layout.query_window(s.rect):
            if sid <= s.shape_id:
                continue
            other = layout.shape(sid)
            if other.layer != layer or not rects_touch(s.rect, other.rect):
                continue
            ra, rb = find(s.shape_id), find(sid)
            if ra != rb:
                if ra > rb:
                    ra, rb = rb, ra
                parent[rb] = ra

    # Path-compress to the canonical (minimum-id) root.
    roots: dict[int, int] = {}
    for sid in parent:
        roots[sid] = find(sid)
    return roots
