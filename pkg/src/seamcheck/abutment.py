"""Reduced abutment testcase enumeration.

Every side-to-side abutment topology of a cell library is a pair
((cellX, o1), (cellY, o2)) with o1, o2 in {R0, MY}; topologies that are
left-right mirrors of each other print identically and form one class.
The generators below realize every class with far fewer placements than
the exhaustive pairing:

  - type A-A: one row of 4 instances [MY, R0, R0, MY] covers all 3
    same-cell classes;
  - type A-B: one row of 5 instances, cells [B, A, B, A, B] with
    orientations [R0, R0, MY, MY, R0], covers all 4 cross-cell classes;
  - single-multi: the A-B column pattern with each single-height B
    replaced by a stack of k instances (vertically flipped on odd rows),
    3k+2 placements.

Total placements for N single-height cells: 4N + 5*N*(N-1)/2, versus
8N + 8*N*(N-1) for one-pair-per-case enumeration (about 3.2x less).
coverage_check() is the independent proof: it enumerates the full class
universe by brute force and reports anything the cases fail to realize.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import HeightMismatchError
from .geometry import Orientation
from .library import CellLibrary, CellProfile


class Placement(NamedTuple):
    instance_name: str
    cell_ref: str
    origin: tuple[int, int]
    orientation: Orientation


class Seam(NamedTuple):
    """A shared vertical boundary between two abutted instances.

    ``x`` is case-local; ``row_lo``/``row_hi`` are the case-local row
    indices the boundary spans (inclusive). ``left``/``right`` give the
    (cell, orientation) topology at the base row.
    """

    x: int
    row_lo: int
    row_hi: int
    left: tuple[str, Orientation]
    right: tuple[str, Orientation]


class CaseKind(enum.Enum):
    AA_SINGLE = "AA_single"
    AA_MULTI = "AA_multi"
    AB_SINGLE = "AB_single"
    AB_SINGLE_MULTI = "AB_single_multi"


@dataclass(frozen=True)
class AbutmentCase:
    kind: CaseKind
    cell_a: str
    cell_b: str | None
    placements: tuple[Placement, ...]
    seams: tuple[Seam, ...]
    width: int
    height_rows: int

    @property
    def module_name(self) -> str:
        if self.cell_b is None:
            return f"scell_{_sanitize(self.cell_a)}"
        prefix = "mcell" if self.kind is CaseKind.AB_SINGLE_MULTI else "scell"
        return f"{prefix}_{_sanitize(self.cell_a)}_{_sanitize(self.cell_b)}"


def _sanitize(name: str) -> str:
    out = "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in name)
    if not out or out[0].isdigit():
        out = "c" + out
    return out


def legal_orientations(row: int) -> frozenset[Orientation]:
    """Orientations placeable on a row: even rows {R0, MY}, odd rows (rails
    swapped) {MX, R180}."""
    if row % 2 == 0:
        return frozenset((Orientation.R0, Orientation.MY))
    return frozenset((Orientation.MX, Orientation.R180))


def base_row_orientation(o: Orientation) -> Orientation:
    """Collapse an odd-row orientation onto its even-row equivalent."""
    if o in (Orientation.R0, Orientation.MY):
        return o
    return o.flipped_ud


_AA_ORIENTS = (Orientation.MY, Orientation.R0, Orientation.R0, Orientation.MY)
_AB_ORIENTS = (Orientation.R0, Orientation.R0, Orientation.MY,
               Orientation.MY, Orientation.R0)


def gen_type_aa(cell: CellProfile) -> AbutmentCase:
    """Four abutted instances of one cell, [MY, R0, R0, MY]. The three
    seams realize all three same-cell mirror classes. Multi-height cells
    use the same single-row pattern."""
    w = cell.width
    placements = tuple(
        Placement(f"U{i + 1}", cell.name, (i * w, 0), o)
        for i, o in enumerate(_AA_ORIENTS))
    top = cell.height_rows - 1
    seams = tuple(
        Seam((i + 1) * w, 0, top,
             (cell.name, _AA_ORIENTS[i]), (cell.name, _AA_ORIENTS[i + 1]))
        for i in range(3))
    kind = CaseKind.AA_MULTI if cell.is_multi else CaseKind.AA_SINGLE
    return AbutmentCase(kind, cell.name, None, placements, seams,
                        4 * w, cell.height_rows)


def gen_type_ab(cell_a: CellProfile, cell_b: CellProfile) -> AbutmentCase:
    """Five abutted instances, cells [B, A, B, A, B] with orientations
    [R0, R0, MY, MY, R0]. The four seams realize all four cross-cell
    mirror classes (covering B-A topologies as mirrors of A-B ones)."""
    if cell_a.name == cell_b.name:
        raise ValueError("type A-B needs two distinct cells")
    if cell_a.height_rows != 1 or cell_b.height_rows != 1:
        raise HeightMismatchError("type A-B cells must be single-height")
    cells = (cell_b, cell_a, cell_b, cell_a, cell_b)
    placements = []
    seams = []
    x = 0
    for i, (c, o) in enumerate(zip(cells, _AB_ORIENTS)):
        placements.append(Placement(f"U{i + 1}", c.name, (x, 0), o))
        x += c.width
        if i < 4:
            seams.append(Seam(x, 0, 0, (c.name, o),
                              (cells[i + 1].name, _AB_ORIENTS[i + 1])))
    return AbutmentCase(CaseKind.AB_SINGLE, cell_a.name, cell_b.name,
                        tuple(placements), tuple(seams), x, 1)


def gen_single_multi(cell_a: CellProfile, cell_b: CellProfile) -> AbutmentCase:
    """The A-B pattern with a k-row multi-height A: columns
    [B-stack, A, B-stack, A, B-stack], each B-stack holding k stacked
    instances that flip vertically on odd rows. 3k+2 placements."""
    if cell_a.height_rows < 2:
        raise HeightMismatchError(
            f"cell {cell_a.name} is single-height; single-multi cases need "
            f"a multi-height A")
    if cell_b.height_rows != 1:
        raise HeightMismatchError(
            f"filler cell {cell_b.name} must be single-height")
    k = cell_a.height_rows
    row_h = cell_a.height // k
    cells = (cell_b, cell_a, cell_b, cell_a, cell_b)
    placements = []
    seams = []
    x = 0
    n = 0
    for i, (c, o) in enumerate(zip(cells, _AB_ORIENTS)):
        if c is cell_a:
            n += 1
            placements.append(Placement(f"U{n}", c.name, (x, 0), o))
        else:
            for row in range(k):
                n += 1
                placements.append(Placement(
                    f"U{n}", c.name, (x, row * row_h),
                    o if row % 2 == 0 else o.flipped_ud))
        x += c.width
        if i < 4:
            seams.append(Seam(x, 0, k - 1, (c.name, o),
                              (cells[i + 1].name, _AB_ORIENTS[i + 1])))
    return AbutmentCase(CaseKind.AB_SINGLE_MULTI, cell_a.name, cell_b.name,
                        tuple(placements), tuple(seams), x, k)


def enumerate_library(library: CellLibrary) -> list[AbutmentCase]:
    """All testcases for a library in canonical order: one A-A case per
    cell in library order, then one case per unordered cell pair (i < j)
    in index order. Pairs of two multi-height cells are out of scope and
    skipped."""
    cases = [gen_type_aa(c) for c in library.cells]
    cells = library.cells
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            a, b = cells[i], cells[j]
            if not a.is_multi and not b.is_multi:
                cases.append(gen_type_ab(a, b))
            elif a.is_multi and b.is_multi:
                continue
            elif a.is_multi:
                cases.append(gen_single_multi(a, b))
            else:
                cases.append(gen_single_multi(b, a))
    return cases


def expected_count(n: int, mode: str = "proposed") -> int:
    """Placement totals for an N-cell single-height library.

    proposed: 4N + 5*N*(N-1)/2 (always integral; N*(N-1) is even).
    conventional: 8N + 8*N*(N-1), one case per ordered orientation pair.
    """
    if n < 0:
        raise ValueError("cell count must be non-negative")
    if mode == "proposed":
        return 4 * n + 5 * n * (n - 1) // 2
    if mode == "conventional":
        return 8 * n + 8 * n * (n - 1)
    raise ValueError(f"unknown mode {mode!r}")


Topology = tuple[tuple[str, Orientation], tuple[str, Orientation]]

_MIRROR = {Orientation.R0: Orientation.MY, Orientation.MY: Orientation.R0}


def mirror_topology(t: Topology) -> Topology:
    """Left-right mirror: order reverses and R0 <-> MY on both sides."""
    (xc, xo), (yc, yo) = t
    return ((yc, _MIRROR[yo]), (xc, _MIRROR[xo]))


def canonical_class(t: Topology, order: dict[str, int]) -> Topology:
    """Representative of t's mirror class: the lexicographically smaller
    of t and mirror(t) under library index order."""
    def key(tt: Topology):
        (xc, xo), (yc, yo) = tt
        return (order[xc], xo.value, order[yc], yo.value)

    m = mirror_topology(t)
    return t if key(t) <= key(m) else m


@dataclass(frozen=True)
class CoverageReport:
    universe: int
    covered: int
    missing: tuple[Topology, ...]

    @property
    def complete(self) -> bool:
        return not self.missing


def class_universe(library: CellLibrary) -> set[Topology]:
    """Brute-force enumeration of every in-scope abutment class: all
    ordered (cell, orient) pairs over {R0, MY}, mirror-reduced. Pairs of
    two distinct multi-height cells are out of scope."""
    order = {c.name: i for i, c in enumerate(library.cells)}
    classes: set[Topology] = set()
    orients = (Orientation.R0, Orientation.MY)
    for a in library.cells:
        for b in library.cells:
            if a.name != b.name and a.is_multi and b.is_multi:
                continue
            for o1 in orients:
                for o2 in orients:
                    classes.add(canonical_class(
                        ((a.name, o1), (b.name, o2)), order))
    return classes


def covered_classes(cases: Iterable[AbutmentCase],
                    library: CellLibrary) -> set[Topology]:
    order = {c.name: i for i, c in enumerate(library.cells)}
    out: set[Topology] = set()
    for case in cases:
        for seam in case.seams:
            t = ((seam.left[0], base_row_orientation(seam.left[1])),
                 (seam.right[0], base_row_orientation(seam.right[1])))
            out.add(canonical_class(t, order))
    return out


def coverage_check(cases: Iterable[AbutmentCase],
                   library: CellLibrary) -> CoverageReport:
    """Compare realized seam topologies against the brute-force class
    universe. Complete iff nothing is missing."""
    universe = class_universe(library)
    covered = covered_classes(cases, library)
    order = {c.name: i for i, c in enumerate(library.cells)}

    def key(t: Topology):
        (xc, xo), (yc, yo) = t
        return (order[xc], order[yc], xo.value, yo.value)

    missing = tuple(sorted(universe - covered, key=key))
    return CoverageReport(len(universe), len(universe - set(missing)),
                          missing)
