"""Orientation transforms, flattening, and spatial queries.

A placed cell's shapes move into die coordinates through one of four
orientation transforms (R0, R180, MX, MY). The flattened layout indexes
every shape in a uniform grid so window queries and parallel-run scans
stay fast on large dies.
"""

import pathlib
import random

from seamcheck import Orientation, Placement, Rect, flatten, parallel_runs, \
    parse_library, transform_rect

TESTDATA = pathlib.Path(__file__).resolve().parent.parent / "testdata"


def main() -> None:
    rect = Rect(10, 20, 50, 80)
    w, h = 200, 576
    print(f"rect {tuple(rect)} inside a {w} x {h} cell frame:")
    for orient in Orientation:
        moved = transform_rect(rect, w, h, orient)
        print(f"  {orient.value:5s} (DEF {orient.def_code:2s}) "
              f"-> {tuple(moved)}")

    library = parse_library((TESTDATA / "seamdemo.lef").read_text())
    cells = {c.name: c for c in library.cells}
    name = library.cells[0].name
    width = library.cells[0].width

    # Two instances abutted at x=width, right one mirrored so the seam is
    # a shared boundary between reflected copies.
    placements = [
        Placement("U1", name, (0, 0), Orientation.R0),
        Placement("U2", name, (width, 0), Orientation.MY),
    ]
    die = Rect(0, 0, 2 * width, library.row_height)
    layout = flatten(cells, placements, die, library.site_width)

    print(f"\nflattened {name} | {name}(MY): {len(layout.shapes)} shapes "
          f"on layers {layout.layers()}")
    for s in layout.shapes:
        print(f"  #{s.shape_id} {s.layer}.{s.mask.value} {tuple(s.rect)} "
              f"from {s.source_instance}")

    window = Rect(width - 100, 0, width + 100, library.row_height)
    near = sorted(layout.query_window(window))
    print(f"\nshapes within 100 dbu of the seam: {near}")

    runs = parallel_runs(layout, layout.layers()[0], max_spacing=200)
    print("\nparallel runs with spacing <= 200:")
    for run in runs:
        print(f"  #{run.shape_a} vs #{run.shape_b}: spacing "
              f"{run.spacing}, common run {run.run_length} ({run.axis})")

    # The grid index and a linear scan agree on random windows.
    rng = random.Random(7)
    for _ in range(1000):
        x, y = rng.randrange(die.x2), rng.randrange(die.y2)
        win = Rect(x, y, x + rng.randrange(1, 400), y + rng.randrange(1, 400))
        got = layout.query_window(win)
        want = {s.shape_id for s in layout.shapes
                if s.rect.x1 <= win.x2 and win.x1 <= s.rect.x2
                and s.rect.y1 <= win.y2 and win.y1 <= s.rect.y2}
        assert got == want
    print("\n1000 random window queries match a linear scan")


if __name__ == "__main__":
    main()
