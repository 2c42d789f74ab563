"""Attribute violations back to abutment seams and render the outputs.

Every violation whose bounding box falls inside a +/-window band around a
seam of its own case is charged to that seam; anything else lands in the
residual bucket (which should stay empty when cells are clean standalone).
Prints the per-library summary table and writes an SVG neighborhood for
the first violation.
"""

import pathlib

from seamcheck import DptOption, attribute_to_seams, case_layout, \
    parse_library, parse_rules, render_svg, run_all, summarize

TESTDATA = pathlib.Path(__file__).resolve().parent.parent / "testdata"
OUT = pathlib.Path(__file__).resolve().parent / "out"

WINDOW = 200


def main() -> None:
    rules = parse_rules((TESTDATA / "rules.yaml").read_text())
    results = []
    for name in ("seamdemo.lef", "clean.lef"):
        library = parse_library((TESTDATA / name).read_text())
        for option in (DptOption.OPTION_I, DptOption.OPTION_II):
            results.append(run_all(library, rules, option))

    seamy = results[0]  # seamdemo under option I
    reports, residual = attribute_to_seams(
        seamy.violations, seamy.cases, seamy.floorplan, WINDOW)
    print(f"{seamy.library.name} option I: "
          f"{len(seamy.violations)} violations, "
          f"{len(residual)} residual (not near any seam)")
    for rep in reports:
        print(f"  {rep.seam.label()}")
        for v in rep.violations:
            print(f"    {v.kind.value} on {v.layer} at {tuple(v.bbox)}")

    print("\nsummary across libraries and options:")
    print(summarize(results).render())

    v = seamy.violations[0]
    layout = case_layout(v.case_index, seamy.cases, seamy.library,
                         seamy.floorplan, rules, seamy.option)
    svg = render_svg(layout, v, margin=WINDOW,
                     seams=[r.seam for r in reports
                            if r.seam.case_index == v.case_index])
    OUT.mkdir(exist_ok=True)
    target = OUT / f"{v.kind.value.lower()}_case{v.case_index}.svg"
    target.write_text(svg)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
