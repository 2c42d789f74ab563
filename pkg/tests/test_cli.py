"""Command-line interface tests, run in-process through main()."""

import json

from seamcheck.cli import main

from conftest import TESTDATA, synth_lef

RULES = str(TESTDATA / "rules.yaml")
SEAM = str(TESTDATA / "seamdemo.lef")
CLEAN = str(TESTDATA / "clean.lef")


def run(args):
    return main(args)


class TestProfile:
    def test_writes_text_and_json(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert run(["profile", "--libs", SEAM, "--out", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "seamdemo" in stdout
        text = (out / "profile_seamdemo.txt").read_text()
        assert "cells" in text
        data = json.loads((out / "profile_seamdemo.json").read_text())
        assert data["cells"] == 2
        assert data["n_single"] == 2 and data["n_multi"] == 0
        assert data["width_hist"] == {"200": 1, "208": 1}

    def test_empty_library(self, tmp_path):
        lef = tmp_path / "empty.lef"
        lef.write_text(synth_lef(0, name="void"))
        out = tmp_path / "out"
        assert run(["profile", "--libs", str(lef), "--out", str(out)]) == 0
        data = json.loads((out / "profile_void.json").read_text())
        assert data["cells"] == 0
        assert data["width_hist"] == {}


class TestGenerate:
    def test_artifacts_and_manifest(self, tmp_path):
        out = tmp_path / "out"
        assert run(["generate", "--libs", SEAM, "--rules", RULES,
                    "--out", str(out)]) == 0
        v = (out / "testcases_seamdemo.v").read_text()
        d = (out / "testcases_seamdemo.def").read_text()
        m = json.loads((out / "manifest_seamdemo.json").read_text())
        assert "module scell_SEAMA ();" in v
        assert d.startswith("VERSION 5.6 ;\n")
        assert m["cases"] == 3
        assert m["placements"] == 13
        assert m["expected_placements"] == 13
        assert m["matches_expected"] is True
        assert m["coverage_complete"] is True
        assert m["cells"] == 2

    def test_synthetic_41_cell_count(self, tmp_path):
        lef = tmp_path / "lib41.lef"
        lef.write_text(synth_lef(41, name="lib41"))
        out = tmp_path / "out"
        assert run(["generate", "--libs", str(lef), "--rules", RULES,
                    "--out", str(out)]) == 0
        m = json.loads((out / "manifest_lib41.json").read_text())
        assert m["placements"] == 4264
        assert m["matches_expected"] is True

    def test_self_check_failure_exits_nonzero(self, tmp_path, monkeypatch,
                                              capsys):
        import seamcheck.cli as climod
        monkeypatch.setattr(climod, "expected_count",
                            lambda n, mode="proposed": -1)
        out = tmp_path / "out"
        assert run(["generate", "--libs", SEAM, "--rules", RULES,
                    "--out", str(out)]) == 1
        assert "self-check" in capsys.readouterr().err

    def test_multi_height_library_skips_formula(self, tmp_path):
        lef = tmp_path / "mix.lef"
        lef.write_text(synth_lef(4, name="mix", multi_every=2))
        out = tmp_path / "out"
        assert run(["generate", "--libs", str(lef), "--rules", RULES,
                    "--out", str(out)]) == 0
        m = json.loads((out / "manifest_mix.json").read_text())
        assert m["expected_placements"] is None
        assert m["coverage_complete"] is True


class TestVerify:
    def test_clean_library_exits_zero(self, tmp_path):
        out = tmp_path / "out"
        assert run(["verify", "--libs", CLEAN, "--rules", RULES,
                    "--out", str(out)]) == 0
        summary = (out / "summary.txt").read_text()
        assert "cleandemo" in summary
        assert "Clean" in summary

    def test_violating_library_exits_one(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert run(["verify", "--libs", SEAM, "--rules", RULES,
                    "--out", str(out)]) == 1
        stdout = capsys.readouterr().out
        assert "seamdemo" in stdout
        jl = (out / "violations_seamdemo_optI.jsonl").read_text()
        recs = [json.loads(l) for l in jl.strip().split("\n")]
        assert len(recs) == 4
        assert all(rec["seams"] for rec in recs)
        jl2 = (out / "violations_seamdemo_optII.jsonl").read_text()
        assert jl2 == ""
        results = json.loads((out / "results.json").read_text())
        lib = results["libraries"][0]
        runs = {r["option"]: r for r in lib["runs"]}
        assert runs["I"]["drc"] == 3 and runs["I"]["drcplus"] == 1
        assert runs["II"]["drc"] == 0 and runs["II"]["drcplus"] == 0
        assert runs["I"]["residual"] == 0

    def test_single_option_run(self, tmp_path):
        out = tmp_path / "out"
        assert run(["verify", "--libs", SEAM, "--rules", RULES,
                    "--dpt-option", "II", "--out", str(out)]) == 0
        summary = (out / "summary.txt").read_text()
        assert "-" in summary
        assert not (out / "violations_seamdemo_optI.jsonl").exists()

    def test_missing_rules_exits_two(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = run(["verify", "--libs", SEAM, "--rules",
                    str(tmp_path / "nope.yaml"), "--out", str(out)])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_required_option_exits_two(self, tmp_path, capsys):
        assert run(["verify", "--libs", SEAM,
                    "--out", str(tmp_path / "o")]) == 2
        assert "--rules" in capsys.readouterr().err

    def test_jobs_do_not_change_outputs(self, tmp_path):
        outs = []
        for jobs, sub in (("1", "a"), ("8", "b")):
            out = tmp_path / sub
            run(["verify", "--libs", SEAM, "--rules", RULES,
                 "--jobs", jobs, "--out", str(out)])
            outs.append({p.name: p.read_bytes()
                         for p in sorted(out.iterdir()) if p.is_file()})
        assert outs[0] == outs[1]

    def test_config_file_supplies_options(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text(f"libs: ['{SEAM}']\nrules: '{RULES}'\n"
                       f"out: '{tmp_path / 'from_cfg'}'\n")
        assert run(["verify", "--config", str(cfg)]) == 1
        assert (tmp_path / "from_cfg" / "summary.txt").exists()

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text(f"libs: ['{SEAM}']\nrules: '{RULES}'\n"
                       f"out: '{tmp_path / 'cfg_out'}'\n")
        flag_out = tmp_path / "flag_out"
        assert run(["verify", "--config", str(cfg),
                    "--out", str(flag_out)]) == 1
        assert flag_out.exists()
        assert not (tmp_path / "cfg_out").exists()


class TestReport:
    def prepared(self, tmp_path):
        out = tmp_path / "out"
        run(["verify", "--libs", SEAM, "--rules", RULES, "--out", str(out)])
        return out

    def test_svgs_rendered_for_violations(self, tmp_path, capsys):
        out = self.prepared(tmp_path)
        assert run(["report", "--out", str(out)]) == 0
        svgs = sorted((out / "svg").glob("*.svg"))
        assert len(svgs) == 4
        names = [p.name for p in svgs]
        assert any("Hotspot" in n for n in names)
        assert any("SpacingSameMask" in n for n in names)
        stdout = capsys.readouterr().out
        assert "4 svg" in stdout

    def test_svg_cap_limits_output(self, tmp_path):
        out = self.prepared(tmp_path)
        assert run(["report", "--out", str(out), "--svg-cap", "2"]) == 0
        assert len(list((out / "svg").glob("*.svg"))) == 2

    def test_report_without_results_exits_two(self, tmp_path, capsys):
        code = run(["report", "--out", str(tmp_path / "empty")])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_clean_run_renders_no_svgs(self, tmp_path):
        out = tmp_path / "out"
        run(["verify", "--libs", CLEAN, "--rules", RULES, "--out", str(out)])
        assert run(["report", "--out", str(out)]) == 0
        assert list((out / "svg").glob("*.svg")) == [] \
            if (out / "svg").exists() else True
