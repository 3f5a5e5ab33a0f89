from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import CORPUS
from moritakit.cli import SUITES, Options, main, plan, run_checks, solve
from moritakit.instances import bundled_path, load_bundled
from moritakit.numerics import Tolerance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert set(out.split()) == set(CORPUS) | {"negative/broken_pentagon", "negative/fib_z2_grading",
                                              "negative/inconsistent_pivotal"}


def test_check_pass_text(capsys):
    code, out, _ = run(capsys, "check", "pointed_context", "--suites", "coherence,duality,radford")
    assert code == 0
    assert out.startswith("instance pointed_context: PASS")
    assert out.count("[PASS]") == 3


def test_check_by_path(capsys):
    code, out, _ = run(capsys, "check", str(bundled_path("fib")))
    assert code == 0 and "[FAIL]" not in out


def test_check_fail_names_argmax(capsys):
    code, out, _ = run(capsys, "check", "negative/broken_pentagon", "--suites", "pentagon")
    assert code == 1
    assert "FAIL" in out and "argmax" in out and "pentagon" in out


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "check", "missing.json")
    assert code == 2 and "error" in err


def test_unknown_suite_exit_2(capsys):
    code, _, err = run(capsys, "check", "vec", "--suites", "bogus")
    assert code == 2 and "bogus" in err


def test_bad_usage_exit_2(capsys):
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_schema_error_and_lenient(tmp_path, capsys):
    doc = json.loads(bundled_path("vec").read_text())
    doc["surplus"] = True
    p = tmp_path / "vec_extra.json"
    p.write_text(json.dumps(doc))
    assert run(capsys, "check", str(p))[0] == 2
    with pytest.warns(UserWarning):
        assert run(capsys, "check", str(p), "--lenient")[0] == 0


def test_json_report_shape(capsys):
    code, out, _ = run(capsys, "check", "vec_z2_nontrivial", "--emit", "json")
    assert code == 0
    rep = json.loads(out)
    assert {"report_schema", "instance", "verdict", "tolerance", "tier", "suites"} <= set(rep)
    assert rep["tolerance"] == {"abs_eps": 1e-9, "rel_eps": 1e-9}
    keys = [(d["suite"], d["target"]) for d in rep["suites"]]
    assert keys == sorted(keys)
    for d in rep["suites"]:
        assert {"suite", "target", "verdict", "max_residual", "families", "tier"} <= set(d)


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "vec", "--emit", "json", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["verdict"] == "pass"


def test_tolerance_flag_changes_verdict(capsys):
    # a 0.1 perturbation passes only under a huge tolerance
    assert run(capsys, "check", "negative/broken_pentagon", "--suites", "pentagon")[0] == 1
    assert run(capsys, "check", "negative/broken_pentagon", "--suites", "pentagon", "--tol-abs", "1",
               "--tol-rel", "1")[0] == 0


def test_dimension_tier_skips_structure_suites():
    inst = load_bundled("pointed_context")
    structure = {s for s, _ in plan(inst, None, Options(Tolerance()))}
    dim = {s for s, _ in plan(inst, None, Options(Tolerance(), tier="dimension"))}
    assert {"radford", "pivotal-morita", "pentagon"} <= structure
    assert not {"radford", "pivotal-morita", "pentagon", "pivotal"} & dim
    assert {"coherence", "duality", "strong"} <= dim


def test_plan_covers_all_suites_somewhere():
    used = set()
    for name in CORPUS:
        used |= {s for s, _ in plan(load_bundled(name), None, Options(Tolerance()))}
    assert used == set(SUITES)


def test_dimension_tier_run_passes(capsys):
    assert run(capsys, "check", "graded_z3_context", "--tier", "dimension")[0] == 0


def test_solve_pivotal(capsys):
    code, out, _ = run(capsys, "solve", "vec_z2_trivial")
    assert code == 0 and "2 solution(s)" in out
    code, out, _ = run(capsys, "solve", "fib", "--emit", "json")
    res = json.loads(out)
    assert code == 0 and len(res["blocks"][0]["solutions"]) == 1
    assert res["blocks"][0]["solutions"][0]["spherical"]


def test_solve_no_solution(capsys):
    assert run(capsys, "solve", "negative/inconsistent_pivotal")[0] == 3


def test_solve_module_pivotal():
    res = solve(load_bundled("vec_over_vec_z2"), "module-pivotal", Options(Tolerance()))
    ((block,),) = [res["blocks"]]
    assert block["block"] == "M" and len(block["solutions"]) == 1
    assert block["solutions"][0]["base"]["g"] == [1.0, 0.0]


def test_solve_module_pivotal_cli(capsys):
    assert run(capsys, "solve", "pointed_context", "--target", "module-pivotal")[0] == 0


def test_relabel_seeds(capsys):
    for seed in range(3):
        assert run(capsys, "check", "pointed_context_nontrivial", "--suites", "relabel", "--seed", str(seed))[0] == 0


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "corpus", "--emit", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "pass" and len(doc["instances"]) == len(CORPUS)


def test_jobs_bit_identical():
    text = bundled_path("pointed_context_nontrivial").read_text()
    one = json.dumps(run_checks(text, None, Options(Tolerance()), jobs=1), sort_keys=True)
    four = json.dumps(run_checks(text, None, Options(Tolerance()), jobs=4), sort_keys=True)
    again = json.dumps(run_checks(text, None, Options(Tolerance()), jobs=1), sort_keys=True)
    assert one == four == again


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "moritakit", "check", "vec", "--suites", "fusion"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0 and "PASS" in out.stdout
