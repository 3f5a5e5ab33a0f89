from __future__ import annotations

import cmath
import json
import math
from itertools import product

import pytest

from conftest import CORPUS, z2
from moritakit.cli import Options, run_checks
from moritakit.fusion import dual_label, quantum_dimensions, solve_pivotal, verify_pentagon
from moritakit.instances import (
    SCHEMA_VERSION,
    NotACocycle,
    SchemaError,
    build_corpus,
    bundled_names,
    bundled_path,
    corpus_instances,
    cyclic_cocycle,
    cyclic_group,
    dump_instance,
    instance_from_dict,
    instance_to_dict,
    load_bundled,
    load_instance,
    loads_instance,
    make_fibonacci,
    make_pointed,
    make_pointed_context,
    make_regular_module,
    make_vec_module,
    negative_instances,
    save_instance,
)
from moritakit.modulecat import internal_hom, validate_module
from moritakit.morita import duality_dim_suite, strong_context_suite, verify_context_coherence
from moritakit.numerics import Tolerance
from oracles import group_cocycle_defect

PHI = (1 + math.sqrt(5)) / 2


# constructors ------------------------------------------------------------------


def test_pointed_trivial_z2():
    F = z2(0)
    assert F.labels == ("1", "g") and F.unit == "1"
    assert all(v == 1 for v in F.fsymbols.values())
    assert verify_pentagon(F).verdict


def test_pointed_nontrivial_z2_oracle():
    table, _ = cyclic_group(2)
    w = cyclic_cocycle(2, 1)
    # all 16 instances of the cocycle identity
    assert group_cocycle_defect(2, table, w) < 1e-12
    assert w(1, 1, 1) == pytest.approx(-1)
    assert all(w(*t) == pytest.approx(1) for t in product(range(2), repeat=3) if t != (1, 1, 1))
    F = z2(1)
    assert F.fsymbols[("g", "g", "g", "g", "1", "1")] == pytest.approx(-1)
    assert verify_pentagon(F).verdict


def test_z3_non_cocycle_rejected():
    table, labels = cyclic_group(3)
    with pytest.raises(NotACocycle):
        make_pointed(table, {(1, 1, 1): -1.0}, labels)


def test_unnormalized_cocycle_rejected():
    table, labels = cyclic_group(2)
    with pytest.raises(NotACocycle):
        make_pointed(table, lambda a, b, c: -1.0, labels)


def test_pointed_input_errors():
    with pytest.raises(ValueError):
        make_pointed([[0, 1]], None)
    with pytest.raises(ValueError):
        make_pointed([[0]], None, ["a", "b"])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_cocycles_pass_oracle(n):
    table, _ = cyclic_group(n)
    for k in range(n):
        assert group_cocycle_defect(n, table, cyclic_cocycle(n, k)) < 1e-9


def test_fibonacci():
    F = make_fibonacci()
    assert verify_pentagon(F).max_residual() < 1e-9
    assert dual_label(F, "t") == "t"
    (p,) = solve_pivotal(F)
    dplus, dminus = quantum_dimensions(F, p)["t"]
    assert abs(dplus) == pytest.approx(PHI, abs=1e-6) and abs(dminus) == pytest.approx(PHI, abs=1e-6)
    allowed = [1.0, 1 / PHI, -1 / PHI, PHI ** -0.5, -(PHI ** -0.5)]
    for v in F.fsymbols.values():
        assert min(abs(v - a) for a in allowed) < 1e-12


def test_regular_module_constructors():
    assert validate_module(make_regular_module(z2())).verdict
    assert internal_hom(make_regular_module(make_fibonacci()), "t", "t").as_dict() == {"1": 1, "t": 1}
    V = make_regular_module(make_pointed([[0]], None, ["1"]))
    assert V.mlabels == ("1",)
    assert make_vec_module().mlabels == ("m",)


def test_pointed_context_constructor():
    ctx = make_pointed_context()
    assert ctx.A.labels == ("1", "g") and ctx.M.mlabels == ("m",) and len(ctx.B.labels) == 2
    assert ctx.tier == "structure"
    assert verify_context_coherence(ctx).verdict
    assert strong_context_suite(ctx).verdict
    assert duality_dim_suite(ctx).verdict


# corpus -----------------------------------------------------------------------


def test_corpus_contents():
    assert set(CORPUS) == {
        "vec", "vec_z2_trivial", "vec_z2_nontrivial", "vec_z3", "fib", "vec_over_vec_z2",
        "pointed_context", "pointed_context_nontrivial", "graded_z2_context", "graded_z3_context",
    }
    assert bundled_names(negative=True) == [
        "negative/broken_pentagon", "negative/fib_z2_grading", "negative/inconsistent_pivotal"]


def test_corpus_files_match_constructors():
    built = corpus_instances()
    for name in CORPUS:
        assert load_bundled(name) == built[name]
        assert bundled_path(name).read_text() == dump_instance(built[name])
    for name, inst in negative_instances().items():
        assert load_bundled("negative/" + name) == inst


def test_build_corpus_into_tmp(tmp_path):
    written = build_corpus(tmp_path)
    assert len(written) == len(CORPUS) + 3
    for p in written:
        rel = p.relative_to(tmp_path).with_suffix("").as_posix()
        assert p.read_text() == bundled_path(rel).read_text()


@pytest.mark.parametrize("name", CORPUS + bundled_names(negative=True))
def test_round_trip(name, tmp_path):
    inst = load_bundled(name)
    path = tmp_path / "x.json"
    save_instance(inst, path)
    again = load_instance(path)
    assert again == inst
    assert dump_instance(again) == dump_instance(inst)
    assert instance_from_dict(instance_to_dict(inst)) == inst


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_is_self_certifying(name):
    rep = run_checks(bundled_path(name).read_text(), None, Options(Tolerance()))
    assert rep["verdict"] == "pass", [d["suite"] for d in rep["suites"] if d["verdict"] != "pass"]


@pytest.mark.parametrize("name", bundled_names(negative=True))
def test_negative_examples_fail(name):
    rep = run_checks(bundled_path(name).read_text(), None, Options(Tolerance()))
    assert rep["verdict"] == "fail"


def test_unknown_block_target():
    with pytest.raises(KeyError):
        load_bundled("vec").target("nope")
    assert load_bundled("pointed_context").target("context") is load_bundled("pointed_context").context


def test_missing_bundled_name():
    with pytest.raises(KeyError):
        bundled_path("does_not_exist")


# schema ------------------------------------------------------------------------


def _doc(name="vec_z2_trivial"):
    return json.loads(bundled_path(name).read_text())


def test_schema_version_recorded():
    assert _doc()["schema_version"] == SCHEMA_VERSION
    assert set(_doc()["gauge"]) == {"coev", "ev", "unitors", "radford", "module_pinning"}


def test_unknown_field_strict_and_lenient():
    doc = _doc()
    doc["extra"] = 1
    with pytest.raises(SchemaError):
        instance_from_dict(doc)
    with pytest.warns(UserWarning):
        inst = instance_from_dict(doc, strict=False)
    assert inst == load_bundled("vec_z2_trivial")


def test_unknown_nested_field():
    doc = _doc()
    doc["fusion"][0]["colour"] = "red"
    with pytest.raises(SchemaError):
        instance_from_dict(doc)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("fusion"),
        lambda d: d.update(schema_version="9.0"),
        lambda d: d["fusion"][0]["fusion"].append(["1", "zz", "1"]),
        lambda d: d["fusion"][0]["fsymbols"].append(["1", "1", "1", "1", "1", "1", "x", 0]),
        lambda d: d["modules"][0].update(base="nope"),
        lambda d: d["fusion"][0].update(labels="1g"),
    ],
    ids=["no_fusion", "version", "bad_label", "bad_scalar", "bad_reference", "labels_not_list"],
)
def test_schema_errors(mutate):
    doc = _doc()
    mutate(doc)
    with pytest.raises(SchemaError):
        instance_from_dict(doc)


def test_invalid_json():
    with pytest.raises(SchemaError):
        loads_instance("{not json")


def test_unreadable_file(tmp_path):
    with pytest.raises(SchemaError):
        load_instance(tmp_path / "missing.json")


def test_complex_scalars_survive(tmp_path):
    table, labels = cyclic_group(3)
    F = make_pointed(table, cyclic_cocycle(3, 1), labels)
    assert any(abs(v.imag) > 0.5 for v in F.fsymbols.values())
    inst = corpus_instances()["vec"]
    inst.fusion = {"A": F}
    inst.modules = {}
    again = loads_instance(dump_instance(inst))
    assert again.fusion["A"].fsymbols == F.fsymbols
    assert all(cmath.isfinite(v) for v in again.fusion["A"].fsymbols.values())
