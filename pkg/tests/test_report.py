from __future__ import annotations

import json

from moritakit.numerics import Tolerance
from moritakit.report import GAUGE, CheckReport, Record, merge_reports


def test_record_pass_and_nan():
    assert Record("f", (), 0.0, 0.0).passed
    assert not Record("f", (), float("nan"), 1.0).passed


def test_add_uses_tolerance_band():
    rep = CheckReport("s", tol=Tolerance(1e-3, 0.0))
    rep.add("f", ("a",), 5e-4)
    rep.add("f", ("b",), 5e-3)
    assert [r.passed for r in rep.records] == [True, False]
    assert rep.failing_families() == ["f"]


def test_exact_and_flag():
    rep = CheckReport("s")
    rep.add_exact("n", (1,), 2, 2)
    rep.add_exact("lab", (1,), "x", "y")
    rep.add_flag("ok", (), True)
    assert [r.passed for r in rep.records] == [True, False, True]
    assert rep.records[0].index == ("1",)


def test_argmax_ties_are_deterministic():
    rep = CheckReport("s")
    rep.add("b", ("2",), 1.0)
    rep.add("a", ("9",), 1.0)
    rep.add("a", ("1",), 1.0)
    assert rep.argmax() == Record("a", ("1",), 1.0, rep.records[2].bound)


def test_family_summary_and_dict_round_trip():
    rep = CheckReport("s")
    rep.add("x", ("1",), 0.0)
    rep.add("x", ("2",), 1.0)
    d = rep.to_dict()
    assert d["verdict"] == "fail"
    assert d["families"]["x"] == {"instances": 2, "failures": 1, "max_residual": 1.0}
    assert json.loads(json.dumps(d)) == d
    assert d["gauge"] == dict(sorted(GAUGE.items()))
    short = rep.to_dict(full=False)
    assert "records" not in short and len(short["failures"]) == 1


def test_summary_line_mentions_argmax_on_failure():
    rep = CheckReport("s")
    rep.add("x", ("q",), 2.0)
    assert "argmax x[q]" in rep.summary_line()
    ok = CheckReport("t")
    assert ok.summary_line().startswith("t: PASS")


def test_merge_is_order_independent():
    a, b = CheckReport("a"), CheckReport("b")
    a.add("f", ("2",), 0.0)
    b.add("f", ("1",), 0.0)
    b.add("e", ("9",), 0.0)
    m1 = merge_reports("m", [a, b])
    m2 = merge_reports("m", [b, a])
    assert m1.records == m2.records
    assert [r.index for r in m1.records] == [("9",), ("1",), ("2",)]
