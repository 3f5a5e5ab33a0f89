"""Command-line front end: ``check``, ``solve``, ``corpus`` and ``list``.

Exit codes: 0 all checks pass (or a solution exists), 1 a suite failed,
2 schema, IO or usage error, 3 the requested system has no solution.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from .fusion import (
    FusionData,
    PivotalAssignment,
    check_spherical_tensor,
    solve_pivotal,
    validate_fusion,
    verify_pentagon,
    verify_pivotal,
)
from .graded import degree_e_reduction, graded_dual_degree_check, graded_serre_check, validate_grading
from .instances import Instance, SchemaError, bundled_names, bundled_path, load_instance, loads_instance
from .modulecat import (
    ModuleData,
    SerreData,
    check_spherical_module,
    ihom_structure_maps,
    internal_hom_oracle,
    radford_module_components,
    serre_data,
    solve_module_pivotal,
    validate_module,
    verify_module_pivotal,
)
from .morita import (
    MoritaContextData,
    double_dual_suite,
    duality_dim_suite,
    pivotal_morita_suite,
    pivotal_transport,
    radford_pseudo_suite,
    strong_context_suite,
    verify_context_coherence,
)
from .numerics import Tolerance
from .report import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_NO_SOLUTION = 0, 1, 2, 3
REPORT_SCHEMA = "1.0"


@dataclasses.dataclass(frozen=True)
class Options:
    tol: Tolerance
    tier: str = "auto"
    seed: int = 0
    strict: bool = True


# ---------------------------------------------------------------------------
# suites: (kind of block, needs structure data, runner)
# ---------------------------------------------------------------------------


def _structure(opts: Options) -> bool:
    return opts.tier != "dimension"


def _fusion_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return validate_fusion(inst.fusion[name], opts.tol)


def _pentagon_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return verify_pentagon(inst.fusion[name], opts.tol)


def _pivotal_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    F = inst.fusion[name]
    rep = CheckReport("pivotal", tol=opts.tol)
    sols = solve_pivotal(F, opts.tol)
    rep.add_flag("solution_exists", (name,), bool(sols))
    for i, p in enumerate(sols):
        part = verify_pivotal(F, p, opts.tol)
        sph = check_spherical_tensor(F, p, tol=opts.tol)
        for r in part.records:
            rep.records.append(dataclasses.replace(r, index=(str(i),) + r.index))
        rep.add_flag("sphericality_agreement", (str(i),), sph.agree)
    if name in inst.pivotal:
        rep.extend(verify_pivotal(F, inst.pivotal[name], opts.tol))
    rep.meta = {"solutions": len(sols)}
    return rep


def _module_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return validate_module(inst.modules[name], opts.tol)


def _ihom_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    M = inst.modules[name]
    rep = internal_hom_oracle(M)
    if _structure(opts) and M.linked is not None and M.linked.multiplicity_free():
        rep.tier = "structure"
        for m in M.mlabels:
            rep.extend(ihom_structure_maps(M, m, opts.tol).report)
    return rep


def _serre_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    M = inst.modules[name]
    sd = serre_data(M, opts.tol)
    rep = CheckReport("serre", tol=opts.tol)
    rep.extend(sd.report)
    rep.extend(radford_module_components(M, opts.tol).report)
    if name in inst.serre:
        for m, s in sorted(inst.serre[name].items()):
            rep.add_exact("serre_seed", (m,), sd.object_map[m], s)
    return rep


def _module_pivotal_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    M = inst.modules[name]
    rep = CheckReport("module_pivotal", tol=opts.tol)
    bases = [inst.pivotal[M.base.name]] if M.base.name in inst.pivotal else solve_pivotal(M.base, opts.tol)
    total = 0
    for i, p in enumerate(bases):
        for j, pt in enumerate(solve_module_pivotal(M, p, tol=opts.tol)):
            total += 1
            for r in verify_module_pivotal(M, p, pt, opts.tol).records:
                rep.records.append(dataclasses.replace(r, index=(f"{i}.{j}",) + r.index))
    if name in inst.pivotal and M.base.name in inst.pivotal:
        rep.extend(verify_module_pivotal(M, inst.pivotal[M.base.name], inst.pivotal[name], opts.tol))
    rep.add_flag("solution_exists", (name,), total > 0)
    rep.meta = {"solutions": total}
    return rep


def _context(inst: Instance, opts: Options) -> MoritaContextData:
    ctx = inst.context
    assert ctx is not None
    if opts.tier == "dimension" and ctx.tier != "dimension":
        return dataclasses.replace(ctx, tier="dimension")
    return ctx


def _coherence_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return verify_context_coherence(_context(inst, opts), opts.tol)


def _duality_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return duality_dim_suite(_context(inst, opts), opts.tol)


def _double_dual_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return double_dual_suite(_context(inst, opts), opts.tol)


def _radford_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return radford_pseudo_suite(_context(inst, opts), opts.tol)


def _strong_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    return strong_context_suite(_context(inst, opts), opts.tol)


def _context_seeds(inst: Instance, opts: Options) -> list[tuple[PivotalAssignment, ...]]:
    ctx = _context(inst, opts)
    if all(k in inst.pivotal for k in ("A", "M", "B", "N")):
        return [tuple(inst.pivotal[k] for k in ("A", "M", "B", "N"))]
    out = []
    for p in solve_pivotal(ctx.A, opts.tol):
        for pt in solve_module_pivotal(ctx.M, p, tol=opts.tol):
            tr = pivotal_transport(ctx, p, pt, opts.tol)
            out.append((p, pt, tr.q, tr.phat))
    return out


def _pivotal_morita(inst: Instance, name: str, opts: Options) -> CheckReport:
    ctx = _context(inst, opts)
    rep = CheckReport("pivotal_morita", tol=opts.tol)
    seeds = _context_seeds(inst, opts)
    rep.add_flag("joint_pivotal_exists", (), bool(seeds))
    for i, (p, pt, q, ph) in enumerate(seeds):
        tr = pivotal_transport(ctx, p, pt, opts.tol)
        for part in (tr.report, pivotal_morita_suite(ctx, p, pt, q, ph, opts.tol)):
            for r in part.records:
                rep.records.append(dataclasses.replace(r, index=(str(i),) + r.index))
    return rep


def _grading_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    g = inst.grading
    assert g is not None
    X = inst.target(inst.grading_target)
    rep = CheckReport("grading", tol=opts.tol, tier="dimension")
    base = validate_grading(X, g, opts.tol)
    rep.extend(base)
    if not base.verdict:
        return rep
    if isinstance(X, MoritaContextData):
        rep.extend(graded_dual_degree_check(X, g))
        rep.extend(graded_serre_check(X, g))
        if X.structure and _structure(opts):
            for p, pt, q, ph in _context_seeds(inst, opts):
                rep.extend(degree_e_reduction(X, g, p, pt, q, ph, opts.tol))
    elif isinstance(X, ModuleData) and X.linked is not None:
        seed = inst.serre.get(X.name)
        rep.extend(graded_serre_check(X, g, SerreData(seed, {}, CheckReport("seed")) if seed else None))
    return rep


def _relabel_suite(inst: Instance, name: str, opts: Options) -> CheckReport:
    """Verdicts, counts and residuals survive a seeded random renaming and reordering."""
    rng = random.Random(opts.seed)
    rep = CheckReport("relabel", tol=opts.tol)

    def compare(tag: str, a: CheckReport, b: CheckReport) -> None:
        rep.add_flag("verdict", (tag,), a.verdict == b.verdict)
        rep.add_exact("count", (tag,), len(b.records), len(a.records))
        rep.add("max_residual", (tag,), abs(a.max_residual() - b.max_residual()), 1.0)

    if name in inst.fusion:
        F = inst.fusion[name]
        new = [f"r{i}" for i in range(len(F.labels))]
        rng.shuffle(new)
        perm = dict(zip(F.labels, new))
        G = F.relabel(perm)
        order = list(G.labels)
        rng.shuffle(order)
        G = FusionData(tuple(order), G.unit, G.fusion, G.dual, G.fsymbols, G.name)
        compare("pentagon", verify_pentagon(F, opts.tol), verify_pentagon(G, opts.tol))
        rep.add_exact("pivotal_count", (), len(solve_pivotal(G, opts.tol)), len(solve_pivotal(F, opts.tol)))
    else:
        ctx = _context(inst, opts)
        perm = {}
        for c in "AMNB":
            labs = [x for x in ctx.raw.labels if x[0] == c]
            new = [f"{c}:r{i}" for i in range(len(labs))]
            rng.shuffle(new)
            perm.update(zip(labs, new))
        order = [perm[x] for x in ctx.raw.labels]
        rng.shuffle(order)
        moved = ctx.relabel(perm, order)
        compare("coherence", verify_context_coherence(ctx, opts.tol), verify_context_coherence(moved, opts.tol))
        compare("strong", strong_context_suite(ctx, opts.tol), strong_context_suite(moved, opts.tol))
    return rep


SUITES: dict[str, tuple[str, bool, Callable[[Instance, str, Options], CheckReport]]] = {
    "fusion": ("fusion", False, _fusion_suite),
    "pentagon": ("fusion", True, _pentagon_suite),
    "pivotal": ("fusion", True, _pivotal_suite),
    "module": ("module", False, _module_suite),
    "ihom": ("module", False, _ihom_suite),
    "serre": ("module_linked", True, _serre_suite),
    "module-pivotal": ("module_linked", True, _module_pivotal_suite),
    "coherence": ("context", False, _coherence_suite),
    "duality": ("context", False, _duality_suite),
    "double-dual": ("context", False, _double_dual_suite),
    "radford": ("context", True, _radford_suite),
    "strong": ("context", False, _strong_suite),
    "pivotal-morita": ("context", True, _pivotal_morita),
    "grading": ("grading", False, _grading_suite),
    "relabel": ("relabel", False, _relabel_suite),
}


def plan(inst: Instance, suites: Sequence[str] | None, opts: Options) -> list[tuple[str, str]]:
    """(suite, block) tasks in a fixed order; explicitly requested suites must apply somewhere."""
    chosen = list(SUITES) if not suites else list(suites)
    ctx_struct = inst.context is not None and inst.context.structure and _structure(opts)
    tasks: list[tuple[str, str]] = []
    for s in chosen:
        kind, needs_struct, _ = SUITES[s]
        if kind == "fusion":
            blocks = [n for n, F in inst.fusion.items() if not needs_struct or (_structure(opts) and F.multiplicity_free())]
        elif kind == "module":
            blocks = list(inst.modules)
        elif kind == "module_linked":
            blocks = [n for n, M in inst.modules.items()
                      if _structure(opts) and M.linked is not None and M.linked.multiplicity_free()]
        elif kind == "context":
            blocks = ["context"] if inst.context is not None and (not needs_struct or ctx_struct) else []
        elif kind == "grading":
            blocks = ["grading"] if inst.grading is not None else []
        else:
            blocks = ["context"] if inst.context is not None else list(inst.fusion)[:1]
        tasks += [(s, b) for b in blocks]
    return tasks


def run_task(text: str, opts: Options, suite: str, block: str) -> dict[str, Any]:
    inst = loads_instance(text, opts.strict)
    rep = SUITES[suite][2](inst, block, opts)
    d = rep.to_dict(full=False)
    d["suite"] = suite
    d["target"] = block
    return d


def _run_task_args(args: tuple) -> dict[str, Any]:
    return run_task(*args)


def run_checks(text: str, suites: Sequence[str] | None, opts: Options, jobs: int = 1) -> dict[str, Any]:
    inst = loads_instance(text, opts.strict)
    tasks = plan(inst, suites, opts)
    args = [(text, opts, s, b) for s, b in tasks]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task_args, args))
    else:
        results = [run_task(*a) for a in args]
    results.sort(key=lambda d: (d["suite"], d["target"]))
    return {
        "report_schema": REPORT_SCHEMA,
        "instance": inst.name,
        "verdict": "pass" if all(d["verdict"] == "pass" for d in results) else "fail",
        "tolerance": opts.tol.as_dict(),
        "tier": opts.tier,
        "suites": results,
    }


def _fmt_argmax(d: dict[str, Any]) -> str:
    if not d.get("argmax"):
        return ""
    fam, idx, res, _ = d["argmax"]
    return f"  argmax {fam}({idx}) residual={res:.3e}"


def render_text(report: dict[str, Any]) -> str:
    lines = [f"instance {report['instance']}: {report['verdict'].upper()}"]
    for d in report["suites"]:
        tail = _fmt_argmax(d) if d["verdict"] == "fail" else ""
        lines.append(
            f"  [{d['verdict'].upper()}] {d['suite']}({d['target']}) tier={d['tier']} "
            f"instances={d['instances']} max_residual={d['max_residual']:.3e}{tail}"
        )
        for fam in sorted(d["families"]):
            s = d["families"][fam]
            if s["failures"]:
                lines.append(f"      {fam}: {s['failures']}/{s['instances']} failing, max {s['max_residual']:.3e}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def _vals(p: PivotalAssignment) -> dict[str, list[float]]:
    return {k: [round(v.real, 12) + 0.0, round(v.imag, 12) + 0.0] for k, v in sorted(p.values.items())}


def solve(inst: Instance, target: str, opts: Options) -> dict[str, Any]:
    blocks = []
    if target == "pivotal":
        for name, F in inst.fusion.items():
            sols = []
            for p in solve_pivotal(F, opts.tol):
                v = check_spherical_tensor(F, p, tol=opts.tol)
                sols.append({"values": _vals(p), "spherical": v.spherical,
                             "radford_verdict": v.radford_verdict, "trace_verdict": v.trace_verdict})
            blocks.append({"block": name, "solutions": sols})
    else:
        for name, M in inst.modules.items():
            if M.linked is None:
                continue
            bases = [inst.pivotal[M.base.name]] if M.base.name in inst.pivotal else solve_pivotal(M.base, opts.tol)
            sols = []
            for p in bases:
                for pt in solve_module_pivotal(M, p, tol=opts.tol):
                    rep = check_spherical_module(M, p, pt, opts.tol)
                    sols.append({"base": _vals(p), "values": _vals(pt), "spherical": rep.verdict})
            blocks.append({"block": name, "solutions": sols})
    return {"report_schema": REPORT_SCHEMA, "instance": inst.name, "target": target, "blocks": blocks}


def render_solutions(res: dict[str, Any]) -> str:
    lines = [f"instance {res['instance']}: target {res['target']}"]
    if not res["blocks"]:
        lines.append("  no applicable blocks")
    for b in res["blocks"]:
        lines.append(f"  {b['block']}: {len(b['solutions'])} solution(s)")
        for i, s in enumerate(b["solutions"]):
            vals = ", ".join(f"{k}={complex(*v):.6g}" for k, v in s["values"].items())
            lines.append(f"    #{i}: {vals}  spherical={'yes' if s['spherical'] else 'no'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    try:
        return bundled_path(Path(path).stem if "/" not in path else path.removesuffix(".json"))
    except KeyError:
        return p


def _read(path: str, strict: bool) -> tuple[str, Instance]:
    p = _resolve(path)
    inst = load_instance(p, strict)
    return p.read_text(), inst


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _options(ns: argparse.Namespace) -> Options:
    return Options(Tolerance(ns.tol_abs, ns.tol_rel), ns.tier, ns.seed, not ns.lenient)


def _suites(arg: str | None) -> list[str] | None:
    if not arg:
        return None
    out = [s.strip() for s in arg.split(",") if s.strip()]
    bad = [s for s in out if s not in SUITES]
    if bad:
        raise SchemaError(f"unknown suites {bad}; available: {', '.join(SUITES)}")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-abs", type=float, default=1e-9)
    common.add_argument("--tol-rel", type=float, default=1e-9)
    common.add_argument("--tier", choices=("auto", "dimension", "structure"), default="auto")
    common.add_argument("--emit", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed of the relabeling suite")
    common.add_argument("--lenient", action="store_true", help="warn about unknown schema fields")
    parser = argparse.ArgumentParser(prog="moritakit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="run verification suites on an instance file")
    c.add_argument("path")
    c.add_argument("--suites", default=None, help=f"comma-separated subset of: {', '.join(SUITES)}")
    c.add_argument("--jobs", type=int, default=1)
    s = sub.add_parser("solve", parents=[common], help="enumerate pivotal structures")
    s.add_argument("path")
    s.add_argument("--target", choices=("pivotal", "module-pivotal"), default="pivotal")
    k = sub.add_parser("corpus", parents=[common], help="check every bundled instance")
    k.add_argument("--suites", default=None)
    k.add_argument("--jobs", type=int, default=1)
    sub.add_parser("list", help="list bundled instances")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_SCHEMA
    if ns.command == "list":
        print("\n".join(bundled_names() + bundled_names(negative=True)))
        return EXIT_OK
    opts = _options(ns)
    try:
        if ns.command == "check":
            text, inst = _read(ns.path, opts.strict)
            report = run_checks(text, _suites(ns.suites), opts, ns.jobs)
            _emit(json.dumps(report, indent=1, sort_keys=True) if ns.emit == "json" else render_text(report), ns.out)
            return EXIT_OK if report["verdict"] == "pass" else EXIT_FAIL
        if ns.command == "corpus":
            suites = _suites(ns.suites)
            reports = []
            for name in bundled_names():
                path = bundled_path(name)
                reports.append(run_checks(path.read_text(), suites, opts, ns.jobs))
            verdict = all(r["verdict"] == "pass" for r in reports)
            doc = {"report_schema": REPORT_SCHEMA, "verdict": "pass" if verdict else "fail", "instances": reports}
            body = json.dumps(doc, indent=1, sort_keys=True) if ns.emit == "json" else "\n".join(
                render_text(r) for r in reports)
            _emit(body, ns.out)
            return EXIT_OK if verdict else EXIT_FAIL
        text, inst = _read(ns.path, opts.strict)
        res = solve(inst, ns.target, opts)
        _emit(json.dumps(res, indent=1, sort_keys=True) if ns.emit == "json" else render_solutions(res), ns.out)
        ok = bool(res["blocks"]) and all(b["solutions"] for b in res["blocks"])
        return EXIT_OK if ok else EXIT_NO_SOLUTION
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


__all__ = ["main", "run_checks", "solve", "plan", "SUITES", "Options"]
