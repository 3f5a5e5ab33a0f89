"""Closed-form constructors, the bundled corpus and the instance JSON schema."""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .fusion import FusionData, PivotalAssignment, golden_ratio
from .graded import GradingData
from .modulecat import CELL_ENDS, ModuleData, qualify
from .morita import MoritaContextData, context_from_linking, split_linking
from .numerics import DEFAULT_TOL, Tolerance, approx_eq
from .report import GAUGE
from .skeleton import Skeleton

__all__ = [
    "NotACocycle",
    "SchemaError",
    "SCHEMA_VERSION",
    "cyclic_group",
    "cyclic_cocycle",
    "make_pointed",
    "make_fibonacci",
    "make_regular_module",
    "make_vec_module",
    "make_regular_context",
    "make_pointed_context",
    "cyclic_grading",
    "regular_linking",
    "pointed_linking",
    "Instance",
    "load_instance",
    "loads_instance",
    "dump_instance",
    "instance_from_dict",
    "instance_to_dict",
    "save_instance",
    "bundled_names",
    "load_bundled",
    "bundled_path",
    "build_corpus",
    "corpus_instances",
    "negative_instances",
]

SCHEMA_VERSION = "1.0"


class NotACocycle(ValueError):
    """The supplied map G^3 -> scalars violates the 3-cocycle identity."""


class SchemaError(ValueError):
    """Malformed or inconsistent instance file."""


# ---------------------------------------------------------------------------
# pointed categories and Fibonacci
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> tuple[list[list[int]], list[str]]:
    """Multiplication table and labels ``1, g, g2, ...`` of Z/n."""
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    return table, labels


def cyclic_cocycle(n: int, k: int) -> Callable[[int, int, int], complex]:
    """Normalized representative of class ``k`` in H^3(Z/n, C^x)."""

    def omega(a: int, b: int, c: int) -> complex:
        carry = b + c - (b + c) % n
        return cmath.exp(2j * math.pi * k * a * carry / (n * n))

    return omega


def _identity(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    raise ValueError("multiplication table has no identity")


def make_pointed(
    table: Sequence[Sequence[int]],
    cocycle: Callable[[int, int, int], complex] | Mapping[tuple[int, int, int], complex] | None = None,
    labels: Sequence[str] | None = None,
    name: str = "A",
    tol: Tolerance = DEFAULT_TOL,
) -> FusionData:
    """Vec_G^omega from a group table and a normalized 3-cocycle."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise ValueError("group table must be square")
    labs = [str(i) for i in range(n)] if labels is None else list(labels)
    if len(labs) != n:
        raise ValueError("label count does not match the group order")
    e = _identity(table)
    if cocycle is None:
        w = {t: 1.0 + 0j for t in product(range(n), repeat=3)}
    elif callable(cocycle):
        w = {t: complex(cocycle(*t)) for t in product(range(n), repeat=3)}
    else:
        w = {t: complex(cocycle.get(t, 1.0)) for t in product(range(n), repeat=3)}
    m = lambda x, y: table[x][y]  # noqa: E731
    for a, b, c, d in product(range(n), repeat=4):
        lhs = w[(m(a, b), c, d)] * w[(a, b, m(c, d))]
        rhs = w[(a, b, c)] * w[(a, m(b, c), d)] * w[(b, c, d)]
        if not approx_eq(lhs, rhs, tol):
            raise NotACocycle(f"cocycle identity fails at {(labs[a], labs[b], labs[c], labs[d])}")
    for a, b in product(range(n), repeat=2):
        for t in ((e, a, b), (a, e, b), (a, b, e)):
            if not approx_eq(w[t], 1.0, tol):
                raise NotACocycle(f"cocycle is not normalized at {tuple(labs[i] for i in t)}")
    inv = {a: next(b for b in range(n) if table[a][b] == e) for a in range(n)}
    fusion = {(labs[a], labs[b], labs[m(a, b)]): 1 for a in range(n) for b in range(n)}
    fs = {}
    for a, b, c in product(range(n), repeat=3):
        key = (labs[a], labs[b], labs[c], labs[m(m(a, b), c)], labs[m(a, b)], labs[m(b, c)])
        fs[key] = w[(a, b, c)]
    return FusionData(tuple(labs), labs[e], fusion, {labs[a]: labs[inv[a]] for a in range(n)}, fs, name)


def make_fibonacci(name: str = "A") -> FusionData:
    """Rank-2 category with t (x) t = 1 + t."""
    phi = golden_ratio()
    labs = ("1", "t")
    fusion = {("1", "1", "1"): 1, ("1", "t", "t"): 1, ("t", "1", "t"): 1, ("t", "t", "1"): 1, ("t", "t", "t"): 1}
    mat = np.array([[1 / phi, phi**-0.5], [phi**-0.5, -1 / phi]])
    bare = FusionData(labs, "1", fusion, {"1": "1", "t": "t"}, {}, name)
    fs: dict[tuple[str, ...], complex] = {k: 1.0 for k in bare.skeleton.admissible_fkeys()}
    for i, e in enumerate(labs):
        for j, f in enumerate(labs):
            fs[("t", "t", "t", "t", e, f)] = float(mat[i, j])
    return FusionData(labs, "1", fusion, {"1": "1", "t": "t"}, fs, name)


# ---------------------------------------------------------------------------
# linking skeletons
# ---------------------------------------------------------------------------

_ENDS = {"A": (0, 0), "M": (0, 1), "N": (1, 0), "B": (1, 1)}


def _linking_from_underlying(
    cells: Mapping[str, Sequence[str]],
    under: Mapping[str, str],
    base_mult: Callable[[str, str, str], int],
    base_F: Callable[[str, str, str, str, str, str], complex],
    dual: Mapping[str, str],
    units: Mapping[int, str],
) -> Skeleton:
    labels = tuple(qualify(c, x) for c in "AMNB" for x in cells.get(c, ()))
    ends = {qualify(c, x): _ENDS[c] for c in "AMNB" for x in cells.get(c, ())}
    by_ends: dict[tuple[int, int], list[str]] = {}
    for lab in labels:
        by_ends.setdefault(ends[lab], []).append(lab)
    mult = {}
    for x in labels:
        for y in labels:
            if ends[x][1] != ends[y][0]:
                continue
            for z in by_ends.get((ends[x][0], ends[y][1]), []):
                n = base_mult(under[x], under[y], under[z])
                if n:
                    mult[(x, y, z)] = n
    skel = Skeleton(labels, ends, dict(units), mult, dict(dual), {}, {lab: lab[0] for lab in labels})
    fs = {k: complex(base_F(*(under[x] for x in k))) for k in skel.admissible_fkeys()}
    return Skeleton(labels, ends, dict(units), mult, dict(dual), fs, {lab: lab[0] for lab in labels})


def regular_linking(F: FusionData) -> Skeleton:
    """Linking skeleton of F acting on itself from both sides (F tensor Mat_2).

    The N-label ``x`` stands for the dual of the M-label ``x``.
    """
    cells = {c: F.labels for c in "AMNB"}
    under = {}
    dual = {}
    for x in F.labels:
        under[qualify("A", x)] = under[qualify("M", x)] = under[qualify("B", x)] = x
        under[qualify("N", x)] = F.dual[x]
        dual[qualify("A", x)] = qualify("A", F.dual[x])
        dual[qualify("B", x)] = qualify("B", F.dual[x])
        dual[qualify("M", x)] = qualify("N", x)
        dual[qualify("N", x)] = qualify("M", x)
    return _linking_from_underlying(
        cells, under, F.Nabc, lambda *k: F.fsymbols.get(tuple(k), 0.0), dual,
        {0: qualify("A", F.unit), 1: qualify("B", F.unit)},
    )


def pointed_linking(tau_sign: int = 1) -> Skeleton:
    """Linking skeleton of Vec_Z2 acting on Vec, with Rep(Z2) = Vec_Z2 on the right.

    Composable words map to the Tambara-Yamagami category of Z/2 with the
    bicharacter chi(g, g) = -1; the module and its dual both become the
    non-invertible simple s.
    """
    if tau_sign not in (1, -1):
        raise ValueError("tau_sign must be +1 or -1")
    tau = tau_sign / math.sqrt(2)
    cells = {"A": ("1", "g"), "M": ("m",), "N": ("m",), "B": ("1", "p")}
    under = {"A:1": "0", "A:g": "1", "B:1": "0", "B:p": "1", "M:m": "s", "N:m": "s"}
    grp = {"0": 0, "1": 1}

    def mult(x: str, y: str, z: str) -> int:
        if x == "s" and y == "s":
            return int(z != "s")
        if x == "s" or y == "s":
            return int(z == "s")
        return int(z != "s" and (grp[x] + grp[y]) % 2 == grp[z])

    def chi(a: str, b: str) -> float:
        return -1.0 if grp[a] * grp[b] % 2 else 1.0

    def F(a: str, b: str, c: str, d: str, e: str, f: str) -> complex:
        if (a, b, c, d) == ("s", "s", "s", "s"):
            return tau / chi(e, f)
        if b == "s" and a != "s" and c != "s":
            return chi(a, c)
        if a == "s" and c == "s" and b != "s":
            return chi(b, d)
        return 1.0

    dual = {"A:1": "A:1", "A:g": "A:g", "B:1": "B:1", "B:p": "B:p", "M:m": "N:m", "N:m": "M:m"}
    return _linking_from_underlying(cells, under, mult, F, dual, {0: "A:1", 1: "B:1"})


# ---------------------------------------------------------------------------
# modules and contexts
# ---------------------------------------------------------------------------


def _left_part(M: ModuleData, base: FusionData, name: str) -> ModuleData:
    return ModuleData(base, M.mlabels, M.action, M.lsymbols, completion=M.completion, name=name)


def make_regular_module(F: FusionData, name: str = "M") -> ModuleData:
    """F acting on itself by the tensor product, with associator F."""
    _, _, M = split_linking(regular_linking(F))
    return _left_part(M, F, name)


def make_vec_module(name: str = "M") -> ModuleData:
    """Vec as a module over Vec_Z2 (trivial cocycle) via the forgetful functor."""
    _, _, M = split_linking(pointed_linking())
    table, labels = cyclic_group(2)
    return _left_part(M, make_pointed(table, None, labels), name)


def make_regular_context(F: FusionData, name: str = "regular") -> MoritaContextData:
    """Canonical context of the regular F-bimodule; both sides are F."""
    return context_from_linking(regular_linking(F), name=name)


def make_pointed_context(tau_sign: int = 1, name: str = "pointed") -> MoritaContextData:
    """Canonical context of Vec over Vec_Z2, whose dual category is again Vec_Z2."""
    return context_from_linking(pointed_linking(tau_sign), name=name)


def cyclic_grading(n: int, labels: Sequence[str] | None = None, context: bool = True) -> GradingData:
    """Z/n grading of Vec_{Z/n} or of its regular context, each simple in its own degree.

    On contexts the N-label ``x`` (the dual of ``M:x``) sits in the inverse degree.
    """
    table, elems = cyclic_group(n)
    labs = list(elems if labels is None else labels)
    inv = {elems[i]: elems[(-i) % n] for i in range(n)}
    if not context:
        return GradingData(elems, table, {labs[i]: elems[i] for i in range(n)})
    deg = {}
    for i, x in enumerate(labs):
        for c in "AMB":
            deg[qualify(c, x)] = elems[i]
        deg[qualify("N", x)] = inv[elems[i]]
    return GradingData(elems, table, deg)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------

_TOP = {"schema_version", "name", "description", "gauge", "fusion", "modules", "context", "grading", "pivotal", "serre"}
_FUSION = {"name", "labels", "unit", "dual", "fusion", "fsymbols"}
_MODULE = {"name", "base", "right_base", "labels", "action", "lsymbols", "right_action", "msymbols", "rsymbols",
           "completion"}
_LINKING = {"labels", "units", "mult", "dual", "fsymbols"}
_CONTEXT = {"name", "module", "tier", "alpha", "beta"}
_GRADING = {"target", "elements", "table", "deg"}


@dataclass(eq=True)
class Instance:
    """Everything one instance file declares, keyed by block name."""

    name: str
    fusion: dict[str, FusionData]
    modules: dict[str, ModuleData] = field(default_factory=dict)
    context: MoritaContextData | None = None
    grading: GradingData | None = None
    grading_target: str | None = None
    pivotal: dict[str, PivotalAssignment] = field(default_factory=dict)
    serre: dict[str, dict[str, str]] = field(default_factory=dict)
    description: str = ""
    gauge: dict[str, str] = field(default_factory=lambda: dict(GAUGE))

    def target(self, name: str | None) -> FusionData | ModuleData | MoritaContextData:
        if name == "context" and self.context is not None:
            return self.context
        if name in self.fusion:
            return self.fusion[name]
        if name in self.modules:
            return self.modules[name]
        raise KeyError(f"no block named {name!r}")


def _check_keys(obj: Any, allowed: set[str], where: str, strict: bool, required: Sequence[str] = ()) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    for key in required:
        if key not in obj:
            raise SchemaError(f"{where}: missing field {key!r}")
    extra = sorted(set(obj) - allowed)
    if extra:
        msg = f"{where}: unknown fields {extra}"
        if strict:
            raise SchemaError(msg)
        warnings.warn(msg, stacklevel=3)


def _scalar(re: Any, im: Any) -> complex:
    if isinstance(re, bool) or isinstance(im, bool) or not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
        raise SchemaError(f"non-numeric scalar {re!r}, {im!r}")
    return complex(float(re), float(im))


def _symbols_in(rows: Any, labels: set[str], where: str) -> dict[tuple[str, ...], complex]:
    out = {}
    for row in rows or []:
        if not isinstance(row, list) or len(row) != 8:
            raise SchemaError(f"{where}: symbol rows are [6 labels, re, im]")
        key = tuple(row[:6])
        if not set(key) <= labels:
            raise SchemaError(f"{where}: undeclared label in {key}")
        if key in out:
            raise SchemaError(f"{where}: duplicate symbol {key}")
        out[key] = _scalar(row[6], row[7])
    return out


def _mults_in(rows: Any, first: set[str], second: set[str], third: set[str], where: str) -> dict:
    out = {}
    for row in rows or []:
        if not isinstance(row, list) or len(row) not in (3, 4):
            raise SchemaError(f"{where}: multiplicity rows are [x, y, z] or [x, y, z, n]")
        x, y, z = row[:3]
        n = row[3] if len(row) == 4 else 1
        if x not in first or y not in second or z not in third:
            raise SchemaError(f"{where}: undeclared label in {row[:3]}")
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise SchemaError(f"{where}: multiplicity must be a non-negative integer")
        out[(x, y, z)] = n
    return out


def _symbols_out(fs: Mapping[tuple[str, ...], complex]) -> list[list[Any]]:
    return [[*k, float(v.real), float(v.imag)] for k, v in sorted(fs.items())]


def _mults_out(mult: Mapping[tuple[str, str, str], int]) -> list[list[Any]]:
    return [[*k] if n == 1 else [*k, n] for k, n in sorted(mult.items())]


def _labels_in(obj: Any, where: str) -> list[str]:
    labs = obj
    if not isinstance(labs, list) or not labs or not all(isinstance(x, str) for x in labs):
        raise SchemaError(f"{where}: labels must be a non-empty list of strings")
    if len(set(labs)) != len(labs):
        raise SchemaError(f"{where}: duplicate labels")
    return labs


def _fusion_in(obj: dict, strict: bool) -> FusionData:
    name = obj.get("name", "A")
    where = f"fusion[{name}]"
    _check_keys(obj, _FUSION, where, strict, ("labels", "unit", "fusion"))
    labs = _labels_in(obj["labels"], where)
    ls = set(labs)
    if obj["unit"] not in ls:
        raise SchemaError(f"{where}: unit is not a label")
    fusion = _mults_in(obj["fusion"], ls, ls, ls, where)
    if "dual" in obj:
        dual = obj["dual"]
        if not isinstance(dual, dict) or set(dual) != ls or not set(dual.values()) <= ls:
            raise SchemaError(f"{where}: dual must map every label to a label")
    else:
        dual = {}
        for a in labs:
            cands = [b for b in labs if fusion.get((a, b, obj["unit"]), 0)]
            if len(cands) != 1:
                raise SchemaError(f"{where}: cannot infer the dual of {a!r}")
            dual[a] = cands[0]
    fs = _symbols_in(obj.get("fsymbols"), ls, where)
    return FusionData(tuple(labs), obj["unit"], fusion, dual, fs, name)


def _fusion_out(F: FusionData) -> dict[str, Any]:
    return {
        "name": F.name,
        "labels": list(F.labels),
        "unit": F.unit,
        "dual": dict(F.dual),
        "fusion": _mults_out(F.fusion),
        "fsymbols": _symbols_out(F.fsymbols),
    }


def _linking_in(obj: dict, strict: bool, where: str) -> Skeleton:
    _check_keys(obj, _LINKING, where, strict, ("labels", "units", "mult", "dual"))
    labs = _labels_in(obj["labels"], where)
    for x in labs:
        if x.split(":", 1)[0] not in CELL_ENDS or ":" not in x:
            raise SchemaError(f"{where}: linking labels must be cell-qualified, got {x!r}")
    ls = set(labs)
    units = obj["units"]
    if not isinstance(units, dict) or not set(units.values()) <= ls:
        raise SchemaError(f"{where}: units must map objects to labels")
    try:
        units = {int(k): v for k, v in units.items()}
    except ValueError as exc:
        raise SchemaError(f"{where}: unit keys must be object indices") from exc
    mult = _mults_in(obj["mult"], ls, ls, ls, where)
    dual = obj["dual"]
    if not isinstance(dual, dict) or not set(dual) <= ls or not set(dual.values()) <= ls:
        raise SchemaError(f"{where}: dual references undeclared labels")
    fs = _symbols_in(obj.get("fsymbols"), ls, where)
    ends = {x: CELL_ENDS[x[0]] for x in labs}
    return Skeleton(tuple(labs), ends, units, mult, dict(dual), fs, {x: x[0] for x in labs})


def _linking_out(skel: Skeleton) -> dict[str, Any]:
    return {
        "labels": list(skel.labels),
        "units": {str(k): v for k, v in sorted(skel.units.items())},
        "mult": _mults_out(skel.mult),
        "dual": dict(skel.dual),
        "fsymbols": _symbols_out(skel.fsymbols),
    }


def _module_in(obj: dict, fusion: Mapping[str, FusionData], strict: bool) -> ModuleData:
    name = obj.get("name", "M")
    where = f"module[{name}]"
    _check_keys(obj, _MODULE, where, strict, ("base", "labels", "action"))
    if obj["base"] not in fusion:
        raise SchemaError(f"{where}: unknown base {obj['base']!r}")
    A = fusion[obj["base"]]
    B = None
    if obj.get("right_base") is not None:
        if obj["right_base"] not in fusion:
            raise SchemaError(f"{where}: unknown right base {obj['right_base']!r}")
        B = fusion[obj["right_base"]]
    labs = _labels_in(obj["labels"], where)
    ms, as_ = set(labs), set(A.labels)
    bs = set(B.labels) if B is not None else set()
    action = _mults_in(obj["action"], as_, ms, ms, where)
    ls = _symbols_in(obj.get("lsymbols"), as_ | ms, where)
    right = _mults_in(obj.get("right_action"), ms, bs, ms, where)
    msym = _symbols_in(obj.get("msymbols"), as_ | ms | bs, where)
    rsym = _symbols_in(obj.get("rsymbols"), ms | bs, where)
    if B is None and (right or msym or rsym):
        raise SchemaError(f"{where}: right-action data without a right base")
    comp = None
    if obj.get("completion") is not None:
        comp = _linking_in(obj["completion"], strict, f"{where}.completion")
    return ModuleData(A, tuple(labs), action, ls, B, right, msym, rsym, comp, name)


def _module_out(M: ModuleData) -> dict[str, Any]:
    out: dict[str, Any] = {
        "name": M.name,
        "base": M.base.name,
        "right_base": M.right_base.name if M.right_base is not None else None,
        "labels": list(M.mlabels),
        "action": _mults_out(M.action),
        "lsymbols": _symbols_out(M.lsymbols),
    }
    if M.right_base is not None:
        out["right_action"] = _mults_out(M.right_action)
        out["msymbols"] = _symbols_out(M.msymbols)
        out["rsymbols"] = _symbols_out(M.rsymbols)
    out["completion"] = _linking_out(M.completion) if M.completion is not None else None
    return out


def _values_in(obj: Any, where: str) -> dict[str, complex]:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a label -> [re, im] map")
    out = {}
    for k, v in obj.items():
        if not isinstance(v, list) or len(v) != 2:
            raise SchemaError(f"{where}: values are [re, im]")
        out[k] = _scalar(*v)
    return out


def _context_in(obj: dict, fusion: Mapping[str, FusionData], modules: Mapping[str, ModuleData],
                strict: bool) -> MoritaContextData:
    _check_keys(obj, _CONTEXT, "context", strict, ("module",))
    if obj["module"] not in modules:
        raise SchemaError(f"context: unknown module {obj['module']!r}")
    M = modules[obj["module"]]
    if M.right_base is None or M.completion is None:
        raise SchemaError("context: the module needs a right base and a completion")
    tier = obj.get("tier", "structure" if M.completion.multiplicity_free() and M.completion.fsymbols else "dimension")
    if tier not in ("structure", "dimension"):
        raise SchemaError("context: tier is 'structure' or 'dimension'")
    labs = set(M.completion.labels)
    alpha = _symbols_in(obj.get("alpha"), labs, "context.alpha")
    beta = _symbols_in(obj.get("beta"), labs, "context.beta")
    return MoritaContextData(M.base, M.right_base, M, M.completion, tier, alpha, beta, obj.get("name", "context"))


def _context_out(ctx: MoritaContextData) -> dict[str, Any]:
    return {
        "name": ctx.name,
        "module": ctx.M.name,
        "tier": ctx.tier,
        "alpha": _symbols_out(ctx.alpha),
        "beta": _symbols_out(ctx.beta),
    }


def loads_instance(text: str, strict: bool = True) -> Instance:
    """Parse an instance document; ``strict=False`` turns unknown fields into warnings."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return instance_from_dict(doc, strict)


def instance_from_dict(doc: Any, strict: bool = True) -> Instance:
    _check_keys(doc, _TOP, "instance", strict, ("schema_version", "fusion"))
    if str(doc["schema_version"]).split(".")[0] != SCHEMA_VERSION.split(".")[0]:
        raise SchemaError(f"unsupported schema version {doc['schema_version']!r}")
    blocks = doc["fusion"]
    if not isinstance(blocks, list) or not blocks:
        raise SchemaError("at least one fusion block is required")
    fusion: dict[str, FusionData] = {}
    for b in blocks:
        F = _fusion_in(b, strict)
        if F.name in fusion:
            raise SchemaError(f"duplicate fusion block {F.name!r}")
        fusion[F.name] = F
    modules: dict[str, ModuleData] = {}
    for b in doc.get("modules") or []:
        M = _module_in(b, fusion, strict)
        if M.name in modules or M.name in fusion:
            raise SchemaError(f"duplicate block name {M.name!r}")
        modules[M.name] = M
    ctx = _context_in(doc["context"], fusion, modules, strict) if doc.get("context") is not None else None
    inst = Instance(
        name=str(doc.get("name", "instance")),
        fusion=fusion,
        modules=modules,
        context=ctx,
        description=str(doc.get("description", "")),
        gauge=dict(doc.get("gauge") or GAUGE),
    )
    if doc.get("grading") is not None:
        g = doc["grading"]
        _check_keys(g, _GRADING, "grading", strict, ("target", "elements", "table", "deg"))
        try:
            target = inst.target(g["target"])
        except KeyError as exc:
            raise SchemaError(f"grading: {exc.args[0]}") from exc
        try:
            inst.grading = GradingData(tuple(g["elements"]), tuple(tuple(r) for r in g["table"]), dict(g["deg"]))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"grading: {exc}") from exc
        labels = set(target.skeleton.labels)
        if not set(inst.grading.deg) <= labels or not set(inst.grading.deg.values()) <= set(inst.grading.elements):
            raise SchemaError("grading: degrees reference undeclared labels or group elements")
        inst.grading_target = g["target"]
    for tname, vals in (doc.get("pivotal") or {}).items():
        try:
            target = inst.context if tname == "N" and inst.context is not None else inst.target(tname)
        except KeyError as exc:
            raise SchemaError(f"pivotal: {exc.args[0]}") from exc
        values = _values_in(vals, f"pivotal[{tname}]")
        unit = target.unit if isinstance(target, FusionData) else None
        labels = target.labels if isinstance(target, FusionData) else getattr(target, "mlabels", ())
        if tname == "N":
            labels = inst.context.M.mlabels
        if set(values) != set(labels):
            raise SchemaError(f"pivotal[{tname}]: values must cover exactly the labels")
        try:
            inst.pivotal[tname] = PivotalAssignment(values, unit)
        except ValueError as exc:
            raise SchemaError(f"pivotal[{tname}]: {exc}") from exc
    for mname, om in (doc.get("serre") or {}).items():
        if mname not in modules:
            raise SchemaError(f"serre: unknown module {mname!r}")
        if not isinstance(om, dict) or set(om) != set(modules[mname].mlabels) or not set(om.values()) <= set(om):
            raise SchemaError(f"serre[{mname}]: object map must be total on module labels")
        inst.serre[mname] = dict(om)
    return inst


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "name": inst.name,
        "description": inst.description,
        "gauge": dict(inst.gauge),
        "fusion": [_fusion_out(F) for F in inst.fusion.values()],
        "modules": [_module_out(M) for M in inst.modules.values()],
        "context": _context_out(inst.context) if inst.context is not None else None,
    }
    if inst.grading is not None:
        g = inst.grading
        doc["grading"] = {
            "target": inst.grading_target,
            "elements": list(g.elements),
            "table": [list(r) for r in g.table],
            "deg": dict(g.deg),
        }
    if inst.pivotal:
        doc["pivotal"] = {
            k: {a: [float(v.real), float(v.imag)] for a, v in p.values.items()} for k, p in inst.pivotal.items()
        }
    if inst.serre:
        doc["serre"] = {k: dict(v) for k, v in inst.serre.items()}
    return doc


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1, sort_keys=False) + "\n"


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(dump_instance(inst))


def load_instance(path: str | Path, strict: bool = True) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return loads_instance(text, strict)


# ---------------------------------------------------------------------------
# bundled corpus
# ---------------------------------------------------------------------------


def _data_dir() -> Path:
    return Path(str(resources.files("moritakit") / "data"))


def bundled_path(name: str) -> Path:
    p = _data_dir() / (name if name.endswith(".json") else name + ".json")
    if not p.exists():
        raise KeyError(f"no bundled instance {name!r}")
    return p


def bundled_names(negative: bool = False) -> list[str]:
    """Self-certifying corpus files, or with ``negative`` the deliberately broken ones."""
    d = _data_dir() / "negative" if negative else _data_dir()
    prefix = "negative/" if negative else ""
    return sorted(prefix + p.stem for p in d.glob("*.json"))


@lru_cache(maxsize=None)
def _load_cached(name: str) -> Instance:
    return load_instance(bundled_path(name))


def load_bundled(name: str) -> Instance:
    return _load_cached(name)


def _context_instance(ctx: MoritaContextData, name: str, description: str) -> Instance:
    from .fusion import solve_pivotal
    from .modulecat import solve_module_pivotal
    from .morita import pivotal_transport

    p, pt = next((p, s[0]) for p in solve_pivotal(ctx.A) if (s := solve_module_pivotal(ctx.M, p)))
    tr = pivotal_transport(ctx, p, pt)
    return Instance(
        name=name,
        fusion={"A": ctx.A, "B": ctx.B},
        modules={"M": ctx.M},
        context=ctx,
        pivotal={"A": p, "M": pt, "B": tr.q, "N": tr.phat},
        description=description,
    )


def corpus_instances() -> dict[str, Instance]:
    """The bundled corpus built from the closed-form constructors."""
    t2, l2 = cyclic_group(2)
    t3, l3 = cyclic_group(3)
    bases = {
        "vec": (make_pointed([[0]], None, ["1"]), "Vec"),
        "vec_z2_trivial": (make_pointed(t2, None, l2), "Vec_Z2, trivial cocycle"),
        "vec_z2_nontrivial": (make_pointed(t2, cyclic_cocycle(2, 1), l2), "Vec_Z2, F[g,g,g] = -1"),
        "vec_z3": (make_pointed(t3, None, l3), "Vec_Z3, trivial cocycle"),
        "fib": (make_fibonacci(), "Fibonacci, t (x) t = 1 + t"),
    }
    out: dict[str, Instance] = {}
    for key, (F, desc) in bases.items():
        out[key] = Instance(key, {"A": F}, {"M": make_regular_module(F)}, description=desc + ", with its regular module")
    Mv = make_vec_module()
    out["vec_over_vec_z2"] = Instance("vec_over_vec_z2", {"A": Mv.base}, {"M": Mv},
                                      description="Vec as a module over Vec_Z2")
    out["pointed_context"] = _context_instance(
        make_pointed_context(name="pointed_context"), "pointed_context",
        "canonical context of Vec over Vec_Z2; the dual category is Vec_Z2")
    out["pointed_context_nontrivial"] = _context_instance(
        make_regular_context(bases["vec_z2_nontrivial"][0], "pointed_context_nontrivial"),
        "pointed_context_nontrivial", "regular context of Vec_Z2 with F[g,g,g] = -1")
    for n, (F, _) in ((2, bases["vec_z2_nontrivial"]), (3, bases["vec_z3"])):
        key = f"graded_z{n}_context"
        inst = _context_instance(make_regular_context(F, key), key, f"regular context of Vec_Z{n}, graded by Z{n}")
        inst.grading = cyclic_grading(n, F.labels)
        inst.grading_target = "context"
        out[key] = inst
    return out


def negative_instances() -> dict[str, Instance]:
    """Deliberately broken inputs used to exercise failure paths."""
    t3, l3 = cyclic_group(3)
    F = make_pointed(t3, None, l3)
    fs = dict(F.fsymbols)
    key = ("g", "g", "g", "1", "g2", "g2")
    fs[key] = fs[key] + 0.1
    broken = FusionData(F.labels, F.unit, F.fusion, F.dual, fs, "A")
    t2, l2 = cyclic_group(2)
    Z2 = make_pointed(t2, None, l2)
    fs2 = dict(Z2.fsymbols)
    fs2[("1", "g", "g", "1", "g", "1")] = -1.0
    unnormalized = FusionData(Z2.labels, Z2.unit, Z2.fusion, Z2.dual, fs2, "A")
    fib = make_fibonacci()
    bad = GradingData(("1", "g"), ((0, 1), (1, 0)), {"1": "1", "t": "g"})
    return {
        "broken_pentagon": Instance("broken_pentagon", {"A": broken},
                                    description="Vec_Z3 with one F-symbol shifted by 0.1"),
        "inconsistent_pivotal": Instance("inconsistent_pivotal", {"A": unnormalized},
                                         description="Vec_Z2 with an F-symbol that breaks unit normalization"),
        "fib_z2_grading": Instance("fib_z2_grading", {"A": fib}, grading=bad, grading_target="A",
                                   description="Fibonacci with t placed in the odd degree of Z2"),
    }


def build_corpus(out_dir: str | Path | None = None) -> list[Path]:
    """Write the corpus (and the negative examples under ``negative/``)."""
    root = Path(out_dir) if out_dir is not None else _data_dir()
    (root / "negative").mkdir(parents=True, exist_ok=True)
    written = []
    for sub, table in (("", corpus_instances()), ("negative", negative_instances())):
        for key, inst in table.items():
            path = root / sub / f"{key}.json"
            save_instance(inst, path)
            written.append(path)
    _load_cached.cache_clear()
    return written
