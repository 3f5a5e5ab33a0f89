"""Group gradings on fusion categories, modules and Morita contexts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .fusion import FusionData, PivotalAssignment
from .modulecat import ModuleData, SerreData, qualify, serre_from_skeleton, solve_module_pivotal, unqualify
from .morita import (
    MoritaContextData,
    _ldual,
    _rdual,
    context_from_linking,
    pivotal_morita_suite,
    split_linking,
)
from .numerics import DEFAULT_TOL, Tolerance
from .report import CheckReport
from .skeleton import Skeleton, restrict

__all__ = [
    "GradingData",
    "validate_grading",
    "graded_dual_degree_check",
    "graded_serre_check",
    "degree_e_reduction",
    "per_degree_verdicts",
]


@dataclass(frozen=True)
class GradingData:
    """A finite group given by its multiplication table and a degree map on labels.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    deg: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        object.__setattr__(self, "deg", dict(self.deg))
        n = len(self.elements)
        if n == 0 or len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("group table must be square and non-empty")
        if len(set(self.elements)) != n:
            raise ValueError("group elements must be distinct")

    @property
    def identity(self) -> str:
        n = len(self.elements)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return self.elements[e]
        raise ValueError("group table has no identity")

    def mul(self, g: str, h: str) -> str:
        i, j = self.elements.index(g), self.elements.index(h)
        return self.elements[self.table[i][j]]

    def inv(self, g: str) -> str:
        e = self.identity
        for h in self.elements:
            if self.mul(g, h) == e:
                return h
        raise ValueError(f"{g!r} has no inverse")

    def is_group(self) -> bool:
        n = len(self.elements)
        try:
            self.identity
        except ValueError:
            return False
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        return False
        return all(any(self.table[a][b] == self.elements.index(self.identity) for b in range(n)) for a in range(n))

    def relabel(self, perm: Mapping[str, str]) -> "GradingData":
        return GradingData(self.elements, self.table, {perm.get(k, k): v for k, v in self.deg.items()})


Graded = FusionData | ModuleData | MoritaContextData | Skeleton


def _skeleton(X: Graded) -> Skeleton:
    if isinstance(X, Skeleton):
        return X
    return X.skeleton


def validate_grading(X: Graded, g: GradingData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Degrees defined, faithful on the tensor cells and multiplicative on every product.

    Fusion data use bare labels; modules and contexts use cell-qualified labels
    (``"A:x"``, ``"M:m"``, ...).  For contexts the mixed products are covered
    by the same multiplicativity check.
    """
    skel = _skeleton(X)
    rep = CheckReport("grading", tol=tol, tier="dimension")
    rep.add_flag("group_axioms", (), g.is_group())
    if not g.is_group():
        return rep
    for x in skel.labels:
        d = g.deg.get(x)
        rep.add_flag("degree_defined", (x,), d is not None and d in g.elements)
    if not rep.verdict:
        return rep
    tensor_objs = sorted({o for o in skel.units})
    for o in tensor_objs:
        cell = [x for x in skel.labels if skel.ends[x] == (o, o)]
        hit = {g.deg[x] for x in cell}
        for h in g.elements:
            rep.add_flag("faithful", (str(o), h), h in hit)
    for x, y in skel.composable_words(2):
        for z in skel.channels(x, y):
            rep.add_exact("multiplicative", (x, y, z), g.deg[z], g.mul(g.deg[x], g.deg[y]))
    return rep


def graded_dual_degree_check(ctx: MoritaContextData | Skeleton, g: GradingData) -> CheckReport:
    """Right and left duals of homogeneous simples have the inverse degree."""
    skel = _skeleton(ctx)
    rep = CheckReport("graded_duals", tier="dimension")
    for x in skel.labels:
        inv = g.inv(g.deg[x])
        for side, d in (("right", _rdual(skel, x)), ("left", _ldual(skel, x))):
            rep.add_exact(f"dual_degree_{side}", (x,), g.deg.get(d) if d else None, inv)
    return rep


def graded_serre_check(
    X: ModuleData | MoritaContextData, g: GradingData, serre: SerreData | None = None
) -> CheckReport:
    """Relative Serre functors preserve degrees.

    ``serre`` overrides the computed data of the left module ``M`` (qualified
    or bare labels are both accepted).
    """
    rep = CheckReport("graded_serre", tier="dimension")
    if isinstance(X, MoritaContextData):
        skel = X.skeleton
        sides = [("M", "A", True), ("M", "B", False), ("N", "B", True), ("N", "A", False)]
    else:
        skel = X.require_linked()
        sides = [("M", "A", True)]
    for mod, act, left in sides:
        if serre is not None and (mod, act) == ("M", "A"):
            omap = {(k if ":" in k else qualify("M", k)): (v if ":" in v else qualify("M", v))
                    for k, v in serre.object_map.items()}
        else:
            omap = serre_from_skeleton(skel, skel.cell_labels(act), skel.cell_labels(mod), left, structure=False).object_map
        for m, s in sorted(omap.items()):
            rep.add_exact(f"serre_degree[{mod}/{act}]", (m, s), g.deg.get(s), g.deg.get(m))
    return rep


def per_degree_verdicts(report: CheckReport, g: GradingData) -> dict[str, bool]:
    """Split records by the degree of their first label and give each part's verdict."""
    out: dict[str, bool] = {}
    for r in report.records:
        lab = r.index[0] if r.index else None
        key = g.deg.get(lab, "?") if lab is not None else "?"
        out[key] = out.get(key, True) and r.passed
    return out


def degree_e_reduction(
    ctx: MoritaContextData,
    g: GradingData,
    p: PivotalAssignment,
    pt: PivotalAssignment,
    q: PivotalAssignment,
    ph: PivotalAssignment,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """Pivotal checks on the trivial-degree part against the full instance."""
    skel = ctx.skeleton
    e = g.identity
    keep = [x for x in skel.labels if g.deg[x] == e]
    sub = restrict(skel, keep)
    rep = CheckReport("degree_e_reduction", tol=tol)
    full = pivotal_morita_suite(ctx, p, pt, q, ph, tol)
    mine = lambda P, cell: {unqualify(x): P[unqualify(x)] for x in keep if x[0] == cell}  # noqa: E731
    sctx = context_from_linking(sub, name=ctx.name + "_e")
    restricted = pivotal_morita_suite(
        sctx,
        PivotalAssignment(mine(p, "A"), sctx.A.unit),
        PivotalAssignment(mine(pt, "M")),
        PivotalAssignment(mine(q, "B"), sctx.B.unit),
        PivotalAssignment(mine(ph, "N")),
        tol,
    )
    rep.add_flag("verdict_agrees", (), full.verdict == restricted.verdict)
    _, _, M_full = split_linking(skel)
    _, _, M_e = split_linking(sub)
    pa_e = PivotalAssignment(mine(p, "A"), sctx.A.unit)
    n_full = len(solve_module_pivotal(M_full, p, True, tol=tol))
    n_e = len(solve_module_pivotal(M_e, pa_e, True, tol=tol))
    rep.add_exact("module_pivotal_count", (), n_e, n_full)
    rep.meta = {"full_verdict": full.verdict, "restricted_verdict": restricted.verdict, "labels_e": keep}
    return rep
