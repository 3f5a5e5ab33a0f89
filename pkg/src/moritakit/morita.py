"""Morita contexts as two-object linking skeletons and their check suites.

Object 0 carries the base ``A`` and object 1 the dual category ``B``.  The
four hom-cells are ``A = 0->0``, ``M = 0->1``, ``N = 1->0`` and ``B = 1->1``;
composition of 1-morphisms is the tensor product, the actions and the two
mixed products ``<m, H> = m (x) H`` in ``A`` and ``[H, m] = H (x) m`` in ``B``.
The N-label ``m`` stands for the dual of the M-label ``m``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .fusion import FusionData, PivotalAssignment, pivotal_residuals
from .modulecat import (
    CELL_ENDS,
    ModuleData,
    ObjectDecomposition,
    cell_word,
    internal_cohom,
    internal_hom,
    qualify,
    serre_from_skeleton,
    unqualify,
)
from .numerics import DEFAULT_TOL, Tolerance
from .report import CheckReport, merge_reports
from .skeleton import Calculus, Skeleton, UnsupportedMultiplicity, leaf, tens

__all__ = [
    "CheckReport",
    "MoritaContextData",
    "OneMorphism",
    "DualData",
    "PivotalTransport",
    "ActionsDoNotCommute",
    "build_canonical_context",
    "context_from_linking",
    "split_linking",
    "verify_context_coherence",
    "dual_1morphism",
    "duality_dim_suite",
    "double_dual_suite",
    "pivotal_transport",
    "pivotal_morita_suite",
    "radford_pseudo_suite",
    "strong_context_suite",
    "PAIR_FAMILIES",
    "all_suites",
]


class ActionsDoNotCommute(ValueError):
    """The left and right actions on the bimodule do not commute at multiplicity level."""


# the eight composable pair types, in the order of the pivotal Morita conditions
PAIR_FAMILIES = {
    "AA": "(i) AA",
    "BB": "(ii) BB",
    "AM": "(iii) AM",
    "MB": "(iv) MB",
    "BN": "(v) BN",
    "NA": "(vi) NA",
    "MN": "(vii) MN",
    "NM": "(viii) NM",
}


@dataclass(frozen=True)
class OneMorphism:
    """A simple 1-morphism, or a formal direct sum of simples, in one hom-cell."""

    cell: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.cell not in CELL_ENDS:
            raise ValueError(f"unknown hom-cell {self.cell!r}")
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))
        if not self.labels:
            raise ValueError("a 1-morphism needs at least one summand")

    @classmethod
    def simple(cls, cell: str, label: str) -> "OneMorphism":
        return cls(cell, (label,))

    @property
    def is_simple(self) -> bool:
        return len(self.labels) == 1

    @property
    def qualified(self) -> tuple[str, ...]:
        return tuple(qualify(self.cell, x) for x in self.labels)


@dataclass
class DualData:
    dual: OneMorphism
    ev: dict[str, complex]
    coev: dict[str, complex]
    lev: dict[str, complex]
    lcoev: dict[str, complex]
    report: CheckReport


@dataclass
class PivotalTransport:
    q: PivotalAssignment
    phat: PivotalAssignment
    report: CheckReport


@dataclass(frozen=True, eq=False)
class MoritaContextData:
    """Bases, bimodule, linking skeleton and the alpha/beta component corrections.

    ``alpha`` and ``beta`` map associator keys on ``M N M`` (resp. ``N M N``)
    words to scalars multiplied into the linking symbols; empty maps are the
    canonical identity choice.
    """

    A: FusionData
    B: FusionData
    M: ModuleData
    raw: Skeleton
    tier: str = "structure"
    alpha: Mapping[tuple[str, ...], complex] = field(default_factory=dict)
    beta: Mapping[tuple[str, ...], complex] = field(default_factory=dict)
    name: str = "context"
    build_report: CheckReport | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MoritaContextData):
            return NotImplemented
        return (
            self.A == other.A
            and self.B == other.B
            and self.M == other.M
            and self.raw == other.raw
            and self.tier == other.tier
            and dict(self.alpha) == dict(other.alpha)
            and dict(self.beta) == dict(other.beta)
            and self.name == other.name
        )

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def skeleton(self) -> Skeleton:
        corr = {}
        for table in (self.alpha, self.beta):
            for key, val in table.items():
                corr[tuple(key)] = self.raw.F(*key) * complex(val)
        return self.raw.with_symbols(None, corr) if corr else self.raw

    @property
    def structure(self) -> bool:
        return self.tier == "structure"

    @property
    def N_labels(self) -> tuple[str, ...]:
        return tuple(unqualify(x) for x in self.skeleton.cell_labels("N"))

    def cell(self, c: str) -> list[str]:
        return self.skeleton.cell_labels(c)

    def mixt(self, m: str, H: str) -> ObjectDecomposition:
        s = self.skeleton
        return ObjectDecomposition(
            self.A.name, {unqualify(a): s.N(qualify("M", m), qualify("N", H), a) for a in self.cell("A")}
        )

    def mixtd(self, H: str, m: str) -> ObjectDecomposition:
        s = self.skeleton
        return ObjectDecomposition(
            self.B.name, {unqualify(b): s.N(qualify("N", H), qualify("M", m), b) for b in self.cell("B")}
        )

    def relabel(self, perm: Mapping[str, str], order: Sequence[str] | None = None) -> "MoritaContextData":
        """Rename qualified labels (cells must be preserved) and optionally reorder them."""
        p = {x: perm.get(x, x) for x in self.raw.labels}
        for x, y in p.items():
            if x[0] != y[0]:
                raise ValueError("relabeling must preserve hom-cells")
        rk = lambda k: tuple(p[x] for x in k)  # noqa: E731
        return context_from_linking(
            self.raw.relabel(p, order),
            alpha={rk(k): v for k, v in self.alpha.items()},
            beta={rk(k): v for k, v in self.beta.items()},
            name=self.name,
            tier=self.tier,
        )


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _fusion_from_cell(skel: Skeleton, c: str, name: str) -> FusionData:
    labs = skel.cell_labels(c)
    inside = set(labs)
    obj = CELL_ENDS[c][0]
    fusion = {tuple(unqualify(x) for x in k): n for k, n in skel.mult.items() if all(x in inside for x in k)}
    fs = {tuple(unqualify(x) for x in k): v for k, v in skel.fsymbols.items() if all(x in inside for x in k)}
    dual = {unqualify(x): unqualify(skel.dual[x]) for x in labs}
    return FusionData(tuple(unqualify(x) for x in labs), unqualify(skel.units[obj]), fusion, dual, fs, name)


def split_linking(skel: Skeleton) -> tuple[FusionData, FusionData, ModuleData]:
    """Read the two bases and the bimodule off a linking skeleton."""
    cells = {x: x.split(":", 1)[0] for x in skel.labels}
    word = lambda k: "".join(cells[x] for x in k[:3])  # noqa: E731
    A = _fusion_from_cell(skel, "A", "A")
    B = _fusion_from_cell(skel, "B", "B")
    mlabels = tuple(unqualify(x) for x in skel.cell_labels("M"))
    u = lambda k: tuple(unqualify(x) for x in k)  # noqa: E731
    action = {u(k): n for k, n in skel.mult.items() if cells[k[0]] == "A" and cells[k[1]] == "M"}
    right = {u(k): n for k, n in skel.mult.items() if cells[k[0]] == "M" and cells[k[1]] == "B"}
    ls = {u(k): v for k, v in skel.fsymbols.items() if word(k) == "AAM"}
    ms = {u(k): v for k, v in skel.fsymbols.items() if word(k) == "AMB"}
    rs = {u(k): v for k, v in skel.fsymbols.items() if word(k) == "MBB"}
    M = ModuleData(A, mlabels, action, ls, B, right, ms, rs, completion=skel, name="M")
    return A, B, M


def context_from_linking(
    skel: Skeleton,
    alpha: Mapping[tuple[str, ...], complex] | None = None,
    beta: Mapping[tuple[str, ...], complex] | None = None,
    name: str = "context",
    tier: str | None = None,
) -> MoritaContextData:
    A, B, M = split_linking(skel)
    if tier is None:
        tier = "structure" if skel.multiplicity_free() and skel.fsymbols else "dimension"
    return MoritaContextData(A, B, M, skel, tier, dict(alpha or {}), dict(beta or {}), name)


def _derived_mult(A: FusionData, B: FusionData, M: ModuleData) -> dict[tuple[str, str, str], int]:
    """Linking multiplicities from the two bases and the two actions alone."""
    qa = lambda x: qualify("A", x)  # noqa: E731
    qb = lambda x: qualify("B", x)  # noqa: E731
    qm = lambda x: qualify("M", x)  # noqa: E731
    qn = lambda x: qualify("N", x)  # noqa: E731
    out: dict[tuple[str, str, str], int] = {}

    def put(key: tuple[str, str, str], n: int) -> None:
        if n:
            out[key] = n

    for (a, b, c), n in A.fusion.items():
        put((qa(a), qa(b), qa(c)), n)
    for (a, b, c), n in B.fusion.items():
        put((qb(a), qb(b), qb(c)), n)
    for m in M.mlabels:
        for k in M.mlabels:
            for a in A.labels:
                put((qa(a), qm(m), qm(k)), M.n(a, m, k))
                # (H <| a) from (a^v |> m)^v
                put((qn(m), qa(a), qn(k)), M.n(A.dual[a], m, k))
                # <m, k^v> = Hom(k, m)
                put((qm(m), qn(k), qa(a)), M.n(a, k, m))
            for y in B.labels:
                put((qm(m), qb(y), qm(k)), M.r(m, y, k))
                # y |> m^v from (m <| y^v)^v
                put((qb(y), qn(m), qn(k)), M.r(m, B.dual[y], k))
                # [m^v, k] from Hom(m <| y, k)
                put((qn(m), qm(k), qb(y)), M.r(m, y, k))
    return out


def build_canonical_context(
    A: FusionData, M: ModuleData, B: FusionData | None = None, tol: Tolerance = DEFAULT_TOL, name: str = "context"
) -> MoritaContextData:
    """Morita context of a bimodule whose right base is the supplied dual category.

    Multiplicities of the mixed products come from the actions; associator
    symbols come from the module's completion when it is multiplicity-free.
    """
    B = B if B is not None else M.right_base
    if B is None:
        raise ValueError("the dual category B must be supplied")
    if M.right_base is not None and M.right_base != B:
        raise ValueError("B differs from the module's right base")
    if M.base != A:
        raise ValueError("A differs from the module's base")
    for a in A.labels:
        for m in M.mlabels:
            for y in B.labels:
                for k in M.mlabels:
                    lhs = sum(M.n(a, m, e) * M.r(e, y, k) for e in M.mlabels)
                    rhs = sum(M.r(m, y, f) * M.n(a, f, k) for f in M.mlabels)
                    if lhs != rhs:
                        raise ActionsDoNotCommute(f"(a |> m) <| y and a |> (m <| y) differ at {(a, m, y, k)}")
    mult = _derived_mult(A, B, M)
    rep = CheckReport("context_build", tol=tol, tier="dimension")
    labels = (
        [qualify("A", x) for x in A.labels]
        + [qualify("M", x) for x in M.mlabels]
        + [qualify("N", x) for x in M.mlabels]
        + [qualify("B", x) for x in B.labels]
    )
    ends = {x: CELL_ENDS[x[0]] for x in labels}
    dual = {qualify("A", a): qualify("A", A.dual[a]) for a in A.labels}
    dual.update({qualify("B", b): qualify("B", B.dual[b]) for b in B.labels})
    dual.update({qualify("M", m): qualify("N", m) for m in M.mlabels})
    dual.update({qualify("N", m): qualify("M", m) for m in M.mlabels})
    units = {0: qualify("A", A.unit), 1: qualify("B", B.unit)}
    cell = {x: x[0] for x in labels}
    linked = M.linked
    tier = "dimension"
    fs: dict = {}
    if linked is not None:
        for key in sorted(set(mult) | set(linked.mult)):
            rep.add_exact("completion_mult", key, linked.N(*key), mult.get(key, 0))
        if set(linked.labels) != set(labels):
            rep.add_flag("completion_labels", (), False)
        if rep.verdict:
            if all(n <= 1 for n in mult.values()):
                tier = "structure"
                fs = dict(linked.fsymbols)
            else:
                warnings.warn("multiplicities > 1: context degraded to the dimension tier", stacklevel=2)
    skel = Skeleton(tuple(labels), ends, units, mult, dual, fs, cell)
    module = ModuleData(A, M.mlabels, M.action, M.lsymbols, B, M.right_action, M.msymbols, M.rsymbols, skel, M.name)
    return MoritaContextData(A, B, module, skel, tier, {}, {}, name, rep)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _rdual(skel: Skeleton, x: str) -> str | None:
    """x^v: the label y with 1 in y (x) x."""
    one = skel.units[skel.right(x)]
    c = [y for y in skel.labels if skel.N(y, x, one) > 0]
    return c[0] if len(c) == 1 else None


def _ldual(skel: Skeleton, x: str) -> str | None:
    """^v x: the label y with 1 in x (x) y."""
    one = skel.units[skel.left(x)]
    c = [y for y in skel.labels if skel.N(x, y, one) > 0]
    return c[0] if len(c) == 1 else None


def _pair_type(x: str, y: str) -> str:
    return x[0] + y[0]


def _product(skel: Skeleton, x: str, y: str) -> dict[str, int]:
    return {z: skel.N(x, y, z) for z in skel.labels if skel.N(x, y, z)}


def _map_dec(dec: Mapping[str, int], f: Callable[[str], str | None]) -> dict[str, int]:
    out: dict[str, int] = {}
    for z, n in dec.items():
        key = f(z) or "?"
        out[key] = out.get(key, 0) + n
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def verify_context_coherence(ctx: MoritaContextData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """All 32 pentagon families of the linking skeleton (structure tier) or their shadows."""
    skel = ctx.skeleton
    fams = sorted({skel.family(*w) for w in skel.composable_words(4)})
    if ctx.structure:
        names = {f: f"pentagon[{cell_word(f)}]" for f in fams}
        rep = skel.pentagon_report("coherence", tol, fams, names)
        rep.tier = "structure"
    else:
        rep = CheckReport("coherence", tol=tol, tier="dimension")
        ring = skel.ring_report("coherence", tol)
        for r in ring.records:
            if r.family == "associativity":
                fam = skel.family(*r.index[:3])
                rep.records.append(r.__class__(f"shadow[{cell_word(fam)}]", r.index, r.residual, r.bound, r.note))
            else:
                rep.records.append(r)
    rep.meta = {"families": len(fams)}
    return rep


def dual_1morphism(
    ctx: MoritaContextData, x: OneMorphism, side: str = "right", tol: Tolerance = DEFAULT_TOL
) -> DualData:
    """Right or left dual of a 1-morphism with its (co)evaluation scalars and snake residuals."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    skel = ctx.skeleton
    find = _rdual if side == "right" else _ldual
    duals = []
    for q in x.qualified:
        if q not in skel.ends:
            raise KeyError(f"{q!r} is not a label of the context")
        d = find(skel, q)
        if d is None:
            raise ValueError(f"{q!r} has no {side} dual")
        duals.append(d)
    out = OneMorphism(duals[0][0], tuple(unqualify(d) for d in duals))
    rep = CheckReport(f"snake_{side}", tol=tol)
    ev: dict[str, complex] = {}
    coev: dict[str, complex] = {}
    lev: dict[str, complex] = {}
    lcoev: dict[str, complex] = {}
    if ctx.structure:
        if not skel.multiplicity_free():
            raise UnsupportedMultiplicity("structure data of duals needs multiplicity-free fusion")
        calc = Calculus(skel)
        for q in x.qualified:
            ev[q], coev[q] = skel.ev_scalar(q), 1.0 + 0j
            lev[q], lcoev[q] = skel.lev_scalar(q), 1.0 + 0j
            zs = calc.snake_right(leaf(q)) if side == "right" else calc.snake_left(leaf(q))
            for k, z in enumerate(zs):
                rep.add(f"snake_{k + 1}", (q,), float(np.max(np.abs(z - np.eye(z.shape[0])))), 1.0)
    return DualData(out, ev, coev, lev, lcoev, rep)


# adjunction round trips ------------------------------------------------------


def _hom_rows(calc: Calculus, src, target: str) -> list[np.ndarray]:
    """Basis of Hom(src, target) as row vectors (target a simple)."""
    b = calc.basis(src)
    out = []
    for i, z in enumerate(b):
        if z == target:
            v = np.zeros((1, len(b)), dtype=complex)
            v[0, i] = 1.0
            out.append(v)
    return out


def _hom_cols(calc: Calculus, source: str, tgt) -> list[np.ndarray]:
    b = calc.basis(tgt)
    out = []
    for i, z in enumerate(b):
        if z == source:
            v = np.zeros((len(b), 1), dtype=complex)
            v[i, 0] = 1.0
            out.append(v)
    return out


def _adjunction(calc: Calculus, pattern: str, x: str, u: str, v: str) -> tuple[list[float], list[float]]:
    """Round-trip residuals of the four duality adjunctions.

    pattern i  : Hom(u x, v) = Hom(u, v x^v)
    pattern ii : Hom(v, u x) = Hom(v ^vx, u)
    pattern iii: Hom(x u, v) = Hom(u, ^vx v)
    pattern iv : Hom(v, x u) = Hom(x^v v, u)
    Returns residuals of (back . forth) on the first Hom space and of
    (forth . back) on the second.
    """
    X, U, V = leaf(x), leaf(u), leaf(v)
    Xd = calc.dual_obj(X)
    iX, iU, iV, iXd = calc.ident(X), calc.ident(U), calc.ident(V), calc.ident(Xd)
    if pattern == "i":
        UX = tens(U, X)

        def fwd(f):
            return (
                calc.tensor(f, UX, V, iXd, Xd, Xd)
                @ calc.assoc_inv(U, X, Xd)
                @ calc.tensor(iU, U, U, calc.coev(X), calc.unit_obj(calc.ends(X)[0]), tens(X, Xd))
                @ calc.runit(U).T
            )

        def bwd(g):
            return (
                calc.runit(V)
                @ calc.tensor(iV, V, V, calc.ev(X), tens(Xd, X), calc.unit_obj(calc.ends(X)[1]))
                @ calc.assoc(V, Xd, X)
                @ calc.tensor(g, U, tens(V, Xd), iX, X, X)
            )

        first, second = _hom_rows(calc, UX, v), _hom_cols(calc, u, tens(V, Xd))
    elif pattern == "ii":
        UX = tens(U, X)

        def fwd(f):
            return (
                calc.runit(U)
                @ calc.tensor(iU, U, U, calc.lev(X), tens(X, Xd), calc.unit_obj(calc.ends(X)[0]))
                @ calc.assoc(U, X, Xd)
                @ calc.tensor(f, V, UX, iXd, Xd, Xd)
            )

        def bwd(g):
            return (
                calc.tensor(g, tens(V, Xd), U, iX, X, X)
                @ calc.assoc_inv(V, Xd, X)
                @ calc.tensor(iV, V, V, calc.lcoev(X), calc.unit_obj(calc.ends(X)[1]), tens(Xd, X))
                @ calc.runit(V).T
            )

        first, second = _hom_cols(calc, v, UX), _hom_rows(calc, tens(V, Xd), u)
    elif pattern == "iii":
        XU = tens(X, U)

        def fwd(f):
            return (
                calc.tensor(iXd, Xd, Xd, f, XU, V)
                @ calc.assoc(Xd, X, U)
                @ calc.tensor(calc.lcoev(X), calc.unit_obj(calc.ends(X)[1]), tens(Xd, X), iU, U, U)
                @ calc.lunit(U).T
            )

        def bwd(g):
            return (
                calc.lunit(V)
                @ calc.tensor(calc.lev(X), tens(X, Xd), calc.unit_obj(calc.ends(X)[0]), iV, V, V)
                @ calc.assoc_inv(X, Xd, V)
                @ calc.tensor(iX, X, X, g, U, tens(Xd, V))
            )

        first, second = _hom_rows(calc, XU, v), _hom_cols(calc, u, tens(Xd, V))
    elif pattern == "iv":
        XU = tens(X, U)

        def fwd(f):
            return (
                calc.lunit(U)
                @ calc.tensor(calc.ev(X), tens(Xd, X), calc.unit_obj(calc.ends(X)[1]), iU, U, U)
                @ calc.assoc_inv(Xd, X, U)
                @ calc.tensor(iXd, Xd, Xd, f, V, XU)
            )

        def bwd(g):
            return (
                calc.tensor(iX, X, X, g, tens(Xd, V), U)
                @ calc.assoc(X, Xd, V)
                @ calc.tensor(calc.coev(X), calc.unit_obj(calc.ends(X)[0]), tens(X, Xd), iV, V, V)
                @ calc.lunit(V).T
            )

        first, second = _hom_cols(calc, v, XU), _hom_rows(calc, tens(Xd, V), u)
    else:  # pragma: no cover - internal misuse
        raise ValueError(pattern)
    r1 = [float(np.max(np.abs(bwd(fwd(f)) - f))) for f in first]
    r2 = [float(np.max(np.abs(fwd(bwd(g)) - g))) for g in second]
    return r1, r2


# (family, pattern, cell of x, cell of u, cell of v)
_ADJ = [
    ("(i)", "i", "M", "A", "M"),
    ("(ii)", "ii", "M", "A", "M"),
    ("(iii)", "iii", "M", "B", "M"),
    ("(iv)", "iv", "M", "B", "M"),
    ("(v)", "i", "N", "B", "N"),
    ("(vi)", "ii", "N", "B", "N"),
    ("(vii)", "iii", "N", "A", "N"),
    ("(viii)", "iv", "N", "A", "N"),
]


def _adjunction_dims(skel: Skeleton, pattern: str, x: str, u: str, v: str) -> tuple[int, int]:
    xr, xl = _rdual(skel, x), _ldual(skel, x)
    if pattern == "i":
        return skel.N(u, x, v), skel.N(v, xr, u) if xr else -1
    if pattern == "ii":
        return skel.N(u, x, v), skel.N(v, xl, u) if xl else -1
    if pattern == "iii":
        return skel.N(x, u, v), skel.N(xl, v, u) if xl else -1
    return skel.N(x, u, v), skel.N(xr, v, u) if xr else -1


def _internal_hom_dims(ctx: MoritaContextData, fam: str, x: str, y: str, z: str) -> tuple[int, int]:
    """Internal (co)Hom from the actions against the mixed product."""
    skel = ctx.skeleton
    A, B, M = ctx.A, ctx.B, ctx.M
    ux, uy, uz = unqualify(x), unqualify(y), unqualify(z)
    xr, xl = _rdual(skel, x), _ldual(skel, x)
    if fam == "(i)":  # Hom^A_M(x, y) = <y, x^v>
        return internal_hom(M, ux, uy)[uz], skel.N(y, xr, z)
    if fam == "(ii)":  # coHom^A_M(x, y) = <y, ^v x>
        return internal_cohom(M, ux, uy)[uz], skel.N(y, xl, z)
    if fam == "(iii)":  # Hom^B_M(x, y) = [^v x, y]
        return M.r(ux, uz, uy), skel.N(xl, y, z)
    if fam == "(iv)":  # coHom^B_M(x, y) = [x^v, y]
        return M.r(uy, B.dual[uz], ux), skel.N(xr, y, z)
    if fam == "(v)":  # Hom^B_N(x, y) = [y, x^v]
        return skel.N(qualify("B", uz), x, y), skel.N(y, xr, z)
    if fam == "(vi)":  # coHom^B_N(x, y) = [y, ^v x]
        return skel.N(qualify("B", B.dual[uz]), y, x), skel.N(y, xl, z)
    if fam == "(vii)":  # Hom^A_N(x, y) = <^v x, y>
        return skel.N(x, qualify("A", uz), y), skel.N(xl, y, z)
    # (viii) coHom^A_N(x, y) = <x^v, y>
    return skel.N(y, qualify("A", A.dual[uz]), x), skel.N(xr, y, z)


_IHOM = [
    ("(i)", "M", "A"),
    ("(ii)", "M", "A"),
    ("(iii)", "M", "B"),
    ("(iv)", "M", "B"),
    ("(v)", "N", "B"),
    ("(vi)", "N", "B"),
    ("(vii)", "N", "A"),
    ("(viii)", "N", "A"),
]


def duality_dim_suite(
    ctx: MoritaContextData, tol: Tolerance = DEFAULT_TOL, structure: bool | None = None
) -> CheckReport:
    """The 24 duality identity families, exactly at dimension level and
    optionally (default: when the context allows it) at structure level."""
    skel = ctx.skeleton
    do_struct = ctx.structure if structure is None else (structure and ctx.structure)
    rep = CheckReport("duality", tol=tol, tier="structure" if do_struct else "dimension")
    calc = Calculus(skel) if do_struct else None
    cells = {c: skel.cell_labels(c) for c in "AMNB"}
    # double duals and duals of products
    for fam, c in (("dual(i)", "M"), ("dual(ii)", "N")):
        for x in cells[c]:
            r, l = _rdual(skel, x), _ldual(skel, x)
            rep.add_exact(fam, (x, "l(r)"), _ldual(skel, r) if r else None, x)
            rep.add_exact(fam, (x, "r(l)"), _rdual(skel, l) if l else None, x)
            if calc is not None:
                for side, zs in (("right", calc.snake_right(leaf(x))), ("left", calc.snake_left(leaf(x)))):
                    for k, z in enumerate(zs):
                        res = float(np.max(np.abs(z - np.eye(z.shape[0]))))
                        rep.add(f"{fam}_snake", (x, side, k + 1), res, 1.0)
    prod_fams = [("dual(iii)", "AM"), ("dual(iv)", "MB"), ("dual(v)", "BN"), ("dual(vi)", "NA"),
                 ("dual(vii)", "MN"), ("dual(viii)", "NM")]
    for fam, pt in prod_fams:
        for x in cells[pt[0]]:
            for y in cells[pt[1]]:
                lhs = _map_dec(_product(skel, x, y), lambda z: _rdual(skel, z))
                xr, yr = _rdual(skel, x), _rdual(skel, y)
                rhs = _product(skel, yr, xr) if xr and yr else {"?": 1}
                rep.add_exact(fam, (x, y), sorted(lhs.items()), sorted(rhs.items()))
                if calc is not None:
                    ph = calc.phi(leaf(x), leaf(y))
                    chans = calc.basis(tens(leaf(x), leaf(y)))
                    off = ph - np.diag(np.diag(ph))
                    for i, w in enumerate(chans):
                        closed = skel._phi(x, y, w)
                        rep.add(f"{fam}_iso", (x, y, w), abs(ph[i, i] - closed), max(abs(closed), 1.0))
                    if off.size:
                        rep.add(f"{fam}_iso", (x, y, "offdiag"), float(np.max(np.abs(off))), 1.0)
    # adjunctions
    for fam, pat, cx, cu, cv in _ADJ:
        for x in cells[cx]:
            for u in cells[cu]:
                for v in cells[cv]:
                    lhs, rhs = _adjunction_dims(skel, pat, x, u, v)
                    rep.add_exact(f"adj{fam}", (u, x, v), lhs, rhs)
                    if calc is not None and lhs == rhs:
                        r1, r2 = _adjunction(calc, pat, x, u, v)
                        for k, r in enumerate(r1):
                            rep.add(f"adj{fam}_roundtrip", (u, x, v, k), r, 1.0)
                        for k, r in enumerate(r2):
                            rep.add(f"ihom{fam}_universal", (u, x, v, k), r, 1.0)
    # internal Homs and coHoms as mixed products
    for fam, cm, cb in _IHOM:
        for x in cells[cm]:
            for y in cells[cm]:
                for z in cells[cb]:
                    lhs, rhs = _internal_hom_dims(ctx, fam, x, y, z)
                    rep.add_exact(f"ihom{fam}", (x, y, z), lhs, rhs)
    return rep


def _module_sides(ctx: MoritaContextData) -> list[tuple[str, str, str, bool]]:
    # (name, acting cell, module cell, acting on the left)
    return [("M_over_A", "A", "M", True), ("M_over_B", "B", "M", False),
            ("N_over_B", "B", "N", True), ("N_over_A", "A", "N", False)]


def double_dual_suite(ctx: MoritaContextData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Double duals of module 1-morphisms against the relative Serre functors."""
    skel = ctx.skeleton
    rep = CheckReport("double_dual", tol=tol, tier="structure" if ctx.structure else "dimension")
    for name, act, mod, left in _module_sides(ctx):
        acting, module = skel.cell_labels(act), skel.cell_labels(mod)
        sd = serre_from_skeleton(skel, acting, module, left, tol, "double_dual", ctx.structure)
        for r in sd.report.records:
            if r.family in ("twist_coherence",):
                continue
            rep.records.append(r.__class__(f"{name}_{r.family}", r.index, r.residual, r.bound, r.note))
        for m in module:
            r1 = _rdual(skel, m)
            dd = _rdual(skel, r1) if r1 else None
            rep.add_exact(f"{name}_label", (m,), dd, sd.object_map[m])
        if ctx.structure:
            one = skel.units[CELL_ENDS[act][0]]
            for m in module:
                pair = (one, m) if left else (m, one)
                rep.add(f"{name}_unit_scalar", (m,), abs(skel.delta(*pair, m) - 1.0), 1.0)
    return rep


def radford_pseudo_suite(
    ctx: MoritaContextData, tol: Tolerance = DEFAULT_TOL, components: Mapping[str, complex] | None = None
) -> CheckReport:
    """Pseudo-naturality squares r_s r_t = delta(s, t; u)^2 r_u for all composable simple pairs.

    ``components`` (qualified labels) overrides the computed Radford scalars.
    """
    skel = ctx.skeleton
    if not ctx.structure:
        raise UnsupportedMultiplicity("the Radford suite needs structure-tier data")
    r = {x: skel.radford_scalar(x) for x in skel.labels}
    if components:
        r.update({k: complex(v) for k, v in components.items()})
    rep = CheckReport("radford", tol=tol, tier="structure")
    for s, t in skel.composable_words(2):
        fam = f"square[{_pair_type(s, t)}]"
        for u in skel.channels(s, t):
            lhs = r[s] * r[t]
            rhs = skel.delta(s, t, u) ** 2 * r[u]
            rep.add(fam, (s, t, u), abs(lhs - rhs), max(abs(lhs), abs(rhs)))
    for obj, one in sorted(skel.units.items()):
        rep.add("unit_component", (one,), abs(r[one] - 1.0), 1.0)
    return rep


def pivotal_transport(
    ctx: MoritaContextData, p: PivotalAssignment, pt: PivotalAssignment, tol: Tolerance = DEFAULT_TOL
) -> PivotalTransport:
    """Pivotal structure q on B and module pivotal structure phat on N induced by (p, pt)."""
    skel = ctx.skeleton
    if not ctx.structure:
        raise UnsupportedMultiplicity("pivotal transport needs structure-tier data")
    qm = lambda x: qualify("M", x)  # noqa: E731
    q: dict[str, complex] = {}
    for y in ctx.B.labels:
        by = qualify("B", y)
        for m in ctx.M.mlabels:
            ks = skel.channels(qm(m), by)
            if ks:
                k = ks[0]
                q[y] = skel.delta(qm(m), by, k) * pt[unqualify(k)] / pt[m]
                break
    ph: dict[str, complex] = {}
    for H in ctx.N_labels:
        nh = qualify("N", H)
        for m in ctx.M.mlabels:
            as_ = skel.channels(qm(m), nh)
            if as_:
                a = as_[0]
                ph[H] = skel.delta(qm(m), nh, a) * p[unqualify(a)] / pt[m]
                break
    qa_ = PivotalAssignment(q, ctx.B.unit)
    pa_ = PivotalAssignment(ph)
    rep = CheckReport("pivotal_transport", tol=tol)
    vals = _joint_values(ctx, p, pt, qa_, pa_)
    fams = {"BB": "q_monoidal", "BN": "phat_module", "NA": "phat_bimodule"}
    pairs = [(s, t) for s, t in skel.composable_words(2) if _pair_type(s, t) in fams]
    pivotal_residuals(skel, vals, rep, lambda s, t: fams[_pair_type(s, t)], pairs)
    return PivotalTransport(qa_, pa_, rep)


def _joint_values(
    ctx: MoritaContextData, p: PivotalAssignment, pt: PivotalAssignment, q: PivotalAssignment, ph: PivotalAssignment
) -> dict[str, complex]:
    vals = {qualify("A", a): p[a] for a in ctx.A.labels}
    vals.update({qualify("B", b): q[b] for b in ctx.B.labels})
    vals.update({qualify("M", m): pt[m] for m in ctx.M.mlabels})
    vals.update({qualify("N", H): ph[H] for H in ctx.N_labels})
    return vals


def pivotal_morita_suite(
    ctx: MoritaContextData,
    p: PivotalAssignment,
    pt: PivotalAssignment,
    q: PivotalAssignment,
    ph: PivotalAssignment,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckReport:
    """The eight compatibility families of a pivotal Morita context."""
    skel = ctx.skeleton
    if not ctx.structure:
        raise UnsupportedMultiplicity("the pivotal Morita suite needs structure-tier data")
    rep = CheckReport("pivotal_morita", tol=tol)
    vals = _joint_values(ctx, p, pt, q, ph)
    rep.add("unit_A", (ctx.A.unit,), abs(p[ctx.A.unit] - 1.0), 1.0)
    rep.add("unit_B", (ctx.B.unit,), abs(q[ctx.B.unit] - 1.0), 1.0)
    return pivotal_residuals(skel, vals, rep, lambda s, t: PAIR_FAMILIES[_pair_type(s, t)])


def _action_matrix(skel: Skeleton, x: str, cell: str, left: bool) -> np.ndarray:
    labs = skel.cell_labels(cell)
    idx = {z: i for i, z in enumerate(labs)}
    mat = np.zeros((len(labs), len(labs)), dtype=int)
    for m in labs:
        for k in labs:
            mat[idx[k], idx[m]] = skel.N(x, m, k) if left else skel.N(m, x, k)
    return mat


def strong_context_suite(ctx: MoritaContextData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Grothendieck-level consequences of a strong Morita context."""
    skel = ctx.skeleton
    rep = CheckReport("strong", tol=tol, tier="dimension")
    cells = {c: skel.cell_labels(c) for c in "AMNB"}

    # n |-> <-, n> against the internal Hom functors Hom(k, -), k in M
    def bijection(fam: str, sources: list[str], targets: list[str], mat_src, mat_tgt) -> None:
        used: list[str] = []
        for s in sources:
            hits = [t for t in targets if np.array_equal(mat_src(s), mat_tgt(t))]
            rep.add_exact(fam, (s,), len(hits), 1)
            used += hits
        rep.add_exact(f"{fam}_bijective", (), len(set(used)), len(targets))

    def mixt_matrix(n: str) -> np.ndarray:
        return np.array([[skel.N(m, n, a) for a in cells["A"]] for m in cells["M"]])

    def ihom_matrix(k: str) -> np.ndarray:
        return np.array([[ctx.M.n(unqualify(a), unqualify(k), unqualify(m)) for a in cells["A"]] for m in cells["M"]])

    bijection("mixt_equivalence", cells["N"], cells["M"], mixt_matrix, ihom_matrix)

    def mixtd_matrix(m: str) -> np.ndarray:
        return np.array([[skel.N(H, m, b) for b in cells["B"]] for H in cells["N"]])

    def bhom_matrix(m: str) -> np.ndarray:
        # H = ^v k  |->  Hom^B_M(k, m)
        ks = {H: unqualify(_rdual(skel, H) or "") for H in cells["N"]}
        return np.array([[ctx.M.r(ks[H], unqualify(b), unqualify(m)) for b in cells["B"]] for H in cells["N"]])

    bijection("mixtd_equivalence", cells["M"], cells["M"], mixtd_matrix, bhom_matrix)

    # actions on K(M) are ring homomorphisms and commute
    for cell, acting, left in (("M", "A", True), ("M", "B", False), ("N", "B", True), ("N", "A", False)):
        mats = {x: _action_matrix(skel, x, cell, left) for x in cells[acting]}
        for x in cells[acting]:
            for y in cells[acting]:
                prod = mats[x] @ mats[y] if left else mats[y] @ mats[x]
                comb = sum(skel.N(x, y, z) * mats[z] for z in cells[acting])
                rep.add_exact(f"ring_hom[{acting}->{cell}]", (x, y), int(np.abs(prod - comb).sum()), 0)
    for cell, lc, rc in (("M", "A", "B"), ("N", "B", "A")):
        for a in cells[lc]:
            La = _action_matrix(skel, a, cell, True)
            for b in cells[rc]:
                Rb = _action_matrix(skel, b, cell, False)
                rep.add_exact(f"actions_commute[{cell}]", (a, b), int(np.abs(La @ Rb - Rb @ La).sum()), 0)
    # compatibility squares: <m, n> |> m' = m <| [n, m'] and [n, m] |> n' = n <| <m, n'>
    for x, y, z in skel.composable_words(3):
        word = x[0] + y[0] + z[0]
        if word not in ("MNM", "NMN"):
            continue
        for w in skel.labels:
            if skel.ends[w] != (skel.left(x), skel.right(z)):
                continue
            lhs = sum(skel.N(x, y, e) * skel.N(e, z, w) for e in skel.labels)
            rhs = sum(skel.N(y, z, f) * skel.N(x, f, w) for f in skel.labels)
            rep.add_exact(f"compatibility[{word}]", (x, y, z, w), lhs, rhs)
    # every simple of A and B occurs in some mixed product
    for target, (c1, c2) in (("A", ("M", "N")), ("B", ("N", "M"))):
        for a in cells[target]:
            hit = any(skel.N(x, y, a) for x in cells[c1] for y in cells[c2])
            rep.add_flag(f"mixed_products_cover[{target}]", (a,), hit)
    # rank check: Morita equivalent fusion categories share their global dimension
    da, db = ctx.A.fp_dim(), ctx.B.fp_dim()
    rep.add("fp_dimension", ("A", "B"), abs(da - db), max(da, db))
    return rep


def all_suites(ctx: MoritaContextData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    parts = [verify_context_coherence(ctx, tol), duality_dim_suite(ctx, tol), double_dual_suite(ctx, tol),
             strong_context_suite(ctx, tol)]
    if ctx.structure:
        parts.append(radford_pseudo_suite(ctx, tol))
    return merge_reports(ctx.name, parts, tol)
