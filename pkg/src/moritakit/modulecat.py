"""Skeletal module categories: validation, internal (co)Homs, Serre data, module pivotality.

Inside skeletons every label is qualified by its cell, ``"A:x"`` for the base,
``"M:m"`` for the module, ``"B:y"`` for a right base and ``"N:m"`` for the
dual of ``"M:m"``.  The module category is the ``0 -> 1`` cell of a two-object
skeleton; structure-level operations (Serre twist, module pivotal structures,
Radford components) need the duals of module labels and therefore a
*completion*: the full linking skeleton of a Morita context that contains the
module.  The module's own associator entries always take precedence over the
completion's.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .fusion import FusionData, PivotalAssignment, check_spherical_tensor, pivotal_residuals, pivotal_system
from .numerics import DEFAULT_TOL, InconsistentSystem, Tolerance, approx_eq, lattice_root_orders, solve_multiplicative
from .numerics import MultiplicativeSystem
from .report import CheckReport
from .skeleton import Calculus, Skeleton, UnsupportedMultiplicity, leaf, tens

__all__ = [
    "ModuleData",
    "ObjectDecomposition",
    "SerreData",
    "IHomStructure",
    "ModuleRadford",
    "MissingCompletion",
    "qualify",
    "unqualify",
    "cell_word",
    "validate_module",
    "internal_hom",
    "internal_cohom",
    "internal_hom_oracle",
    "ihom_structure_maps",
    "serre_data",
    "serre_from_skeleton",
    "solve_module_pivotal",
    "verify_module_pivotal",
    "radford_module_components",
    "check_spherical_module",
]

CELL_ENDS = {"A": (0, 0), "M": (0, 1), "N": (1, 0), "B": (1, 1)}
_CELL_OF_ENDS = {v: k for k, v in CELL_ENDS.items()}


class MissingCompletion(ValueError):
    """Structure-level module operation on a module without a linking completion."""


def qualify(cell: str, x: str) -> str:
    return f"{cell}:{x}"


def unqualify(x: str) -> str:
    return x.split(":", 1)[1]


def cell_word(objects: str) -> str:
    """Object sequence such as ``'00110'`` to its cell word ``'AMBN'``."""
    return "".join(_CELL_OF_ENDS[(int(a), int(b))] for a, b in zip(objects, objects[1:]))


@dataclass(frozen=True)
class ObjectDecomposition:
    """Multiplicities of simples in an object of a named category."""

    category: str
    mults: Mapping[str, int]

    def __post_init__(self) -> None:
        clean = {k: int(v) for k, v in self.mults.items() if int(v) != 0}
        if any(v < 0 for v in clean.values()):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "mults", clean)

    def __getitem__(self, x: str) -> int:
        return int(self.mults.get(x, 0))

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(sorted(self.mults))

    @property
    def length(self) -> int:
        return sum(self.mults.values())

    def as_dict(self) -> dict[str, int]:
        return dict(sorted(self.mults.items()))


FKey = tuple[str, str, str, str, str, str]


@dataclass(frozen=True, eq=False)
class ModuleData:
    """A left module category over ``base``, optionally a bimodule with ``right_base``.

    ``action[(a, m, k)]`` is the multiplicity of ``k`` in ``a |> m`` and
    ``lsymbols[(a, b, m, k, e, f)]`` the module associator in the same layout
    as F-symbols.  For bimodules ``right_action[(m, y, k)]`` counts ``k`` in
    ``m <| y``, ``msymbols`` holds the middle associator ``(a |> m) <| y`` and
    ``rsymbols`` the right associator ``(m <| y) <| z``.
    """

    base: FusionData
    mlabels: tuple[str, ...]
    action: Mapping[tuple[str, str, str], int]
    lsymbols: Mapping[FKey, complex]
    right_base: FusionData | None = None
    right_action: Mapping[tuple[str, str, str], int] = field(default_factory=dict)
    msymbols: Mapping[FKey, complex] = field(default_factory=dict)
    rsymbols: Mapping[FKey, complex] = field(default_factory=dict)
    completion: Skeleton | None = None
    name: str = "M"

    def __post_init__(self) -> None:
        object.__setattr__(self, "mlabels", tuple(self.mlabels))
        if not self.mlabels:
            raise ValueError("a module category needs at least one simple object")
        for attr in ("action", "right_action"):
            object.__setattr__(self, attr, {tuple(k): int(v) for k, v in getattr(self, attr).items() if int(v)})
        for attr in ("lsymbols", "msymbols", "rsymbols"):
            object.__setattr__(self, attr, {tuple(k): complex(v) for k, v in getattr(self, attr).items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleData):
            return NotImplemented
        return (
            self.base == other.base
            and self.mlabels == other.mlabels
            and self.action == other.action
            and self.lsymbols == other.lsymbols
            and self.right_base == other.right_base
            and self.right_action == other.right_action
            and self.msymbols == other.msymbols
            and self.rsymbols == other.rsymbols
            and self.completion == other.completion
            and self.name == other.name
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_bimodule(self) -> bool:
        return self.right_base is not None

    def n(self, a: str, m: str, k: str) -> int:
        return int(self.action.get((a, m, k), 0))

    def r(self, m: str, y: str, k: str) -> int:
        return int(self.right_action.get((m, y, k), 0))

    @cached_property
    def skeleton(self) -> Skeleton:
        """Two-object skeleton of the (bi)module with qualified labels."""
        A, B = self.base, self.right_base
        qa = lambda x: qualify("A", x)  # noqa: E731
        qm = lambda x: qualify("M", x)  # noqa: E731
        qb = lambda x: qualify("B", x)  # noqa: E731
        labels = [qa(x) for x in A.labels] + [qm(x) for x in self.mlabels]
        ends = {qa(x): (0, 0) for x in A.labels}
        ends.update({qm(x): (0, 1) for x in self.mlabels})
        units = {0: qa(A.unit)}
        mult = {(qa(a), qa(b), qa(c)): n for (a, b, c), n in A.fusion.items()}
        mult.update({(qa(a), qm(m), qm(k)): n for (a, m, k), n in self.action.items()})
        dual = {qa(x): qa(y) for x, y in A.dual.items()}
        fs = {tuple(qa(x) for x in k): v for k, v in A.fsymbols.items()}
        fs.update({(qa(a), qa(b), qm(m), qm(k), qa(e), qm(f)): v for (a, b, m, k, e, f), v in self.lsymbols.items()})
        if B is not None:
            labels += [qb(x) for x in B.labels]
            ends.update({qb(x): (1, 1) for x in B.labels})
            units[1] = qb(B.unit)
            mult.update({(qb(a), qb(b), qb(c)): n for (a, b, c), n in B.fusion.items()})
            mult.update({(qm(m), qb(y), qm(k)): n for (m, y, k), n in self.right_action.items()})
            dual.update({qb(x): qb(y) for x, y in B.dual.items()})
            fs.update({tuple(qb(x) for x in k): v for k, v in B.fsymbols.items()})
            fs.update(
                {(qa(a), qm(m), qb(y), qm(k), qm(e), qm(f)): v for (a, m, y, k, e, f), v in self.msymbols.items()}
            )
            fs.update(
                {(qm(m), qb(y), qb(z), qm(k), qm(e), qb(f)): v for (m, y, z, k, e, f), v in self.rsymbols.items()}
            )
        cell = {lab: lab[0] for lab in labels}
        return Skeleton(tuple(labels), ends, units, mult, dual, fs, cell)

    @cached_property
    def linked(self) -> Skeleton | None:
        """The completion with this module's own data laid over it."""
        if self.completion is None:
            return None
        own = self.skeleton
        return self.completion.with_symbols(own.mult, own.fsymbols)

    def require_linked(self) -> Skeleton:
        if self.linked is None:
            raise MissingCompletion(f"module {self.name!r} carries no linking completion")
        return self.linked

    def relabel(self, perm: Mapping[str, str]) -> "ModuleData":
        """Rename module labels (base labels unchanged)."""
        p = dict(perm)
        q = {qualify("M", m): qualify("M", p[m]) for m in self.mlabels}
        q.update({qualify("N", m): qualify("N", p[m]) for m in self.mlabels})
        comp = None
        if self.completion is not None:
            full = {x: q.get(x, x) for x in self.completion.labels}
            comp = self.completion.relabel(full)
        return ModuleData(
            base=self.base,
            mlabels=tuple(p[m] for m in self.mlabels),
            action={(a, p[m], p[k]): v for (a, m, k), v in self.action.items()},
            lsymbols={(a, b, p[m], p[k], e, p[f]): v for (a, b, m, k, e, f), v in self.lsymbols.items()},
            right_base=self.right_base,
            right_action={(p[m], y, p[k]): v for (m, y, k), v in self.right_action.items()},
            msymbols={(a, p[m], y, p[k], p[e], p[f]): v for (a, m, y, k, e, f), v in self.msymbols.items()},
            rsymbols={(p[m], y, z, p[k], p[e], f): v for (m, y, z, k, e, f), v in self.rsymbols.items()},
            completion=comp,
            name=self.name,
        )


@dataclass
class SerreData:
    """Object map and twist scalars of a relative Serre functor.

    ``twist[(x, m, k)]`` is the scalar of ``S(x . m) = x** . S(m)`` on the
    channel ``k`` (``x`` acting on the left, or on the right for right modules).
    """

    object_map: dict[str, str]
    twist: dict[tuple[str, str, str], complex]
    report: CheckReport

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in self.object_map.items())


@dataclass
class IHomStructure:
    module_functor: dict[tuple[str, ...], complex]
    dual_shift: dict[tuple[str, ...], complex]
    report: CheckReport


@dataclass
class ModuleRadford:
    components: dict[str, complex]
    report: CheckReport

    def __getitem__(self, m: str) -> complex:
        return self.components[m]


# ---------------------------------------------------------------------------


def validate_module(M: ModuleData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Multiplicity-level axioms, mixed pentagons and agreement with the completion."""
    rep = CheckReport("module_validation", tol=tol)
    A = M.base
    rep.add_flag("labels_distinct", (), len(set(M.mlabels)) == len(M.mlabels))
    ms, as_ = set(M.mlabels), set(A.labels)
    for (a, m, k) in sorted(M.action):
        rep.add_flag("action_labels", (a, m, k), a in as_ and m in ms and k in ms)
    if M.right_base is not None:
        bs = set(M.right_base.labels)
        for (m, y, k) in sorted(M.right_action):
            rep.add_flag("right_action_labels", (m, y, k), m in ms and y in bs and k in ms)
    if not rep.verdict:
        return rep
    skel = M.skeleton
    ring = skel.ring_report("module_validation", tol, require_duals=False)
    rep.extend(ring)
    rep.extend(skel.unit_normalization_report("module_validation", tol))
    fams = {w for w in _families(skel) if w not in ("00000", "11111")}
    names = {f: f"pentagon[{cell_word(f)}]" for f in fams}
    rep.extend(skel.pentagon_report("module_validation", tol, fams, names))
    if M.completion is not None:
        comp = M.completion
        for key in sorted(skel.mult):
            rep.add_exact("completion_mult", key, comp.N(*key), skel.mult[key])
        for key in sorted(skel.fsymbols):
            a, b = comp.F(*key), skel.fsymbols[key]
            rep.add("completion_symbols", key, abs(a - b), max(abs(a), abs(b)))
        for m in M.mlabels:
            rep.add_flag("completion_dual", (m,), comp.dual.get(qualify("M", m)) is not None)
    return rep


def _families(skel: Skeleton) -> set[str]:
    return {skel.family(*w) for w in skel.composable_words(4)}


def internal_hom(M: ModuleData, m: str, n: str) -> ObjectDecomposition:
    """Hom(m, n) in the base: the multiplicity of a is dim Hom(a |> m, n)."""
    return ObjectDecomposition(M.base.name, {a: M.n(a, m, n) for a in M.base.labels})


def internal_cohom(M: ModuleData, m: str, n: str) -> ObjectDecomposition:
    """coHom(m, n), the left dual of Hom(n, m)."""
    h = internal_hom(M, n, m)
    return ObjectDecomposition(M.base.name, {a: h[M.base.dual[a]] for a in M.base.labels})


def internal_hom_oracle(M: ModuleData) -> CheckReport:
    """mult_a Hom(m, n) against dim Hom(a |> m, n) read off the decomposition of a |> m.

    The decomposition is the basis of the tree object ``a |> m`` in the morphism
    engine (or the multiplicity table when multiplicities exceed one).
    """
    skel = M.skeleton
    rep = CheckReport("internal_hom_oracle", tier="dimension")
    calc = Calculus(skel) if skel.multiplicity_free() else None
    for a in M.base.labels:
        qa = qualify("A", a)
        for m in M.mlabels:
            qm = qualify("M", m)
            if calc is not None:
                parts = list(calc.basis(tens(leaf(qa), leaf(qm))))
            else:
                parts = [k for k in skel.labels for _ in range(skel.N(qa, qm, k))]
            for n in M.mlabels:
                rep.add_exact("ihom_multiplicity", (a, m, n), internal_hom(M, m, n)[a], parts.count(qualify("M", n)))
    return rep


def ihom_structure_maps(M: ModuleData, m: str, tol: Tolerance = DEFAULT_TOL) -> IHomStructure:
    """Structure scalars of the internal Hom ``Hom(m, -) = (-) (x) m^v``.

    ``module_functor[(a, n, d, e, f)]`` realizes ``Hom(m, a |> n) = a (x) Hom(m, n)``
    on the channel ``d`` (``e`` in ``a |> n``, ``f`` in ``Hom(m, n)``).
    ``dual_shift[(a, n, d, k, f)]`` realizes ``Hom(a |> m, n) = Hom(m, n) (x) a^v``
    (``k`` in ``a |> m``, ``f`` in ``Hom(m, n)``).  Both tables are computed by
    the morphism engine and compared with their closed forms; the coherence
    pentagons they have to satisfy are reported alongside.
    """
    skel = M.require_linked()
    skel.require_multiplicity_free()
    calc = Calculus(skel)
    rep = CheckReport("ihom_structure", tol=tol)
    qm = qualify("M", m)
    md = skel.dual[qm]
    Md = leaf(md)
    mf: dict[tuple[str, ...], complex] = {}
    ds: dict[tuple[str, ...], complex] = {}
    A = M.base
    for a in A.labels:
        qa = qualify("A", a)
        ad = skel.dual[qa]
        for n in M.mlabels:
            qn = qualify("M", n)
            X, N_ = leaf(qa), leaf(qn)
            # Hom(m, a |> n) -> a (x) Hom(m, n): the associator (a n) m^v -> a (n m^v)
            mat = calc.assoc(X, N_, Md)
            sb = calc.pos(tens(tens(X, N_), Md))
            tb = calc.pos(tens(X, tens(N_, Md)))
            for (p, _, d), col in sb.items():
                e = calc.basis(tens(X, N_))[p]
                for (_, q, d2), row in tb.items():
                    if d2 != d:
                        continue
                    f = calc.basis(tens(N_, Md))[q]
                    val = complex(mat[row, col])
                    closed = skel.F(qa, qn, md, d, e, f)
                    key = (a, n, unqualify(d), unqualify(e), unqualify(f))
                    mf[key] = val
                    rep.add("module_functor_closed_form", key, abs(val - closed), max(abs(val), abs(closed), 1.0))
            # Hom(a |> m, n) -> Hom(m, n) (x) a^v
            Am = tens(X, leaf(qm))
            Amd = calc.dual_obj(Am)
            ph = calc.phi(X, leaf(qm))
            src = tens(N_, Amd)
            step1 = calc.tensor(calc.ident(N_), N_, N_, np.linalg.inv(ph), Amd, tens(Md, leaf(ad)))
            step2 = calc.assoc_inv(N_, Md, leaf(ad))
            mat2 = step2 @ step1
            tgt = tens(tens(N_, Md), leaf(ad))
            amb = calc.basis(Am)
            nmb = calc.basis(tens(N_, Md))
            for (_, j, d), col in calc.pos(src).items():
                k = amb[j]
                for (p, _, d2), row in calc.pos(tgt).items():
                    if d2 != d:
                        continue
                    f = nmb[p]
                    val = complex(mat2[row, col])
                    kd = skel.dual[k]
                    closed = skel.finv(qn, md, ad, d, kd, f) / skel._phi(qa, qm, k)
                    key = (a, n, unqualify(d), unqualify(k), unqualify(f))
                    ds[key] = val
                    rep.add("dual_shift_closed_form", key, abs(val - closed), max(abs(val), abs(closed), 1.0))
    # coherence: pentagons with the internal Hom in the last (resp. middle) slot
    fams = {"00010": "coherence_module_functor[AAMN]", "01000": "coherence_dual_shift[MNAA]"}
    sub = skel.pentagon_report("ihom_structure", tol, fams, fams)
    tagged = [r for r in sub.records if qm in r.index]
    rep.records.extend(tagged)
    return IHomStructure(mf, ds, rep)


def serre_from_skeleton(
    skel: Skeleton,
    acting: Sequence[str],
    module: Sequence[str],
    left: bool = True,
    tol: Tolerance = DEFAULT_TOL,
    suite: str = "serre",
    structure: bool = True,
) -> SerreData:
    """Serre data of the module cell ``module`` acted on by ``acting`` (qualified labels).

    The object map is read off from the Hom duality
    ``Hom(m, n)^v = Hom(n, S(m))`` at the level of multiplicities; the twist
    is the double-dual structure scalar on (acting, module) pairs.
    """
    rep = CheckReport(suite, tol=tol)

    def act(x: str, m: str, k: str) -> int:
        return skel.N(x, m, k) if left else skel.N(m, x, k)

    obj: dict[str, str] = {}
    for m in module:
        best, best_bad = None, None
        for s in module:
            bad = 0
            for n in module:
                for x in acting:
                    xd = skel.dual[x]
                    bad += abs(act(xd, m, n) - act(x, n, s))
            if best_bad is None or bad < best_bad:
                best, best_bad = s, bad
        obj[m] = best  # type: ignore[assignment]
        rep.add_exact("hom_duality", (m, best), best_bad, 0)
    if len(set(obj.values())) != len(obj):
        rep.add_flag("object_map_bijective", (), False)
    twist: dict[tuple[str, str, str], complex] = {}
    if structure and skel.multiplicity_free() and all(skel.dual.get(x) for x in module):
        for x in acting:
            for m in module:
                pair = (x, m) if left else (m, x)
                for k in skel.channels(*pair):
                    twist[(x, m, k)] = skel.delta(pair[0], pair[1], k)
        # twisted bimodule coherence: the twist is compatible with the associator
        for key, val in sorted(skel.fsymbols.items()):
            a, b, c, d, e, f = key
            if abs(val) == 0:
                continue
            cells = (a in acting, b in acting, c in acting)
            shape_ok = (cells == (True, True, False) and c in module) if left else (
                cells == (False, True, True) and a in module
            )
            if not shape_ok:
                continue
            lhs = skel.delta(a, b, e) * skel.delta(e, c, d)
            rhs = skel.delta(b, c, f) * skel.delta(a, f, d)
            rep.add("twist_coherence", key, abs(lhs - rhs), max(abs(lhs), abs(rhs)))
        calc = Calculus(skel)
        for x in acting:
            for m in module:
                pair = (x, m) if left else (m, x)
                J = calc.double_dual_tensorator(leaf(pair[0]), leaf(pair[1]))
                for i, k in enumerate(calc.basis(tens(leaf(pair[0]), leaf(pair[1])))):
                    eng = 1.0 / J[i, i]
                    rep.add("twist_engine", (x, m, k), abs(eng - twist[(x, m, k)]), abs(eng))
    return SerreData(obj, twist, rep)


def serre_data(M: ModuleData, tol: Tolerance = DEFAULT_TOL) -> SerreData:
    """Relative Serre functor of the left module, with unqualified labels."""
    skel = M.require_linked()
    skel.require_multiplicity_free()
    acting = [qualify("A", a) for a in M.base.labels]
    module = [qualify("M", m) for m in M.mlabels]
    raw = serre_from_skeleton(skel, acting, module, True, tol)
    obj = {unqualify(k): unqualify(v) for k, v in raw.object_map.items()}
    tw = {(unqualify(a), unqualify(m), unqualify(k)): v for (a, m, k), v in raw.twist.items()}
    return SerreData(obj, tw, raw.report)


def _module_system(
    M: ModuleData, p: PivotalAssignment, pinned: bool, free_order: int
) -> tuple[MultiplicativeSystem, dict, list[str], list[tuple[str, str, str]], dict[str, complex]]:
    skel = M.require_linked()
    unknowns = [qualify("M", m) for m in M.mlabels]
    fixed = {qualify("A", a): p[a] for a in M.base.labels}
    pairs = [(qualify("A", a), u) for a in M.base.labels for u in unknowns]
    sys0, _, closed = pivotal_system(skel, unknowns, fixed, pairs)
    sys = MultiplicativeSystem(sys0.unknowns, sys0.constraints, unknowns[0] if pinned else None)
    orders = {u: max(o, free_order) for u, o in lattice_root_orders(sys).items()}
    return sys, orders, unknowns, closed, fixed


def solve_module_pivotal(
    M: ModuleData,
    p: PivotalAssignment,
    pinned: bool = True,
    free_order: int = 2,
    tol: Tolerance = DEFAULT_TOL,
) -> list[PivotalAssignment]:
    """All module pivotal structures over ``p``.

    With ``pinned`` the first module label is normalized to 1.  Without it the
    overall scalar, which the equations leave free, is enumerated over the
    roots of unity of order ``free_order``.
    """
    skel = M.require_linked()
    skel.require_multiplicity_free()
    sys, orders, unknowns, closed, fixed = _module_system(M, p, pinned, free_order)
    # equations whose module unknowns cancel constrain p alone
    val = {**{u: 1.0 for u in unknowns}, **fixed}
    for s_, t_, u_ in closed:
        if not approx_eq(val[s_] * val[t_], skel.delta(s_, t_, u_) * val[u_], tol):
            return []
    try:
        sols = solve_multiplicative(sys, orders, tol)
    except InconsistentSystem:
        return []
    return [PivotalAssignment({unqualify(u): v for u, v in zip(unknowns, s)}) for s in sols]


def verify_module_pivotal(
    M: ModuleData, p: PivotalAssignment, pt: PivotalAssignment, tol: Tolerance = DEFAULT_TOL
) -> CheckReport:
    """Residuals of ``p_a pt_m = twist(a, m, k) pt_k`` for all admissible triples."""
    skel = M.require_linked()
    vals = {qualify("A", a): p[a] for a in M.base.labels}
    vals.update({qualify("M", m): pt[m] for m in M.mlabels})
    pairs = [(qualify("A", a), qualify("M", m)) for a in M.base.labels for m in M.mlabels]
    rep = CheckReport("module_pivotal", tol=tol)
    return pivotal_residuals(skel, vals, rep, lambda s, t: "module_pivotal", pairs)


def radford_module_components(M: ModuleData, tol: Tolerance = DEFAULT_TOL) -> ModuleRadford:
    """Components of id => S S on simples, with their twisted naturality residuals."""
    skel = M.require_linked()
    skel.require_multiplicity_free()
    comps = {m: skel.radford_scalar(qualify("M", m)) for m in M.mlabels}
    rep = CheckReport("module_radford", tol=tol)
    for a in M.base.labels:
        qa = qualify("A", a)
        ra = skel.radford_scalar(qa)
        for m in M.mlabels:
            qm = qualify("M", m)
            for k in skel.channels(qa, qm):
                lhs = ra * comps[m]
                rhs = skel.delta(qa, qm, k) ** 2 * comps[unqualify(k)]
                rep.add("radford_naturality", (a, m, unqualify(k)), abs(lhs - rhs), max(abs(lhs), abs(rhs)))
    return ModuleRadford(comps, rep)


def check_spherical_module(
    M: ModuleData, p: PivotalAssignment, pt: PivotalAssignment, tol: Tolerance = DEFAULT_TOL
) -> CheckReport:
    """``pt_{S(m)} pt_m = r(m)`` for every module simple, over a spherical base."""
    rep = CheckReport("spherical_module", tol=tol)
    base = check_spherical_tensor(M.base, p, tol=tol)
    for r in base.report.records:
        rep.records.append(r.__class__("base_" + r.family, r.index, r.residual, r.bound, r.note))
    serre = serre_data(M, tol)
    rad = radford_module_components(M, tol)
    for m in M.mlabels:
        lhs = pt[serre.object_map[m]] * pt[m]
        rhs = rad[m]
        rep.add("module_spherical", (m,), abs(lhs - rhs), max(abs(lhs), abs(rhs)))
    return rep
