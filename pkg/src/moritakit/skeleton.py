"""Skeletal multi-object calculus.

A :class:`Skeleton` is a finite semisimple bicategory-like datum with simple
1-morphisms ("labels"), each running between two integer objects.  Labels
``x`` and ``y`` compose to ``x (x) y`` iff ``right(x) == left(y)``; fusion
multiplicities and associator symbols are stored for composable pairs and
triples.  A fusion category is the one-object case, a left module category
uses two objects (cells ``0->0`` and ``0->1``), and a Morita context uses the
full two-object picture with four cells.

Associator convention (multiplicity-free)::

    |(a b)_e c ; d>  =  sum_f  F[a,b,c;d;e,f] |a (b c)_f ; d>

The morphism engine below realizes objects as trees of tensor products over
lists of simples and morphisms as complex matrices between the induced simple
summand bases.  It is used to compose ev/coev data into snake identities,
traces and the monoidal structure of the double dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .numerics import DEFAULT_TOL, Tolerance
from .report import CheckReport

__all__ = [
    "Skeleton",
    "UnsupportedMultiplicity",
    "Calculus",
    "leaf",
    "tens",
]


class UnsupportedMultiplicity(ValueError):
    """Structure-level operation requested on data with fusion multiplicities > 1."""


FKey = tuple[str, str, str, str, str, str]


@dataclass(frozen=True)
class Skeleton:
    labels: tuple[str, ...]
    ends: Mapping[str, tuple[int, int]]
    units: Mapping[int, str]
    mult: Mapping[tuple[str, str, str], int]
    dual: Mapping[str, str]
    fsymbols: Mapping[FKey, complex] = field(default_factory=dict)
    cell: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        order = {lab: i for i, lab in enumerate(self.labels)}
        chans: dict[tuple[str, str], tuple[str, ...]] = {}
        for (a, b, c), n in self.mult.items():
            if n > 0:
                chans.setdefault((a, b), ())
                chans[(a, b)] = chans[(a, b)] + (c,)
        chans = {k: tuple(sorted(v, key=order.__getitem__)) for k, v in chans.items()}
        object.__setattr__(self, "_order", order)
        object.__setattr__(self, "_chans", chans)
        object.__setattr__(self, "_fmat", {})

    # -- combinatorics ---------------------------------------------------
    def left(self, x: str) -> int:
        return self.ends[x][0]

    def right(self, x: str) -> int:
        return self.ends[x][1]

    def composable(self, x: str, y: str) -> bool:
        return self.ends[x][1] == self.ends[y][0]

    def channels(self, x: str, y: str) -> tuple[str, ...]:
        return self._chans.get((x, y), ())  # type: ignore[attr-defined]

    def N(self, x: str, y: str, z: str) -> int:
        return int(self.mult.get((x, y, z), 0))

    def sort_labels(self, labs: Iterable[str]) -> list[str]:
        return sorted(labs, key=self._order.__getitem__)  # type: ignore[attr-defined]

    def cell_labels(self, cell: str) -> list[str]:
        return [x for x in self.labels if self.cell.get(x) == cell]

    def unit_of(self, obj: int) -> str | None:
        return self.units.get(obj)

    def multiplicity_free(self) -> bool:
        return all(n <= 1 for n in self.mult.values())

    def require_multiplicity_free(self) -> None:
        if not self.multiplicity_free():
            raise UnsupportedMultiplicity("structure-level data requires multiplicity-free fusion")

    def family(self, *xs: str) -> str:
        """Object sequence of a composable word, e.g. ``'0110'``."""
        seq = [self.left(xs[0])] + [self.right(x) for x in xs]
        return "".join(str(o) for o in seq)

    def composable_words(self, length: int) -> list[tuple[str, ...]]:
        out = []
        for word in product(self.labels, repeat=length):
            if all(self.composable(word[i], word[i + 1]) for i in range(length - 1)):
                out.append(word)
        return out

    # -- associator symbols ---------------------------------------------
    def F(self, a: str, b: str, c: str, d: str, e: str, f: str) -> complex:
        return complex(self.fsymbols.get((a, b, c, d, e, f), 0.0))

    def fmatrix(self, a: str, b: str, c: str, d: str) -> tuple[tuple[str, ...], tuple[str, ...], np.ndarray]:
        cache = self._fmat  # type: ignore[attr-defined]
        key = (a, b, c, d)
        if key not in cache:
            es = tuple(e for e in self.channels(a, b) if d in self.channels(e, c))
            fs = tuple(f for f in self.channels(b, c) if d in self.channels(a, f))
            mat = np.array([[self.F(a, b, c, d, e, f) for f in fs] for e in es], dtype=complex).reshape(len(es), len(fs))
            cache[key] = (es, fs, mat)
        return cache[key]

    def finv(self, a: str, b: str, c: str, d: str, f: str, e: str) -> complex:
        """Entry of the inverse associator, from the f-basis back to the e-basis."""
        cache = self._fmat  # type: ignore[attr-defined]
        key = ("inv", a, b, c, d)
        if key not in cache:
            es, fs, mat = self.fmatrix(a, b, c, d)
            inv = np.linalg.inv(mat) if mat.size else mat
            cache[key] = ({f_: i for i, f_ in enumerate(fs)}, {e_: j for j, e_ in enumerate(es)}, inv)
        fi, ei, inv = cache[key]
        if f not in fi or e not in ei:
            return 0j
        return complex(inv[fi[f], ei[e]])

    def admissible_fkeys(self) -> list[FKey]:
        keys = []
        for a, b, c in self.composable_words(3):
            for e in self.channels(a, b):
                for d in self.channels(e, c):
                    for f in self.channels(b, c):
                        if d in self.channels(a, f):
                            keys.append((a, b, c, d, e, f))
        return keys

    # -- checks ------------------------------------------------------------
    def pentagon_report(
        self,
        suite: str,
        tol: Tolerance = DEFAULT_TOL,
        families: Iterable[str] | None = None,
        family_names: Mapping[str, str] | None = None,
    ) -> CheckReport:
        """Pentagon identity for every composable quadruple (optionally filtered by family)."""
        rep = CheckReport(suite, tol=tol)
        wanted = None if families is None else set(families)
        names = family_names or {}
        for a, b, c, d in self.composable_words(4):
            fam = self.family(a, b, c, d)
            if wanted is not None and fam not in wanted:
                continue
            tag = names.get(fam, fam)
            for f in self.channels(a, b):
                for g in self.channels(f, c):
                    for e in self.channels(g, d):
                        for l in self.channels(c, d):
                            for k in self.channels(b, l):
                                if e not in self.channels(a, k):
                                    continue
                                lhs = self.F(f, c, d, e, g, l) * self.F(a, b, l, e, f, k)
                                rhs = 0j
                                for h in self.channels(b, c):
                                    rhs += self.F(a, b, c, g, f, h) * self.F(a, h, d, e, g, k) * self.F(b, c, d, k, h, l)
                                scale = max(abs(lhs), abs(rhs))
                                rep.add(tag, (a, b, c, d, e, f, g, k, l), abs(lhs - rhs), scale)
        return rep

    def ring_report(self, suite: str, tol: Tolerance = DEFAULT_TOL, require_duals: bool = True) -> CheckReport:
        """Multiplicity-level axioms: units, associativity, duality, admissibility."""
        rep = CheckReport(suite, tol=tol, tier="dimension")
        for x in self.labels:
            lu, ru = self.units.get(self.left(x)), self.units.get(self.right(x))
            for y in self.labels:
                if lu is not None:
                    rep.add_exact("unit_left", (lu, x, y), self.N(lu, x, y), int(x == y))
                if ru is not None:
                    rep.add_exact("unit_right", (x, ru, y), self.N(x, ru, y), int(x == y))
        for (x, y, z), n in sorted(self.mult.items()):
            if n and not (self.composable(x, y) and self.ends[z] == (self.left(x), self.right(y))):
                rep.add_flag("composability", (x, y, z), False)
        for a, b, c in self.composable_words(3):
            targets = {z for z in self.labels if self.ends[z] == (self.left(a), self.right(c))}
            for d in self.sort_labels(targets):
                lhs = sum(self.N(a, b, e) * self.N(e, c, d) for e in self.labels)
                rhs = sum(self.N(b, c, f) * self.N(a, f, d) for f in self.labels)
                rep.add_exact("associativity", (a, b, c, d), lhs, rhs)
        for x in self.labels:
            xd = self.dual.get(x)
            if xd is None:
                if require_duals:
                    rep.add_flag("duality", (x, "missing"), False)
                continue
            rep.add_exact("duality_involution", (x,), self.dual.get(xd), x)
            lu, ru = self.units.get(self.left(x)), self.units.get(self.right(x))
            if lu is not None:
                rep.add_exact("duality_coev", (x, xd), self.N(x, xd, lu), 1)
            if ru is not None:
                rep.add_exact("duality_ev", (xd, x), self.N(xd, x, ru), 1)
        adm = set(self.admissible_fkeys())
        for key in sorted(self.fsymbols):
            if key not in adm:
                rep.add_flag("f_admissible", key, False, "entry on a non-admissible tuple")
        for key in sorted(adm):
            if key not in self.fsymbols:
                rep.add_flag("f_complete", key, False, "missing admissible entry")
        return rep

    def unit_normalization_report(self, suite: str, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
        """Triangle axiom in skeletal form: symbols with a unit argument are 1."""
        rep = CheckReport(suite, tol=tol)
        unit_set = set(self.units.values())
        for key in sorted(self.fsymbols):
            if key[0] in unit_set or key[1] in unit_set or key[2] in unit_set:
                val = self.fsymbols[key]
                rep.add("unit_normalized", key, abs(val - 1.0), 1.0)
        return rep

    # -- duals / (co)evaluation scalars -------------------------------------
    def ev_scalar(self, x: str) -> complex:
        """Right evaluation x* (x) x -> 1 with the right coevaluation set to 1."""
        xd = self.dual[x]
        return 1.0 / self.F(x, xd, x, x, self.units[self.left(x)], self.units[self.right(x)])

    def lev_scalar(self, x: str) -> complex:
        """Left evaluation x (x) x* -> 1 with the left coevaluation set to 1."""
        xd = self.dual[x]
        return 1.0 / self.finv(x, xd, x, x, self.units[self.right(x)], self.units[self.left(x)])

    # -- closed-form double dual ---------------------------------------------
    def _phi(self, x: str, y: str, w: str) -> complex:
        # scalar of the canonical iso y* (x) x* -> (x (x) y)* on the channel w in x (x) y
        xd, yd, wd = self.dual[x], self.dual[y], self.dual[w]
        lu = self.units[self.left(x)]
        mu = self.units[self.right(x)]
        ru = self.units[self.right(y)]
        return (
            self.finv(wd, w, wd, wd, lu, self.units[self.right(w)])
            * self.F(yd, xd, w, ru, wd, y)
            * self.finv(xd, x, y, y, w, mu)
            * self.ev_scalar(x)
            * self.ev_scalar(y)
        )

    def delta(self, x: str, y: str, z: str) -> complex:
        """Double-dual structure scalar: pivotal p satisfies p_x p_y = delta * p_z."""
        xd, yd, zd = self.dual[x], self.dual[y], self.dual[z]
        return self._phi(x, y, z) / self._phi(yd, xd, zd)

    def d_plus(self, x: str, psi: complex = 1.0) -> complex:
        """Right trace of psi * id_x (coev_x = 1, ev of x*)."""
        return psi * self.ev_scalar(self.dual[x])

    def d_minus(self, x: str, psi: complex = 1.0) -> complex:
        """Left trace of psi^-1 * id_x."""
        return self.ev_scalar(x) / psi

    def radford_scalar(self, x: str) -> complex:
        return self.d_minus(x) / self.d_plus(x)

    # -- relabeling ------------------------------------------------------------
    def relabel(self, perm: Mapping[str, str], order: Sequence[str] | None = None) -> "Skeleton":
        """Rename labels through ``perm``; ``order`` optionally fixes the new label order."""
        p = dict(perm)
        labels = tuple(order) if order is not None else tuple(p[x] for x in self.labels)
        return Skeleton(
            labels=labels,
            ends={p[x]: e for x, e in self.ends.items()},
            units={o: p[u] for o, u in self.units.items()},
            mult={(p[a], p[b], p[c]): n for (a, b, c), n in self.mult.items()},
            dual={p[a]: p[b] for a, b in self.dual.items()},
            fsymbols={tuple(p[x] for x in k): v for k, v in self.fsymbols.items()},  # type: ignore[misc]
            cell={p[x]: c for x, c in self.cell.items()},
        )

    def with_symbols(self, mult: Mapping | None = None, fsymbols: Mapping | None = None) -> "Skeleton":
        """Copy with some multiplicities and associator entries overridden."""
        m = dict(self.mult)
        m.update(mult or {})
        fs = dict(self.fsymbols)
        fs.update(fsymbols or {})
        return Skeleton(self.labels, dict(self.ends), dict(self.units), m, dict(self.dual), fs, dict(self.cell))


# ---------------------------------------------------------------------------
# morphism engine
# ---------------------------------------------------------------------------

Obj = tuple


def leaf(*labels: str) -> Obj:
    return ("L", tuple(labels))


def tens(x: Obj, y: Obj) -> Obj:
    return ("T", x, y)


class Calculus:
    """Matrices of structure morphisms between tree objects of a Skeleton."""

    def __init__(self, skel: Skeleton) -> None:
        skel.require_multiplicity_free()
        self.s = skel
        self._basis: dict[Obj, tuple[tuple[str, ...], dict]] = {}

    # objects
    def basis(self, X: Obj) -> tuple[str, ...]:
        return self._info(X)[0]

    def _info(self, X: Obj) -> tuple[tuple[str, ...], dict]:
        if X in self._basis:
            return self._basis[X]
        if X[0] == "L":
            labs = tuple(X[1])
            pos: dict = {}
        else:
            lb, rb = self.basis(X[1]), self.basis(X[2])
            labs_l: list[str] = []
            pos = {}
            for i, x in enumerate(lb):
                for j, y in enumerate(rb):
                    for c in self.s.channels(x, y):
                        pos[(i, j, c)] = len(labs_l)
                        labs_l.append(c)
            labs = tuple(labs_l)
        self._basis[X] = (labs, pos)
        return self._basis[X]

    def pos(self, X: Obj) -> dict:
        return self._info(X)[1]

    def ends(self, X: Obj) -> tuple[int, int]:
        b = self.basis(X)
        if not b:
            raise ValueError("zero object has no ends")
        return self.s.ends[b[0]]

    def dual_obj(self, X: Obj) -> Obj:
        return leaf(*(self.s.dual[x] for x in self.basis(X)))

    def unit_obj(self, obj: int) -> Obj:
        return leaf(self.s.units[obj])

    def ident(self, X: Obj) -> np.ndarray:
        return np.eye(len(self.basis(X)), dtype=complex)

    # structure morphisms
    def tensor(self, f: np.ndarray, X: Obj, X2: Obj, g: np.ndarray, Y: Obj, Y2: Obj) -> np.ndarray:
        src, tgt = tens(X, Y), tens(X2, Y2)
        out = np.zeros((len(self.basis(tgt)), len(self.basis(src))), dtype=complex)
        tpos = self.pos(tgt)
        for (i, j, c), col in self.pos(src).items():
            for i2 in np.nonzero(f[:, i])[0]:
                for j2 in np.nonzero(g[:, j])[0]:
                    row = tpos.get((int(i2), int(j2), c))
                    if row is not None:
                        out[row, col] += f[i2, i] * g[j2, j]
        return out

    def assoc(self, X: Obj, Y: Obj, Z: Obj) -> np.ndarray:
        src = tens(tens(X, Y), Z)
        tgt = tens(X, tens(Y, Z))
        xb, yb, zb = self.basis(X), self.basis(Y), self.basis(Z)
        xy_pos = self.pos(tens(X, Y))
        yz_pos = self.pos(tens(Y, Z))
        inv_xy = {v: k for k, v in xy_pos.items()}
        out = np.zeros((len(self.basis(tgt)), len(self.basis(src))), dtype=complex)
        tpos = self.pos(tgt)
        for (p, k, d), col in self.pos(src).items():
            i, j, e = inv_xy[p]
            for f in self.s.channels(yb[j], zb[k]):
                row = tpos.get((i, yz_pos[(j, k, f)], d))
                if row is not None:
                    out[row, col] += self.s.F(xb[i], yb[j], zb[k], d, e, f)
        return out

    def assoc_inv(self, X: Obj, Y: Obj, Z: Obj) -> np.ndarray:
        return np.linalg.inv(self.assoc(X, Y, Z))

    def lunit(self, X: Obj) -> np.ndarray:
        """1 (x) X -> X."""
        src = tens(self.unit_obj(self.ends(X)[0]), X)
        out = np.zeros((len(self.basis(X)), len(self.basis(src))), dtype=complex)
        for (_, j, c), col in self.pos(src).items():
            out[j, col] = 1.0
        return out

    def runit(self, X: Obj) -> np.ndarray:
        """X (x) 1 -> X."""
        src = tens(X, self.unit_obj(self.ends(X)[1]))
        out = np.zeros((len(self.basis(X)), len(self.basis(src))), dtype=complex)
        for (i, _, c), col in self.pos(src).items():
            out[i, col] = 1.0
        return out

    def ev(self, X: Obj) -> np.ndarray:
        """X* (x) X -> 1."""
        Xd = self.dual_obj(X)
        src = tens(Xd, X)
        one = self.s.units[self.ends(X)[1]]
        out = np.zeros((1, len(self.basis(src))), dtype=complex)
        xb = self.basis(X)
        for (i, j, c), col in self.pos(src).items():
            if i == j and c == one:
                out[0, col] = self.s.ev_scalar(xb[j])
        return out

    def coev(self, X: Obj) -> np.ndarray:
        """1 -> X (x) X*."""
        tgt = tens(X, self.dual_obj(X))
        one = self.s.units[self.ends(X)[0]]
        out = np.zeros((len(self.basis(tgt)), 1), dtype=complex)
        for (i, j, c), row in self.pos(tgt).items():
            if i == j and c == one:
                out[row, 0] = 1.0
        return out

    def lev(self, X: Obj) -> np.ndarray:
        """X (x) *X -> 1."""
        src = tens(X, self.dual_obj(X))
        one = self.s.units[self.ends(X)[0]]
        out = np.zeros((1, len(self.basis(src))), dtype=complex)
        xb = self.basis(X)
        for (i, j, c), col in self.pos(src).items():
            if i == j and c == one:
                out[0, col] = self.s.lev_scalar(xb[i])
        return out

    def lcoev(self, X: Obj) -> np.ndarray:
        """1 -> *X (x) X."""
        tgt = tens(self.dual_obj(X), X)
        one = self.s.units[self.ends(X)[1]]
        out = np.zeros((len(self.basis(tgt)), 1), dtype=complex)
        for (i, j, c), row in self.pos(tgt).items():
            if i == j and c == one:
                out[row, 0] = 1.0
        return out

    # composites
    def snake_right(self, X: Obj) -> tuple[np.ndarray, np.ndarray]:
        """Both zig-zags for the right dual; each should be the identity."""
        Xd = self.dual_obj(X)
        lo, ro = self.ends(X)
        one_l, one_r = self.unit_obj(lo), self.unit_obj(ro)
        I, Id = self.ident(X), self.ident(Xd)
        z1 = (
            self.runit(X)
            @ self.tensor(I, X, X, self.ev(X), tens(Xd, X), one_r)
            @ self.assoc(X, Xd, X)
            @ self.tensor(self.coev(X), one_l, tens(X, Xd), I, X, X)
            @ self.lunit(X).T
        )
        z2 = (
            self.lunit(Xd)
            @ self.tensor(self.ev(X), tens(Xd, X), one_r, Id, Xd, Xd)
            @ self.assoc_inv(Xd, X, Xd)
            @ self.tensor(Id, Xd, Xd, self.coev(X), one_l, tens(X, Xd))
            @ self.runit(Xd).T
        )
        return z1, z2

    def snake_left(self, X: Obj) -> tuple[np.ndarray, np.ndarray]:
        Xd = self.dual_obj(X)
        lo, ro = self.ends(X)
        one_l, one_r = self.unit_obj(lo), self.unit_obj(ro)
        I, Id = self.ident(X), self.ident(Xd)
        z1 = (
            self.lunit(X)
            @ self.tensor(self.lev(X), tens(X, Xd), one_l, I, X, X)
            @ self.assoc_inv(X, Xd, X)
            @ self.tensor(I, X, X, self.lcoev(X), one_r, tens(Xd, X))
            @ self.runit(X).T
        )
        z2 = (
            self.runit(Xd)
            @ self.tensor(Id, Xd, Xd, self.lev(X), tens(X, Xd), one_l)
            @ self.assoc(Xd, X, Xd)
            @ self.tensor(self.lcoev(X), one_r, tens(Xd, X), Id, Xd, Xd)
            @ self.lunit(Xd).T
        )
        return z1, z2

    def dual_mor(self, f: np.ndarray, X: Obj, Y: Obj) -> np.ndarray:
        """Right dual f*: Y* -> X* of f: X -> Y."""
        Xd, Yd = self.dual_obj(X), self.dual_obj(Y)
        one_l = self.unit_obj(self.ends(X)[0])
        one_r = self.unit_obj(self.ends(X)[1])
        return (
            self.lunit(Xd)
            @ self.tensor(self.ev(Y), tens(Yd, Y), one_r, self.ident(Xd), Xd, Xd)
            @ self.tensor(self.tensor(self.ident(Yd), Yd, Yd, f, X, Y), tens(Yd, X), tens(Yd, Y), self.ident(Xd), Xd, Xd)
            @ self.assoc_inv(Yd, X, Xd)
            @ self.tensor(self.ident(Yd), Yd, Yd, self.coev(X), one_l, tens(X, Xd))
            @ self.runit(Yd).T
        )

    def phi(self, X: Obj, Y: Obj) -> np.ndarray:
        """Canonical iso Y* (x) X* -> (X (x) Y)*."""
        Xd, Yd = self.dual_obj(X), self.dual_obj(Y)
        Z = tens(X, Y)
        Zd = self.dual_obj(Z)
        P = tens(Yd, Xd)
        one_l = self.unit_obj(self.ends(X)[0])
        one_m = self.unit_obj(self.ends(X)[1])
        one_r = self.unit_obj(self.ends(Y)[1])
        IYd, IY = self.ident(Yd), self.ident(Y)
        E = (
            self.ev(Y)
            @ self.tensor(IYd, Yd, Yd, self.lunit(Y), tens(one_m, Y), Y)
            @ self.tensor(IYd, Yd, Yd, self.tensor(self.ev(X), tens(Xd, X), one_m, IY, Y, Y), tens(tens(Xd, X), Y), tens(one_m, Y))
            @ self.tensor(IYd, Yd, Yd, self.assoc_inv(Xd, X, Y), tens(Xd, Z), tens(tens(Xd, X), Y))
            @ self.assoc(Yd, Xd, Z)
        )
        return (
            self.lunit(Zd)
            @ self.tensor(E, tens(P, Z), one_r, self.ident(Zd), Zd, Zd)
            @ self.assoc_inv(P, Z, Zd)
            @ self.tensor(self.ident(P), P, P, self.coev(Z), one_l, tens(Z, Zd))
            @ self.runit(P).T
        )

    def double_dual_tensorator(self, X: Obj, Y: Obj) -> np.ndarray:
        """J: X** (x) Y** -> (X (x) Y)** built from the canonical isos."""
        Xd, Yd = self.dual_obj(X), self.dual_obj(Y)
        P = tens(Yd, Xd)
        Zd = self.dual_obj(tens(X, Y))
        phi_xy = self.phi(X, Y)
        return np.linalg.inv(self.dual_mor(phi_xy, P, Zd)) @ self.phi(Yd, Xd)

    def right_trace(self, X: Obj, f: np.ndarray) -> complex:
        """ev_{X*} (f (x) id) coev_X for f: X -> X** (= X on labels)."""
        Xd = self.dual_obj(X)
        Xdd = self.dual_obj(Xd)
        m = self.ev(Xd) @ self.tensor(f, X, Xdd, self.ident(Xd), Xd, Xd) @ self.coev(X)
        return complex(m[0, 0])

    def left_trace(self, X: Obj, g: np.ndarray) -> complex:
        """ev_X (id (x) g) coev_{X*} for g: X** -> X."""
        Xd = self.dual_obj(X)
        Xdd = self.dual_obj(Xd)
        m = self.ev(X) @ self.tensor(self.ident(Xd), Xd, Xd, g, Xdd, X) @ self.coev(Xd)
        return complex(m[0, 0])


def restrict(skel: Skeleton, keep: Sequence[str]) -> Skeleton:
    """Full sub-skeleton on a set of labels closed under the products used."""
    ks = set(keep)
    mult = {k: v for k, v in skel.mult.items() if k[0] in ks and k[1] in ks and k[2] in ks}
    fs = {k: v for k, v in skel.fsymbols.items() if all(x in ks for x in k)}
    ends = {x: skel.ends[x] for x in keep}
    objs = {o for x in keep for o in ends[x]}
    units = {o: u for o, u in skel.units.items() if o in objs and u in ks}
    dual = {x: skel.dual[x] for x in keep if skel.dual.get(x) in ks}
    return Skeleton(tuple(x for x in skel.labels if x in ks), ends, units, mult, dual, fs, {x: skel.cell.get(x, "") for x in keep})
