"""Scalars, tolerances, labeled tensors and a multiplicative constraint solver.

Every pivotal-type question in the package reduces to a system of equations of
the form ``prod_u x_u ** k_u = t`` with integer exponents and nonzero targets.
:func:`solve_multiplicative` enumerates all solutions of such a system by
propagating values along constraints that leave exactly one unknown open and
branching over the finitely many roots whenever an exponent has modulus > 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

Scalar = complex
Label = Hashable

__all__ = [
    "Scalar",
    "Tolerance",
    "DEFAULT_TOL",
    "approx_eq",
    "residual",
    "LabeledTensor",
    "MultiplicativeSystem",
    "InconsistentSystem",
    "UnboundedBranching",
    "solve_multiplicative",
    "roots_of_unity",
    "canonical_key",
    "lattice_root_orders",
]


class InconsistentSystem(ValueError):
    """No assignment satisfies every constraint."""


class UnboundedBranching(ValueError):
    """A branching unknown has no (or too small a) declared root order."""


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self) -> None:
        if self.abs_eps < 0 or self.rel_eps < 0:
            raise ValueError("tolerances must be non-negative")

    def band(self, x: complex, y: complex) -> float:
        return self.abs_eps + self.rel_eps * max(abs(x), abs(y))

    def as_dict(self) -> dict[str, float]:
        return {"abs_eps": self.abs_eps, "rel_eps": self.rel_eps}


DEFAULT_TOL = Tolerance()


def approx_eq(x: complex, y: complex, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``|x - y| <= abs_eps + rel_eps * max(|x|, |y|)``."""
    return abs(complex(x) - complex(y)) <= tol.band(complex(x), complex(y))


def residual(x: complex, y: complex) -> float:
    return float(abs(complex(x) - complex(y)))


def roots_of_unity(order: int) -> list[complex]:
    if order < 1:
        raise ValueError("order must be positive")
    return [cmath.exp(2j * math.pi * k / order) for k in range(order)]


def _snap(z: complex, digits: int = 9) -> complex:
    # kill signed zeros and float dust so keys and printed values are stable
    re = round(z.real, digits) + 0.0
    im = round(z.imag, digits) + 0.0
    return complex(re, im)


def canonical_key(values: Sequence[complex], digits: int = 9) -> tuple[float, ...]:
    """Lexicographic sort key of a solution vector (re, im per entry)."""
    key: list[float] = []
    for z in values:
        s = _snap(complex(z), digits)
        key.extend((s.real, s.imag))
    return tuple(key)


@dataclass(frozen=True)
class LabeledTensor:
    """Dense array whose axes are indexed by ordered label lists."""

    axes: tuple[tuple[Label, ...], ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        shape = tuple(len(ax) for ax in self.axes)
        arr = np.asarray(self.entries)
        if arr.shape != shape:
            raise ValueError(f"entries have shape {arr.shape}, axes imply {shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "_index", tuple({lab: i for i, lab in enumerate(ax)} for ax in self.axes))

    @classmethod
    def zeros(cls, axes: Sequence[Sequence[Label]], dtype=complex) -> "LabeledTensor":
        axes_t = tuple(tuple(ax) for ax in axes)
        return cls(axes_t, np.zeros(tuple(len(ax) for ax in axes_t), dtype=dtype))

    @classmethod
    def from_mapping(
        cls, axes: Sequence[Sequence[Label]], values: Mapping[tuple, complex], dtype=complex
    ) -> "LabeledTensor":
        axes_t = tuple(tuple(ax) for ax in axes)
        arr = np.zeros(tuple(len(ax) for ax in axes_t), dtype=dtype)
        index = [{lab: i for i, lab in enumerate(ax)} for ax in axes_t]
        for key, val in values.items():
            arr[tuple(index[d][k] for d, k in enumerate(key))] = val
        return cls(axes_t, arr)

    @property
    def size(self) -> int:
        return int(self.entries.size)

    def __getitem__(self, key: tuple) -> complex:
        idx = tuple(self._index[d][k] for d, k in enumerate(key))  # type: ignore[attr-defined]
        return self.entries[idx]


@dataclass(frozen=True)
class MultiplicativeSystem:
    """Unknowns plus constraints ``prod_u x_u ** exps[u] == target``.

    ``pinned`` names an unknown fixed to 1 before anything else is done (the
    unit label for pivotal systems).
    """

    unknowns: tuple[Label, ...]
    constraints: tuple[tuple[tuple[int, ...], complex], ...]
    pinned: Label | None = None
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        n = len(self.unknowns)
        if len(set(self.unknowns)) != n:
            raise ValueError("duplicate unknowns")
        clean = []
        for exps, target in self.constraints:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError("exponent vector length does not match unknowns")
            t = complex(target)
            if t == 0 or not (math.isfinite(t.real) and math.isfinite(t.imag)):
                raise ValueError("targets must be finite and nonzero")
            clean.append((exps, t))
        object.__setattr__(self, "constraints", tuple(clean))
        if self.pinned is not None and self.pinned not in self.unknowns:
            raise ValueError("pinned unknown not in unknowns")

    @classmethod
    def build(
        cls,
        unknowns: Iterable[Label],
        constraints: Iterable[tuple[Mapping[Label, int], complex]],
        pinned: Label | None = None,
    ) -> "MultiplicativeSystem":
        unk = tuple(unknowns)
        pos = {u: i for i, u in enumerate(unk)}
        rows = []
        for exps, target in constraints:
            vec = [0] * len(unk)
            for u, e in exps.items():
                vec[pos[u]] += int(e)
            rows.append((tuple(vec), complex(target)))
        return cls(unk, tuple(rows), pinned)

    def residuals(self, values: Sequence[complex]) -> list[float]:
        out = []
        for exps, target in self.constraints:
            lhs = complex(1.0)
            for v, e in zip(values, exps):
                if e:
                    lhs *= complex(v) ** e
            out.append(abs(lhs - target))
        return out

    def satisfied(self, values: Sequence[complex], tol: Tolerance = DEFAULT_TOL) -> bool:
        for (exps, target), r in zip(self.constraints, self.residuals(values)):
            if r > tol.band(target, target):
                return False
        return True


def _kth_roots(value: complex, k: int) -> list[complex]:
    # all solutions of x**k == value, k != 0
    if k < 0:
        value, k = 1.0 / value, -k
    r = abs(value) ** (1.0 / k)
    th = cmath.phase(value)
    return [cmath.rect(r, (th + 2 * math.pi * j) / k) for j in range(k)]


def solve_multiplicative(
    sys: MultiplicativeSystem,
    root_orders: Mapping[Label, int] | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> list[tuple[complex, ...]]:
    """All assignments of nonzero scalars satisfying ``sys``.

    Values are propagated along constraints that have exactly one open unknown.
    A constraint ``x**k * (known) = t`` with ``|k| > 1`` branches over its ``|k|``
    roots; this needs ``root_orders[x] >= |k|``.  An unknown that no constraint
    can reach is branched over the roots of unity of its declared order.  The
    surviving full assignments are filtered against every constraint,
    deduplicated within ``tol`` and returned in lexicographic order.
    """
    root_orders = dict(root_orders or {})
    n = len(sys.unknowns)
    start: list[complex | None] = [None] * n
    if sys.pinned is not None:
        start[sys.unknowns.index(sys.pinned)] = 1.0 + 0j

    finished: list[tuple[complex, ...]] = []
    stack = [start]
    while stack:
        vals = stack.pop()
        open_idx = [i for i, v in enumerate(vals) if v is None]
        if not open_idx:
            if sys.satisfied(vals, tol):  # type: ignore[arg-type]
                finished.append(tuple(vals))  # type: ignore[arg-type]
            continue
        reduced = _reduce(sys, vals, open_idx)
        pick = _single_open(reduced)
        if pick is None:
            # a genuinely free direction: branch over roots of unity
            pivots = _pivot_columns(reduced)
            free = [i for i in open_idx if i not in pivots]
            u = free[0] if free else open_idx[0]
            order = root_orders.get(sys.unknowns[u])
            if not order:
                raise UnboundedBranching(f"unknown {sys.unknowns[u]!r} is unconstrained and has no root order")
            for z in reversed(roots_of_unity(order)):
                nxt = list(vals)
                nxt[u] = z
                stack.append(nxt)
            continue
        u, k, rest = pick
        if abs(k) > 1:
            order = root_orders.get(sys.unknowns[u])
            if order is None or order < abs(k):
                raise UnboundedBranching(
                    f"unknown {sys.unknowns[u]!r} needs root order >= {abs(k)}, got {order}"
                )
        for z in reversed(_kth_roots(rest, k)):
            nxt = list(vals)
            nxt[u] = z
            stack.append(nxt)

    if not finished:
        raise InconsistentSystem("no assignment satisfies all constraints")

    uniq: list[tuple[complex, ...]] = []
    for cand in sorted(finished, key=canonical_key):
        if not any(all(approx_eq(a, b, tol) for a, b in zip(cand, old)) for old in uniq):
            uniq.append(tuple(_snap(z, 12) for z in cand))
    uniq.sort(key=canonical_key)
    return uniq


def _reduce(
    sys: MultiplicativeSystem, vals: Sequence[complex | None], open_idx: list[int]
) -> list[tuple[dict[int, int], complex]]:
    """Constraints restricted to the open unknowns, known values moved to the target.

    Rows that already isolate a single unknown come first (tree edges, in
    constraint order); otherwise integer row elimination is applied so that a
    relation ``x**k = t`` for one open unknown is exposed whenever the
    exponent lattice implies one.
    """
    rows: list[tuple[dict[int, int], complex]] = []
    for exps, target in sys.constraints:
        rest = complex(target)
        vec: dict[int, int] = {}
        for i, e in enumerate(exps):
            if not e:
                continue
            if vals[i] is None:
                vec[i] = e
            else:
                rest /= complex(vals[i]) ** e  # type: ignore[operator]
        if vec:
            rows.append((vec, rest))
    if any(len(v) == 1 for v, _ in rows):
        return rows
    return _echelon(rows, open_idx)


def _echelon(rows: list[tuple[dict[int, int], complex]], cols: list[int]) -> list[tuple[dict[int, int], complex]]:
    work = [(dict(v), t) for v, t in rows]
    done: list[tuple[dict[int, int], complex]] = []
    for c in cols:
        while True:
            live = [r for r in work if r[0].get(c, 0) != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[0][c]))
            pv, pt = live[0]
            nxt = [live[0]]
            for v, t in live[1:]:
                q = v[c] // pv[c]
                nv = dict(v)
                for j, e in pv.items():
                    nv[j] = nv.get(j, 0) - q * e
                nv = {j: e for j, e in nv.items() if e}
                nt = t / pt**q
                if nv:
                    nxt.append((nv, nt))
                else:
                    done.append((nv, nt))
            work = [r for r in work if r[0].get(c, 0) == 0] + nxt
        live = [r for r in work if r[0].get(c, 0) != 0]
        if live:
            done.append(live[0])
            work = [r for r in work if r is not live[0]]
    return [r for r in done if r[0]]


def _single_open(rows: list[tuple[dict[int, int], complex]]) -> tuple[int, int, complex] | None:
    for vec, t in rows:
        if len(vec) == 1:
            (u, k), = vec.items()
            return u, k, t
    return None


def _pivot_columns(rows: list[tuple[dict[int, int], complex]]) -> set[int]:
    return {min(v) for v, _ in rows if v}


def lattice_root_orders(sys: MultiplicativeSystem) -> dict[Label, int]:
    """Root-order bound for every unknown from the exponent lattice.

    The product of the pivots of an integer echelon form of the exponent
    matrix bounds the number of roots an unknown acquires through derived
    relations; direct exponents bound the tree steps.
    """
    cols = [i for i, u in enumerate(sys.unknowns) if u != sys.pinned]
    rows = []
    for exps, target in sys.constraints:
        vec = {i: e for i, e in enumerate(exps) if e and i in cols}
        if vec:
            rows.append((vec, complex(1.0)))
    bound = 1
    for vec, _ in _echelon(rows, cols):
        bound *= abs(vec[min(vec)])
    out = {}
    for i, u in enumerate(sys.unknowns):
        direct = max((abs(exps[i]) for exps, _ in sys.constraints), default=1)
        out[u] = max(bound, direct, 1)
    return out

