"""Skeletal fusion categories: validation, pentagon, duals, dimensions, pivotal data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    InconsistentSystem,
    LabeledTensor,
    MultiplicativeSystem,
    Tolerance,
    approx_eq,
    lattice_root_orders,
    solve_multiplicative,
)
from .report import CheckReport
from .skeleton import Calculus, Skeleton, UnsupportedMultiplicity, leaf

__all__ = [
    "FusionData",
    "PivotalAssignment",
    "RadfordData",
    "EvCoev",
    "DoubleDualData",
    "SphericalVerdict",
    "NoDual",
    "AmbiguousDual",
    "UnsupportedMultiplicity",
    "validate_fusion",
    "verify_pentagon",
    "dual_label",
    "ev_coev_data",
    "quantum_dimensions",
    "double_dual_structure",
    "solve_pivotal",
    "verify_pivotal",
    "check_spherical_tensor",
    "pivotal_system",
]


class NoDual(ValueError):
    pass


class AmbiguousDual(ValueError):
    pass


FKey = tuple[str, str, str, str, str, str]


@dataclass(frozen=True)
class FusionData:
    labels: tuple[str, ...]
    unit: str
    fusion: Mapping[tuple[str, str, str], int]
    dual: Mapping[str, str]
    fsymbols: Mapping[FKey, complex]
    name: str = "A"

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "fusion", {k: int(v) for k, v in self.fusion.items() if int(v) != 0})
        object.__setattr__(self, "fsymbols", {tuple(k): complex(v) for k, v in self.fsymbols.items()})
        object.__setattr__(self, "dual", dict(self.dual))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionData):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and dict(self.fusion) == dict(other.fusion)
            and dict(self.dual) == dict(other.dual)
            and dict(self.fsymbols) == dict(other.fsymbols)
            and self.name == other.name
        )

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def skeleton(self) -> Skeleton:
        return Skeleton(
            labels=self.labels,
            ends={a: (0, 0) for a in self.labels},
            units={0: self.unit},
            mult=dict(self.fusion),
            dual=dict(self.dual),
            fsymbols=dict(self.fsymbols),
            cell={a: "A" for a in self.labels},
        )

    @property
    def N(self) -> LabeledTensor:
        ax = self.labels
        return LabeledTensor.from_mapping((ax, ax, ax), self.fusion, dtype=int)

    def Nabc(self, a: str, b: str, c: str) -> int:
        return int(self.fusion.get((a, b, c), 0))

    def channels(self, a: str, b: str) -> tuple[str, ...]:
        return self.skeleton.channels(a, b)

    def fusion_matrix(self, a: str) -> np.ndarray:
        """Left multiplication by ``a`` on the Grothendieck ring, ``M[c, b] = N[a][b][c]``."""
        idx = {x: i for i, x in enumerate(self.labels)}
        m = np.zeros((len(self.labels), len(self.labels)), dtype=int)
        for (x, b, c), n in self.fusion.items():
            if x == a:
                m[idx[c], idx[b]] += n
        return m

    def fp_dimensions(self) -> dict[str, float]:
        """Frobenius-Perron dimensions (largest eigenvalue of each fusion matrix)."""
        out = {}
        for a in self.labels:
            ev = np.linalg.eigvals(self.fusion_matrix(a).astype(float))
            out[a] = float(max(ev.real))
        return out

    def fp_dim(self) -> float:
        return float(sum(d * d for d in self.fp_dimensions().values()))

    def multiplicity_free(self) -> bool:
        return all(n <= 1 for n in self.fusion.values())

    def relabel(self, perm: Mapping[str, str]) -> "FusionData":
        p = dict(perm)
        return FusionData(
            labels=tuple(p[a] for a in self.labels),
            unit=p[self.unit],
            fusion={(p[a], p[b], p[c]): n for (a, b, c), n in self.fusion.items()},
            dual={p[a]: p[b] for a, b in self.dual.items()},
            fsymbols={tuple(p[x] for x in k): v for k, v in self.fsymbols.items()},  # type: ignore[misc]
            name=self.name,
        )


@dataclass(frozen=True)
class PivotalAssignment:
    values: Mapping[str, complex]
    unit: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", {k: complex(v) for k, v in self.values.items()})
        if self.unit is not None and not approx_eq(self.values.get(self.unit, 0), 1.0):
            raise ValueError("pivotal value at the unit must be 1")
        if any(v == 0 for v in self.values.values()):
            raise ValueError("pivotal values must be nonzero")

    def __getitem__(self, a: str) -> complex:
        return self.values[a]

    def vector(self, labels: Sequence[str]) -> tuple[complex, ...]:
        return tuple(self.values[a] for a in labels)

    def __hash__(self) -> int:  # pragma: no cover - convenience only
        return hash(tuple(sorted((k, round(v.real, 9), round(v.imag, 9)) for k, v in self.values.items())))


@dataclass(frozen=True)
class RadfordData:
    d_object: str
    r_components: Mapping[str, complex]


@dataclass(frozen=True)
class EvCoev:
    ev: complex
    coev: complex
    lev: complex
    lcoev: complex


@dataclass
class DoubleDualData:
    delta: dict[tuple[str, str, str], complex]
    fourth: dict[tuple[str, str, str], complex]
    radford: RadfordData
    report: CheckReport


@dataclass
class SphericalVerdict:
    radford_verdict: bool
    trace_verdict: bool
    report: CheckReport
    dims: dict[str, tuple[complex, complex]] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.radford_verdict == self.trace_verdict

    @property
    def spherical(self) -> bool:
        return self.radford_verdict and self.trace_verdict


# ---------------------------------------------------------------------------


def validate_fusion(F: FusionData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """All FusionData invariants; failures are report entries."""
    rep = CheckReport("fusion_validation", tol=tol, tier="dimension")
    rep.add_flag("unit_label", (F.unit,), F.unit in F.labels)
    rep.add_flag("labels_distinct", (), len(set(F.labels)) == len(F.labels))
    rep.add_flag("dual_labels", (), set(F.dual) == set(F.labels) and set(F.dual.values()) <= set(F.labels))
    if F.unit not in F.labels or set(F.dual) != set(F.labels):
        return rep
    rep.extend(F.skeleton.ring_report("fusion_validation", tol))
    rep.extend(F.skeleton.unit_normalization_report("fusion_validation", tol))
    return rep


def verify_pentagon(F: FusionData, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """F-symbol pentagon over every admissible 4-tuple, in lexicographic order."""
    rep = F.skeleton.pentagon_report("pentagon", tol, family_names={"00000": "pentagon"})
    worst = rep.argmax()
    rep.meta = {"checked": len(rep.records), "argmax": None if worst is None else list(worst.index)}
    return rep


def dual_label(F: FusionData, a: str) -> str:
    cands = [c for c in F.labels if F.Nabc(a, c, F.unit) == 1]
    if not cands:
        raise NoDual(f"{a!r} has no dual")
    if len(cands) > 1:
        raise AmbiguousDual(f"{a!r} has several dual candidates {cands}")
    return cands[0]


def ev_coev_data(F: FusionData | Skeleton, tol: Tolerance = DEFAULT_TOL) -> tuple[dict[str, EvCoev], CheckReport]:
    """Per-label (ev, coev, left ev, left coev) scalars plus snake residuals.

    Gauge: both coevaluations are 1 and the evaluations absorb the
    associator entries of their snake identities.
    """
    skel = F.skeleton if isinstance(F, FusionData) else F
    if not skel.multiplicity_free():
        raise UnsupportedMultiplicity("ev/coev data needs multiplicity-free fusion")
    calc = Calculus(skel)
    rep = CheckReport("snake", tol=tol)
    data = {}
    for x in skel.labels:
        if skel.units.get(skel.left(x)) is None or skel.units.get(skel.right(x)) is None:
            continue
        data[x] = EvCoev(skel.ev_scalar(x), 1.0 + 0j, skel.lev_scalar(x), 1.0 + 0j)
        X = leaf(x)
        for side, zs in (("right", calc.snake_right(X)), ("left", calc.snake_left(X))):
            for k, z in enumerate(zs):
                rep.add(f"snake_{side}_{k + 1}", (x,), float(np.max(np.abs(z - np.eye(z.shape[0])))), 1.0)
    return data, rep


def quantum_dimensions(F: FusionData, p: PivotalAssignment) -> dict[str, tuple[complex, complex]]:
    """(d+, d-) per label: right and left traces of the identity using p."""
    F.skeleton.require_multiplicity_free()
    calc = Calculus(F.skeleton)
    out = {}
    for a in F.labels:
        X = leaf(a)
        pa = np.array([[p[a]]], dtype=complex)
        out[a] = (calc.right_trace(X, pa), calc.left_trace(X, np.linalg.inv(pa)))
    return out


def _admissible_triples(skel: Skeleton, labels: Iterable[str] | None = None) -> list[tuple[str, str, str]]:
    keep = None if labels is None else set(labels)
    out = []
    for a, b in skel.composable_words(2):
        if keep is not None and not (a in keep and b in keep):
            continue
        for c in skel.channels(a, b):
            if keep is None or c in keep:
                out.append((a, b, c))
    return out


def double_dual_structure(F: FusionData | Skeleton, tol: Tolerance = DEFAULT_TOL) -> DoubleDualData:
    """delta[a][b][c] of the double dual, its square, and the Radford components."""
    skel = F.skeleton if isinstance(F, FusionData) else F
    skel.require_multiplicity_free()
    delta = {t: skel.delta(*t) for t in _admissible_triples(skel)}
    fourth = {t: v * v for t, v in delta.items()}
    r = {x: skel.radford_scalar(x) for x in skel.labels}
    unit = skel.units.get(0, skel.labels[0])
    radford = RadfordData(d_object=unit, r_components=r)
    rep = CheckReport("radford_monoidality", tol=tol)
    for (a, b, c), q in fourth.items():
        lhs, rhs = r[a] * r[b], q * r[c]
        rep.add("radford_monoidal", (a, b, c), abs(lhs - rhs), max(abs(lhs), abs(rhs)))
    rep.add_exact("d_object_invertible", (unit,), len(skel.channels(unit, skel.dual[unit])), 1)
    return DoubleDualData(delta, fourth, radford, rep)


def pivotal_system(
    skel: Skeleton,
    unknowns: Sequence[str],
    fixed: Mapping[str, complex] | None = None,
    pairs: Iterable[tuple[str, str]] | None = None,
) -> tuple[MultiplicativeSystem, dict[str, int], list[tuple[str, str, str]]]:
    """Equations p_s p_t = delta[s][t][u] p_u with some values held fixed.

    Returns the system, per-unknown root orders (largest exponent modulus) and
    the list of triples whose equation involves only fixed values.
    """
    fixed = dict(fixed or {})
    unk = list(unknowns)
    pos = {u: i for i, u in enumerate(unk)}
    rows: list[tuple[tuple[int, ...], complex]] = []
    closed: list[tuple[str, str, str]] = []
    words = list(pairs) if pairs is not None else skel.composable_words(2)
    for s, t in words:
        for u in skel.channels(s, t):
            if not all(x in pos or x in fixed for x in (s, t, u)):
                continue
            vec = [0] * len(unk)
            target = skel.delta(s, t, u)
            for x, e in ((s, 1), (t, 1), (u, -1)):
                if x in pos:
                    vec[pos[x]] += e
                else:
                    target /= fixed[x] ** e
            if any(vec):
                rows.append((tuple(vec), target))
            else:
                closed.append((s, t, u))
    pinned = None
    for u in unk:
        if u in skel.units.values():
            pinned = u
            break
    sys = MultiplicativeSystem(tuple(unk), tuple(rows), pinned)
    return sys, lattice_root_orders(sys), closed


def solve_pivotal(F: FusionData, tol: Tolerance = DEFAULT_TOL) -> list[PivotalAssignment]:
    """Every monoidal trivialization of the double dual; empty list if none."""
    skel = F.skeleton
    skel.require_multiplicity_free()
    sys, orders, _ = pivotal_system(skel, F.labels)
    try:
        sols = solve_multiplicative(sys, orders, tol)
    except InconsistentSystem:
        return []
    return [PivotalAssignment(dict(zip(F.labels, s)), F.unit) for s in sols]


def pivotal_residuals(
    skel: Skeleton, values: Mapping[str, complex], rep: CheckReport, family_of=None, pairs=None
) -> CheckReport:
    words = list(pairs) if pairs is not None else skel.composable_words(2)
    for s, t in words:
        if not (s in values and t in values):
            continue
        for u in skel.channels(s, t):
            if u not in values:
                continue
            lhs = values[s] * values[t]
            rhs = skel.delta(s, t, u) * values[u]
            fam = family_of(s, t) if family_of else "pivotal_monoidal"
            rep.add(fam, (s, t, u), abs(lhs - rhs), max(abs(lhs), abs(rhs)))
    return rep


def verify_pivotal(F: FusionData, p: PivotalAssignment, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    rep = CheckReport("pivotal", tol=tol)
    rep.add("pivotal_unit", (F.unit,), abs(p[F.unit] - 1.0), 1.0)
    return pivotal_residuals(F.skeleton, p.values, rep)


def check_spherical_tensor(
    F: FusionData,
    p: PivotalAssignment,
    radford: RadfordData | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> SphericalVerdict:
    """Sub-verdict A: p_a^2 = r_a.  Sub-verdict B: d+_a = d-_a."""
    if radford is None:
        radford = double_dual_structure(F, tol).radford
    rep = CheckReport("spherical_tensor", tol=tol)
    for a in F.labels:
        # the double dual acts trivially on scalar endomorphisms of a simple,
        # so (p**)_a p_a = p_a^2 in the skeleton
        lhs, rhs = p[a] * p[a], radford.r_components[a]
        rep.add("A_radford", (a,), abs(lhs - rhs), max(abs(lhs), abs(rhs)))
    dims = quantum_dimensions(F, p)
    for a, (dp, dm) in dims.items():
        rep.add("B_traces", (a,), abs(dp - dm), max(abs(dp), abs(dm)))
    a_ok = all(r.passed for r in rep.records if r.family == "A_radford")
    b_ok = all(r.passed for r in rep.records if r.family == "B_traces")
    return SphericalVerdict(a_ok, b_ok, rep, dims)


def golden_ratio() -> float:
    return (1 + math.sqrt(5)) / 2
