"""Structured check reports shared by every suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .numerics import DEFAULT_TOL, Tolerance

__all__ = ["Record", "CheckReport", "merge_reports"]

GAUGE = {
    "coev": "1 (right and left coevaluations normalized)",
    "ev": "absorbs the F-symbol correction of its snake identity",
    "unitors": "identity (unit-normalized F-symbols)",
    "radford": "trace ratio d-/d+ with the trivial choice a -> a** on simples",
    "module_pinning": "reference module label p~ = 1 after pinning",
}


@dataclass(frozen=True, order=True)
class Record:
    family: str
    index: tuple[str, ...]
    residual: float
    bound: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.bound

    def as_list(self) -> list[Any]:
        return [self.family, ",".join(self.index), float(self.residual), bool(self.passed)]


@dataclass
class CheckReport:
    suite: str
    records: list[Record] = field(default_factory=list)
    tol: Tolerance = DEFAULT_TOL
    tier: str = "structure"
    gauge: dict[str, str] = field(default_factory=lambda: dict(GAUGE))
    notes: list[str] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    # -- building -------------------------------------------------------
    def add(self, family: str, index: Sequence[Any], residual: float, scale: float = 1.0, note: str = "") -> None:
        bound = self.tol.abs_eps + self.tol.rel_eps * scale
        self.records.append(Record(family, tuple(str(i) for i in index), float(residual), bound, note))

    def add_exact(self, family: str, index: Sequence[Any], lhs: Any, rhs: Any, note: str = "") -> None:
        """Exact (integer or label) comparison: residual 0 iff equal."""
        if isinstance(lhs, (int, float)) and isinstance(rhs, (int, float)):
            res = float(abs(lhs - rhs))
        else:
            res = 0.0 if lhs == rhs else 1.0
        self.records.append(Record(family, tuple(str(i) for i in index), res, 0.0, note))

    def add_flag(self, family: str, index: Sequence[Any], ok: bool, note: str = "") -> None:
        self.records.append(Record(family, tuple(str(i) for i in index), 0.0 if ok else 1.0, 0.0, note))

    def extend(self, other: "CheckReport") -> None:
        self.records.extend(other.records)
        self.notes.extend(n for n in other.notes if n not in self.notes)

    # -- reading --------------------------------------------------------
    @property
    def verdict(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def passed(self) -> bool:
        return self.verdict

    def sorted_records(self) -> list[Record]:
        return sorted(self.records, key=lambda r: (r.family, r.index, r.note))

    def failures(self) -> list[Record]:
        return [r for r in self.sorted_records() if not r.passed]

    def failing_families(self) -> list[str]:
        return sorted({r.family for r in self.records if not r.passed})

    def families(self) -> list[str]:
        return sorted({r.family for r in self.records})

    def max_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    def argmax(self) -> Record | None:
        """Worst record; ties broken by the deterministic record order."""
        best = None
        for r in self.sorted_records():
            if best is None or r.residual > best.residual:
                best = r
        return best

    def count(self, family: str | None = None) -> int:
        return sum(1 for r in self.records if family is None or r.family == family)

    def family_summary(self) -> dict[str, dict[str, Any]]:
        out: dict[str, dict[str, Any]] = {}
        for r in self.sorted_records():
            s = out.setdefault(r.family, {"instances": 0, "failures": 0, "max_residual": 0.0})
            s["instances"] += 1
            s["failures"] += 0 if r.passed else 1
            s["max_residual"] = max(s["max_residual"], r.residual)
        return out

    def to_dict(self, full: bool = True) -> dict[str, Any]:
        worst = self.argmax()
        d: dict[str, Any] = {
            "suite": self.suite,
            "verdict": "pass" if self.verdict else "fail",
            "tier": self.tier,
            "tolerance": self.tol.as_dict(),
            "gauge": dict(sorted(self.gauge.items())),
            "instances": len(self.records),
            "max_residual": self.max_residual(),
            "argmax": None if worst is None else worst.as_list(),
            "families": self.family_summary(),
            "notes": list(self.notes),
        }
        if self.meta:
            d["meta"] = self.meta
        if full:
            d["records"] = [r.as_list() for r in self.sorted_records()]
        else:
            d["failures"] = [r.as_list() for r in self.failures()]
        return d

    def summary_line(self) -> str:
        worst = self.argmax()
        tail = ""
        if worst is not None and not self.verdict:
            tail = f"  argmax {worst.family}[{','.join(worst.index)}] residual={worst.residual:.3e}"
        return (
            f"{self.suite}: {'PASS' if self.verdict else 'FAIL'} "
            f"({len(self.records)} instances, max residual {self.max_residual():.3e}){tail}"
        )


def merge_reports(suite: str, parts: Iterable[CheckReport], tol: Tolerance = DEFAULT_TOL, tier: str = "structure") -> CheckReport:
    out = CheckReport(suite, tol=tol, tier=tier)
    for p in parts:
        out.extend(p)
    out.records.sort(key=lambda r: (r.family, r.index, r.note))
    return out
