"""Verification reports and label rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def render_label(label) -> str:
    """Stable text form of an element label; tuples render as ``(a,b)``."""
    if isinstance(label, tuple):
        return "(" + ",".join(render_label(x) for x in label) + ")"
    return str(label)


def render_value(value):
    """Recursively turn report data into JSON-compatible values.

    Lists are sequences (words, pairs of objects); tuples are element labels;
    sets are rendered sorted.
    """
    if isinstance(value, (frozenset, set)):
        return sorted((render_value(v) for v in value), key=_sort_key)
    if isinstance(value, list):
        return [render_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): render_value(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float)) or value is None:
        return value
    return render_label(value)


def set_key(s) -> tuple:
    """Canonical order on sets of labels: by size, then by rendered labels."""
    return (len(s), sorted(render_label(x) for x in s))


def first_set(sets):
    """The canonically smallest set of a collection, or None."""
    return min(sets, key=set_key, default=None)


def _sort_key(v):
    return (len(v), str(v)) if isinstance(v, list) else (0, str(v))


@dataclass
class CheckResult:
    """Outcome of one named check.

    ``bound`` is the word-length bound of the evidence (None: exact).
    ``instances`` counts the cases examined; a check built without a count
    is a single assertion.
    """

    check: str
    passed: bool
    bound: int | None = None
    counterexample: Any = None
    exhaustive: bool = False
    instances: int = 1
    skipped: int = 0
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "bound": self.bound,
            "exhaustive": self.exhaustive,
            "instances": self.instances,
            "skipped": self.skipped,
            "counterexample": render_value(self.counterexample),
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    subject: str
    entries: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, entry: CheckResult) -> CheckResult:
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if not e.passed]

    def get(self, check: str) -> CheckResult:
        for e in self.entries:
            if e.check == check:
                return e
        raise KeyError(check)

    def to_dict(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "entries": [e.to_dict() for e in self.entries]}

    def summary(self) -> str:
        lines = [f"{self.subject}: {'ok' if self.ok else 'FAILED'}"]
        for e in self.entries:
            bound = "exact" if e.bound is None else f"len<={e.bound}"
            line = f"  {'pass' if e.passed else 'FAIL'} {e.check} [{bound}] {e.instances} instances"
            if not e.passed:
                line += f"; counterexample {render_value(e.counterexample)}"
                if e.detail:
                    line += f" ({e.detail})"
            lines.append(line)
        return "\n".join(lines)
