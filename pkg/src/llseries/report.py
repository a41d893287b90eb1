"""Pass/fail records produced by the predicate checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class CheckResult:
    check: str
    point: tuple | None
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "point": list(self.point) if self.point is not None else None,
            "check": self.check,
            "pass": self.passed,
            "details": self.details,
        }


class Report:
    """An ordered list of check results; merging keeps order."""

    def __init__(self, results: Iterable[CheckResult] = ()):
        self.results = list(results)

    def add(self, check: str, point, passed: bool, **details: Any) -> bool:
        self.results.append(CheckResult(check, tuple(point) if point is not None else None, bool(passed), details))
        return bool(passed)

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        return self

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def __len__(self):
        return len(self.results)

    def __iter__(self):
        return iter(self.results)

    def summary(self) -> dict[str, list[int]]:
        """check name -> [passed, total]."""
        out: dict[str, list[int]] = {}
        for r in self.results:
            entry = out.setdefault(r.check, [0, 0])
            entry[0] += r.passed
            entry[1] += 1
        return out

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]

    def __repr__(self):
        return "Report(%d results, %d failed)" % (len(self.results), len(self.failures()))
