"""Check reports shared by every verification routine.

A :class:`CheckReport` records one identity over one index range; a
:class:`ReportBundle` groups the reports of one suite. Both serialize to the
JSON layout described in ``schemas/check_report.schema.json``.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

MAX_SAMPLES = 10

Violation = Tuple[int, Any, Any]


def plain(value: Any) -> Any:
    """Convert numpy scalars and arrays into JSON-friendly Python values."""
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


@dataclass
class CheckReport:
    """Outcome of one identity checked over ``[lo, hi]``.

    ``checked`` counts indices actually evaluated, ``unchecked`` counts
    indices skipped because they reach past the generated prefix.
    """

    identity: str
    lo: int
    hi: int
    checked: int = 0
    unchecked: int = 0
    violation_count: int = 0
    samples: List[Violation] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    allow_empty: bool = False

    @property
    def passed(self) -> bool:
        return self.violation_count == 0 and (self.checked > 0 or self.allow_empty)

    @property
    def first_violation(self) -> Optional[Violation]:
        return self.samples[0] if self.samples else None

    def add_violation(
        self,
        index: int,
        expected: Any,
        actual: Any,
        max_samples: Optional[int] = MAX_SAMPLES,
    ) -> None:
        self.violation_count += 1
        if max_samples is None or len(self.samples) < max_samples:
            self.samples.append((int(index), plain(expected), plain(actual)))

    def to_dict(self, max_samples: Optional[int] = None) -> Dict[str, Any]:
        samples = self.samples if max_samples is None else self.samples[:max_samples]
        data: Dict[str, Any] = {
            "identity": self.identity,
            "range": [int(self.lo), int(self.hi)],
            "pass": self.passed,
            "checked": int(self.checked),
            "unchecked": int(self.unchecked),
            "violation_count": int(self.violation_count),
            "samples": [
                {"index": index, "expected": expected, "actual": actual}
                for index, expected, actual in samples
            ],
        }
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def compare_arrays(
    identity: str,
    indices: Sequence[int],
    expected: Any,
    actual: Any,
    max_samples: Optional[int] = MAX_SAMPLES,
    unchecked: int = 0,
) -> CheckReport:
    """Build a report from elementwise comparison of two aligned arrays.

    Rows of 2-D inputs are compared as a whole; a row counts as one violation.
    """
    idx = np.asarray(indices, dtype=np.int64)
    exp = np.asarray(expected)
    act = np.asarray(actual)
    if exp.shape != act.shape or exp.shape[:1] != idx.shape:
        raise ValueError(
            f"{identity}: misaligned inputs {idx.shape}, {exp.shape}, {act.shape}"
        )

    lo, hi = (int(idx.min()), int(idx.max())) if idx.size else (0, 0)
    report = CheckReport(identity, lo, hi, checked=int(idx.size), unchecked=unchecked)

    mismatch = exp != act
    if mismatch.ndim > 1:
        mismatch = mismatch.reshape(mismatch.shape[0], -1).any(axis=1)
    bad = np.flatnonzero(mismatch)
    report.violation_count = int(bad.size)
    take = bad if max_samples is None else bad[:max_samples]
    report.samples = [(int(idx[i]), plain(exp[i]), plain(act[i])) for i in take]
    return report


def flag_report(
    identity: str,
    indices: Sequence[int],
    ok: Any,
    expected: Any,
    actual: Any,
    max_samples: Optional[int] = MAX_SAMPLES,
) -> CheckReport:
    """Build a report from a precomputed pass mask, keeping values for samples."""
    idx = np.asarray(indices, dtype=np.int64)
    mask = np.asarray(ok, dtype=bool)
    exp = np.asarray(expected)
    act = np.asarray(actual)
    lo, hi = (int(idx.min()), int(idx.max())) if idx.size else (0, 0)
    report = CheckReport(identity, lo, hi, checked=int(idx.size))
    bad = np.flatnonzero(~mask)
    report.violation_count = int(bad.size)
    take = bad if max_samples is None else bad[:max_samples]
    report.samples = [(int(idx[i]), plain(exp[i]), plain(act[i])) for i in take]
    return report


@dataclass
class ReportBundle:
    """The reports of one suite, plus notices about skipped sub-checks."""

    name: str
    reports: List[CheckReport] = field(default_factory=list)
    notices: List[str] = field(default_factory=list)

    def add(self, report: CheckReport) -> Optional[CheckReport]:
        """Append ``report`` unless its range is empty, which becomes a notice."""
        if report.checked == 0 and not report.allow_empty:
            self.notices.append(f"{report.identity}: skipped, no index in range")
            return None
        self.reports.append(report)
        return report

    def extend(self, other: "ReportBundle") -> None:
        self.reports.extend(other.reports)
        self.notices.extend(other.notices)

    def get(self, identity: str) -> CheckReport:
        for report in self.reports:
            if report.identity == identity:
                return report
        raise KeyError(identity)

    def __contains__(self, identity: str) -> bool:
        return any(report.identity == identity for report in self.reports)

    def __iter__(self) -> Iterator[CheckReport]:
        return iter(self.reports)

    def __len__(self) -> int:
        return len(self.reports)

    @property
    def failures(self) -> List[CheckReport]:
        return [report for report in self.reports if not report.passed]

    @property
    def passed(self) -> bool:
        return bool(self.reports) and not self.failures

    def to_dict(self, max_samples: Optional[int] = None) -> Dict[str, Any]:
        return {
            "suite": self.name,
            "pass": self.passed,
            "reports": [report.to_dict(max_samples) for report in self.reports],
            "notices": list(self.notices),
        }
