"""Cross-order sweep: maximal multiplicities, thresholds and the Golomb link.

For every order r up to ``r_max`` the sweep records a_r(r), the maximal run
length M(r) and the boundary run N_r(r-1). From M it derives the thresholds
j_k = min{r : M(r) >= k} and compares everything with the tabulated values
and with Golomb's sequence G and its partial sums S.
"""

from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .core_seq import GolombPair, MultiplicityProfile, generate_golomb, prefix_and_max_multiplicity

# M(r) for r = 2..50
TABULATED_MAX_MULTIPLICITY: Dict[int, int] = dict(
    zip(
        range(2, 51),
        (
            2, 3, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6, 6, 7, 7, 7, 7, 8, 8, 8, 8, 9, 9,
            9, 9, 9, 10, 10, 10, 10, 10, 11, 11, 11, 11, 11, 12, 12, 12, 12, 12, 12,
            13, 13, 13, 13, 13,
        ),
    )
)

# j_k for k = 3..30
TABULATED_THRESHOLDS: Dict[int, int] = dict(
    zip(
        range(3, 31),
        (
            3, 7, 10, 13, 17, 21, 25, 30, 35, 40, 46, 52, 58, 64, 71, 78, 85, 92,
            100, 108, 116, 124, 133, 142, 151, 160, 169, 179,
        ),
    )
)

DEFAULT_MIN_TERMS = 200_000
TERMS_PER_ORDER = 4_000


def default_terms(r: int) -> int:
    return max(DEFAULT_MIN_TERMS, TERMS_PER_ORDER * r)


@dataclass
class Verdict:
    """Outcome of one conjecture, table comparison or documented exception."""

    name: str
    kind: str
    checked: List[int] = field(default_factory=list)
    failures: List[Tuple[int, Any, Any]] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.checked) and not self.failures

    def record(self, index: int, expected: Any, actual: Any) -> None:
        self.checked.append(index)
        if expected != actual:
            self.failures.append((index, expected, actual))


@dataclass
class MetaReport:
    r_max: int
    profiles: Dict[int, MultiplicityProfile]
    thresholds: Dict[int, int]
    golomb: GolombPair
    verdicts: List[Verdict] = field(default_factory=list)

    @property
    def unstabilized(self) -> List[int]:
        return [r for r, p in sorted(self.profiles.items()) if not p.stabilized]

    @property
    def gaps(self) -> Dict[int, int]:
        return {
            k: self.thresholds[k + 1] - self.thresholds[k]
            for k in sorted(self.thresholds)
            if k + 1 in self.thresholds
        }

    def verdict(self, name: str) -> Verdict:
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        raise KeyError(name)

    @property
    def table_match(self) -> bool:
        return all(v.passed or not v.checked for v in self.verdicts if v.kind == "table")

    @property
    def passed(self) -> bool:
        return all(v.passed or not v.checked for v in self.verdicts)


def _profile(task: Tuple[int, int]) -> MultiplicityProfile:
    r, count = task
    return prefix_and_max_multiplicity(r, count)


def _profiles(r_max: int, n_terms: Optional[int], workers: int) -> Dict[int, MultiplicityProfile]:
    tasks = [(r, n_terms or default_terms(r)) for r in range(2, r_max + 1)]
    if workers <= 1:
        results = [_profile(task) for task in tasks]
    else:
        with mp.Pool(processes=workers) as pool:
            results = pool.map(_profile, tasks)
    return {profile.order: profile for profile in results}


def _thresholds(profiles: Dict[int, MultiplicityProfile]) -> Dict[int, int]:
    # j_k is only trusted when every order below it has a stabilized maximum
    thresholds: Dict[int, int] = {}
    best = 0
    for r in sorted(profiles):
        profile = profiles[r]
        if not profile.stabilized:
            break
        while profile.max_multiplicity > best:
            best += 1
            thresholds[best] = r
    return {k: r for k, r in thresholds.items() if k >= 3}


def meta_structure(
    r_max: int,
    n_terms: Optional[int] = None,
    k_floor: int = 4,
    workers: int = 1,
) -> MetaReport:
    """Profile orders 2..r_max and judge the tables, conjectures and exceptions.

    ``n_terms`` overrides the per-order horizon max(200000, 4000 r).
    """
    if r_max < 2:
        raise ValueError(f"r_max must be at least 2, got {r_max}")
    profiles = _profiles(r_max, n_terms, workers)
    thresholds = _thresholds(profiles)
    golomb = generate_golomb(max(r_max, max(thresholds, default=3)) + 2)
    report = MetaReport(r_max, profiles, thresholds, golomb)

    table = Verdict("tabulated-multiplicities", "table")
    for r, profile in sorted(profiles.items()):
        if r in TABULATED_MAX_MULTIPLICITY and profile.stabilized:
            table.record(r, TABULATED_MAX_MULTIPLICITY[r], profile.max_multiplicity)

    table_j = Verdict("tabulated-thresholds", "table")
    for k, r in sorted(thresholds.items()):
        if k in TABULATED_THRESHOLDS:
            table_j.record(k, TABULATED_THRESHOLDS[k], r)

    gap_law = Verdict("gap-law", "conjecture", note=f"j(k+1) - j(k) = G(k) for k >= {k_floor}")
    for k, gap in sorted(report.gaps.items()):
        if k >= k_floor:
            gap_law.record(k, golomb.G(k), gap)

    threshold_law = Verdict("threshold-law", "conjecture", note="j(k) = S(k-1) + 2 for k >= 4")
    for k, r in sorted(thresholds.items()):
        if k >= 4:
            threshold_law.record(k, golomb.S(k - 1) + 2, r)

    prefix = Verdict("prefix", "conjecture", note="a_r(r) = G(r-1) for r >= 3")
    for r, profile in sorted(profiles.items()):
        if r >= 3:
            prefix.record(r, golomb.G(r - 1), profile.prefix_value)

    domination = Verdict("domination", "conjecture", note="M(r) = N_r(r-1) for r >= 5")
    for r, profile in sorted(profiles.items()):
        if r >= 5 and profile.stabilized:
            domination.record(r, profile.boundary_run, profile.max_multiplicity)

    report.verdicts = [table, table_j, gap_law, threshold_law, prefix, domination]
    report.verdicts.extend(_exceptions(report))
    return report


def _exceptions(report: MetaReport) -> List[Verdict]:
    found: List[Verdict] = []
    gaps = report.gaps
    if 3 in gaps:
        first_gap = Verdict("first-gap", "exception", note="j4 - j3 = 4 while G(3) = 2")
        first_gap.record(3, (4, 2), (gaps[3], report.golomb.G(3)))
        found.append(first_gap)
    if 4 in report.profiles:
        r4 = report.profiles[4]
        dom = Verdict("domination-r4", "exception", note="M(4) = 3 while N_4(3) = 2")
        dom.record(4, (3, 2), (r4.max_multiplicity, r4.boundary_run))
        found.append(dom)
    if 3 in report.profiles:
        r3 = report.profiles[3]
        run = Verdict("run-identity-r3", "exception", note="N_3(2) = 3 while a_3(3) = 2")
        run.record(3, (3, 2), (r3.boundary_run, r3.prefix_value))
        found.append(run)
    return found
