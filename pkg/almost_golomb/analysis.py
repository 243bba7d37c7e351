"""Non-convergence of a(n)/n: exact ratio families, Cesaro means and envelopes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .core_seq import ALMOST_GOLOMB, GAP_VARIANT, GolombPair, Sequence

PHI = (1 + math.sqrt(5)) / 2

# Cesaro limits of a(n)/n for order 2 along 2^k and 3*2^(k-1)
L1 = 0.75 + math.log(6**0.75 / 4)
L2 = 2 / 3 + math.log(3 ** (2 / 3) / 2)

MIN_FAMILY_POINTS = 3
FINAL_ERROR_BOUND = 1e-3


class AnalysisError(Exception):
    """Raised when an analysis cannot run on the given prefix."""

    pass


@dataclass
class RatioFamily:
    """One index family n_k with an exact identity and a ratio limit."""

    name: str
    identity: str
    limit: Fraction
    ks: List[int] = field(default_factory=list)
    ratios: List[float] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def passed(self) -> Optional[bool]:
        if self.skipped:
            return None
        return not self.failures

    @property
    def errors(self) -> List[float]:
        return [abs(r - float(self.limit)) for r in self.ratios]


@dataclass
class RatioReport:
    order: int
    count: int
    families: List[RatioFamily] = field(default_factory=list)
    notices: List[str] = field(default_factory=list)

    @property
    def limits(self) -> List[Fraction]:
        return [f.limit for f in self.families]

    @property
    def passed(self) -> bool:
        checked = [f for f in self.families if f.passed is not None]
        return bool(checked) and all(f.passed for f in checked)


def _require_order(seq: Sequence, order: int) -> None:
    if seq.family != ALMOST_GOLOMB or seq.parameter != order:
        raise AnalysisError(f"Expected an order-{order} almost Golomb sequence, got {seq.tag}")


def _family(
    seq: Sequence,
    name: str,
    identity: str,
    limit: Fraction,
    index: Callable[[int], int],
    expected: Optional[Callable[[int], int]],
    k_lo: int,
    k_max: Optional[int],
) -> RatioFamily:
    family = RatioFamily(name, identity, limit)
    k = k_lo
    while index(k) <= seq.length and (k_max is None or k <= k_max):
        n = index(k)
        value = seq.at(n)
        family.ks.append(k)
        family.ratios.append(value / n)
        if expected is not None and value != expected(k):
            family.failures.append(f"k={k}: expected {expected(k)}, found {value}")
        k += 1
    if len(family.ks) < MIN_FAMILY_POINTS:
        family.skipped = f"{name}: only {len(family.ks)} index values fit in {seq.length} terms"
    return family


def _converging(family: RatioFamily, ks: Optional[List[int]] = None) -> None:
    # error to the limit must shrink strictly and end below the bound
    chosen = [i for i, k in enumerate(family.ks) if ks is None or k in ks]
    errors = [family.errors[i] for i in chosen]
    for prev, cur, i in zip(errors, errors[1:], chosen[1:]):
        if not cur < prev:
            family.failures.append(f"k={family.ks[i]}: error {cur:.3e} does not shrink")
    if errors and errors[-1] > FINAL_ERROR_BOUND:
        family.failures.append(
            f"k={family.ks[chosen[-1]]}: final error {errors[-1]:.3e} above {FINAL_ERROR_BOUND}"
        )


def ratio_pivots(seq: Sequence, k_max: Optional[int] = None) -> RatioReport:
    """Exact values of a(n)/n along families with two distinct limits.

    Two different limits along index families show a(n)/n does not converge.
    """
    order = seq.parameter
    if seq.family != ALMOST_GOLOMB or order not in (2, 3, 4, 5):
        raise AnalysisError(f"Ratio families exist for orders 2 to 5, got {seq.tag}")
    report = RatioReport(order, seq.length)

    if order == 2:
        report.families = [
            _family(seq, "2^k", "a(2^k) = 3*2^(k-2)", Fraction(3, 4),
                    lambda k: 2**k, lambda k: 3 * 2 ** (k - 2), 2, k_max),
            _family(seq, "3*2^(k-1)", "a(3*2^(k-1)) = 2^k", Fraction(2, 3),
                    lambda k: 3 * 2 ** (k - 1), lambda k: 2**k, 2, k_max),
        ]
    elif order == 3:
        report.families = [
            _family(seq, "5*3^k", "a(5*3^k) = 8*3^(k-1)", Fraction(8, 15),
                    lambda k: 5 * 3**k, lambda k: 8 * 3 ** (k - 1), 1, k_max),
            _family(seq, "8*3^k", "a(8*3^k) = 15*3^(k-1)", Fraction(5, 8),
                    lambda k: 8 * 3**k, lambda k: 15 * 3 ** (k - 1), 1, k_max),
        ]
    elif order == 4:
        pivot = _family(seq, "4^k", "48*a(4^k) = 25*4^k + 32", Fraction(25, 48),
                        lambda k: 4**k, lambda k: (25 * 4**k + 32) // 48, 3, k_max)
        values = [seq.at(4**k) for k in pivot.ks]
        for k, cur, nxt in zip(pivot.ks, values, values[1:]):
            if nxt != 4 * cur - 2:
                pivot.failures.append(f"k={k + 1}: expected {4 * cur - 2}, found {nxt}")
        seven = _family(seq, "7*4^k", "a(7*4^k)/(7*4^k) -> 10/21", Fraction(10, 21),
                        lambda k: 7 * 4**k, None, 0, k_max)
        if not seven.skipped:
            _converging(seven)
        report.families = [pivot, seven]
    else:
        pivot = _family(seq, "5^k", "A(k+1) = 5A(k) - 1 (k even), 5A(k) - 4 (k odd)",
                        Fraction(93, 200), lambda k: 5**k, None, 2, k_max)
        values = [seq.at(5**k) for k in pivot.ks]
        for k, cur, nxt in zip(pivot.ks, values, values[1:]):
            step = 1 if k % 2 == 0 else 4
            if nxt != 5 * cur - step:
                pivot.failures.append(f"k={k + 1}: expected {5 * cur - step}, found {nxt}")
        if not pivot.skipped:
            evens = [k for k in pivot.ks if k % 2 == 0]
            if len(evens) >= 2:
                _converging(pivot, evens)
        double = _family(seq, "2*5^k", "B(k+1) = 5B(k) - 1", Fraction(87, 200),
                         lambda k: 2 * 5**k, None, 2, k_max)
        values = [seq.at(2 * 5**k) for k in double.ks]
        for k, cur, nxt in zip(double.ks, values, values[1:]):
            if nxt != 5 * cur - 1:
                double.failures.append(f"k={k + 1}: expected {5 * cur - 1}, found {nxt}")
        if not double.skipped:
            _converging(double)
        report.families = [pivot, double]

    report.notices.extend(f.skipped for f in report.families if f.skipped)
    return report


@dataclass
class CesaroPoint:
    k: int
    at_power: float
    at_three_halves: Optional[float]

    @property
    def power_error(self) -> float:
        return abs(self.at_power - L1)

    @property
    def three_halves_error(self) -> Optional[float]:
        if self.at_three_halves is None:
            return None
        return abs(self.at_three_halves - L2)


@dataclass
class CesaroReport:
    points: List[CesaroPoint] = field(default_factory=list)
    calibration_k: int = 15
    constant: float = 0.0
    tolerance_failures: List[int] = field(default_factory=list)
    separation_failures: List[int] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def tolerance(self, k: int) -> float:
        return max(5e-4, self.constant * k * 2.0**-k)

    @property
    def passed(self) -> bool:
        return bool(self.points) and not self.tolerance_failures and not self.separation_failures


def cesaro_r2(seq: Sequence, k_max: int) -> CesaroReport:
    """Cesaro means C_N = (1/N) sum a(n)/n at N = 2^k and N = 3*2^(k-1).

    Errors against L1 and L2 are bounded by max(5e-4, c k 2^-k), with c
    calibrated at k = min(15, k_max) with a factor of two; the two limits
    must separate (C at 2^k above C at 3*2^(k-1)) from k = 16.
    """
    _require_order(seq, 2)
    if k_max < 3:
        raise AnalysisError(f"k_max must be at least 3, got {k_max}")
    if seq.length < 2**k_max:
        raise AnalysisError(f"Need {2**k_max} terms for k_max={k_max}, have {seq.length}")

    n = np.arange(1, seq.length + 1, dtype=np.float64)
    running = np.cumsum(seq.values() / n)

    def mean(size: int) -> float:
        return float(running[size - 1] / size)

    report = CesaroReport(calibration_k=min(15, k_max))
    for k in range(3, k_max + 1):
        three_halves = 3 * 2 ** (k - 1)
        report.points.append(
            CesaroPoint(k, mean(2**k), mean(three_halves) if three_halves <= seq.length else None)
        )

    by_k: Dict[int, CesaroPoint] = {p.k: p for p in report.points}
    anchor = by_k[report.calibration_k]
    worst = max(anchor.power_error, anchor.three_halves_error or 0.0)
    report.constant = 2 * worst * 2.0**report.calibration_k / report.calibration_k

    for point in report.points:
        if point.k < report.calibration_k:
            continue
        limit = report.tolerance(point.k)
        errors = [point.power_error]
        if point.three_halves_error is not None:
            errors.append(point.three_halves_error)
        if max(errors) > limit:
            report.tolerance_failures.append(point.k)
        if point.k >= 16 and point.at_three_halves is not None:
            if not point.at_power > point.at_three_halves:
                report.separation_failures.append(point.k)

    tail = [p.power_error for p in report.points[-5:]]
    if any(cur > prev for prev, cur in zip(tail, tail[1:])):
        report.warnings.append("error at 2^k does not decrease over the last five k")
    return report


@dataclass
class OscillationProfile:
    """Min and max of a(n)/n over windows partitioning [N/2, N]."""

    edges: np.ndarray
    mins: np.ndarray
    maxs: np.ndarray

    @property
    def overall_min(self) -> float:
        return float(self.mins.min())

    @property
    def overall_max(self) -> float:
        return float(self.maxs.max())


def oscillation_profile(seq: Sequence, window_count: int = 20) -> OscillationProfile:
    if window_count < 1:
        raise AnalysisError(f"Need at least one window, got {window_count}")
    top = seq.length
    if top < 2 * window_count:
        raise AnalysisError(f"Need at least {2 * window_count} terms for {window_count} windows")
    edges = np.linspace(top // 2, top, window_count + 1).astype(np.int64)
    ratio = seq.terms / np.maximum(np.arange(top + 1), 1)
    mins = np.empty(window_count)
    maxs = np.empty(window_count)
    for i in range(window_count):
        chunk = ratio[edges[i] : edges[i + 1] + 1]
        mins[i] = chunk.min()
        maxs[i] = chunk.max()
    return OscillationProfile(edges[1:], mins, maxs)


def golomb_asymptotic_ratio(pair: GolombPair, n: int) -> float:
    """G(n) / (phi^(2-phi) n^(phi-1)), which tends to 1."""
    return pair.G(n) / (PHI ** (2 - PHI) * n ** (PHI - 1))


@dataclass
class GapProfile:
    gap: int
    increments: Tuple[int, ...]
    tail_min: float
    tail_max: float


def gap_ratio_profile(seq: Sequence) -> GapProfile:
    """Increment set and the band of a(n)/n on [N/2, N] for a gap variant."""
    if seq.family != GAP_VARIANT or seq.parameter is None:
        raise AnalysisError(f"Expected a gap variant, got {seq.tag}")
    values = seq.values()
    half = seq.length // 2
    tail = values[half:] / np.arange(half + 1, seq.length + 1)
    increments = tuple(int(v) for v in np.unique(np.diff(values)))
    return GapProfile(seq.parameter, increments, float(tail.min()), float(tail.max()))
