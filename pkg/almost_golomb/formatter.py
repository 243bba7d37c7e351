"""Formatters for sequences, check reports, analyses and the meta sweep."""

import json
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .analysis import CesaroReport, L1, L2, OscillationProfile, RatioReport
from .automata import GeometricOrbit, Output, format_output
from .core_seq import Sequence
from .meta import MetaReport
from .reports import ReportBundle

SEQUENCE_FORMATS = ("bfile", "csv", "json", "text")


class FormatError(ValueError):
    """Raised when input text cannot be parsed."""

    pass


def format_sequence(seq: Sequence, fmt: str = "bfile") -> str:
    """Render a sequence prefix in one of :data:`SEQUENCE_FORMATS`."""
    if fmt == "bfile":
        return format_bfile(seq)
    if fmt == "csv":
        return format_csv(seq)
    if fmt == "json":
        return format_json(seq)
    if fmt == "text":
        return format_text(seq)
    raise FormatError(f"Unknown format '{fmt}'. Known: {', '.join(SEQUENCE_FORMATS)}")


def format_bfile(seq: Sequence) -> str:
    """One ``n a(n)`` line per term, starting at n = 1."""
    return "".join(f"{n} {v}\n" for n, v in enumerate(seq.values().tolist(), 1))


def format_csv(seq: Sequence) -> str:
    lines = ["n,a"]
    lines.extend(f"{n},{v}" for n, v in enumerate(seq.values().tolist(), 1))
    return "\n".join(lines) + "\n"


def format_json(seq: Sequence) -> str:
    data = {
        "family": seq.family,
        "parameter": seq.parameter,
        "count": seq.length,
        "terms": seq.values().tolist(),
    }
    return json.dumps(data) + "\n"


def format_text(seq: Sequence) -> str:
    return ",".join(str(v) for v in seq.values().tolist()) + "\n"


def parse_bfile(text: str) -> List[Tuple[int, int]]:
    """Parse ``n a(n)`` lines; blank lines and ``#`` comments are skipped."""
    pairs: List[Tuple[int, int]] = []
    for number, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise FormatError(f"Line {number}: expected 'n a(n)', got {stripped!r}")
        try:
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise FormatError(f"Line {number}: non-integer field in {stripped!r}") from None
    return pairs


def bfile_values(pairs: List[Tuple[int, int]]) -> List[int]:
    """Values of a b-file whose indices run 1, 2, 3, ... without gaps."""
    for expected, (n, _) in enumerate(pairs, 1):
        if n != expected:
            raise FormatError(f"b-file index {n} found where {expected} was expected")
    return [value for _, value in pairs]


def format_bundles_json(
    bundles: Iterable[ReportBundle],
    meta: Optional[Dict[str, Any]] = None,
    max_samples: Optional[int] = None,
) -> str:
    bundles = list(bundles)
    document: Dict[str, Any] = dict(meta or {})
    document["pass"] = bool(bundles) and all(b.passed for b in bundles)
    document["bundles"] = [b.to_dict(max_samples) for b in bundles]
    return json.dumps(document, indent=2) + "\n"


def format_bundles_text(bundles: Iterable[ReportBundle], max_samples: Optional[int] = None) -> str:
    """Aligned table of identity, range, counts and status per bundle."""
    lines: List[str] = []
    for bundle in bundles:
        status = "PASS" if bundle.passed else "FAIL"
        lines.append(f"== {bundle.name}: {status}")
        rows = [
            (
                report.identity,
                f"{report.lo}..{report.hi}",
                str(report.checked),
                str(report.violation_count),
                "ok" if report.passed else "FAIL",
            )
            for report in bundle
        ]
        header = ("identity", "range", "checked", "violations", "status")
        widths = [max(len(row[i]) for row in rows + [header]) for i in range(len(header))]
        for row in [header] + rows:
            lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        for report in bundle.failures:
            samples = report.samples if max_samples is None else report.samples[:max_samples]
            for index, expected, actual in samples:
                lines.append(f"  {report.identity} at {index}: expected {expected}, found {actual}")
        for notice in bundle.notices:
            lines.append(f"  note: {notice}")
        lines.append("")
    return "\n".join(lines)


def format_ratio_report(report: RatioReport) -> str:
    lines = [f"order {report.order}, {report.count} terms"]
    for family in report.families:
        if family.passed is None:
            status = "skipped"
        else:
            status = "PASS" if family.passed else "FAIL"
        lines.append(f"{family.name}: {family.identity}, limit {family.limit} [{status}]")
        for k, ratio in zip(family.ks, family.ratios):
            lines.append(f"  k={k}  ratio={ratio:.9f}")
        lines.extend(f"  {failure}" for failure in family.failures)
    lines.extend(f"note: {notice}" for notice in report.notices)
    return "\n".join(lines) + "\n"


def format_cesaro_report(report: CesaroReport) -> str:
    lines = [
        f"L1 = {L1:.9f}  L2 = {L2:.9f}  L1 - L2 = {L1 - L2:.9f}",
        "k\tC(2^k)\terr1\tC(3*2^(k-1))\terr2",
    ]
    for point in report.points:
        if point.at_three_halves is None:
            tail = "-\t-"
        else:
            tail = f"{point.at_three_halves:.9f}\t{point.three_halves_error:.2e}"
        lines.append(f"{point.k}\t{point.at_power:.9f}\t{point.power_error:.2e}\t{tail}")
    lines.append(f"tolerance constant c = {report.constant:.4f} (calibrated at k={report.calibration_k})")
    if report.tolerance_failures:
        lines.append(f"tolerance exceeded at k = {report.tolerance_failures}")
    if report.separation_failures:
        lines.append(f"limits not separated at k = {report.separation_failures}")
    lines.extend(f"warning: {w}" for w in report.warnings)
    return "\n".join(lines) + "\n"


def format_tsv(pairs: Iterable[Tuple[float, float]], title: Optional[str] = None) -> str:
    """Two-column ``x<TAB>y`` data, optionally headed by a ``#`` comment."""
    lines = [f"# {title}"] if title else []
    lines.extend(f"{x}\t{y}" for x, y in pairs)
    return "\n".join(lines) + "\n"


def format_oscillation(profile: OscillationProfile) -> str:
    """Max and min envelopes as two TSV data blocks separated by two blank lines."""
    xs = profile.edges.tolist()
    upper = format_tsv(zip(xs, profile.maxs.tolist()), "max a(n)/n")
    lower = format_tsv(zip(xs, profile.mins.tolist()), "min a(n)/n")
    return upper + "\n\n" + lower


def format_orbit(orbit: GeometricOrbit) -> str:
    values = ",".join(format_output(v) for v in orbit.values)
    cycle = ",".join(format_output(v) for v in orbit.cycle)
    return (
        f"preperiod {orbit.preperiod}\n"
        f"period {orbit.period}\n"
        f"output period {orbit.output_period}\n"
        f"cycle {cycle}\n"
        f"values {values}\n"
    )


def format_outputs(values: Iterable[Output], start: int = 1) -> str:
    return "".join(f"{n} {format_output(v)}\n" for n, v in enumerate(values, start))


def format_meta_csv(report: MetaReport) -> str:
    lines = ["r,M,stabilized,prefix,boundary_run"]
    for r, profile in sorted(report.profiles.items()):
        lines.append(
            f"{r},{profile.max_multiplicity},{str(profile.stabilized).lower()},"
            f"{profile.prefix_value},{profile.boundary_run}"
        )
    return "\n".join(lines) + "\n"


def format_threshold_table(report: MetaReport) -> str:
    """Thresholds, gaps and Golomb values side by side, one row per k."""
    lines = ["k\tj_k\tgap\tG(k)\tS(k-1)+2"]
    gaps = report.gaps
    for k, r in sorted(report.thresholds.items()):
        gap = str(gaps[k]) if k in gaps else "-"
        lines.append(f"{k}\t{r}\t{gap}\t{report.golomb.G(k)}\t{report.golomb.S(k - 1) + 2}")
    return "\n".join(lines) + "\n"


def format_meta_report(report: MetaReport) -> str:
    lines = [f"orders 2..{report.r_max}"]
    for verdict in report.verdicts:
        if not verdict.checked:
            status = "not checked"
        else:
            status = "PASS" if verdict.passed else "FAIL"
        note = f" ({verdict.note})" if verdict.note else ""
        lines.append(f"{verdict.kind} {verdict.name}: {status}{note}")
        for index, expected, actual in verdict.failures[:10]:
            lines.append(f"  at {index}: expected {expected}, found {actual}")
    if report.unstabilized:
        lines.append(f"unstabilized orders: {report.unstabilized}")
    return "\n".join(lines) + "\n"
