"""Almost Golomb sequences and their relatives.

Terms are stored in a dense ``int64`` array whose slot 0 holds the zero
extension, so ``terms[n]`` is a(n) for ``1 <= n <= N``. Indices ``<= 0`` read
as zero through :meth:`Sequence.at`.

An order-r almost Golomb sequence is the nondecreasing sequence of positive
integers with a(1) = 1 in which

    a(a(n) + a(n-1) + ... + a(n-r+1)) = n

and every a(n) is the least value keeping this self-describing property.
The sum in the brackets is the anchor S_n: the position of the first
occurrence of the value n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Deque, Iterable, List, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .reports import CheckReport, ReportBundle, compare_arrays, flag_report

ALMOST_GOLOMB = "almost-golomb"
GOLOMB = "golomb"
GAP_VARIANT = "gap-variant"
MALLOWS_R2 = "mallows-r2"

FAMILIES = (ALMOST_GOLOMB, GOLOMB, GAP_VARIANT, MALLOWS_R2)


class SequenceError(Exception):
    """Raised when a sequence cannot be built or breaks a structural invariant."""

    pass


@dataclass(frozen=True, eq=False)
class Sequence:
    """A finite prefix a(1..N) of one sequence family."""

    family: str
    parameter: Optional[int]
    terms: np.ndarray

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise SequenceError(f"Unknown sequence family: {self.family}")
        terms = np.array(self.terms, dtype=np.int64, copy=True)
        if terms.ndim != 1 or terms.size < 2:
            raise SequenceError("A sequence needs at least one term")
        if terms[0] != 0:
            raise SequenceError("Slot 0 must hold the zero extension")
        terms.setflags(write=False)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_values(
        cls, family: str, parameter: Optional[int], values: Iterable[int]
    ) -> "Sequence":
        """Build a sequence from a(1), a(2), ... without the leading zero."""
        body = np.fromiter((int(v) for v in values), dtype=np.int64)
        return cls(family, parameter, np.concatenate(([0], body)))

    @property
    def length(self) -> int:
        return int(self.terms.size - 1)

    def __len__(self) -> int:
        return self.length

    @property
    def tag(self) -> str:
        if self.parameter is None:
            return self.family
        return f"{self.family} {self.parameter}"

    @property
    def unit_increments(self) -> bool:
        """Whether the family guarantees a(n+1) - a(n) in {0, 1}."""
        if self.family == GAP_VARIANT:
            return self.parameter is not None and self.parameter <= 2
        return True

    def at(self, n: int) -> int:
        if n <= 0:
            return 0
        if n > self.length:
            raise IndexError(f"a({n}) is beyond the generated prefix of {self.length}")
        return int(self.terms[n])

    def take(self, indices: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`at` for indices ``<= N``."""
        return self.terms[np.maximum(indices, 0)]

    def values(self) -> np.ndarray:
        return self.terms[1:]

    def with_term(self, n: int, value: int) -> "Sequence":
        """Return a copy with a(n) replaced, for perturbation experiments."""
        if not 1 <= n <= self.length:
            raise SequenceError(f"Index {n} outside 1..{self.length}")
        terms = self.terms.copy()
        terms[n] = value
        return Sequence(self.family, self.parameter, terms)


@dataclass(frozen=True, eq=False)
class DiffSeq:
    """First differences d(n) = a(n+1) - a(n), with d(0) = 1.

    ``d[n]`` is stored for ``0 <= n <= N - 1``; negative indices read as zero.
    """

    d: np.ndarray

    @property
    def length(self) -> int:
        return int(self.d.size)

    def at(self, n: int) -> int:
        if n < 0:
            return 0
        return int(self.d[n])

    def padded(self, pad: int) -> np.ndarray:
        """Return ``pad`` zeros followed by ``d`` so index ``k + pad`` reads d(k)."""
        return np.concatenate((np.zeros(pad, dtype=self.d.dtype), self.d))


@dataclass(frozen=True, eq=False)
class RunTable:
    """Anchors S_m and run lengths L_m for the complete runs of a prefix."""

    order: int
    values: np.ndarray
    anchors: np.ndarray
    lengths: np.ndarray

    @property
    def max_value(self) -> int:
        """Largest value whose run ends inside the prefix."""
        return int(self.values[-1]) if self.values.size else 0

    def anchor(self, m: int) -> int:
        self._check(m)
        return int(self.anchors[m - 1])

    def length_of(self, m: int) -> int:
        self._check(m)
        return int(self.lengths[m - 1])

    def _check(self, m: int) -> None:
        if not 1 <= m <= self.max_value:
            raise SequenceError(f"No complete run for value {m}")


@dataclass(frozen=True, eq=False)
class GolombPair:
    """Golomb's sequence G and its partial sums S(k) = G(1) + ... + G(k)."""

    sequence: Sequence
    partial_sums: np.ndarray

    def G(self, n: int) -> int:
        return self.sequence.at(n)

    def S(self, k: int) -> int:
        if k < 0 or k >= self.partial_sums.size:
            raise IndexError(f"S({k}) is beyond the generated prefix")
        return int(self.partial_sums[k])


@dataclass(frozen=True)
class MultiplicityProfile:
    """Run-length statistics of one order, as used by the meta sweep."""

    order: int
    count: int
    prefix_value: int
    max_multiplicity: int
    attained_at: int
    max_value: int
    boundary_run: int

    @property
    def stabilized(self) -> bool:
        """The maximum was reached in the first half of the complete values."""
        return self.attained_at <= self.max_value // 2


def _check_order(r: int) -> None:
    if r < 2:
        raise SequenceError(f"Order must be at least 2, got {r}")


def _check_count(count: int) -> None:
    if count < 1:
        raise SequenceError(f"Count must be at least 1, got {count}")


def generate_almost_golomb(r: int, count: int) -> Sequence:
    """Generate a(1..count) of the order-r almost Golomb sequence.

    Runs are emitted value by value; for m >= 3 the run of m has length
    a(m+1) - a(m+1-r), and a(m+1) is always known once a(S_m) = m is placed.
    """
    _check_order(r)
    _check_count(count)

    terms: List[int] = [0] * (count + 1)
    terms[1] = 1
    first_three = 4 if r == 2 else 5
    pos = 2
    while pos < first_three and pos <= count:
        terms[pos] = 2
        pos += 1

    m = 3
    while pos <= count:
        terms[pos] = m
        length = terms[m + 1] - (terms[m + 1 - r] if m + 1 - r >= 1 else 0)
        if not 1 <= length <= r:
            raise SequenceError(f"Run of {m} has impossible length {length}")
        end = min(pos + length, count + 1)
        terms[pos:end] = [m] * (end - pos)
        pos += length
        m += 1

    return Sequence(ALMOST_GOLOMB, r, np.asarray(terms, dtype=np.int64))


def anchors(seq: Sequence, r: int) -> np.ndarray:
    """Return S with S[n] = a(n) + ... + a(n-r+1) for ``0 <= n <= N``."""
    _check_order(r)
    cumulative = np.cumsum(seq.terms)
    back = np.maximum(np.arange(seq.length + 1) - r, 0)
    return cumulative - cumulative[back]


def verify_defining_property(
    seq: Sequence, r: int, max_samples: Optional[int] = 10
) -> ReportBundle:
    """Check monotonicity, the anchor identity and minimality on a prefix."""
    _check_order(r)
    a = seq.terms
    n_terms = seq.length
    window = anchors(seq, r)
    bundle = ReportBundle(f"definition r={r}")

    steps = np.arange(1, n_terms)
    bundle.add(
        flag_report(
            "monotonicity",
            steps,
            a[2:] >= a[1:-1],
            a[1:-1],
            a[2:],
            max_samples=max_samples,
        )
    )

    n = np.arange(1, n_terms + 1)
    inside = window[1:] <= n_terms
    anchor_report = compare_arrays(
        "anchor",
        n[inside],
        n[inside],
        a[window[1:][inside]],
        max_samples=max_samples,
        unchecked=int((~inside).sum()),
    )
    bundle.add(anchor_report)

    bundle.add(_minimality(seq, window, max_samples))
    return bundle


def _minimality(seq: Sequence, window: np.ndarray, max_samples: Optional[int]) -> CheckReport:
    # For n >= 2 and a(n-1) <= m < a(n), placing m at a(n) must break the
    # anchor identity: a(m + rest) != n where rest = S_n - a(n).
    a = seq.terms
    n_terms = seq.length
    report = CheckReport("minimality", 2, n_terms)
    if n_terms < 2:
        return report

    n = np.arange(2, n_terms + 1)
    rest = window[2:] - a[2:]
    jump = a[2:] - a[1:-1]

    single = jump == 1
    pos = a[1:-1][single] + rest[single]
    reachable = pos <= n_terms
    hits = n[single][reachable]
    probe = pos[reachable]
    # a probe landing on n itself reads the candidate, not the placed term
    found = np.where(probe == hits, a[1:-1][single][reachable], a[probe])
    report.checked += int(reachable.sum())
    report.unchecked += int((~reachable).sum())
    for index in np.flatnonzero(found == hits):
        report.add_violation(hits[index], f"a({probe[index]}) != {hits[index]}", found[index], max_samples)

    for offset in np.flatnonzero(jump > 1):
        k = int(n[offset])
        for m in range(int(a[k - 1]), int(a[k])):
            p = m + int(rest[offset])
            if p > n_terms:
                report.unchecked += 1
                continue
            report.checked += 1
            value = m if p == k else int(a[p])
            if value == k:
                report.add_violation(k, f"a({p}) != {k}", value, max_samples)
    return report


def first_differences(seq: Sequence, strict: bool = True) -> DiffSeq:
    """Return d with d(0) = 1 and d(n) = a(n+1) - a(n) for ``1 <= n < N``.

    With ``strict`` the unit-increment invariant is enforced for the
    families that guarantee it.
    """
    if seq.length < 2:
        raise SequenceError("First differences need at least two terms")
    d = np.empty(seq.length, dtype=np.int64)
    d[0] = 1
    d[1:] = np.diff(seq.values())
    if strict and seq.unit_increments:
        bad = np.flatnonzero((d < 0) | (d > 1))
        if bad.size:
            n = int(bad[0])
            raise SequenceError(f"d({n}) = {int(d[n])} breaks unit increments in {seq.tag}")
    return DiffSeq(d)


def run_table(seq: Sequence, r: int) -> RunTable:
    """Tabulate anchors and run lengths for every complete run.

    Positional runs are cross-checked against S_m and, for m >= 3, against
    L_m = a(m+1) - a(m+1-r); a mismatch raises :class:`SequenceError`.
    """
    _check_order(r)
    report = run_identity_check(seq, r)
    if not report.passed and report.violation_count:
        index, expected, actual = report.samples[0]
        raise SequenceError(
            f"Run table mismatch at m={index}: expected {expected}, found {actual}"
        )
    return _positional_runs(seq, r)


def _positional_runs(seq: Sequence, r: int) -> RunTable:
    values = seq.values()
    starts = np.concatenate(([1], np.flatnonzero(np.diff(values)) + 2))
    lengths = np.diff(starts)
    run_values = seq.terms[starts[:-1]]
    expected = np.arange(1, run_values.size + 1)
    if run_values.size and not np.array_equal(run_values, expected):
        first = int(np.flatnonzero(run_values != expected)[0])
        raise SequenceError(
            f"Runs are not consecutive values: run {first + 1} holds {int(run_values[first])}"
        )
    return RunTable(r, run_values, starts[:-1], lengths)


def run_identity_check(seq: Sequence, r: int) -> CheckReport:
    """Compare positional runs with S_m and the run identity for m >= 3."""
    try:
        table = _positional_runs(seq, r)
    except SequenceError as exc:
        report = CheckReport("run-identity", 1, seq.length, checked=1)
        report.add_violation(1, "consecutive runs", str(exc))
        return report

    window = anchors(seq, r)
    m = table.values
    m = m[(m >= 3) & (m + 1 <= seq.length)]
    formula = seq.terms[m + 1] - seq.take(m + 1 - r)
    positional = table.lengths[m - 1]
    report = compare_arrays("run-identity", m, formula, positional)

    anchored = table.values[table.values >= 3]
    anchor_report = compare_arrays(
        "run-anchor", anchored, window[anchored], table.anchors[anchored - 1]
    )
    report.checked += anchor_report.checked
    report.violation_count += anchor_report.violation_count
    report.samples.extend(anchor_report.samples[: max(0, 10 - len(report.samples))])
    return report


def nested_anchor_check(seq: Sequence, r: int) -> CheckReport:
    """Check S_{S_n} = r n - R_n with R_n = sum_{j<r} (r-j) d(S_n - j).

    Also checks the bound 0 <= R_n <= r(r-1)/2.
    """
    _check_order(r)
    window = anchors(seq, r)
    diffs = first_differences(seq, strict=False)
    padded = diffs.padded(r)

    n = np.arange(1, seq.length + 1)
    s = window[1:]
    n = n[s <= seq.length]
    s = s[s <= seq.length]

    correction = np.zeros(n.size, dtype=np.int64)
    for j in range(1, r):
        correction += (r - j) * padded[s - j + r]

    expected = r * n - correction
    actual = window[s]
    report = compare_arrays("nested-anchor", n, expected, actual)
    out_of_bounds = np.flatnonzero((correction < 0) | (correction > r * (r - 1) // 2))
    for index in out_of_bounds:
        report.add_violation(n[index], f"0 <= R <= {r * (r - 1) // 2}", correction[index])
    report.unchecked = seq.length - int(n.size)
    return report


def window_determinism_check(
    seq: Sequence, r: int, max_samples: Optional[int] = 10
) -> ReportBundle:
    """Check that d(rn+i) is a function of the window d(n-C..n+D).

    C = 2r - 3 and D = r(r+1)/2 - 1; one report per residue i, over all
    n >= max(r+1, 2r-3) whose window and target fit in the prefix.
    """
    _check_order(r)
    d = first_differences(seq, strict=False).d
    before = 2 * r - 3
    after = r * (r + 1) // 2 - 1
    start = max(r + 1, 2 * r - 3)
    width = before + after + 1
    bundle = ReportBundle(f"window-determinism r={r}")

    rows = sliding_window_view(d.astype(np.int8), width) if d.size >= width else None
    for residue in range(r):
        stop = min(d.size - 1 - after, (d.size - 1 - residue) // r)
        if rows is None or stop < start:
            empty = CheckReport(f"window-residue-{residue}", start, start, allow_empty=True)
            empty.notes.append("0 windows")
            bundle.add(empty)
            continue
        n = np.arange(start, stop + 1)
        windows = rows[n - before]
        targets = d[r * n + residue]
        _, first, inverse = np.unique(
            windows, axis=0, return_index=True, return_inverse=True
        )
        inverse = np.asarray(inverse).reshape(-1)
        expected = targets[first][inverse]
        report = compare_arrays(
            f"window-residue-{residue}", n, expected, targets, max_samples=max_samples
        )
        report.notes.append(f"{first.size} distinct windows")
        bundle.add(report)
    return bundle


def local_projection_check(seq: Sequence, r: int) -> CheckReport:
    """Check that d(k) = 1 exactly when k + 1 is an anchor S_m with m >= 3.

    Anchors come from the window sums, which ties the differences to the
    defining identity: d(S_A - 1) = 1, and d(S_A + X) = 1 iff some partial
    run sum L_A + ... + L_{A+j} equals X + 1.
    """
    _check_order(r)
    d = first_differences(seq, strict=False).d
    window = anchors(seq, r)
    starts = window[3:]
    starts = starts[(starts >= 1) & (starts <= seq.length)]
    if not starts.size:
        return CheckReport("local-projection", 0, 0)
    k = np.arange(int(starts.min()) - 1, int(starts.max()))
    marks = np.zeros(seq.length + 1, dtype=np.int64)
    marks[starts] = 1
    return compare_arrays("local-projection", k, marks[k + 1], d[k])


def prefix_and_max_multiplicity(r: int, count: int) -> MultiplicityProfile:
    """Return a_r(r), the maximal run length over complete runs and N_r(r-1)."""
    _check_order(r)
    if count < 4 * r:
        raise SequenceError(f"Need at least {4 * r} terms to profile order {r}")
    seq = generate_almost_golomb(r, count)
    table = _positional_runs(seq, r)
    if table.max_value < r:
        raise SequenceError(f"Prefix of {count} terms does not complete the run of {r - 1}")
    best = int(table.lengths.max())
    attained = int(table.values[int(np.argmax(table.lengths))])
    return MultiplicityProfile(
        order=r,
        count=count,
        prefix_value=seq.at(r),
        max_multiplicity=best,
        attained_at=attained,
        max_value=table.max_value,
        boundary_run=table.length_of(r - 1),
    )


def generate_golomb(count: int) -> GolombPair:
    """Generate G(1..count) and S(0..count), checking G(S(k)) = k."""
    _check_count(count)
    g: List[int] = [0, 1, 2, 2]
    v = 3
    while len(g) <= count:
        g.extend([v] * g[v])
        v += 1
    terms = np.asarray(g[: count + 1], dtype=np.int64)
    sums = np.cumsum(terms)

    k = np.arange(sums.size)
    inside = (sums >= 1) & (sums <= count)
    bad = np.flatnonzero(terms[sums[inside]] != k[inside])
    if bad.size:
        raise SequenceError(f"G(S({int(k[inside][bad[0]])})) differs from its index")
    return GolombPair(Sequence(GOLOMB, None, terms), sums)


def generate_r2_mallows(count: int) -> Sequence:
    """Generate the order-2 sequence from a(n+1) = 1 + a(n+1-a(m+1)+a(m-1)), m = a(n)."""
    if count < 4:
        raise SequenceError(f"The recursive definition needs at least 4 terms, got {count}")
    terms: List[int] = [0] * (count + 1)
    terms[1:5] = [1, 2, 2, 3]
    for n in range(4, count):
        m = terms[n]
        index = n + 1 - terms[m + 1] + terms[m - 1]
        if not 1 <= index <= n:
            raise SequenceError(f"Recursion leaves the prefix at n={n} (index {index})")
        terms[n + 1] = 1 + terms[index]
    return Sequence(MALLOWS_R2, 2, np.asarray(terms, dtype=np.int64))


def generate_gap_variant(s: int, count: int) -> Sequence:
    """Generate the greedy sequence with a(a(n) + a(n-s)) = n for all n >= 1.

    Each a(n) is the least value >= a(n-1) whose target position p is either
    already consistent (p <= n) or a fresh forced position beyond the last
    one; forced positions fix later terms.
    """
    if s < 1:
        raise SequenceError(f"Gap must be at least 1, got {s}")
    _check_count(count)

    terms: List[int] = [0] * (count + 1)
    pending: Deque[Tuple[int, int]] = deque()
    last_forced = 0

    for n in range(1, count + 1):
        prev = terms[n - 1]
        back = terms[n - s] if n - s >= 1 else 0
        if pending and pending[0][0] == n:
            forced = pending.popleft()[1]
            if forced < prev:
                raise SequenceError(f"gap-{s}: forced a({n}) = {forced} decreases")
            cap = forced
            candidates: Iterable[int] = (forced,)
        else:
            cap = pending[0][1] if pending else prev + count
            candidates = range(max(1, prev), cap + 1)

        for value in candidates:
            target = value + back
            if target < n:
                ok = terms[target] == n
            elif target == n:
                ok = value == n
            else:
                ok = value <= n and target > last_forced
            if ok:
                break
        else:
            raise SequenceError(f"gap-{s}: no feasible value for a({n}) up to {cap}")

        terms[n] = value
        if target > n:
            last_forced = target
            if target <= count:
                pending.append((target, n))

    return Sequence(GAP_VARIANT, s, np.asarray(terms, dtype=np.int64))


def structure_check(seq: Sequence, r: int) -> ReportBundle:
    """Structural consequences of the definition that hold for every order."""
    bundle = ReportBundle(f"structure r={r}")
    d = first_differences(seq, strict=False).d
    n = np.arange(seq.length)
    bundle.add(flag_report("unit-increments", n, (d == 0) | (d == 1), np.ones_like(d), d))
    idx = np.arange(3, seq.length + 1)
    bundle.add(flag_report("subdiagonal", idx, seq.terms[3:] < idx, idx - 1, seq.terms[3:]))
    bundle.add(run_identity_check(seq, r))
    bundle.add(nested_anchor_check(seq, r))
    bundle.add(local_projection_check(seq, r))
    bundle.extend(window_determinism_check(seq, r))
    return bundle
