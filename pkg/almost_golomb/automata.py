"""Deterministic finite automata with output (DFAO) for the corrector sequences.

A :class:`Dfao` reads the base-b digits of n most significant first and
emits the output of the state it stops in. Two sources are available for
each named automaton:

* ``published``: the tables in :mod:`almost_golomb.dfao_tables`, verbatim.
* ``compiled``: an automaton derived from the digit recurrence by
  breadth-first search over exact small values and 5-wide value windows.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Any, Deque, Dict, Hashable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .dfao_tables import PUBLISHED, STATE_COUNTS
from .recurrences import DigitRecurrence, system_for
from .reports import CheckReport, compare_arrays

Output = Union[int, Tuple[int, int]]

DFAO_NAMES = tuple(PUBLISHED)
SOURCES = ("published", "compiled")


class AutomatonError(Exception):
    """Raised for malformed automata and invalid inputs."""

    pass


class TransitionError(AutomatonError):
    """Raised when a transition table has no entry for a reached pair."""

    pass


def format_output(value: Output) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


def _parse_output(token: str) -> Output:
    if token.startswith("("):
        first, second = token.strip("()").split(",")
        return (int(first), int(second))
    return int(token)


@dataclass(frozen=True)
class Dfao:
    name: str
    base: int
    transitions: Tuple[Tuple[int, ...], ...]
    outputs: Tuple[Output, ...]
    initial_state: int = 0
    state_labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.base < 2:
            raise AutomatonError(f"{self.name}: base must be at least 2")
        count = len(self.transitions)
        if count == 0 or len(self.outputs) != count:
            raise AutomatonError(f"{self.name}: {count} rows but {len(self.outputs)} outputs")
        for state, row in enumerate(self.transitions):
            if len(row) != self.base:
                raise TransitionError(
                    f"{self.name}: state {state} has {len(row)} transitions, expected {self.base}"
                )
            for target in row:
                if not 0 <= target < count:
                    raise TransitionError(f"{self.name}: state {state} points to {target}")
        if not 0 <= self.initial_state < count:
            raise AutomatonError(f"{self.name}: initial state {self.initial_state} out of range")
        if self.state_labels is not None and len(self.state_labels) != count:
            raise AutomatonError(f"{self.name}: label count differs from state count")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    @property
    def paired(self) -> bool:
        return isinstance(self.outputs[0], tuple)

    def label(self, state: int) -> str:
        if self.state_labels is None:
            return str(state)
        return self.state_labels[state]

    def step(self, state: int, digit: int) -> int:
        if not 0 <= digit < self.base:
            raise AutomatonError(f"{self.name}: digit {digit} outside base {self.base}")
        return self.transitions[state][digit]

    def run(self, digits: Sequence[int], state: Optional[int] = None) -> int:
        current = self.initial_state if state is None else state
        for digit in digits:
            current = self.step(current, digit)
        return current

    def evaluate(self, n: int) -> Output:
        return self.outputs[self.run(digits_msd(n, self.base))]

    def output_array(self) -> np.ndarray:
        return np.asarray(self.outputs, dtype=np.int64)

    def evaluate_range(self, n_max: int) -> np.ndarray:
        """Outputs for every n in ``0..n_max``; row 0 is the initial state's output.

        States are filled one digit block at a time: the state of n is the
        transition of the state of n // b on digit n % b.
        """
        if n_max < 0:
            raise AutomatonError(f"Range bound must be non-negative, got {n_max}")
        table = np.asarray(self.transitions, dtype=np.int64)
        states = np.empty(n_max + 1, dtype=np.int64)
        states[0] = self.initial_state
        lo = 1
        while lo <= n_max:
            hi = min(lo * self.base, n_max + 1)
            idx = np.arange(lo, hi)
            states[lo:hi] = table[states[idx // self.base], idx % self.base]
            lo = hi
        return self.output_array()[states]


def digits_msd(n: int, base: int) -> List[int]:
    """Base-b digits of ``n >= 1``, most significant first."""
    if base < 2:
        raise AutomatonError(f"Base must be at least 2, got {base}")
    if n < 1:
        raise AutomatonError(f"Automata read positive integers only, got {n}")
    digits: List[int] = []
    while n:
        n, d = divmod(n, base)
        digits.append(d)
    digits.reverse()
    return digits


def _parse_table(name: str, base: int, text: str, labels: Optional[Tuple[str, ...]]) -> Dfao:
    transitions: List[Tuple[int, ...]] = []
    outputs: List[Output] = []
    for expected, line in enumerate(row for row in text.strip().splitlines() if row.strip()):
        fields = line.split()
        if int(fields[0]) != expected:
            raise AutomatonError(f"{name}: row {expected} is labelled {fields[0]}")
        outputs.append(_parse_output(fields[1]))
        transitions.append(tuple(int(v) for v in fields[2:]))
    return Dfao(name, base, tuple(transitions), tuple(outputs), 0, labels)


def _check_name(name: str) -> None:
    if name not in PUBLISHED:
        raise AutomatonError(f"Unknown automaton '{name}'. Known: {', '.join(DFAO_NAMES)}")


@functools.lru_cache(maxsize=None)
def build_dfao(name: str) -> Dfao:
    """Load a published automaton and confirm its state count."""
    _check_name(name)
    base, text, labels = PUBLISHED[name]
    dfao = _parse_table(name, base, text, labels)
    if dfao.state_count != STATE_COUNTS[name]:
        raise AutomatonError(
            f"{name}: {dfao.state_count} states, expected {STATE_COUNTS[name]}"
        )
    return dfao


def eval_dfao(dfao: Dfao, n: int) -> Output:
    return dfao.evaluate(n)


def dump_dfao(dfao: Dfao) -> str:
    """Render ``state output d0 .. d(b-1)`` lines, one per state."""
    lines = []
    for state, row in enumerate(dfao.transitions):
        cells = [dfao.label(state), format_output(dfao.outputs[state])]
        cells.extend(dfao.label(target) for target in row)
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def _projection(name: str) -> Tuple[int, Optional[int]]:
    if name == "r3-eps":
        return 3, 0
    if name == "r5-U":
        return 5, None
    return 4, int(name[-1])


def _project(value: Tuple[int, ...], component: Optional[int]) -> Output:
    if component is None:
        return (value[0], value[1])
    return value[component]


def _window_successor(
    system: DigitRecurrence, window: Tuple[Tuple[int, ...], ...], digit: int
) -> Tuple[Tuple[int, ...], ...]:
    # window holds the values at m-2..m+2; the successor holds b*m+digit-2..+2
    out = []
    for delta in range(-2, 3):
        carry, residue = divmod(digit + delta, system.base)
        c = carry + 2
        out.append(tuple(int(v) for v in system.rule(residue, window[c - 1], window[c], window[c + 1])))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def compile_dfao(name: str) -> Dfao:
    """Derive an automaton for ``name`` from its digit recurrence.

    States below the threshold m_min + 1 remember the exact value read so
    far; beyond it a state is the window of values at m-2..m+2, which is
    enough to apply the recurrence to every digit.
    """
    _check_name(name)
    order, component = _projection(name)
    system = system_for(order)
    threshold = system.m_min + 1

    index: Dict[Hashable, int] = {}
    keys: List[Tuple[str, Any]] = []
    queue: Deque[Tuple[str, Any]] = deque()

    def intern(key: Tuple[str, Any]) -> int:
        if key not in index:
            index[key] = len(keys)
            keys.append(key)
            queue.append(key)
        return index[key]

    def output_of(key: Tuple[str, Any]) -> Output:
        kind, payload = key
        if kind == "exact":
            value = system.value(payload) if payload >= system.floor else system.zero
        else:
            value = payload[2]
        return _project(value, component)

    def successor(key: Tuple[str, Any], digit: int) -> Tuple[str, Any]:
        kind, payload = key
        if kind == "window":
            return ("window", _window_successor(system, payload, digit))
        m = system.base * payload + digit
        if m < threshold:
            return ("exact", m)
        return ("window", tuple(system.value(m + delta) for delta in range(-2, 3)))

    intern(("exact", 0))
    rows: Dict[int, Tuple[int, ...]] = {}
    while queue:
        key = queue.popleft()
        rows[index[key]] = tuple(intern(successor(key, d)) for d in range(system.base))

    transitions = tuple(rows[i] for i in range(len(keys)))
    outputs = tuple(output_of(key) for key in keys)
    return Dfao(name, system.base, transitions, outputs)


def load_dfao(name: str, source: str = "published") -> Dfao:
    if source == "published":
        return build_dfao(name)
    if source == "compiled":
        return compile_dfao(name)
    raise AutomatonError(f"Unknown automaton source '{source}'. Known: {', '.join(SOURCES)}")


def recurrence_outputs(name: str, n_max: int) -> np.ndarray:
    """Values of the recurrence behind ``name`` for 1..n_max, zero below its floor."""
    _check_name(name)
    order, component = _projection(name)
    table = system_for(order).table(n_max)
    if component is None:
        return table
    return table[:, component]


def audit_dfao(name: str, n_max: int, lo: int = 1) -> CheckReport:
    """Compare the published table against its recurrence on ``lo..n_max``."""
    _check_name(name)
    order, _ = _projection(name)
    start = max(lo, system_for(order).floor)
    if n_max < start:
        raise AutomatonError(f"Audit range {start}..{n_max} is empty")
    published = build_dfao(name).evaluate_range(n_max)
    expected = recurrence_outputs(name, n_max)
    n = np.arange(start, n_max + 1)
    return compare_arrays(f"{name} published vs recurrence", n, expected[n], published[n])


@dataclass(frozen=True)
class GeometricOrbit:
    """Eventual behaviour of n = P 0^k Q as k grows."""

    preperiod: int
    period: int
    values: Tuple[Output, ...]
    cycle: Tuple[Output, ...]

    @property
    def output_period(self) -> int:
        size = len(self.cycle)
        for p in range(1, size + 1):
            if size % p == 0 and all(self.cycle[i] == self.cycle[i % p] for i in range(size)):
                return p
        return size


def geometric_orbit(
    dfao: Dfao, prefix: Sequence[int], suffix: Sequence[int], k_max: int
) -> GeometricOrbit:
    """Follow P 0^k Q for k = 0..k_max and find the cycle of the 0-map.

    Cycle detection is Brent's algorithm on q -> step(q, 0) starting from the
    state after P.
    """
    if not prefix or prefix[0] == 0:
        raise AutomatonError("Prefix must be non-empty with a non-zero leading digit")
    if any(not 0 <= d < dfao.base for d in list(prefix) + list(suffix)):
        raise AutomatonError(f"Digits must lie in 0..{dfao.base - 1}")
    if k_max < 0:
        raise AutomatonError(f"k_max must be non-negative, got {k_max}")

    start = dfao.run(prefix)

    def zero(q: int) -> int:
        return dfao.transitions[q][0]

    power = period = 1
    tortoise, hare = start, zero(start)
    while tortoise != hare:
        if power == period:
            tortoise = hare
            power *= 2
            period = 0
        hare = zero(hare)
        period += 1

    tortoise = hare = start
    for _ in range(period):
        hare = zero(hare)
    preperiod = 0
    while tortoise != hare:
        tortoise, hare = zero(tortoise), zero(hare)
        preperiod += 1

    def emit(q: int) -> Output:
        return dfao.outputs[dfao.run(suffix, state=q)]

    values = []
    state = start
    for _ in range(k_max + 1):
        values.append(emit(state))
        state = zero(state)

    state = start
    for _ in range(preperiod):
        state = zero(state)
    cycle = []
    for _ in range(period):
        cycle.append(emit(state))
        state = zero(state)

    return GeometricOrbit(preperiod, period, tuple(values), tuple(cycle))
