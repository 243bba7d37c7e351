"""Digit recurrences for the corrector sequences of orders 3, 4 and 5.

Each system is a map n -> tuple of bits, given by an initial table and a rule

    value(b*m + d) = rule(d, value(m-1), value(m), value(m+1))   for m >= m_min.

The rules use only ``+``, ``-`` and ``*``, so they also run elementwise on
numpy arrays when the identity checks substitute whole columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

Bits = Tuple[int, ...]
Rule = Callable[[int, Any, Any, Any], Tuple[Any, ...]]


class RecurrenceError(Exception):
    """Raised when a recurrence is evaluated outside its domain or leaves {0, 1}."""

    pass


@dataclass(frozen=True, eq=False)
class DigitRecurrence:
    """A base-b digit recurrence with an initial table below ``base * m_min``."""

    name: str
    base: int
    components: Tuple[str, ...]
    initial: Dict[int, Bits]
    floor: int
    m_min: int
    rule: Rule
    exclusive: bool = False
    _memo: Dict[int, Bits] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._memo.update(self.initial)

    @property
    def zero(self) -> Bits:
        return (0,) * len(self.components)

    def _apply(self, n: int) -> Bits:
        m, d = divmod(n, self.base)
        value = tuple(int(v) for v in self.rule(d, self._memo[m - 1], self._memo[m], self._memo[m + 1]))
        self._validate(n, value)
        return value

    def _validate(self, n: int, value: Bits) -> None:
        if any(v not in (0, 1) for v in value):
            raise RecurrenceError(f"{self.name}: value at {n} leaves {{0, 1}}: {value}")
        if self.exclusive and all(value):
            raise RecurrenceError(f"{self.name}: components overlap at {n}")

    def value(self, n: int) -> Bits:
        """Evaluate at ``n >= floor`` top-down with memoisation."""
        if n < self.floor:
            raise RecurrenceError(f"{self.name} is defined from {self.floor}, got {n}")
        if n in self._memo:
            return self._memo[n]
        stack: List[int] = [n]
        while stack:
            k = stack[-1]
            if k in self._memo:
                stack.pop()
                continue
            m = k // self.base
            missing = [j for j in (m - 1, m, m + 1) if j not in self._memo]
            if missing:
                stack.extend(missing)
                continue
            self._memo[k] = self._apply(k)
            stack.pop()
        return self._memo[n]

    def table(self, n_max: int) -> np.ndarray:
        """Return an ``(n_max + 1, components)`` array, zero below ``floor``."""
        if n_max < 0:
            raise RecurrenceError(f"Table bound must be non-negative, got {n_max}")
        rows: List[Bits] = [self.zero] * (n_max + 1)
        for k in range(self.floor, n_max + 1):
            if k in self.initial:
                rows[k] = self.initial[k]
                continue
            m, d = divmod(k, self.base)
            value = tuple(int(v) for v in self.rule(d, rows[m - 1], rows[m], rows[m + 1]))
            self._validate(k, value)
            rows[k] = value
        return np.asarray(rows, dtype=np.int64).reshape(n_max + 1, len(self.components))


def _xor(x: Any, y: Any) -> Any:
    return x + y - 2 * x * y


def _xnor(x: Any, y: Any) -> Any:
    return 1 - x - y + 2 * x * y


def r3_rule(d: int, prev: Any, cur: Any, nxt: Any) -> Tuple[Any, ...]:
    return prev if d == 0 else cur


def r4_rule(d: int, prev: Any, cur: Any, nxt: Any) -> Tuple[Any, ...]:
    p0, p1, p2, p3 = prev
    c0, c1, c2, c3 = cur
    q0, q1, q2, q3 = nxt
    if d == 0:
        return (
            (1 - c0) * q0 + c0 * p0,
            c2 * _xor(p1, q1),
            (1 - p0) * p1 + p0 * (1 - p1) * c2,
            p2 * _xnor(c2, c1),
        )
    if d == 1:
        return ((1 - c0) * p0 + c0 * q0, 1 - c2, p2, p3)
    if d == 2:
        return (c0, c1, c2, c3)
    return (q0, q1, 1 - c1, (1 - q1) * _xnor(c2, c1))


def r5_rule(d: int, prev: Any, cur: Any, nxt: Any) -> Tuple[Any, ...]:
    eps, eta = cur
    if d == 0:
        return (prev[0] * (1 - eps), eps)
    if d in (1, 3):
        return (eps, eta)
    return (eta, eps)


def _columns(first: int, *rows: str) -> Dict[int, Bits]:
    columns = [tuple(int(v) for v in row.split()) for row in rows]
    return {first + i: bits for i, bits in enumerate(zip(*columns))}


R4_INITIAL = _columns(
    5,
    "0 1 1 1 1 1 1 1 1 1 1 1 0 1 0 1 1 0 1",
    "1 0 0 0 0 0 0 0 0 0 0 0 1 0 1 0 0 1 0",
    "1 1 1 1 1 1 1 1 1 1 1 0 1 0 1 1 0 1 0",
    "0 0 0 0 0 0 0 0 0 0 0 1 0 1 0 0 1 0 1",
)

# eps and eta for n = 1..19; the rule only holds from m = 4
R5_INITIAL = _columns(
    1,
    "0 0 0 1 0 0 0 0 0 0 0 0 1 0 1 0 1 0 1",
    "0 0 1 0 0 0 0 0 0 0 0 1 0 1 0 1 0 1 0",
)


def r3_system() -> DigitRecurrence:
    return DigitRecurrence(
        name="r3",
        base=3,
        components=("eps",),
        initial={1: (0,), 2: (0,), 3: (0,), 4: (0,), 5: (1,)},
        floor=1,
        m_min=2,
        rule=r3_rule,
    )


def r4_system() -> DigitRecurrence:
    return DigitRecurrence(
        name="r4",
        base=4,
        components=("eps0", "eps1", "eps2", "eps3"),
        initial=dict(R4_INITIAL),
        floor=5,
        m_min=6,
        rule=r4_rule,
    )


def r5_system() -> DigitRecurrence:
    return DigitRecurrence(
        name="r5",
        base=5,
        components=("eps", "eta"),
        initial=dict(R5_INITIAL),
        floor=1,
        m_min=4,
        rule=r5_rule,
        exclusive=True,
    )


SYSTEMS: Dict[int, DigitRecurrence] = {3: r3_system(), 4: r4_system(), 5: r5_system()}


def system_for(order: int) -> DigitRecurrence:
    try:
        return SYSTEMS[order]
    except KeyError:
        raise RecurrenceError(f"No digit recurrence for order {order}") from None
