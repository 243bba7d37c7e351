"""Corrector sequences that close the denesting formulas of orders 3, 4 and 5.

Every corrector can be produced by several independent methods:

* ``interval``: order 3 only, membership of n in the intervals I_k.
* ``recurrence``: the digit recurrences of :mod:`almost_golomb.recurrences`.
* ``dfao``: an automaton. Order 3 reads the published table; orders 4 and 5
  compile theirs from the recurrence.
* ``definition``: read back from a generated sequence through the
  denesting formula itself.

Agreement between methods is what the automata suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .automata import TransitionError, compile_dfao, load_dfao
from .core_seq import ALMOST_GOLOMB, Sequence, anchors
from .recurrences import RecurrenceError, system_for
from .reports import CheckReport, compare_arrays

METHODS: Dict[int, Tuple[str, ...]] = {
    3: ("interval", "recurrence", "dfao", "definition"),
    4: ("recurrence", "dfao", "definition"),
    5: ("recurrence", "dfao", "definition"),
}

# automaton source per order for the dfao method
DFAO_SOURCES: Dict[int, str] = {3: "published", 4: "compiled", 5: "compiled"}

COMPONENTS: Dict[int, Tuple[str, ...]] = {
    3: ("eps",),
    4: ("eps0", "eps1", "eps2", "eps3"),
    5: ("eps", "eta", "theta", "eps4"),
}

# order-5 theta(5m+d) keyed by (U(m-1), U(m)), U = (eps, eta)
THETA_TABLE: Dict[Tuple[Tuple[int, int], Tuple[int, int]], Tuple[int, ...]] = {
    ((0, 0), (0, 0)): (1, 1, 1, 1, 1),
    ((1, 0), (0, 0)): (1, 1, 1, 1, 1),
    ((0, 0), (0, 1)): (0, 1, 0, 1, 0),
    ((1, 0), (0, 1)): (0, 1, 0, 1, 0),
    ((0, 1), (1, 0)): (1, 0, 1, 0, 1),
}

# order-5 eps4(5m+4) keyed by (U(m), U(m+1))
EPS4_TABLE: Dict[Tuple[Tuple[int, int], Tuple[int, int]], int] = {
    ((0, 0), (0, 0)): -2,
    ((0, 0), (0, 1)): -3,
    ((0, 1), (1, 0)): -3,
    ((1, 0), (0, 0)): -3,
    ((1, 0), (0, 1)): -4,
}

PAIR_TABLE_FLOOR = 15

_MISSING = -99


class CorrectorError(ValueError):
    """Raised when a corrector is requested outside its domain."""

    pass


class R5Correctors(NamedTuple):
    eps: int
    eta: int
    theta: Optional[int]
    eps4: Optional[int]


@dataclass(frozen=True, eq=False)
class CorrectorSet:
    """Dense corrector arrays for one order, indexed directly by n."""

    order: int
    method: str
    n_max: int
    values: Dict[str, np.ndarray]
    floors: Dict[str, int]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.values)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.values[name]

    def at(self, name: str, n: int) -> int:
        if not self.floors[name] <= n <= self.n_max:
            raise CorrectorError(
                f"{name}({n}) outside {self.floors[name]}..{self.n_max} ({self.method})"
            )
        return int(self.values[name][n])

    def covers(self, name: str, n: np.ndarray) -> np.ndarray:
        return (n >= self.floors[name]) & (n <= self.n_max)


def interval_bounds(k: int) -> Tuple[int, int]:
    """Endpoints of I_k = [(11*3^k - 1)/2, (13*3^k - 3)/2]."""
    if k < 0:
        raise CorrectorError(f"Interval index must be non-negative, got {k}")
    return (11 * 3**k - 1) // 2, (13 * 3**k - 3) // 2


def interval_members(k: int) -> range:
    lo, hi = interval_bounds(k)
    return range(lo, hi + 1)


def interval_mask(n_max: int) -> np.ndarray:
    """eps3 for 0..n_max from the union of the intervals I_k."""
    out = np.zeros(n_max + 1, dtype=np.int64)
    k = 0
    while True:
        lo, hi = interval_bounds(k)
        if lo > n_max:
            return out
        out[lo : min(hi, n_max) + 1] = 1
        k += 1


def interval_self_similarity(k_max: int) -> CheckReport:
    """Check |I_k| = 3^k and I_{k+1} = (3I_k + 1) u (3I_k + 2) u (3I_k + 3)."""
    report = CheckReport("interval-self-similarity", 0, k_max)
    for k in range(k_max + 1):
        members = interval_members(k)
        report.checked += 1
        if len(members) != 3**k:
            report.add_violation(k, 3**k, len(members))
        if k == k_max:
            continue
        grown = {3 * n + j for n in members for j in (1, 2, 3)}
        following = set(interval_members(k + 1))
        if grown != following:
            report.add_violation(k, sorted(following)[:3], sorted(grown)[:3])
    return report


def eps3_interval(n: int) -> int:
    if n < 1:
        raise CorrectorError(f"eps3 is defined for n >= 1, got {n}")
    k = 0
    while True:
        lo, hi = interval_bounds(k)
        if n < lo:
            return 0
        if n <= hi:
            return 1
        k += 1


def _check_method(order: int, method: str) -> None:
    if method not in METHODS[order]:
        raise CorrectorError(
            f"Unknown method '{method}' for order {order}. Known: {', '.join(METHODS[order])}"
        )


def _require_sequence(seq: Optional[Sequence], order: int) -> Sequence:
    if seq is None:
        raise CorrectorError("The definition method needs a generated sequence")
    if seq.family != ALMOST_GOLOMB or seq.parameter != order:
        raise CorrectorError(f"The definition method needs an order-{order} sequence, got {seq.tag}")
    return seq


def _definition_r3(seq: Sequence) -> Tuple[int, Dict[str, np.ndarray]]:
    # eps(n-1) = a(3n) - (a(n-2) + a(n-1) + a(n)) - 1
    top = seq.length // 3 - 1
    window = anchors(seq, 3)
    m = np.arange(1, top + 1)
    eps = np.zeros(top + 1, dtype=np.int64)
    eps[m] = seq.terms[3 * (m + 1)] - window[m + 1] - 1
    return top, {"eps": eps}


def _definition_r4(seq: Sequence) -> Tuple[int, Dict[str, np.ndarray]]:
    top = (seq.length - 3) // 4
    a = seq.terms
    n = np.arange(1, top + 1)
    window = anchors(seq, 4)
    values = {name: np.zeros(top + 1, dtype=np.int64) for name in COMPONENTS[4]}
    values["eps0"][n] = a[4 * n] - window[n] - 1
    values["eps1"][n] = a[4 * n + 1] - window[n + 1]
    values["eps2"][n] = a[4 * n + 2] - window[n + 1]
    values["eps3"][n] = a[4 * n + 3] - window[n + 2] + 1
    return top, values


def _definition_r5(seq: Sequence) -> Tuple[int, Dict[str, np.ndarray]]:
    top = (seq.length - 4) // 5
    a = seq.terms
    t5 = anchors(seq, 5)
    n = np.arange(1, top + 1)
    values = {name: np.zeros(top + 1, dtype=np.int64) for name in COMPONENTS[5]}
    values["eps"][n] = a[5 * n] - t5[n] - 2
    values["eta"][n] = t5[n + 2] - 1 - a[5 * n + 2]
    values["theta"][n] = a[5 * n + 3] - t5[n + 3] + 4
    values["eps4"][n] = a[5 * n + 4] - t5[n + 4] + 2
    return top, values


def _pair_code(u: np.ndarray) -> np.ndarray:
    # (0,0) -> 0, (1,0) -> 1, (0,1) -> 2, overlapping pairs -> 3
    return u[:, 0] + 2 * u[:, 1]


def _lookup(table: Dict, width: int) -> np.ndarray:
    out = np.full((16, width), _MISSING, dtype=np.int64)
    for (left, right), value in table.items():
        row = _pair_code(np.asarray([left]))[0] * 4 + _pair_code(np.asarray([right]))[0]
        out[row] = value
    return out


_THETA_LOOKUP = _lookup(THETA_TABLE, 5)
_EPS4_LOOKUP = _lookup({key: (value,) for key, value in EPS4_TABLE.items()}, 1)


def pair_tables(u: np.ndarray, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """theta and eps4 for 15..n_max from U = (eps, eta) on 0..n_max//5 + 1.

    Raises :class:`~almost_golomb.automata.TransitionError` when a pair of
    consecutive U values has no table entry.
    """
    theta = np.zeros(n_max + 1, dtype=np.int64)
    eps4 = np.zeros(n_max + 1, dtype=np.int64)
    if n_max < PAIR_TABLE_FLOOR:
        return theta, eps4
    n = np.arange(PAIR_TABLE_FLOOR, n_max + 1)
    m, d = np.divmod(n, 5)
    code = _pair_code(u)

    theta_rows = code[m - 1] * 4 + code[m]
    theta[n] = _THETA_LOOKUP[theta_rows, d]

    sigma = u[m, 0] + u[m, 1]
    eps4[n] = np.where(np.isin(d, (0, 2)), -2 - sigma - u[m, 0], -2 - sigma - u[m, 1])
    last = d == 4
    eps4[n[last]] = _EPS4_LOOKUP[code[m[last]] * 4 + code[m[last] + 1], 0]

    missing = np.flatnonzero((theta[n] == _MISSING) | (eps4[n] == _MISSING))
    if missing.size:
        at = int(n[missing[0]])
        mm = at // 5
        raise TransitionError(
            f"No table entry at n={at}: U({mm - 1})={tuple(u[mm - 1])}, "
            f"U({mm})={tuple(u[mm])}, U({mm + 1})={tuple(u[mm + 1])}"
        )
    return theta, eps4


def _automaton_values(order: int, n_max: int, source: str) -> Dict[str, np.ndarray]:
    if order == 3:
        return {"eps": load_dfao("r3-eps", source).evaluate_range(n_max)}
    if order == 4:
        return {
            f"eps{i}": load_dfao(f"r4-eps{i}", source).evaluate_range(n_max) for i in range(4)
        }
    u = load_dfao("r5-U", source).evaluate_range(n_max)
    return {"eps": u[:, 0], "eta": u[:, 1]}


def corrector_set(
    order: int,
    n_max: int,
    method: str = "recurrence",
    seq: Optional[Sequence] = None,
    source: Optional[str] = None,
) -> CorrectorSet:
    """Dense corrector arrays for ``order`` up to ``n_max`` by one method.

    With the definition method ``n_max`` is clipped to what the sequence
    prefix determines; the returned set records the effective bound.
    """
    if order not in METHODS:
        raise CorrectorError(f"Correctors exist for orders 3, 4 and 5, not {order}")
    _check_method(order, method)
    if n_max < 1:
        raise CorrectorError(f"n_max must be positive, got {n_max}")

    if method == "definition":
        seq = _require_sequence(seq, order)
        builders = {3: _definition_r3, 4: _definition_r4, 5: _definition_r5}
        top, values = builders[order](seq)
        top = min(top, n_max)
        values = {name: column[: top + 1] for name, column in values.items()}
        floor = {3: 1, 4: 5, 5: 3}[order]
        return CorrectorSet(order, method, top, values, {name: floor for name in values})

    if method == "interval":
        return CorrectorSet(order, method, n_max, {"eps": interval_mask(n_max)}, {"eps": 1})

    span = n_max if order != 5 else max(n_max, n_max // 5 + 1)
    if method == "recurrence":
        table = system_for(order).table(span)
        values = {name: table[:, i] for i, name in enumerate(system_for(order).components)}
    else:
        values = _automaton_values(order, span, source or DFAO_SOURCES[order])

    if order == 3:
        return CorrectorSet(order, method, n_max, values, {"eps": 1})
    if order == 4:
        return CorrectorSet(order, method, n_max, values, {name: 5 for name in values})

    u = np.stack((values["eps"], values["eta"]), axis=1)
    theta, eps4 = pair_tables(u, n_max)
    dense = {
        "eps": values["eps"][: n_max + 1],
        "eta": values["eta"][: n_max + 1],
        "theta": theta,
        "eps4": eps4,
    }
    floors = {"eps": 3, "eta": 3, "theta": PAIR_TABLE_FLOOR, "eps4": PAIR_TABLE_FLOOR}
    return CorrectorSet(order, method, n_max, dense, floors)


def eps3(n: int, method: str = "interval", seq: Optional[Sequence] = None) -> int:
    """The order-3 corrector at ``n >= 1``."""
    _check_method(3, method)
    if n < 1:
        raise CorrectorError(f"eps3 is defined for n >= 1, got {n}")
    if method == "interval":
        return eps3_interval(n)
    if method == "recurrence":
        return system_for(3).value(n)[0]
    if method == "dfao":
        return int(load_dfao("r3-eps", DFAO_SOURCES[3]).evaluate(n))
    return corrector_set(3, n, "definition", seq).at("eps", n)


def r4_eps(i: int, n: int, method: str = "recurrence", seq: Optional[Sequence] = None) -> int:
    """The order-4 corrector eps_i at ``n >= 5``."""
    _check_method(4, method)
    if i not in range(4):
        raise CorrectorError(f"Order-4 correctors are eps0..eps3, got eps{i}")
    if n < 5:
        raise CorrectorError(f"Order-4 correctors are defined for n >= 5, got {n}")
    if method == "recurrence":
        return system_for(4).value(n)[i]
    if method == "dfao":
        return int(compile_dfao(f"r4-eps{i}").evaluate(n))
    return corrector_set(4, n, "definition", seq).at(f"eps{i}", n)


def r5_correctors(
    n: int, method: str = "recurrence", seq: Optional[Sequence] = None
) -> R5Correctors:
    """The order-5 correctors at ``n >= 3``.

    theta and eps4 come from the transition tables, which start at 15; below
    that they are ``None`` unless read back by the definition method.
    """
    _check_method(5, method)
    if n < 3:
        raise CorrectorError(f"Order-5 correctors are defined for n >= 3, got {n}")
    if method == "definition":
        found = corrector_set(5, n, "definition", seq)
        return R5Correctors(*(found.at(name, n) for name in COMPONENTS[5]))

    if method == "recurrence":
        system = system_for(5)

        def u_at(k: int) -> Tuple[int, int]:
            value = system.value(k)
            return (value[0], value[1])

    else:
        automaton = compile_dfao("r5-U")

        def u_at(k: int) -> Tuple[int, int]:
            value = automaton.evaluate(k)
            return (int(value[0]), int(value[1]))

    eps, eta = u_at(n)
    if eps and eta:
        raise RecurrenceError(f"eps({n}) and eta({n}) are both 1")
    if n < PAIR_TABLE_FLOOR:
        return R5Correctors(eps, eta, None, None)
    m, d = divmod(n, 5)
    previous, current, following = u_at(m - 1), u_at(m), u_at(m + 1)
    try:
        theta = THETA_TABLE[(previous, current)][d]
        if d == 4:
            eps4 = EPS4_TABLE[(current, following)]
        else:
            eps4 = -2 - sum(current) - (current[0] if d in (0, 2) else current[1])
    except KeyError:
        raise TransitionError(
            f"No table entry at n={n}: U({m - 1})={previous}, U({m})={current}, U({m + 1})={following}"
        ) from None
    return R5Correctors(eps, eta, theta, eps4)


def method_agreement(
    order: int, n_max: int, seq: Optional[Sequence] = None, source: Optional[str] = None
) -> List[CheckReport]:
    """Compare every method with the recurrence on their common range."""
    baseline = corrector_set(order, n_max, "recurrence")
    reports: List[CheckReport] = []
    for method in METHODS[order]:
        if method == "recurrence" or (method == "definition" and seq is None):
            continue
        other = corrector_set(order, n_max, method, seq, source=source)
        for name in other.names:
            lo = max(baseline.floors[name], other.floors[name])
            hi = min(baseline.n_max, other.n_max)
            n = np.arange(lo, hi + 1)
            reports.append(
                compare_arrays(
                    f"{name} {method} vs recurrence", n, baseline[name][n], other[name][n]
                )
            )
    return reports
