"""Tests for the corrector digit recurrences."""

import numpy as np
import pytest

from almost_golomb.correctors import interval_mask
from almost_golomb.recurrences import (
    R4_INITIAL,
    R5_INITIAL,
    RecurrenceError,
    r3_system,
    r4_system,
    r5_system,
    system_for,
)


def test_r3_matches_interval_family():
    table = r3_system().table(3**8)
    assert np.array_equal(table[1:, 0], interval_mask(3**8)[1:])


@pytest.mark.parametrize("factory", [r3_system, r4_system, r5_system])
def test_value_and_table_agree(factory):
    system = factory()
    table = system.table(2_000)
    for n in (system.floor, 37, 250, 1_999, 2_000):
        assert system.value(n) == tuple(table[n].tolist())


def test_table_is_zero_below_floor():
    table = r4_system().table(30)
    assert table[:5].sum() == 0
    assert tuple(table[5]) == R4_INITIAL[5]


def test_r4_initial_rows_are_complementary_in_pairs():
    # eps1 = 1 - eps0 and eps3 = 1 - eps2 on the initial block
    for bits in R4_INITIAL.values():
        assert bits[0] + bits[1] == 1
        assert bits[2] + bits[3] == 1


def test_r5_components_are_exclusive():
    table = r5_system().table(5**6)
    assert not np.any(table[:, 0] * table[:, 1])
    assert tuple(table[13]) == R5_INITIAL[13] == (1, 0)


def test_value_below_floor_raises():
    with pytest.raises(RecurrenceError):
        r4_system().value(4)


def test_negative_table_bound_raises():
    with pytest.raises(RecurrenceError):
        r3_system().table(-1)


def test_system_for_unknown_order():
    with pytest.raises(RecurrenceError):
        system_for(6)
    assert system_for(5).base == 5
