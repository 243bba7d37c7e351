"""Property-based tests for the generators and the definition checker."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from almost_golomb.core_seq import (
    generate_almost_golomb,
    generate_gap_variant,
    generate_golomb,
    generate_r2_mallows,
    structure_check,
    verify_defining_property,
)

orders = st.integers(min_value=2, max_value=10)
counts = st.integers(min_value=200, max_value=1_500)


@settings(max_examples=40, deadline=None)
@given(r=orders, count=counts)
def test_generated_prefix_satisfies_definition(r, count):
    seq = generate_almost_golomb(r, count)
    bundle = verify_defining_property(seq, r)
    assert bundle.passed, [report.to_dict() for report in bundle.failures]


@settings(max_examples=40, deadline=None)
@given(r=orders, count=counts, cut=st.integers(min_value=1, max_value=59))
def test_shorter_prefix_is_a_prefix(r, count, cut):
    long_seq = generate_almost_golomb(r, count)
    short_seq = generate_almost_golomb(r, count - cut)
    assert np.array_equal(long_seq.values()[: count - cut], short_seq.values())


@settings(max_examples=30, deadline=None)
@given(r=orders, count=st.integers(min_value=1_000, max_value=3_000))
def test_structure_holds(r, count):
    bundle = structure_check(generate_almost_golomb(r, count), r)
    assert bundle.passed, [report.to_dict() for report in bundle.failures]


@settings(max_examples=25, deadline=None)
@given(count=st.integers(min_value=4, max_value=3_000))
def test_mallows_recursion_matches_order_two(count):
    assert np.array_equal(generate_r2_mallows(count).values(), generate_almost_golomb(2, count).values())


@settings(max_examples=30, deadline=None)
@given(s=st.integers(min_value=1, max_value=4), count=st.integers(min_value=20, max_value=1_200))
def test_gap_variant_hits_every_index(s, count):
    a = generate_gap_variant(s, count).terms
    for n in range(1, count + 1):
        back = a[n - s] if n - s >= 1 else 0
        target = a[n] + back
        if target <= count:
            assert a[target] == n


@settings(max_examples=25, deadline=None)
@given(count=st.integers(min_value=10, max_value=5_000))
def test_golomb_counts_its_own_occurrences(count):
    g = generate_golomb(count).sequence.values()
    complete = g[-1] - 1
    occurrences = np.bincount(g, minlength=complete + 1)
    for n in range(1, complete + 1):
        assert occurrences[n] == g[n - 1]
