"""Tests for sequence generation and the definition-level checks."""

import numpy as np
import pytest

from almost_golomb.core_seq import (
    ALMOST_GOLOMB,
    GAP_VARIANT,
    Sequence,
    SequenceError,
    anchors,
    first_differences,
    generate_almost_golomb,
    generate_gap_variant,
    generate_golomb,
    generate_r2_mallows,
    local_projection_check,
    nested_anchor_check,
    prefix_and_max_multiplicity,
    run_identity_check,
    run_table,
    structure_check,
    verify_defining_property,
    window_determinism_check,
)

R2_PREFIX = [1, 2, 2, 3, 4, 4, 5, 6, 7, 7, 8, 8, 9, 10, 11, 12, 13, 13, 14, 14, 15, 15, 16, 16]
R3_PREFIX = [1, 2, 2, 2, 3, 4, 5, 5, 6, 6, 6, 7, 7, 8, 8, 9, 10, 11, 12, 13, 13, 14, 15, 15]
R4_PREFIX = [1, 2, 2, 2, 3, 3, 4, 4, 5, 6, 6, 7, 7, 8, 8, 9, 9, 9, 10, 10]
GOLOMB_PREFIX = [1, 2, 2, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6, 6]
GAP2_PREFIX = [1, 2, 3, 3, 4, 5, 5, 6, 7, 7, 8, 9, 10, 10, 11, 12, 12, 13, 14, 14, 15, 16, 17, 17]
GAP3_PREFIX = [1, 2, 3, 4, 4, 5, 5, 6, 7, 8, 8, 9, 10, 11, 11]


class TestGeneration:
    @pytest.mark.parametrize(
        "order,prefix",
        [(2, R2_PREFIX), (3, R3_PREFIX), (4, R4_PREFIX)],
    )
    def test_prefix(self, order, prefix):
        seq = generate_almost_golomb(order, len(prefix))
        assert seq.values().tolist() == prefix
        assert seq.family == ALMOST_GOLOMB
        assert seq.parameter == order

    def test_count_one(self):
        assert generate_almost_golomb(5, 1).values().tolist() == [1]

    def test_truncation_is_a_prefix(self):
        long = generate_almost_golomb(3, 500)
        short = generate_almost_golomb(3, 137)
        assert np.array_equal(long.terms[:138], short.terms)

    @pytest.mark.parametrize("order,count", [(1, 10), (0, 10), (2, 0)])
    def test_rejects_bad_arguments(self, order, count):
        with pytest.raises(SequenceError):
            generate_almost_golomb(order, count)

    def test_known_values(self, r3_seq, r4_seq, r5_seq):
        assert r3_seq.at(9) == 6
        assert r3_seq.at(27) == 17
        assert r4_seq.at(28) == 14
        assert r4_seq.at(112) == 54
        assert [r5_seq.at(5**k) for k in range(2, 7)] == [12, 59, 291, 1454, 7266]

    def test_zero_extension_and_bounds(self, r2_seq):
        assert r2_seq.at(0) == 0
        assert r2_seq.at(-4) == 0
        with pytest.raises(IndexError):
            r2_seq.at(r2_seq.length + 1)

    def test_terms_are_read_only(self, r2_seq):
        with pytest.raises(ValueError):
            r2_seq.terms[1] = 5

    def test_subdiagonal(self, r4_seq):
        n = np.arange(3, r4_seq.length + 1)
        assert np.all(r4_seq.terms[3:] <= n - 1)


class TestRelatives:
    def test_golomb_prefix_and_partial_sums(self):
        pair = generate_golomb(15)
        assert pair.sequence.values().tolist() == GOLOMB_PREFIX
        assert pair.S(15) == 62
        assert pair.G(pair.S(5)) == 5

    def test_mallows_recursion_matches_order_two(self, r2_seq):
        mallows = generate_r2_mallows(r2_seq.length)
        assert np.array_equal(mallows.terms, r2_seq.terms)

    def test_mallows_needs_four_terms(self):
        with pytest.raises(SequenceError):
            generate_r2_mallows(3)

    def test_gap_one_is_order_two(self, r2_seq):
        gap = generate_gap_variant(1, 5_000)
        assert np.array_equal(gap.terms, r2_seq.terms[:5_001])

    def test_gap_two_prefix(self, gap2_seq):
        assert gap2_seq.values()[:24].tolist() == GAP2_PREFIX
        assert gap2_seq.family == GAP_VARIANT
        assert gap2_seq.unit_increments

    def test_gap_two_satisfies_its_equation(self, gap2_seq):
        a = gap2_seq.terms
        n = np.arange(3, gap2_seq.length + 1)
        target = a[n] + a[n - 2]
        inside = target <= gap2_seq.length
        assert np.array_equal(a[target[inside]], n[inside])

    def test_gap_three_prefix(self):
        seq = generate_gap_variant(3, 500)
        assert seq.values()[: len(GAP3_PREFIX)].tolist() == GAP3_PREFIX
        # a(a(2)) = 2 forces a(2) = 2
        assert seq.at(seq.at(2)) == 2

    def test_gap_three_increments(self):
        seq = generate_gap_variant(3, 2_000)
        d = first_differences(seq).d
        assert set(np.unique(d[1:]).tolist()) <= {0, 1, 2}
        assert not seq.unit_increments

    def test_gap_must_be_positive(self):
        with pytest.raises(SequenceError):
            generate_gap_variant(0, 10)


class TestDefiningProperty:
    @pytest.mark.parametrize("order", range(2, 11))
    def test_generated_prefix_passes(self, order):
        seq = generate_almost_golomb(order, 10_000)
        bundle = verify_defining_property(seq, order)
        assert bundle.passed
        assert {r.identity for r in bundle} == {"monotonicity", "anchor", "minimality"}
        assert bundle.get("anchor").unchecked > 0

    def test_bumped_term_is_caught(self):
        seq = generate_almost_golomb(2, 100).with_term(3, 3)
        bundle = verify_defining_property(seq, 2)
        assert not bundle.passed
        minimality = bundle.get("minimality")
        assert 3 in [index for index, _, _ in minimality.samples]
        assert bundle.get("anchor").first_violation[0] == 2

    def test_max_samples_caps_samples_not_count(self):
        seq = generate_almost_golomb(3, 2_000)
        broken = seq.with_term(500, seq.at(500) + 1)
        bundle = verify_defining_property(broken, 3, max_samples=1)
        failing = bundle.failures
        assert failing
        assert all(len(r.samples) <= 1 for r in failing)

    def test_anchors_are_window_sums(self, r3_seq):
        window = anchors(r3_seq, 3)
        assert window[1] == 1
        assert window[5] == r3_seq.at(5) + r3_seq.at(4) + r3_seq.at(3)
        for n in (10, 200, 3_000):
            assert r3_seq.at(int(window[n])) == n


class TestDifferencesAndRuns:
    def test_first_differences(self):
        seq = Sequence.from_values(ALMOST_GOLOMB, 2, [1, 2, 2, 3, 4])
        diffs = first_differences(seq)
        assert diffs.d.tolist() == [1, 1, 0, 1, 1]
        assert diffs.at(-1) == 0

    def test_strict_differences_reject_jumps(self):
        seq = Sequence.from_values(ALMOST_GOLOMB, 2, [1, 2, 4, 5])
        with pytest.raises(SequenceError):
            first_differences(seq)
        assert first_differences(seq, strict=False).at(2) == 2

    def test_run_table_order_two(self, r2_seq):
        table = run_table(r2_seq, 2)
        lengths = [table.length_of(m) for m in range(1, 17)]
        assert lengths == [1, 2, 1, 2, 1, 1, 2, 2, 1, 1, 1, 1, 2, 2, 2, 2]
        window = anchors(r2_seq, 2)
        assert all(table.anchor(m) == window[m] for m in range(3, 200))

    def test_run_table_rejects_unknown_value(self, r2_seq):
        table = run_table(r2_seq, 2)
        with pytest.raises(SequenceError):
            table.length_of(table.max_value + 1)

    def test_run_identity_detects_gap_in_values(self):
        seq = Sequence.from_values(ALMOST_GOLOMB, 2, [1, 2, 2, 4, 4, 5])
        report = run_identity_check(seq, 2)
        assert not report.passed

    @pytest.mark.parametrize("order", [2, 3, 4, 5])
    def test_nested_anchor_and_projection(self, order):
        seq = generate_almost_golomb(order, 5_000)
        assert nested_anchor_check(seq, order).passed
        assert local_projection_check(seq, order).passed

    def test_window_determinism_reports_each_residue(self, r3_seq):
        bundle = window_determinism_check(r3_seq, 3)
        assert [r.identity for r in bundle] == [f"window-residue-{i}" for i in range(3)]
        assert bundle.passed

    def test_window_determinism_short_prefix_is_empty_not_failing(self):
        seq = generate_almost_golomb(5, 12)
        bundle = window_determinism_check(seq, 5)
        assert all(r.checked == 0 for r in bundle)
        assert bundle.passed

    @pytest.mark.parametrize("order", [2, 3, 4, 5, 6])
    def test_structure_check(self, order):
        seq = generate_almost_golomb(order, 8_000)
        bundle = structure_check(seq, order)
        assert bundle.passed, [r.to_dict() for r in bundle.failures]


class TestMultiplicity:
    def test_order_three_profile(self):
        profile = prefix_and_max_multiplicity(3, 2_000)
        assert profile.prefix_value == 2
        assert profile.max_multiplicity == 3
        assert profile.boundary_run == 3
        assert profile.stabilized

    def test_order_four_profile(self):
        profile = prefix_and_max_multiplicity(4, 5_000)
        assert profile.max_multiplicity == 3
        assert profile.boundary_run == 2

    def test_needs_enough_terms(self):
        with pytest.raises(SequenceError):
            prefix_and_max_multiplicity(10, 30)
