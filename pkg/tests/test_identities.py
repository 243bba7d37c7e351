"""Tests for the per-order identity suites."""

import pytest

from almost_golomb.core_seq import SequenceError, generate_almost_golomb, generate_gap_variant
from almost_golomb.correctors import corrector_set
from almost_golomb.identities import (
    SUITES,
    InapplicableSuiteError,
    check_gap2,
    check_gap3_profile,
    check_r2,
    check_r3,
    check_r4,
    check_r5,
    gap2_correction_set,
    perturbation_sweep,
    suite_orders,
    verify_order,
)


def _failures(bundle):
    return [r.to_dict() for r in bundle.failures]


class TestOrderChecks:
    def test_r2(self, r2_seq):
        bundle = check_r2(r2_seq)
        assert bundle.passed, _failures(bundle)
        for identity in ("dyadic-closed-form", "pivot-2^k", "mallows-recursion", "second-bit", "and-odd"):
            assert identity in bundle

    def test_r3(self, r3_seq):
        bundle = check_r3(r3_seq)
        assert bundle.passed, _failures(bundle)
        assert bundle.get("block-formula").checked > 0
        assert bundle.get("eps-zero-gap").checked > 0

    @pytest.mark.parametrize("method", ["recurrence", "dfao"])
    def test_r3_with_other_correctors(self, r3_seq, method):
        eps = corrector_set(3, r3_seq.length // 3 + 2, method)
        assert check_r3(r3_seq, eps).passed

    def test_r4(self, r4_seq):
        bundle = check_r4(r4_seq)
        assert bundle.passed, _failures(bundle)
        assert "initial-table" in bundle
        assert "recurrence-eps3(4m+3)" in bundle

    def test_r5(self, r5_seq):
        bundle = check_r5(r5_seq)
        assert bundle.passed, _failures(bundle)
        for identity in ("denesting-5n+4", "disjointness", "five-transitions", "theta-table", "eps4-table"):
            assert identity in bundle

    def test_wrong_order_is_rejected(self, r3_seq):
        with pytest.raises(SequenceError):
            check_r2(r3_seq)

    def test_short_prefix_is_rejected(self):
        with pytest.raises(SequenceError):
            check_r3(generate_almost_golomb(3, 50))

    def test_wrong_corrector_breaks_denesting(self, r3_seq):
        eps = corrector_set(3, r3_seq.length // 3 + 2, "interval")
        eps["eps"][17] = 0
        bundle = check_r3(r3_seq, eps)
        assert not bundle.get("denesting-3n").passed
        assert bundle.get("denesting-3n").first_violation[0] == 18


class TestGapVariants:
    def test_correction_sets(self):
        assert gap2_correction_set(2) == [22]
        assert gap2_correction_set(3) == [42, 46]
        assert gap2_correction_set(4) == [82, 86, 90, 94]

    def test_gap2(self, gap2_seq):
        bundle = check_gap2(gap2_seq)
        assert bundle.passed, _failures(bundle)
        assert any("k=4" in notice for notice in bundle.notices)

    def test_gap2_needs_terms(self):
        with pytest.raises(SequenceError):
            check_gap2(generate_gap_variant(2, 100))

    def test_gap3_profile(self):
        bundle = check_gap3_profile(generate_gap_variant(3, 3_000))
        assert bundle.passed
        assert len(bundle.notices) == 2


class TestSuites:
    def test_suite_orders(self):
        assert suite_orders("definition") is None
        assert suite_orders("combinatorial") == (2, 3)
        with pytest.raises(InapplicableSuiteError):
            suite_orders("everything")

    @pytest.mark.parametrize("order", [2, 3, 4, 5])
    def test_all_suites_pass(self, order):
        seq = generate_almost_golomb(order, 12_000)
        bundles = verify_order(seq)
        assert bundles
        assert all(b.passed for b in bundles), [(b.name, _failures(b)) for b in bundles]

    def test_all_selects_applicable_suites(self):
        seq = generate_almost_golomb(7, 2_000)
        names = [b.name for b in verify_order(seq)]
        assert names == ["definition r=7", "structure r=7"]

    def test_inapplicable_suite(self):
        seq = generate_almost_golomb(7, 2_000)
        with pytest.raises(InapplicableSuiteError):
            verify_order(seq, "denesting")

    def test_audit_findings_are_notices(self, r4_seq):
        (bundle,) = verify_order(r4_seq, "automata")
        assert bundle.passed
        assert any("r4-eps0: published table first differs at n=4096" in n for n in bundle.notices)

    def test_r3_table_is_checked_as_a_report(self, r3_seq):
        (bundle,) = verify_order(r3_seq, "automata")
        assert bundle.get("r3-eps published vs recurrence").passed
        assert not any("r3-eps" in n for n in bundle.notices)

    def test_broken_r3_table_fails_the_suite(self, r3_seq, corrupted_r3_table):
        (bundle,) = verify_order(r3_seq, "automata")
        assert not bundle.passed
        audit = bundle.get("r3-eps published vs recurrence")
        assert audit.first_violation[0] == 5
        assert not bundle.get("eps dfao vs recurrence").passed

    def test_broken_prefix_fails_instead_of_raising(self):
        seq = generate_almost_golomb(3, 3_000)
        broken = seq.with_term(1_000, seq.at(1_000) + 3)
        bundles = verify_order(broken, "denesting")
        assert not all(b.passed for b in bundles)

    @pytest.mark.parametrize("suite", SUITES)
    def test_each_suite_runs_for_order_three(self, suite, r3_seq):
        (first, *rest) = verify_order(r3_seq, suite)
        assert first.passed


class TestPerturbation:
    def test_every_bump_is_detected(self):
        seq = generate_almost_golomb(3, 3_000)
        report = perturbation_sweep(seq, samples=10)
        assert len(report.indices) == 10
        assert report.passed, report.missed
        bundle = report.as_bundle()
        assert bundle.passed
        assert bundle.get("perturbation-detected").checked == 10

    def test_sweep_is_reproducible(self):
        seq = generate_almost_golomb(2, 2_000)
        first = perturbation_sweep(seq, samples=5, seed=3)
        second = perturbation_sweep(seq, samples=5, seed=3)
        assert first.indices == second.indices

    def test_needs_terms(self):
        with pytest.raises(SequenceError):
            perturbation_sweep(generate_almost_golomb(5, 300))
