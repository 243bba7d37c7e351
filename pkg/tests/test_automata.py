"""Tests for DFAO loading, evaluation, compilation and orbits."""

import numpy as np
import pytest

from almost_golomb.automata import (
    DFAO_NAMES,
    AutomatonError,
    Dfao,
    TransitionError,
    audit_dfao,
    build_dfao,
    compile_dfao,
    digits_msd,
    dump_dfao,
    eval_dfao,
    format_output,
    geometric_orbit,
    load_dfao,
    recurrence_outputs,
)
from almost_golomb.dfao_tables import STATE_COUNTS


class TestPublished:
    @pytest.mark.parametrize("name", DFAO_NAMES)
    def test_state_counts(self, name):
        assert build_dfao(name).state_count == STATE_COUNTS[name]

    def test_r3_eval(self):
        assert eval_dfao(build_dfao("r3-eps"), 17) == 1
        assert eval_dfao(build_dfao("r3-eps"), 15) == 0

    def test_r5_pair_output(self):
        dfao = build_dfao("r5-U")
        assert dfao.paired
        assert format_output(eval_dfao(dfao, 13)) == "(1,0)"

    def test_dump_layout(self):
        lines = dump_dfao(build_dfao("r4-eps2")).splitlines()
        assert len(lines) == 29
        assert all(len(line.split()) == 2 + 4 for line in lines)

    def test_r3_dump_uses_labels(self):
        first = dump_dfao(build_dfao("r3-eps")).splitlines()[0]
        assert first.split()[:2] == ["q0", "0"]

    def test_unknown_name(self):
        with pytest.raises(AutomatonError):
            build_dfao("r6-eps")

    def test_unknown_source(self):
        with pytest.raises(AutomatonError):
            load_dfao("r3-eps", "guessed")


class TestDfao:
    def test_digits_msd(self):
        assert digits_msd(17, 3) == [1, 2, 2]
        assert digits_msd(1, 5) == [1]
        with pytest.raises(AutomatonError):
            digits_msd(0, 3)

    def test_bad_transition_target(self):
        with pytest.raises(TransitionError):
            Dfao("broken", 2, ((0, 3),), (0,))

    def test_row_width_must_match_base(self):
        with pytest.raises(TransitionError):
            Dfao("broken", 3, ((0, 0),), (0,))

    @pytest.mark.parametrize("name", ["r3-eps", "r4-eps1", "r5-U"])
    def test_evaluate_range_matches_evaluate(self, name):
        dfao = build_dfao(name)
        values = dfao.evaluate_range(700)
        for n in (1, 2, 26, 125, 343, 700):
            expected = dfao.evaluate(n)
            found = tuple(values[n].tolist()) if dfao.paired else int(values[n])
            assert found == expected


class TestCompiled:
    @pytest.mark.parametrize("name", DFAO_NAMES)
    def test_compiled_matches_recurrence(self, name):
        dfao = compile_dfao(name)
        floor = 5 if name.startswith("r4") else 1
        n = np.arange(floor, 20_001)
        assert np.array_equal(dfao.evaluate_range(20_000)[n], recurrence_outputs(name, 20_000)[n])

    def test_compiled_is_cached(self):
        assert compile_dfao("r3-eps") is compile_dfao("r3-eps")


class TestAudit:
    def test_r3_table_matches(self):
        assert audit_dfao("r3-eps", 3**8).passed

    def test_r4_table_breaks_at_depth(self):
        assert audit_dfao("r4-eps0", 4_095).passed
        report = audit_dfao("r4-eps0", 5_000)
        assert not report.passed
        assert report.first_violation[0] == 4_096

    def test_r5_table_breaks_at_depth(self):
        report = audit_dfao("r5-U", 4_000)
        assert report.first_violation[0] == 3_125

    def test_empty_range(self):
        with pytest.raises(AutomatonError):
            audit_dfao("r4-eps0", 3)


class TestGeometricOrbit:
    @pytest.mark.parametrize("name,prefix,suffix", [("r3-eps", [1], [2]), ("r4-eps0", [1], []), ("r5-U", [2], [1, 3])])
    def test_values_follow_direct_evaluation(self, name, prefix, suffix):
        dfao = compile_dfao(name)
        orbit = geometric_orbit(dfao, prefix, suffix, 12)
        for k, value in enumerate(orbit.values):
            digits = prefix + [0] * k + suffix
            n = int("".join(map(str, digits)), dfao.base)
            assert value == dfao.evaluate(n)

    def test_cycle_repeats_values(self):
        dfao = compile_dfao("r4-eps0")
        orbit = geometric_orbit(dfao, [1], [], 40)
        assert orbit.values[:3] == (0, 0, 1)
        assert orbit.period >= 1
        for k in range(orbit.preperiod, 40 - orbit.period):
            assert orbit.values[k] == orbit.values[k + orbit.period]
        assert orbit.period % orbit.output_period == 0

    def test_leading_zero_rejected(self):
        with pytest.raises(AutomatonError):
            geometric_orbit(build_dfao("r3-eps"), [0, 1], [], 4)

    def test_digit_out_of_base(self):
        with pytest.raises(AutomatonError):
            geometric_orbit(build_dfao("r3-eps"), [1], [3], 4)
