"""Extraction engine: budgets, case routing, projections, and verdicts."""

import dataclasses
import math

import numpy as np
import pytest

from hsf import (
    CapExceededError,
    INFINITE_INDEX,
    InvalidInputError,
    JuntaCase,
    TheoremConfig,
    best_junta_on,
    bias_profile,
    canonicalize,
    distance,
    embed_junta,
    extract_junta,
    from_values,
    head_projection,
    is_junta_on,
    junta_budget,
    premise_bound,
    random_function,
    theorem_verify,
    truth_table,
)

EPS = 0.25
WIDE_DELTA = 0.62  # small enough premise, large enough to dodge the small-delta guard
HUGE_DELTA = 0.95


class TestBudgetAndPremise:
    def test_budget_frozen_values(self):
        assert junta_budget(0.1, 0.1) == 531
        assert junta_budget(math.exp(-1), math.exp(-1)) == 8
        assert junta_budget(EPS, WIDE_DELTA) == 11
        assert junta_budget(EPS, HUGE_DELTA) == 2
        assert junta_budget(0.5, 1.0) == 1

    def test_budget_scales_with_constant(self):
        assert junta_budget(0.1, 0.1, c_l=2.0) == math.ceil(
            2 * 0.1**-2 * math.log(10) * math.log(10)
        )
        with pytest.raises(InvalidInputError):
            junta_budget(0.1, 0.1, c_l=0.0)

    def test_premise_bound_frozen(self):
        assert premise_bound(0.1, 0.1) == pytest.approx(
            0.002448436746822227, abs=1e-18
        )
        assert premise_bound(0.1, 0.1, c_ns=2.0) == pytest.approx(
            2 * 0.002448436746822227, abs=1e-17
        )

    def test_premise_exponent_override(self):
        assert premise_bound(0.1, 0.1, exponent=2.0) == pytest.approx(
            0.01 * math.sqrt(0.1), abs=1e-17
        )

    @pytest.mark.parametrize("eps,delta", [(0.0, 0.5), (0.6, 0.5), (0.1, 0.0), (0.1, 1.1)])
    def test_range_validation(self, eps, delta):
        with pytest.raises(InvalidInputError):
            junta_budget(eps, delta)
        with pytest.raises(InvalidInputError):
            premise_bound(eps, delta)

    def test_config_validation(self):
        with pytest.raises(InvalidInputError):
            TheoremConfig(c_ns=0.0)
        with pytest.raises(InvalidInputError):
            TheoremConfig(head_cap=0)


class TestHeadConstructions:
    def test_best_junta_is_exhaustively_optimal(self):
        f = random_function(4, seed=97)
        head = 0b0101
        best = best_junta_on(f, head)
        best_dist = distance(f, embed_junta(best, head, 4))
        for bits in range(1 << 4):
            candidate = from_values(
                2, [1 if (bits >> i) & 1 else -1 for i in range(4)]
            )
            rival = distance(f, embed_junta(candidate, head, 4))
            assert best_dist <= rival + 1e-15

    def test_head_projection_mixed_blocks(self):
        # Block x0=+1 is balanced, block x0=-1 is constant -1.
        f = from_values(3, [1, -1, 1, -1, -1, -1, -1, -1])
        loose = head_projection(f, head=0b001, delta=0.6)
        assert loose.certified
        assert loose.frac_unbiased == 0.5
        assert loose.residual_sq == pytest.approx(0.0, abs=1e-15)
        assert np.array_equal(loose.approximator.values, [1, -1])
        lifted = embed_junta(loose.approximator, 0b001, 3)
        assert distance(f, lifted) == 0.25 <= 3 * 0.6
        tight = head_projection(f, head=0b001, delta=0.3)
        assert not tight.certified and tight.frac_unbiased == 0.5

    def test_head_projection_delta_range(self):
        f = random_function(3, seed=2)
        for delta in (0.0, 1.0001):
            with pytest.raises(InvalidInputError):
                head_projection(f, 0b1, delta)


class TestCaseRouting:
    def test_small_delta_constant(self):
        report = extract_junta(canonicalize(np.ones(15), 0.0), EPS, 0.05)
        d = report.diagnostics
        assert report.case is JuntaCase.SMALL_DELTA
        assert d.small_delta and d.critical_idx == INFINITE_INDEX
        assert report.junta_set == 0 and report.junta_size == 0
        assert report.distance == 0.5
        assert not d.premise_holds
        verdict = theorem_verify(report)
        assert verdict.passed and verdict.vacuous
        assert verdict.label == "premise-violated"

    def test_case_constant_non_vacuous(self):
        # Biased majority: the constant -1 approximator is within delta.
        report = extract_junta(canonicalize(np.ones(16), 8.0), EPS, WIDE_DELTA)
        d = report.diagnostics
        assert report.case is JuntaCase.CONSTANT
        assert d.critical_idx == 1 and d.budget == 11
        assert not d.small_delta and d.premise_holds
        assert report.approximator.values.tolist() == [-1]
        assert report.distance == 2517 / 65536
        assert d.guarantee_bound == WIDE_DELTA
        verdict = theorem_verify(report)
        assert verdict.passed and not verdict.vacuous and verdict.label == "pass"

    def test_case_premise_violated(self):
        # Both head offsets fall inside the tail lattice gap, so every block
        # is weakly biased and the certificate cannot fire.
        lt = canonicalize(np.concatenate(([1.6, 1.03], np.ones(17))), 0.0)
        report = extract_junta(lt, EPS, WIDE_DELTA)
        d = report.diagnostics
        assert report.case is JuntaCase.PREMISE_VIOLATED
        assert d.critical_idx == 2 and report.junta_set == 0b11
        assert d.frac_unbiased == 1.0
        assert not d.premise_holds
        assert d.iia_bound == pytest.approx(EPS * WIDE_DELTA**2 * (2 - WIDE_DELTA), abs=1e-15)
        # The unbiased blocks force at least this much noise sensitivity.
        assert d.ns_value >= d.iia_bound
        assert math.isnan(d.guarantee_bound)
        verdict = theorem_verify(report)
        assert verdict.passed and verdict.vacuous

    def test_case_projection_non_vacuous(self):
        lt = canonicalize(np.concatenate(([2.0], np.ones(17))), 0.0)
        report = extract_junta(lt, EPS, HUGE_DELTA)
        d = report.diagnostics
        assert report.case is JuntaCase.PROJECTION
        assert d.critical_idx == 2 and d.budget == 2
        assert report.junta_set == 0b11 and report.junta_size == 2
        assert d.frac_unbiased == 0.0
        assert d.premise_holds
        assert report.distance == 0.3145294189453125
        assert report.distance <= 3 * HUGE_DELTA
        assert d.residual_sq < 2 * HUGE_DELTA
        assert d.guarantee_bound == 3 * HUGE_DELTA
        verdict = theorem_verify(report)
        assert verdict.passed and not verdict.vacuous

    def test_case_head_junta_non_vacuous(self):
        # Geometric decay is never tau-regular, so the budget cap binds.
        lt = canonicalize(0.6 ** np.arange(1, 19), 0.0)
        report = extract_junta(lt, EPS, HUGE_DELTA)
        d = report.diagnostics
        assert report.case is JuntaCase.HEAD_JUNTA
        assert d.critical_idx == INFINITE_INDEX and d.budget == 2
        assert report.junta_size == 2 and report.junta_set == 0b11
        assert d.premise_holds
        assert report.distance == 0.11142730712890625
        assert report.distance <= HUGE_DELTA
        verdict = theorem_verify(report)
        assert verdict.passed and not verdict.vacuous

    def test_head_junta_whole_function_fits(self):
        # Budget above n_active: the "junta" is the function itself.
        report = extract_junta(canonicalize([1.0, 1.0, 1.0], 5.0), EPS, WIDE_DELTA)
        assert report.case is JuntaCase.HEAD_JUNTA
        assert report.junta_set == 0b111
        assert report.distance == 0.0
        assert theorem_verify(report).passed

    def test_junta_set_marks_true_dependencies(self):
        lt = canonicalize(0.6 ** np.arange(1, 19), 0.0)
        report = extract_junta(lt, EPS, HUGE_DELTA)
        table = truth_table(lt)
        lifted = embed_junta(report.approximator, report.junta_set, table.arity)
        assert is_junta_on(lifted, report.junta_set)
        assert distance(table, lifted) == report.distance

    def test_dropped_coordinates_never_enter_junta(self):
        lt = canonicalize([0.0, 0.6, 0.36, 0.216, 0.0, 0.1296], 0.0)
        report = extract_junta(lt, EPS, HUGE_DELTA)
        assert report.junta_set & 0b10001 == 0

    def test_validity_flag(self):
        inside = extract_junta(canonicalize(np.ones(15), 0.0), 0.25, 0.2)
        assert inside.diagnostics.within_validity
        outside = extract_junta(canonicalize(np.ones(15), 0.0), 0.25, WIDE_DELTA)
        assert not outside.diagnostics.within_validity

    def test_premise_exponent_config_threads_through(self):
        config = TheoremConfig(premise_exponent=1.0)
        report = extract_junta(canonicalize(np.ones(15), 0.0), 0.25, 0.2, config)
        assert report.diagnostics.premise_bound == pytest.approx(
            premise_bound(0.25, 0.2, exponent=1.0), abs=1e-15
        )


class TestCapsAndValidation:
    def test_extract_validates_ranges(self):
        lt = canonicalize(np.ones(4), 0.0)
        with pytest.raises(InvalidInputError):
            extract_junta(lt, 0.0, 0.5)
        with pytest.raises(InvalidInputError):
            extract_junta(lt, 0.25, 1.0001)

    def test_arity_cap(self):
        lt = canonicalize(np.ones(21), 0.0)
        with pytest.raises(CapExceededError, match="exceeds cap"):
            extract_junta(lt, 0.25, 0.62)

    def test_head_cap_in_projection_case(self):
        lt = canonicalize(np.concatenate(([2.0], np.ones(17))), 0.0)
        config = TheoremConfig(head_cap=1)
        with pytest.raises(CapExceededError, match="head cap"):
            extract_junta(lt, EPS, HUGE_DELTA, config)

    def test_head_cap_in_budget_case(self):
        lt = canonicalize(0.6 ** np.arange(1, 19), 0.0)
        config = TheoremConfig(head_cap=8)
        with pytest.raises(CapExceededError, match="head cap"):
            extract_junta(lt, EPS, WIDE_DELTA, config)


class TestVerdicts:
    REPORT = extract_junta(canonicalize(np.ones(16), 8.0), EPS, WIDE_DELTA)

    def test_delta_override(self):
        assert theorem_verify(self.REPORT, delta=0.05).passed
        weak = theorem_verify(self.REPORT, delta=0.03)
        assert not weak.passed and weak.label == "fail"

    def test_delta_validation(self):
        with pytest.raises(InvalidInputError):
            theorem_verify(self.REPORT, delta=0.0)

    def test_distance_guard(self):
        bad = dataclasses.replace(self.REPORT, distance=0.9)
        assert not theorem_verify(bad).passed

    def test_budget_guard(self):
        bad = dataclasses.replace(self.REPORT, junta_set=(1 << 16) - 1)
        assert not theorem_verify(bad).passed

    def test_satisfied_premise_with_violation_case_warns(self):
        lt = canonicalize(np.concatenate(([1.6, 1.03], np.ones(17))), 0.0)
        report = extract_junta(lt, EPS, WIDE_DELTA)
        forged = dataclasses.replace(
            report,
            diagnostics=dataclasses.replace(report.diagnostics, premise_holds=True),
        )
        with pytest.warns(UserWarning, match="recalibration"):
            verdict = theorem_verify(forged)
        assert not verdict.passed and verdict.label == "fail"

    def test_case_labels_are_stable(self):
        assert str(JuntaCase.SMALL_DELTA) == "SmallDeltaConstant"
        assert str(JuntaCase.CONSTANT) == "I_Constant"
        assert str(JuntaCase.PREMISE_VIOLATED) == "IIa_PremiseViolated"
        assert str(JuntaCase.PROJECTION) == "IIb_Projection"
        assert str(JuntaCase.HEAD_JUNTA) == "III_HeadJunta"


class TestProjectionAgainstProfile:
    def test_projection_signs_follow_biases(self):
        rng = np.random.default_rng(101)
        for _ in range(5):
            f = random_function(6, seed=rng)
            head = 0b011010
            proj = head_projection(f, head, delta=0.4)
            biases = bias_profile(f, head).biases
            expected = np.where(
                np.abs(biases) <= 0.6, 1, np.where(biases >= 0, 1, -1)
            )
            assert np.array_equal(proj.approximator.values, expected)
