"""Restrictions, bias profiles, energy and aggregation identities."""

import numpy as np
import pytest

from hsf import (
    BiasProfile,
    CapExceededError,
    InvalidInputError,
    NsAggregation,
    Restriction,
    bias_profile,
    embed_junta,
    from_values,
    is_junta_on,
    mean,
    ns_aggregation_check,
    ns_exact,
    random_function,
    restrict,
    restriction_energy_identity,
    wht,
)

from _oracles import parity_values, point_of_row


def _full_point(n, head, values, sub_row):
    """Compose a full-cube +-1 point from a head assignment and a tail row."""
    head_pos = [j for j in range(n) if (head >> j) & 1]
    rem_pos = [j for j in range(n) if not (head >> j) & 1]
    x = np.zeros(n, dtype=np.int64)
    for v, j in zip(values, head_pos):
        x[j] = v
    tail_point = point_of_row(len(rem_pos), sub_row)
    for v, j in zip(tail_point, rem_pos):
        x[j] = v
    return x


class TestRestriction:
    def test_values_length_must_match_head(self):
        with pytest.raises(InvalidInputError):
            Restriction(head=0b101, values=(1,))
        with pytest.raises(InvalidInputError):
            Restriction(head=0b1, values=(0,))
        with pytest.raises(InvalidInputError):
            Restriction(head=-1, values=())

    def test_index_roundtrip_and_sign_convention(self):
        head = 0b1010
        for index in range(4):
            r = Restriction.from_index(head, index)
            assert r.assignment_index == index
        # Set bit in the packed index means the coordinate is fixed to -1.
        assert Restriction.from_index(head, 0b01).values == (-1, 1)
        assert Restriction.from_index(head, 0b10).values == (1, -1)

    def test_from_index_range(self):
        with pytest.raises(InvalidInputError):
            Restriction.from_index(0b11, 4)


class TestRestrict:
    def test_matches_pointwise_evaluation(self):
        rng = np.random.default_rng(71)
        for _ in range(8):
            n = int(rng.integers(2, 9))
            f = random_function(n, seed=rng)
            head = int(rng.integers(1, 1 << n))
            index = int(rng.integers(0, 1 << int(head).bit_count()))
            r = Restriction.from_index(head, index)
            g = restrict(f, r)
            assert g.arity == n - head.bit_count()
            for sub_row in range(g.values.size):
                x = _full_point(n, head, r.values, sub_row)
                assert g.values[sub_row] == f(x)

    def test_head_mask_validation(self):
        f = random_function(3, seed=0)
        with pytest.raises(InvalidInputError, match="out of range"):
            restrict(f, Restriction(head=1 << 3, values=(1,)))


class TestBiasProfile:
    def test_dictator_profile_frozen(self):
        f = from_values(3, parity_values(3, 0b001))
        prof = bias_profile(f, 0b001)
        np.testing.assert_array_equal(prof.biases, [1.0, -1.0])

    def test_matches_restricted_means(self):
        rng = np.random.default_rng(73)
        for _ in range(6):
            n = int(rng.integers(2, 9))
            f = random_function(n, seed=rng)
            head = int(rng.integers(1, 1 << n))
            prof = bias_profile(f, head)
            for index in range(prof.biases.size):
                g = restrict(f, Restriction.from_index(head, index))
                assert prof.biases[index] == pytest.approx(mean(g), abs=1e-15)

    def test_head_cap(self):
        f = random_function(5, seed=1)
        with pytest.raises(CapExceededError, match="cap"):
            bias_profile(f, 0b1111, head_cap=3)

    def test_frac_unbiased_semantics(self):
        prof = BiasProfile(head=0b11, biases=[0.0, 0.5, -1.0, 1.0])
        assert prof.frac_unbiased(0.5) == 0.5
        assert prof.frac_unbiased(1.0) == 0.25
        assert prof.frac_unbiased(0.3) == 0.5
        for delta in (0.0, 1.5):
            with pytest.raises(InvalidInputError):
                prof.frac_unbiased(delta)


class TestEnergyIdentity:
    def test_parity_frozen(self):
        # Restricting the 2-variable parity to either head value leaves a
        # +-dictator, whose squared tail coefficient is 1 on both sides.
        f = from_values(2, parity_values(2, 0b11))
        result = restriction_energy_identity(f, head=0b01, subset=0b10)
        assert result.lhs == pytest.approx(1.0, abs=1e-15)
        assert result.rhs == pytest.approx(1.0, abs=1e-15)
        assert result.gap <= 1e-15

    def test_random_gap_vanishes(self):
        rng = np.random.default_rng(79)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            f = random_function(n, seed=rng)
            head = int(rng.integers(1, 1 << n))
            complement = (~head) & ((1 << n) - 1)
            subset = int(rng.integers(0, 1 << n)) & complement
            result = restriction_energy_identity(f, head, subset)
            assert result.gap <= 1e-12

    def test_requires_disjoint_subset(self):
        f = random_function(4, seed=3)
        with pytest.raises(InvalidInputError, match="disjoint"):
            restriction_energy_identity(f, head=0b0011, subset=0b0110)


class TestAggregation:
    def test_parity_restrictions_frozen(self):
        f = from_values(2, parity_values(2, 0b11))
        result = ns_aggregation_check(f, head=0b01, epsilon=0.2)
        # Either restriction is a +-dictator with sensitivity epsilon.
        np.testing.assert_allclose(result.restricted, [0.2, 0.2], atol=1e-15)
        assert result.ns_value == pytest.approx(2 * 0.2 * 0.8, abs=1e-15)
        assert result.holds

    def test_random_triples_hold(self):
        rng = np.random.default_rng(83)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            f = random_function(n, seed=rng)
            head = int(rng.integers(1, 1 << n))
            eps = float(rng.choice([0.05, 0.1, 0.25, 0.5]))
            result = ns_aggregation_check(f, head, eps)
            assert result.holds
            assert result.ns_value >= result.restricted_mean - 1e-12
            assert result.ns_value == pytest.approx(
                ns_exact(wht(f), eps), abs=1e-15
            )

    def test_threshold_corollary_fires_and_holds(self):
        agg = NsAggregation(
            ns_value=0.15, restricted_mean=0.1,
            restricted=[0.2, 0.2, 0.0, 0.0], holds=True,
        )
        fired = agg.threshold_corollary(t=0.1, delta=0.25)
        assert fired.fires and fired.frac_exceeding == 0.5
        assert fired.implied_bound == pytest.approx(0.025, abs=1e-15)
        assert fired.holds
        quiet = agg.threshold_corollary(t=0.1, delta=0.6)
        assert not quiet.fires and quiet.implied_bound == 0.0 and quiet.holds

    def test_threshold_corollary_detects_contradiction(self):
        # Constructed numbers no real function can produce.
        agg = NsAggregation(
            ns_value=0.01, restricted_mean=0.5,
            restricted=[0.5, 0.5], holds=False,
        )
        result = agg.threshold_corollary(t=0.4, delta=0.3)
        assert result.fires and not result.holds

    def test_threshold_corollary_validation(self):
        agg = NsAggregation(ns_value=0.1, restricted_mean=0.1,
                            restricted=[0.1], holds=True)
        with pytest.raises(InvalidInputError):
            agg.threshold_corollary(t=-0.1, delta=0.5)
        with pytest.raises(InvalidInputError):
            agg.threshold_corollary(t=0.1, delta=1.0)


class TestEmbedJunta:
    def test_dictator_embeds_to_parity_table(self):
        g = from_values(1, [1, -1])
        lifted = embed_junta(g, head=0b100, arity=4)
        assert np.array_equal(lifted.values, parity_values(4, 0b100))

    def test_embedding_is_a_junta_and_projects_back(self):
        rng = np.random.default_rng(89)
        g = random_function(3, seed=rng)
        head = 0b10110
        lifted = embed_junta(g, head=head, arity=5)
        assert is_junta_on(lifted, head)
        # Restricting the lifted function to any tail assignment recovers g.
        tail = ((1 << 5) - 1) & ~head
        recovered = restrict(lifted, Restriction.from_index(tail, 1))
        assert np.array_equal(recovered.values, g.values)

    def test_arity_mismatch(self):
        with pytest.raises(InvalidInputError, match="head size"):
            embed_junta(from_values(2, [1, 1, -1, -1]), head=0b1, arity=3)
