"""LFSR, MLS and correlation tests.

Oracles: the order-3 register walk is enumerated by hand; autocorrelation
is cross-checked against a direct O(N^2) sum; the crest factor against its
closed form 1/sqrt(1 - 1/N^2) implied by the balance property.
"""

import numpy as np
import pytest

from noisecomm.prbs import (
    GaloisPolynomial,
    LfsrState,
    MlsSequence,
    circular_autocorrelation,
    crest_factor,
    generate_prbs,
    lfsr_step,
    mls_from_prbs,
    mls_sequence,
    polynomial_table,
    table_polynomial,
)

# Hand enumeration for taps (3,1,0), register (r0,r1,r2), output r0,
# feedback r0^r1: (0,0,1)->(0,1,0)->(1,0,1)->(0,1,1)->(1,1,1)->(1,1,0)
# ->(1,0,0)->(0,0,1), emitting 0,0,1,0,1,1,1.
HAND_STATES_3 = [
    (0, 0, 1),
    (0, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
    (1, 1, 0),
    (1, 0, 0),
]
HAND_BITS_3 = [0, 0, 1, 0, 1, 1, 1]

TABLE_TAPS = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 6, 4, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 5, 3, 1, 0),
    15: (15, 1, 0),
}


def state_cycle(poly, seed_bits):
    """All states visited from the seed until it recurs."""
    state = LfsrState.from_seed(poly, seed_bits)
    start = state.register
    states = [start]
    while True:
        _, state = lfsr_step(state)
        if state.register == start:
            return states
        states.append(state.register)


def autocorr_direct(chips):
    """O(N^2) definition: R[n] = sum_i x[i] x[(n+i) mod N]."""
    n = len(chips)
    return np.array(
        [sum(int(chips[i]) * int(chips[(lag + i) % n]) for i in range(n)) for lag in range(n)]
    )


class TestLfsrStep:
    def test_hand_enumerated_cycle_order3(self):
        poly = GaloisPolynomial(3, (3, 1, 0))
        assert state_cycle(poly, (0, 0, 1)) == HAND_STATES_3

    def test_period_order9_is_511(self):
        poly = table_polynomial(9)
        assert len(state_cycle(poly, (1,) + (0,) * 8)) == 511

    def test_step_is_deterministic(self):
        state = LfsrState.from_seed(table_polynomial(5), 11)
        assert lfsr_step(state) == lfsr_step(state)

    def test_zero_register_rejected(self):
        with pytest.raises(ValueError, match="degenerate seed"):
            LfsrState((0, 0, 0), table_polynomial(3))


class TestGeneratePrbs:
    def test_degree_one_all_ones(self):
        assert generate_prbs(table_polynomial(1), 1, 3).tolist() == [1, 1, 1]

    def test_order3_stream_repeats_with_period_7(self):
        bits = generate_prbs(table_polynomial(3), (0, 0, 1), 14)
        assert bits.tolist() == HAND_BITS_3 + HAND_BITS_3

    def test_zero_length_rejected(self):
        with pytest.raises(ValueError, match="empty request"):
            generate_prbs(table_polynomial(3), 1, 0)

    def test_zero_seed_rejected(self):
        with pytest.raises(ValueError, match="degenerate seed"):
            generate_prbs(table_polynomial(3), 0, 5)


class TestPolynomialTable:
    def test_has_15_entries(self):
        assert len(polynomial_table()) == 15

    @pytest.mark.parametrize("degree,taps", sorted(TABLE_TAPS.items()))
    def test_matches_reference_taps(self, degree, taps):
        entry = polynomial_table()[degree - 1]
        assert entry.degree == degree
        assert entry.taps == tuple(sorted(taps, reverse=True))

    def test_non_primitive_foreign_polynomial_rejected(self):
        # x^4 + x^2 + 1 = (x^2 + x + 1)^2 mod 2: period 6, not 15.
        with pytest.raises(ValueError, match="maximum-length"):
            GaloisPolynomial(4, (4, 2, 0))

    def test_primitive_foreign_polynomial_accepted(self):
        # x^4 + x^3 + 1 is primitive (the reciprocal of the table entry).
        poly = GaloisPolynomial(4, (4, 3, 0))
        assert poly.period == 15

    def test_malformed_taps_rejected(self):
        with pytest.raises(ValueError):
            GaloisPolynomial(4, (4, 1))  # missing constant term
        with pytest.raises(ValueError):
            GaloisPolynomial(4, (1, 0))  # missing degree term


class TestMlsFromPrbs:
    def test_pointwise_map(self):
        assert mls_from_prbs([0, 1, 1]).chips.tolist() == [1, -1, -1]

    def test_order9_balance(self):
        bits = generate_prbs(table_polynomial(9), 1, 511)
        assert int(bits.sum()) == 256  # 2**8 ones, 2**8 - 1 zeros
        mls = mls_from_prbs(bits)
        assert int(mls.chips.sum()) == -1

    def test_partial_period_rejected(self):
        with pytest.raises(ValueError, match="not a full MLS period"):
            mls_from_prbs([0, 1, 1, 0])

    def test_constant_chips_rejected_by_invariant(self):
        with pytest.raises(ValueError, match="unbalanced"):
            MlsSequence(np.array([1, 1, 1]), 2)


class TestCircularAutocorrelation:
    def test_peak_is_period_for_order9(self):
        r = circular_autocorrelation(mls_sequence(9))
        assert r[0] == 511

    @pytest.mark.parametrize("order", range(2, 11))
    def test_two_valued_and_matches_direct_sum(self, order):
        mls = mls_sequence(order)
        r = circular_autocorrelation(mls)
        assert r[0] == mls.period
        assert np.all(r[1:] == -1)
        if order <= 8:
            assert np.array_equal(r, autocorr_direct(mls.chips))

    def test_degenerate_constant_sequence(self):
        assert circular_autocorrelation(np.array([1, 1, 1])).tolist() == [3, 3, 3]

    def test_normalized_variant(self):
        mls = mls_sequence(5)
        r = circular_autocorrelation(mls, normalized=True)
        assert r[0] == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(r[1:], -1.0 / 31, atol=1e-12)


class TestCrestFactor:
    @pytest.mark.parametrize("order", range(3, 11))
    def test_matches_balance_oracle(self, order):
        # Balance => mean = -1/N and E[x^2] = 1, so the population std is
        # sqrt(1 - 1/N^2) and the crest factor is its reciprocal.
        mls = mls_sequence(order)
        n = mls.period
        expected = 1.0 / np.sqrt(1.0 - 1.0 / n**2)
        assert crest_factor(mls) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("order", range(5, 11))
    def test_near_unity_for_long_codes(self, order):
        assert 1.0 <= crest_factor(mls_sequence(order)) <= 1.0 + 1e-3

    def test_symmetric_pair_is_exactly_one(self):
        assert crest_factor(np.array([1.0, -1.0])) == 1.0

    def test_constant_sequence_rejected(self):
        with pytest.raises(ValueError, match="degenerate sequence"):
            crest_factor(np.array([1.0, 1.0]))


class TestSequenceProperties:
    @pytest.mark.parametrize("order", range(1, 16))
    def test_state_period_is_full_cycle(self, order):
        poly = table_polynomial(order)
        assert len(state_cycle(poly, (1,) + (0,) * (order - 1))) == poly.period

    @pytest.mark.parametrize("order", range(2, 11))
    def test_seed_independence_up_to_rotation(self, order):
        poly = table_polynomial(order)
        n = poly.period
        ref = mls_from_prbs(generate_prbs(poly, 1, n)).chips
        rng = np.random.default_rng(order)
        for seed in rng.integers(1, 2**order, size=3):
            other = mls_from_prbs(generate_prbs(poly, int(seed), n)).chips
            rotations = [np.array_equal(other, np.roll(ref, k)) for k in range(n)]
            assert any(rotations)

    @pytest.mark.parametrize("order", [4, 7, 9])
    def test_balance_counts(self, order):
        bits = generate_prbs(table_polynomial(order), 1, 2**order - 1)
        assert int(bits.sum()) == 2 ** (order - 1)
