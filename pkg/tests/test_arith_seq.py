# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Unit Tests for Arithmetic Weight Sequences

Sieves are compared against trial division; custom multiplicative functions
against their defining prime data.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import big_omega_trial, exponent_table, mobius_trial

from ergolab.core.arith_seq import (
    AutomaticKind,
    SequenceKind,
    WeightSequence,
    aperiodicity_profile,
    automatic_sequence,
    liouville_sieve,
    mobius_sieve,
    multiplicative_from_primes,
    multiplicativity_defects,
    polynomial_phase,
    primes_up_to,
    random_multiplicative,
    smallest_prime_factors,
    unit_weight,
)
from ergolab.core.errors import (
    BoundViolationError,
    PreconditionError,
    SequenceRangeError,
    ShapeError,
)


@pytest.fixture(scope="module")
def mu():
    """Möbius function up to 5000."""
    return mobius_sieve(5000)


@pytest.fixture(scope="module")
def liouville():
    """Liouville function up to 5000."""
    return liouville_sieve(5000)


# =============================================================================
# WeightSequence Tests
# =============================================================================


def test_weight_sequence_rejects_large_values():
    """Test that values of modulus above 1 are rejected."""
    with pytest.raises(BoundViolationError):
        WeightSequence(np.array([1.0, 1.5]))


def test_weight_sequence_rejects_matrix():
    """Test that non-1-D input is rejected."""
    with pytest.raises(ShapeError):
        WeightSequence(np.ones((2, 2)))


def test_weight_sequence_is_read_only():
    """Test that stored values cannot be mutated."""
    w = WeightSequence(np.ones(4))
    with pytest.raises(ValueError):
        w.values[0] = 0


def test_segment_and_indexing():
    """Test index arithmetic with a non-zero start."""
    w = WeightSequence(np.array([0.1, 0.2, 0.3]), start=5)
    assert w.stop == 7
    assert w[6] == pytest.approx(0.2)
    assert w.segment(6, 7).real.tolist() == pytest.approx([0.2, 0.3])
    assert w.segment(7, 6).size == 0


def test_segment_out_of_range():
    """Test that reading past the stored range raises."""
    w = WeightSequence(np.ones(3))
    with pytest.raises(SequenceRangeError):
        w.segment(1, 4)
    with pytest.raises(SequenceRangeError):
        w[0]


def test_shifted_loses_multiplicativity(mu):
    """Test that a shifted weight is raw."""
    shifted = mu.shifted(3)
    assert shifted.kind is SequenceKind.RAW
    assert not shifted.is_multiplicative
    assert shifted[0] == mu[3]


# =============================================================================
# Sieve Tests
# =============================================================================


def test_mobius_matches_trial_division(mu):
    """Test μ against trial division on the whole range."""
    expected = [mobius_trial(n) for n in range(1, 5001)]
    assert mu.values.real.astype(int).tolist() == expected


def test_liouville_matches_trial_division(liouville):
    """Test λ against (-1)^Ω(n)."""
    expected = [(-1) ** big_omega_trial(n) for n in range(1, 5001)]
    assert liouville.values.real.astype(int).tolist() == expected


def test_sieves_match_trial_division_to_one_hundred_thousand():
    """Test μ and λ against trial division for every n ≤ 10^5."""
    mu_expected, lam_expected = exponent_table(100_000)
    assert np.array_equal(mobius_sieve(100_000).values.real.astype(int), mu_expected)
    assert np.array_equal(liouville_sieve(100_000).values.real.astype(int), lam_expected)


def test_liouville_square_identity(mu, liouville):
    """Test λ(n) = Σ_{d² | n} μ(n/d²)."""
    for n in range(1, 400):
        total = 0
        d = 1
        while d * d <= n:
            if n % (d * d) == 0:
                total += int(mu[n // (d * d)].real)
            d += 1
        assert total == int(liouville[n].real)


def test_sieve_spans_segments():
    """Test a sieve longer than one segment against trial division at the edges."""
    N = 70000
    mu = mobius_sieve(N)
    for n in (65535, 65536, 65537, 69997, 70000):
        assert int(mu[n].real) == mobius_trial(n)


def test_sieve_kinds(mu, liouville):
    """Test sequence kinds and multiplicativity flags."""
    assert mu.kind is SequenceKind.MOBIUS
    assert mu.is_multiplicative and not mu.is_completely_multiplicative
    assert liouville.is_completely_multiplicative


def test_sieve_rejects_empty():
    """Test that N < 1 is a precondition error."""
    with pytest.raises(PreconditionError):
        mobius_sieve(0)


def test_primes_and_smallest_factors():
    """Test small prime tables."""
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1).size == 0
    spf = smallest_prime_factors(30)
    assert spf[12] == 2
    assert spf[25] == 5
    assert spf[29] == 29
    assert spf[1] == 0


# =============================================================================
# Custom Multiplicative Tests
# =============================================================================


def test_completely_multiplicative_liouville(liouville):
    """Test that prime value -1 extended completely gives λ."""
    lam = multiplicative_from_primes(lambda p: -1, 5000, completely=True)
    assert np.array_equal(lam.values, liouville.values)
    assert lam.kind is SequenceKind.CUSTOM_COMPLETELY_MULTIPLICATIVE


def test_multiplicative_with_prime_powers_gives_mobius(mu):
    """Test that prime value -1 and prime powers 0 give μ."""
    w = multiplicative_from_primes(lambda p: -1, 5000, prime_power_values=lambda p, k: 0.0)
    assert np.array_equal(w.values, mu.values)


def test_missing_prime_power_value():
    """Test that a non-complete extension needs prime-power data."""
    with pytest.raises(PreconditionError):
        multiplicative_from_primes(lambda p: 1, 10)


def test_missing_prime_value():
    """Test that every prime must be covered by a mapping."""
    with pytest.raises(PreconditionError):
        multiplicative_from_primes({2: 1, 3: 1}, 10, completely=True)


def test_out_of_bound_prime_value():
    """Test that a prime value above modulus 1 is rejected."""
    with pytest.raises(BoundViolationError):
        multiplicative_from_primes(lambda p: 2.0, 10, completely=True)


def test_random_multiplicative_is_seeded():
    """Test that identical seeds give identical sequences."""
    a = random_multiplicative(2000, seed=7)
    b = random_multiplicative(2000, seed=7)
    c = random_multiplicative(2000, seed=8)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    assert a.seed == 7


def test_random_multiplicative_has_no_defects():
    """Test multiplicativity of random constructions."""
    w = random_multiplicative(3000, seed=3)
    assert multiplicativity_defects(w, trials=300, seed=1) == 0
    v = random_multiplicative(3000, seed=3, completely=False, family="rademacher")
    assert multiplicativity_defects(v, trials=300, seed=1) == 0
    assert v[4] == 0
    assert v[12] == 0


def test_defects_detect_raw_sequence():
    """Test that a non-multiplicative weight shows defects."""
    w = WeightSequence(np.where(np.arange(1, 1001) % 2 == 0, 1.0, -1.0))
    assert multiplicativity_defects(w, trials=200, seed=0, completely=True) > 0


def test_unit_weight():
    """Test the constant weight."""
    w = unit_weight(5)
    assert np.all(w.values == 1)
    assert w.is_completely_multiplicative


# =============================================================================
# Automatic and Phase Tests
# =============================================================================


def test_thue_morse_prefix():
    """Test the first Thue–Morse values."""
    w = automatic_sequence(AutomaticKind.THUE_MORSE, 8)
    assert w.values.real.astype(int).tolist() == [1, -1, -1, 1, -1, 1, 1, -1]
    assert w.start == 0


def test_rudin_shapiro_prefix():
    """Test the first Rudin–Shapiro values."""
    w = automatic_sequence("rudin_shapiro", 8)
    assert w.values.real.astype(int).tolist() == [1, 1, 1, -1, 1, 1, -1, 1]


def test_polynomial_phase_half():
    """Test e(n/2) = (-1)^n exactly."""
    w = polynomial_phase([0, "1/2"], 4)
    assert w.values.tolist() == [-1, 1, -1, 1]


def test_polynomial_phase_quadratic_is_exact():
    """Test that quarter-turn phases are exact."""
    w = polynomial_phase([0, 0, "1/4"], 8)
    assert set(w.values.tolist()) <= {1, 1j, -1, -1j}
    assert w[2] == 1


@given(st.integers(min_value=1, max_value=50), st.integers(min_value=2, max_value=40))
def test_polynomial_phase_modulus_one(a, q):
    """Test that every phase value has modulus 1."""
    w = polynomial_phase([0, f"{a}/{q}", f"1/{q}"], 64)
    assert np.allclose(np.abs(w.values), 1.0)


# =============================================================================
# Aperiodicity Profile Tests
# =============================================================================


def test_aperiodicity_profile_rows(mu):
    """Test row layout and slope keys."""
    report = aperiodicity_profile(mu, [(2, 1), (1, 0)], [10, 100, 1000])
    assert report.columns == ["a", "b", "N", "value"]
    assert [(r["a"], r["b"], r["N"]) for r in report.records()][:3] == [(1, 0, 10), (1, 0, 100), (1, 0, 1000)]
    assert "slope[a=2,b=1]" in report.summary
    assert report.summary["slope[a=1,b=0]"] < 0


def test_aperiodicity_profile_unit_weight_is_flat():
    """Test that the constant weight has slope 0."""
    report = aperiodicity_profile(unit_weight(1000), [(1, 0)], [10, 100, 1000])
    assert report.summary["slope[a=1,b=0]"] == pytest.approx(0.0, abs=1e-12)


def test_aperiodicity_profile_out_of_range(mu):
    """Test that progressions past the stored range raise."""
    with pytest.raises(SequenceRangeError):
        aperiodicity_profile(mu, [(3, 0)], [2000])
