# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Unit Tests for Gowers Uniformity Norms

Cyclic norms are compared with full enumeration over (x, h_1, .., h_d).
"""

import numpy as np
import pytest
from oracles import gowers_enumerated

from ergolab.core.errors import CapacityError, PreconditionError, ShapeError
from ergolab.core.gowers import (
    LINEAR_PHASE_FACTOR,
    CyclicSequence,
    cbs_gowers_check,
    discrete_derivative,
    ghk_seminorm_empirical,
    gowers_cube_family,
    gowers_inner,
    gowers_norm_cyclic,
    gowers_norm_interval,
    linear_phase_sup_bound,
    phase_invariance_check,
)


def random_cyclic(rng, modulus):
    """Random 1-bounded function on ℤ/modulus."""
    return CyclicSequence(rng.random(modulus) * np.exp(2j * np.pi * rng.random(modulus)))


# =============================================================================
# Cyclic Norm Tests
# =============================================================================


def test_constant_has_unit_norm():
    """Test ‖1‖_{U^d} = 1."""
    for d in (1, 2, 3):
        assert gowers_norm_cyclic(CyclicSequence(np.ones(8)), d).norm == pytest.approx(1.0)


@pytest.mark.parametrize("d,modulus", [(1, 7), (2, 5), (2, 6), (3, 5)])
def test_cyclic_norm_matches_enumeration(rng, d, modulus):
    """Test U^d norms against the brute-force average."""
    f = random_cyclic(rng, modulus)
    result = gowers_norm_cyclic(f, d)
    assert result.norm == pytest.approx(gowers_enumerated(f.values, d), abs=1e-12)
    assert result.raw_power == pytest.approx(result.norm ** (2**d), abs=1e-12)


def test_u2_cross_check(rng):
    """Test that the Fourier and direct routes agree for d = 2."""
    result = gowers_norm_cyclic(random_cyclic(rng, 31), 2)
    assert result.method == "fft"
    assert result.cross_check == pytest.approx(result.raw_power, abs=1e-12)


def test_norms_are_monotone_in_d(rng):
    """Test ‖f‖_{U^1} ≤ ‖f‖_{U^2} ≤ ‖f‖_{U^3}."""
    f = random_cyclic(rng, 16)
    norms = [gowers_norm_cyclic(f, d).norm for d in (1, 2, 3)]
    assert norms[0] <= norms[1] + 1e-12
    assert norms[1] <= norms[2] + 1e-12


def test_shift_invariance(rng):
    """Test ‖f(· + a)‖ = ‖f‖."""
    f = random_cyclic(rng, 12)
    for d in (2, 3):
        base = gowers_norm_cyclic(f, d).raw_power
        assert abs(gowers_norm_cyclic(f.shifted(5), d).raw_power - base) <= 1e-12


def test_as_dict_fields():
    """Test the serialized result keys."""
    result = gowers_norm_cyclic(CyclicSequence(np.ones(4)), 2)
    assert result.as_dict() == {"d": 2, "norm": pytest.approx(1.0), "raw_power": pytest.approx(1.0), "method": "fft"}


# =============================================================================
# Inner Product Tests
# =============================================================================


def test_cbs_inequality(rng):
    """Test |⟨(f_c)⟩| ≤ Π‖f_c‖ for random families."""
    for d in (2, 3):
        family = [random_cyclic(rng, 9) for _ in range(1 << d)]
        assert cbs_gowers_check(family, d).passed()


def test_inner_product_of_cube_family(rng):
    """Test that the constant family gives the raw power."""
    f = random_cyclic(rng, 10)
    inner = gowers_inner(gowers_cube_family(f, 2), 2)
    assert inner.real == pytest.approx(gowers_norm_cyclic(f, 2).raw_power)
    assert abs(inner.imag) < 1e-12


def test_family_shape_errors(rng):
    """Test family size and modulus checks."""
    with pytest.raises(ShapeError):
        gowers_inner([random_cyclic(rng, 5)] * 3, 2)
    with pytest.raises(ShapeError):
        gowers_inner([random_cyclic(rng, 5)] * 3 + [random_cyclic(rng, 6)], 2)
    with pytest.raises(PreconditionError):
        gowers_norm_cyclic(random_cyclic(rng, 5), 0)


def test_degree_three_capacity():
    """Test the cap on cyclic U^3 moduli."""
    with pytest.raises(CapacityError):
        gowers_norm_cyclic(CyclicSequence(np.ones(5000)), 3)


def test_empty_sequence_rejected():
    """Test that a cyclic sequence needs values."""
    with pytest.raises(ShapeError):
        CyclicSequence(np.zeros(0))


def test_discrete_derivative_of_character():
    """Test that ∂_h e(x/M) is the constant e(h/M)."""
    M = 8
    f = CyclicSequence(np.exp(2j * np.pi * np.arange(M) / M))
    derived = discrete_derivative(f, 3)
    assert np.allclose(derived.values, np.exp(2j * np.pi * 3 / M))


# =============================================================================
# Phase Invariance Tests
# =============================================================================


def test_quadratic_phase_invariance_for_u3(rng):
    """Test that a periodic quadratic phase leaves U^3 unchanged."""
    report = phase_invariance_check(random_cyclic(rng, 7), [0, "1/7", "3/7"], 3)
    assert report.summary["invariance_expected"]
    assert report.records()[0]["difference"] < 1e-10


def test_linear_phase_invariance_for_u2(rng):
    """Test that a character leaves U^2 unchanged."""
    report = phase_invariance_check(random_cyclic(rng, 11), ["1/3", "2/11"], 2)
    assert report.summary["periodic_phase"]
    assert report.records()[0]["difference"] < 1e-10


def test_phase_of_full_degree_not_expected_invariant(rng):
    """Test the expectation flag when deg φ ≥ d."""
    report = phase_invariance_check(random_cyclic(rng, 5), [0, 0, "1/5"], 2)
    assert report.summary["phase_degree"] == 2
    assert not report.summary["invariance_expected"]


def test_non_periodic_phase_flag(rng):
    """Test that a phase with foreign denominator is flagged non-periodic."""
    report = phase_invariance_check(random_cyclic(rng, 5), [0, "1/3"], 2)
    assert not report.summary["periodic_phase"]


# =============================================================================
# Interval Norm Tests
# =============================================================================


def test_interval_indicator_is_one():
    """Test ‖1_{[N]}‖_{U^d[N]} = 1."""
    for d in (1, 2, 3):
        assert gowers_norm_interval(np.ones(9), d).norm == pytest.approx(1.0)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_interval_norm_matches_embedding(rng, N):
    """Test U^2[N] against enumeration on ℤ/4N."""
    values = rng.random(N) * np.exp(2j * np.pi * rng.random(N))
    padded = np.zeros(4 * N, dtype=np.complex128)
    padded[:N] = values
    expected = gowers_enumerated(padded, 2) / gowers_enumerated(np.where(np.arange(4 * N) < N, 1.0, 0.0), 2)
    assert gowers_norm_interval(values, 2).norm == pytest.approx(expected, rel=1e-10)


def test_interval_u1_is_mean(rng):
    """Test ‖f‖_{U^1[N]} = |mean f|."""
    values = rng.random(20) - 0.5
    assert gowers_norm_interval(values, 1).norm == pytest.approx(abs(values.mean()))


def test_linear_phase_bound_for_constant():
    """Test the sup of the averaged constant sequence against its U^2 norm."""
    report = linear_phase_sup_bound(np.ones(32))
    row = report.records()[0]
    assert row["lhs"] == pytest.approx(1.0)
    assert row["norm"] == pytest.approx(1.0)
    assert row["rhs"] == pytest.approx(LINEAR_PHASE_FACTOR)
    assert report.passed()


@pytest.mark.parametrize("N", [2, 17, 64])
def test_linear_phase_flag_carries_factor(rng, N):
    """Test the pass flag compares against (8/3)^{1/4} times the norm."""
    values = rng.random(N) * np.exp(2j * np.pi * rng.random(N))
    report = linear_phase_sup_bound(values)
    row = report.records()[0]
    assert row["rhs"] == pytest.approx(LINEAR_PHASE_FACTOR * row["norm"])
    assert report.passed() == (row["lhs"] <= LINEAR_PHASE_FACTOR * row["norm"] + row["error_bound"])


def test_linear_phase_bound_needs_two_terms():
    """Test N ≥ 2."""
    with pytest.raises(PreconditionError):
        linear_phase_sup_bound(np.ones(1))


# =============================================================================
# Orbit Seminorm Tests
# =============================================================================


def test_ghk_constant_orbit():
    """Test that a constant orbit has every seminorm 1."""
    orbit = np.ones(200)
    for k in (1, 2, 3):
        assert ghk_seminorm_empirical(orbit, k, 10) == pytest.approx(1.0)


def test_ghk_irrational_character_is_small():
    """Test |||e(x)|||_1 along an irrational rotation orbit."""
    alpha = (np.sqrt(5) - 1) / 2
    orbit = np.exp(2j * np.pi * alpha * np.arange(4000))
    assert ghk_seminorm_empirical(orbit, 1, 10) < 0.01
    # a character is a degree-one eigenfunction, so |||·|||_2 stays 1
    assert ghk_seminorm_empirical(orbit, 2, 10) == pytest.approx(1.0, abs=1e-3)


def test_ghk_preconditions():
    """Test k and H limits."""
    with pytest.raises(PreconditionError):
        ghk_seminorm_empirical(np.ones(40), 0, 5)
    with pytest.raises(PreconditionError):
        ghk_seminorm_empirical(np.ones(40), 2, 11)
