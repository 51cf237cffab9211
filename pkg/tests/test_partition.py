# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Unit Tests for Frequency Sets and Partition Lemmas

Closed-form arc integrals are compared with midpoint quadrature, variation
norms with subsequence enumeration.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import arc_energy_riemann, variation_enumerated

from ergolab.core.errors import PreconditionError, ShapeError
from ergolab.core.partition import (
    BumpPartition,
    FrequencySet,
    arc_energy,
    bmz_report,
    c_delta_hypothesis,
    calibrate_bmz,
    calibrate_entropy,
    calibrate_lambda,
    calibrate_lp,
    entropy_gamma_sets,
    entropy_numbers,
    entropy_sweep,
    lambda_separated_check,
    large_value_set,
    lp_lemma_check,
    mz_inequality_report,
    mz_nodes,
    neighborhood_measure,
    partition_of_unity_report,
    sigma_delta,
    theta_ramp,
    variation_is_exact,
    variation_norm,
)
from ergolab.core.spectra import TrigPolynomial


def steinhaus(rng, size):
    return np.exp(2j * np.pi * rng.random(size))


# =============================================================================
# Frequency Set Tests
# =============================================================================


def test_points_are_reduced_and_sorted():
    """Test reduction mod 1 and sorting."""
    E = FrequencySet([0.75, 1.25, -0.5])
    assert E.points.tolist() == [0.25, 0.5, 0.75]
    assert E.min_gap == pytest.approx(0.25)


def test_duplicate_points_rejected():
    """Test that 0 and 1 coincide on the torus."""
    with pytest.raises(ShapeError):
        FrequencySet([0.0, 1.0])


def test_min_gap_wraps():
    """Test the circular gap across 0."""
    assert FrequencySet([0.05, 0.95]).min_gap == pytest.approx(0.1)
    assert FrequencySet([0.3]).min_gap == 1.0


def test_distance_to():
    """Test circular distances to the nearest point."""
    E = FrequencySet([0.1, 0.5])
    assert E.distance_to(np.array([0.95, 0.3, 0.5])) == pytest.approx([0.15, 0.2, 0.0])


def test_neighborhood_disjoint_arcs():
    """Test two separate arcs."""
    E = FrequencySet([0.0, 0.5])
    assert E.neighborhood_arcs(0.125) == [(-0.125, 0.125), (0.375, 0.625)]
    assert neighborhood_measure(E, 0.125) == 0.5


def test_neighborhood_full_cover():
    """Test that touching arcs covering the circle collapse to [0, 1)."""
    E = FrequencySet([0.0, 0.5])
    assert E.neighborhood_arcs(0.25) == [(0.0, 1.0)]
    assert neighborhood_measure(E, 0.25) == 1.0
    assert neighborhood_measure(FrequencySet([0.3]), 0.6) == 1.0


def test_neighborhood_merges_across_zero():
    """Test that arcs overlapping through 0 merge into one."""
    arcs = FrequencySet([0.05, 0.95]).neighborhood_arcs(0.1)
    assert len(arcs) == 1
    a, b = arcs[0]
    assert b - a == pytest.approx(0.3)


def test_neighborhood_edge_cases():
    """Test empty sets and non-positive radii."""
    assert FrequencySet([]).neighborhood_arcs(0.1) == []
    assert neighborhood_measure(FrequencySet([]), 0.1) == 0.0
    with pytest.raises(PreconditionError):
        FrequencySet([0.2]).neighborhood_arcs(0.0)


@given(st.integers(min_value=0, max_value=10_000), st.floats(min_value=0.001, max_value=0.3))
def test_neighborhood_measure_matches_grid(seed, eps):
    """Test the arc measure against the fraction of grid points within ε."""
    rng = np.random.default_rng(seed)
    E = FrequencySet(np.unique(rng.random(6)))
    grid = (np.arange(100_000) + 0.5) / 100_000
    fraction = float(np.mean(E.distance_to(grid) < eps))
    assert neighborhood_measure(E, eps) == pytest.approx(fraction, abs=2e-4)


def test_arc_energy_full_circle(rng):
    """Test ∫_T |P|² = ‖P‖₂²."""
    P = TrigPolynomial.from_interval(-4, steinhaus(rng, 12))
    assert arc_energy(P, [(0.0, 1.0)]) == pytest.approx(P.l2_norm() ** 2)


def test_arc_energy_matches_quadrature(rng):
    """Test the closed form against midpoint quadrature."""
    P = TrigPolynomial.from_interval(3, steinhaus(rng, 10))
    arcs = FrequencySet([0.02, 0.4, 0.97]).neighborhood_arcs(0.04)
    expected = arc_energy_riemann(P.frequencies, P.coeffs, arcs)
    assert arc_energy(P, arcs) == pytest.approx(expected, rel=1e-6)


# =============================================================================
# Partition of Unity Tests
# =============================================================================


def test_sigma_delta_shape():
    """Test σ_δ vanishes outside (δ, 4δ) and equals 1 at 2δ."""
    delta = 2.0**-5
    assert sigma_delta(delta, delta) == 0.0
    assert sigma_delta(delta, 2 * delta) == 1.0
    assert sigma_delta(delta, 4 * delta) == 0.0
    assert 0.0 < sigma_delta(delta, 3 * delta) < 1.0


def test_theta_ramp_is_monotone():
    """Test that the ramp rises from 0 to 1 on [δ, 2δ]."""
    t = np.linspace(0.0, 0.5, 201)
    values = theta_ramp(0.125, t)
    assert np.all(np.diff(values) >= 0)
    assert values[0] == 0.0 and values[-1] == 1.0


def test_sigma_delta_needs_dyadic():
    """Test that δ must be 2^-k."""
    with pytest.raises(PreconditionError):
        sigma_delta(0.3, 0.5)
    with pytest.raises(PreconditionError):
        sigma_delta(1.0, 0.5)


def test_bump_partition_telescopes():
    """Test Σ_δ σ_δ = 1 on the window."""
    partition = BumpPartition(2.0**-10, 0.25)
    assert len(partition.deltas()) == 9
    lo, hi = partition.window
    t = np.linspace(lo, hi, 1001)
    assert np.max(np.abs(partition.total(t) - 1.0)) <= 1e-12


def test_partition_of_unity_report():
    """Test the sampled partition-of-unity check."""
    report = partition_of_unity_report(samples=500, seed=3)
    assert report.passed()
    assert report.records()[0]["samples"] == 500


# =============================================================================
# Marcinkiewicz-Zygmund Tests
# =============================================================================


def test_mz_nodes():
    """Test the equispaced nodes."""
    assert mz_nodes(1).points.tolist() == [0.0, 0.5]
    assert len(mz_nodes(7)) == 8
    with pytest.raises(PreconditionError):
        mz_nodes(0)


def test_mz_identity(rng):
    """Test exact node averages for supports of width at most J."""
    P = TrigPolynomial.from_interval(-5, steinhaus(rng, 11))
    assert mz_inequality_report(P, 10).passed()
    with pytest.raises(PreconditionError):
        mz_inequality_report(P, 9)


def test_large_value_set_of_constant():
    """Test that ψ ≡ 1 at δ = 1/2 has the single large value at 0."""
    E0 = large_value_set(np.ones(32), 0.5)
    assert E0.points.tolist() == [0.0]
    report = bmz_report(np.ones(32), 0.5)
    assert report.summary["uncovered"] == 0
    assert report.passed()


def test_large_value_set_is_on_nodes():
    """Test every point of E₀ is a node k/(J+1)."""
    rng = np.random.default_rng(7)
    J = 128
    E0 = large_value_set(rng.choice([-1.0, 1.0], J), 0.1)
    assert len(E0) > 0
    scaled = E0.points * (J + 1)
    assert np.allclose(scaled, np.round(scaled), atol=1e-9)


def test_large_value_set_greedy_ties():
    """Test adjacent nodes of equal height keep the smaller index."""
    J = 8
    values = np.exp(-2j * np.pi * np.arange(1, J + 1) * 0.5 / (J + 1))
    # |P₀| is symmetric about 1/(2(J+1)), so nodes 0 and 1 tie
    E0 = large_value_set(values, 0.5)
    assert E0.points.tolist() == [0.0]


@pytest.mark.parametrize("J,delta", [(64, 0.2), (200, 0.1), (128, 0.4)])
def test_bmz_clauses(rng, J, delta):
    """Test separation and cardinality hold and cover is measured on the dense grid."""
    psi = steinhaus(rng, J)
    report = bmz_report(psi, delta)
    records = report.records()
    assert [r["clause"] for r in records] == ["separation", "cardinality", "cover"]
    assert records[0]["holds"] and records[1]["holds"]
    cover = records[2]
    assert cover["holds"] == (cover["value"] < cover["bound"])
    assert cover["holds"] == (report.summary["uncovered"] == 0)
    assert report.passed() == cover["holds"]
    assert report.summary["size"] == len(large_value_set(psi, delta))


def test_large_value_set_delta_range():
    """Test δ ∈ (0, 1)."""
    with pytest.raises(PreconditionError):
        large_value_set(np.ones(8), 1.0)


# =============================================================================
# Localization Lemma Tests
# =============================================================================


def test_trivial_partition_has_no_excess(rng):
    """Test that a single cell never exceeds the main term."""
    P = TrigPolynomial.from_interval(0, steinhaus(rng, 64))
    E = FrequencySet(rng.random(5))
    report = lp_lemma_check(P, [(0, 63)], E, 4.0, 2.0)
    assert report.records()[0]["excess"] == 0.0
    assert report.records()[0]["constant"] == 0.0


def test_partition_shape_errors(rng):
    """Test gaps, overlaps and wrong ends."""
    P = TrigPolynomial.from_interval(0, steinhaus(rng, 16))
    E = FrequencySet([0.3])
    for partition in ([(0, 6), (8, 15)], [(0, 8), (8, 15)], [(0, 7), (8, 14)], []):
        with pytest.raises(ShapeError):
            lp_lemma_check(P, partition, E, 4.0, 2.0)


def test_lp_preconditions(rng):
    """Test R > 1, bounded coefficients and the localization cell length."""
    P = TrigPolynomial.from_interval(0, steinhaus(rng, 64))
    E = FrequencySet([0.3])
    with pytest.raises(PreconditionError):
        lp_lemma_check(P, [(0, 63)], E, 1.0, 2.0)
    with pytest.raises(PreconditionError):
        lp_lemma_check(P.scaled(2.0), [(0, 63)], E, 4.0, 2.0)
    with pytest.raises(PreconditionError):
        lp_lemma_check(P, [(0, 31), (32, 63)], E, 4.0, 2.0, localization=0.05)


def test_localized_variant(rng):
    """Test the localized check with short cells."""
    P = TrigPolynomial.from_interval(0, steinhaus(rng, 256))
    partition = [(a, a + 7) for a in range(0, 256, 8)]
    report = lp_lemma_check(P, partition, FrequencySet(rng.random(4)), 16.0, 2.0, localization=1 / 16)
    assert report.header["cells"] == 32
    assert report.records()[0]["budget"] > 0


# =============================================================================
# λ-Separated and Entropy Tests
# =============================================================================


def test_lambda_separated_single_point(rng):
    """Test K = 1 compares with ‖f‖₂ itself."""
    f_hat = TrigPolynomial.from_interval(-8, steinhaus(rng, 17))
    report = lambda_separated_check(FrequencySet([0.25]), f_hat, 2, 6)
    row = report.records()[0]
    assert row["K"] == 1
    assert row["rhs"] == pytest.approx(f_hat.l2_norm())
    assert row["lhs"] > 0


def test_lambda_separated_zero_function():
    """Test that f = 0 gives lhs 0."""
    report = lambda_separated_check(FrequencySet([0.0, 0.5]), TrigPolynomial.zero(), 2, 5, window=16)
    assert report.records()[0]["lhs"] == 0.0


def test_lambda_separated_preconditions():
    """Test separation, s and j_max checks."""
    f_hat = TrigPolynomial.constant(1.0)
    with pytest.raises(PreconditionError):
        lambda_separated_check(FrequencySet([0.0, 0.1]), f_hat, 2, 6)
    with pytest.raises(PreconditionError):
        lambda_separated_check(FrequencySet([0.0]), f_hat, 4, 4)
    with pytest.raises(PreconditionError):
        lambda_separated_check(FrequencySet([]), f_hat, 2, 6)


def test_entropy_numbers():
    """Test greedy covering counts."""
    assert entropy_numbers(np.array([[0.0], [3.0]]), 1.0) == 2
    assert entropy_numbers(np.array([0.0, 0.5, 3.0]), 1.0) == 2
    assert entropy_numbers(np.zeros((0, 2)), 1.0) == 0
    with pytest.raises(PreconditionError):
        entropy_numbers(np.array([0.0]), 0.0)


def test_entropy_numbers_monotone(rng):
    """Test that coarser radii need no more centres."""
    A = rng.random((40, 3))
    counts = [entropy_numbers(A, t) for t in (0.05, 0.1, 0.2, 0.4, 0.8, 2.0)]
    assert counts == sorted(counts, reverse=True)
    assert counts[0] <= 40
    assert counts[-1] == 1


def test_entropy_gamma_sets_match_direct_sum(rng):
    """Test the prefix-sum vectors against the defining sums."""
    f = steinhaus(rng, 16)
    lambdas = [0.1, 0.7]
    gammas = entropy_gamma_sets(f, lambdas, 0.25)
    assert gammas.shape == (16, 2, 2)
    for x in (0, 5, 15):
        for i, N in enumerate((8, 16)):
            for k, lam in enumerate(lambdas):
                u = np.arange(N + 1)
                inside = (x - u >= 0)
                expected = np.sum(f[(x - u)[inside]] * np.exp(2j * np.pi * u[inside] * lam)) / N
                assert abs(gammas[x, i, k] - expected) < 1e-12


def test_entropy_sweep(rng):
    """Test entropy sweep layout and a non-negative statistic."""
    report = entropy_sweep(steinhaus(rng, 64), [0.2, 0.6], 0.125, 0.25)
    assert len(report.rows) == 64
    assert report.summary["constant"] >= 0
    with pytest.raises(PreconditionError):
        entropy_gamma_sets(np.ones(4), [0.1], 0.125)


# =============================================================================
# Variation Norm Tests
# =============================================================================


def test_variation_examples():
    """Test V^1 of an alternating sequence and trivial inputs."""
    assert variation_norm([0, 1, 0, 1], 1) == 3.0
    assert variation_norm([0, 1, 0, 1], 2) == pytest.approx(np.sqrt(3))
    assert variation_norm([5], 2) == 0.0
    with pytest.raises(PreconditionError):
        variation_norm([0, 1], 0.5)


@given(
    st.lists(st.floats(min_value=-1, max_value=1), min_size=2, max_size=7),
    st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_variation_matches_enumeration(values, s):
    """Test the chain DP against all increasing subsequences."""
    assert variation_norm(values, s) == pytest.approx(variation_enumerated(values, s), rel=1e-9, abs=1e-12)


def test_variation_exactness_limit():
    """Test the exact-length threshold."""
    assert variation_is_exact(4096)
    assert not variation_is_exact(4097)


# =============================================================================
# Uniformity Hypothesis Tests
# =============================================================================


def test_c_delta_hypothesis_fails_for_constant():
    """Test that ψ ≡ 1 is not uniform at any δ < 1."""
    report = c_delta_hypothesis(np.ones(64), 8, 0.5, samples=5, seed=1)
    assert len(report.rows) == 5
    assert report.summary["max_value"] == pytest.approx(1.0)
    assert not report.passed()


def test_c_delta_hypothesis_is_seeded(rng):
    """Test reproducible interval draws."""
    psi = steinhaus(rng, 128)
    first = c_delta_hypothesis(psi, 16, 0.9, samples=4, seed=11)
    second = c_delta_hypothesis(psi, 16, 0.9, samples=4, seed=11)
    assert first.to_csv() == second.to_csv()
    with pytest.raises(PreconditionError):
        c_delta_hypothesis(psi, 128, 0.9)


# =============================================================================
# Calibration Tests
# =============================================================================


def test_calibrations_are_deterministic():
    """Test that small calibration runs repeat exactly."""
    assert calibrate_lp(trials=3, seed=5) == calibrate_lp(trials=3, seed=5)
    assert calibrate_lambda(trials=2, seed=5) == calibrate_lambda(trials=2, seed=5)
    assert calibrate_entropy(trials=2, seed=5) >= 0


def test_calibrate_bmz_within_large_sieve():
    """Test that |E₀|δ² stays below the large sieve constant."""
    assert 0 < calibrate_bmz(trials=2, seed=5) <= 2.0
