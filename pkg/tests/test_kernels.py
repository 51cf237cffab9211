# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Unit Tests for Fejér and de la Vallée-Poussin Kernels
"""

import numpy as np
import pytest

from ergolab.core.errors import DomainError, PreconditionError
from ergolab.core.kernels import (
    KernelForm,
    KernelSpec,
    calibrate_smooth_tail,
    fejer_coefficients,
    fejer_eval,
    fejer_mass,
    kernel_profile,
    ramp_width,
    smooth_vdp_coefficients,
    smooth_vdp_tail_check,
    tail_mass,
    tail_mass_report,
    vdp_coefficients,
    vdp_eval,
    vdp_fourier_check,
)

THETAS = np.array([0.0, 1e-9, 0.013, 0.25, 0.4999, 0.5, 0.77, 1.0])


# =============================================================================
# Fejér Tests
# =============================================================================


def test_fejer_at_zero():
    """Test K_n(0) = n + 1."""
    assert fejer_eval(3, 0.0) == pytest.approx(4.0)
    assert fejer_eval(0, 0.3) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [1, 5, 64, 1000])
def test_fejer_closed_form_matches_coefficients(n):
    """Test the closed form against the coefficient sum."""
    closed = fejer_eval(n, THETAS)
    direct = fejer_coefficients(n)(THETAS).real
    assert np.max(np.abs(closed - direct)) / (n + 1) <= 1e-10


def test_fejer_nonnegative_with_unit_mass():
    """Test K_n ≥ 0 and ∫K_n = 1."""
    n = 40
    grid = np.arange(128) / 128
    values = fejer_eval(n, grid)
    assert np.all(values >= -1e-12)
    assert np.mean(values) == pytest.approx(1.0)


def test_fejer_closed_form_absolute_agreement():
    """Test K_8 closed form against the coefficient sum to 1e-12 on random θ."""
    theta = np.concatenate([np.random.default_rng(3).random(1000), [1 - 1e-3, 1 - 1e-7, 0.5]])
    closed = fejer_eval(8, theta)
    direct = fejer_coefficients(8)(theta).real
    assert np.max(np.abs(closed - direct)) <= 1e-12


@pytest.mark.parametrize("n", [0, 1, 8, 64, 255])
def test_fejer_mass_by_quadrature(n):
    """Test ∫K_n = 1 to 1e-12 from the closed form."""
    assert abs(fejer_mass(n) - 1.0) <= 1e-12
    assert abs(fejer_mass(n, nodes=n + 1) - 1.0) <= 1e-12


def test_fejer_mass_needs_enough_nodes():
    """Test fewer than n + 1 nodes are rejected."""
    with pytest.raises(PreconditionError):
        fejer_mass(8, nodes=8)


def test_fejer_rejects_negative_order():
    """Test n ≥ 0."""
    with pytest.raises(PreconditionError):
        fejer_eval(-1, 0.0)


# =============================================================================
# de la Vallée-Poussin Tests
# =============================================================================


def test_vdp_multiplier_shape():
    """Test flat top, linear ramp and support."""
    V = vdp_coefficients(3, 2)
    assert (V.lo, V.hi) == (-5, 5)
    assert V.coefficient(3) == 1
    assert V.coefficient(4) == pytest.approx(0.5)
    assert V.coefficient(5) == 0


def test_vdp_at_zero():
    """Test V(0) = 2n + p."""
    assert vdp_eval(7, 3, 0.0) == pytest.approx(17.0)


@pytest.mark.parametrize("n", [1, 4, 33])
def test_vdp_as_fejer_combination(n):
    """Test V_{(n,n)} = 2K_{2n-1} − K_{n-1}."""
    lhs = vdp_eval(n, n, THETAS)
    rhs = 2 * fejer_eval(2 * n - 1, THETAS) - fejer_eval(n - 1, THETAS)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * (2 * n + 1)


@pytest.mark.parametrize("n,p", [(0, 1), (5, 3), (40, 17)])
def test_vdp_fourier_coefficients(n, p):
    """Test that the closed form has the trapezoid multiplier as spectrum."""
    assert vdp_fourier_check(n, p) <= 1e-10


def test_vdp_rejects_zero_ramp():
    """Test p ≥ 1."""
    with pytest.raises(PreconditionError):
        vdp_eval(3, 0, 0.1)


def test_tail_mass_within_bound():
    """Test the exterior mass bound 2|I|²/(2pM²)."""
    integral, bound = tail_mass(20, 10, 4.0, 64)
    assert 0 < integral <= bound


def test_tail_mass_domain():
    """Test tail-mass argument checks."""
    with pytest.raises(DomainError):
        tail_mass(20, 10, 0.0, 64)
    with pytest.raises(PreconditionError):
        tail_mass(20, 10, 40.0, 64)


def test_tail_mass_report_monotone():
    """Test that tails shrink as the window widens."""
    report = tail_mass_report(16, 8, [8.0, 2.0, 4.0], 64)
    assert report.column("M").tolist() == [2.0, 4.0, 8.0]
    assert report.summary["monotone"]
    assert report.passed()


# =============================================================================
# Smoothed Profile Tests
# =============================================================================


def test_ramp_width():
    """Test p = ⌊γn⌋ and its lower limit."""
    assert ramp_width(100, 0.05) == 5
    with pytest.raises(PreconditionError):
        ramp_width(10, 0.05)


def test_smooth_multiplier_endpoints():
    """Test that the smoothed multiplier is 1 on the top and 0 past the ramp."""
    S = smooth_vdp_coefficients(10, 4)
    assert S.coefficient(10) == pytest.approx(1.0)
    assert S.coefficient(14) == pytest.approx(0.0)
    assert 0 < S.coefficient(12).real < 1


def test_smooth_tail_against_calibrated_constant():
    """Test a swept instance against the calibrated constant."""
    constant = calibrate_smooth_tail(2.0)
    report = smooth_vdp_tail_check(256, 0.05, 40.0, 2.0, constant=constant)
    assert report.passed()
    assert [r["profile"] for r in report.records()] == ["smooth", "smooth", "linear"]


@pytest.mark.parametrize("M", [400.0, 1000.0, 2000.0])
def test_smooth_tail_beyond_calibration_grid(M):
    """Test the frozen constant still bounds the tail for γM up to 100."""
    constant = calibrate_smooth_tail(4.0)
    report = smooth_vdp_tail_check(4096, 0.05, M, 4.0, constant=constant)
    assert report.passed()
    smooth, _, linear = report.records()
    assert smooth["lhs"] < linear["lhs"]


def test_smooth_multiplier_is_flat_at_ends():
    """Test the ramp leaves both plateaus faster than any power."""
    S = smooth_vdp_coefficients(100, 50)
    assert 0 < S.coefficient(149).real < 1e-12
    assert S.coefficient(101).real == pytest.approx(1.0, abs=1e-12)


def test_smooth_tail_domain():
    """Test γ, M and D preconditions."""
    with pytest.raises(PreconditionError):
        smooth_vdp_tail_check(256, 0.2, 40.0, 2.0, constant=1.0)
    with pytest.raises(PreconditionError):
        smooth_vdp_tail_check(256, 0.05, 10.0, 2.0, constant=1.0)
    with pytest.raises(PreconditionError):
        smooth_vdp_tail_check(256, 0.05, 40.0, 1.0, constant=1.0)


# =============================================================================
# KernelSpec Tests
# =============================================================================


def test_kernel_spec_validation():
    """Test KernelSpec parameter checks."""
    with pytest.raises(PreconditionError):
        KernelSpec(KernelForm.VDP, 3, 0)
    with pytest.raises(PreconditionError):
        KernelSpec(KernelForm.VDP_SMOOTH, 3)


def test_kernel_spec_smooth_ramp():
    """Test that a smoothed KernelSpec derives its ramp from gamma."""
    spec = KernelSpec(KernelForm.VDP_SMOOTH, 200, gamma=0.05)
    assert spec.ramp == 10
    assert spec(0.0) == pytest.approx(smooth_vdp_coefficients(200, 10).coeffs.real.sum())


def test_kernel_profile_rows():
    """Test kernel profile layout."""
    report = kernel_profile(KernelSpec(KernelForm.FEJER, 4), 16)
    assert len(report.rows) == 16
    assert report.header["form"] == "fejer"
    assert report.records()[0]["value"] == pytest.approx(5.0)
