# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Unit Tests for Measure-Preserving Systems
"""

from fractions import Fraction

import numpy as np
import pytest

from ergolab.core.constants import GOLDEN_ALPHA
from ergolab.core.dynamics import (
    BIT_BLOCK_SIZE,
    DoublingPoint,
    DynSystem,
    Observable,
    advance,
    calderon_transfer,
    empirical_mean,
    frac_multiple,
    measure_preservation_report,
    orbit,
    sample_observable,
)
from ergolab.core.errors import (
    BoundViolationError,
    DomainError,
    InvertibilityError,
    PreconditionError,
    ShapeError,
)

# =============================================================================
# Orbit Tests
# =============================================================================


def test_cyclic_orbit():
    """Test x -> x + 1 mod J."""
    assert orbit(DynSystem.cyclic(4), 0, 4).tolist() == [0, 1, 2, 3]
    assert orbit(DynSystem.cyclic(4), 3, 3).tolist() == [3, 0, 1]


def test_rotation_orbit():
    """Test a rational rotation."""
    assert orbit(DynSystem.rotation(0.25), 0.0, 5).tolist() == [0.0, 0.25, 0.5, 0.75, 0.0]


def test_frac_multiple_keeps_precision():
    """Test k·α mod 1 for k far beyond 2^53/α resolution."""
    k = 10**12 + 7
    exact = float((Fraction(GOLDEN_ALPHA) * k) % 1)
    assert abs(frac_multiple(k, GOLDEN_ALPHA) - exact) < 1e-9


def test_rotation_inverse_times():
    """Test that negative times undo positive ones."""
    system = DynSystem.rotation()
    forward = advance(system, 0.1, [7])[0]
    back = advance(system, float(forward), [-7])[0]
    assert back == pytest.approx(0.1, abs=1e-12)


def test_skew_product_steps():
    """Test (x, y) -> (x + α, y + x) for two steps."""
    alpha = 0.125
    system = DynSystem.skew_product(alpha)
    points = advance(system, (0.25, 0.5), [0, 1, 2])
    assert points.tolist() == [[0.25, 0.5], [0.375, 0.75], [0.5, 0.125]]


def test_point_domain_checks():
    """Test that points outside the space are rejected."""
    with pytest.raises(DomainError):
        orbit(DynSystem.cyclic(4), 4, 2)
    with pytest.raises(DomainError):
        orbit(DynSystem.rotation(), 1.5, 2)
    with pytest.raises(DomainError):
        orbit(DynSystem.skew_product(), 0.5, 2)
    with pytest.raises(DomainError):
        orbit(DynSystem.doubling(), 0.5, 2)
    with pytest.raises(DomainError):
        DynSystem.rotation(1.0)


def test_negative_orbit_length():
    """Test L ≥ 0."""
    with pytest.raises(PreconditionError):
        orbit(DynSystem.cyclic(3), 0, -1)


# =============================================================================
# Doubling Map Tests
# =============================================================================


def test_doubling_shifts_expansion():
    """Test T(0.011) = 0.11 and T²(0.011) = 0.1 in binary."""
    point = DoublingPoint(prefix=(0, 1, 1))
    assert point.value == 0.375
    assert orbit(DynSystem.doubling(), point, 3).tolist() == [0.375, 0.75, 0.5]


def test_doubling_is_not_invertible():
    """Test that negative times raise."""
    point = DoublingPoint(seed=1)
    with pytest.raises(InvertibilityError):
        advance(DynSystem.doubling(), point, [-1])
    with pytest.raises(InvertibilityError):
        point.advanced(-1)


def test_seeded_expansion_is_consistent():
    """Test that advancing the point and advancing the time agree."""
    point = DoublingPoint(seed=42)
    system = DynSystem.doubling()
    assert advance(system, point, [5000])[0] == point.advanced(5000).value


def test_seeded_digits_across_blocks():
    """Test digit windows that straddle a seeded block boundary."""
    point = DoublingPoint(seed=9, prefix=(1, 0))
    full = point.digits(0, 2 * BIT_BLOCK_SIZE)
    window = point.digits(BIT_BLOCK_SIZE - 5, 20)
    assert np.array_equal(window, full[BIT_BLOCK_SIZE - 5 : BIT_BLOCK_SIZE + 15])
    assert full[:2].tolist() == [1, 0]


def test_bad_binary_digit():
    """Test that prefixes must be binary."""
    with pytest.raises(DomainError):
        DoublingPoint(prefix=(0, 2))


# =============================================================================
# Observable Tests
# =============================================================================


def test_observable_means():
    """Test analytic means."""
    rotation = DynSystem.rotation()
    assert Observable.trig(3).mean(rotation) == 0
    assert Observable.constant(0.5).mean(rotation) == 0.5
    assert Observable.indicator(0.25, 0.75).mean(rotation) == pytest.approx(0.5)
    assert Observable.indicator(1.0, 3.0).mean(DynSystem.cyclic(4)) == pytest.approx(0.5)
    assert Observable.from_table([1, -1, 1, 1]).mean(rotation) == pytest.approx(0.5)
    assert Observable.trig(1).mean_zero(rotation)


def test_observable_validation():
    """Test observable bounds and shapes."""
    with pytest.raises(BoundViolationError):
        Observable.trig(1, amplitude=2.0)
    with pytest.raises(ShapeError):
        Observable.from_table([])
    with pytest.raises(DomainError):
        Observable.indicator(0.6, 0.2)


def test_cyclic_table_must_match_modulus():
    """Test the table size check on cyclic systems."""
    f = Observable.from_table([1, 0, 1])
    with pytest.raises(ShapeError):
        sample_observable(DynSystem.cyclic(4), f, 0, 1, 4)


def test_cyclic_character_values():
    """Test e(kx/J) on the cyclic shift."""
    values = sample_observable(DynSystem.cyclic(4), Observable.trig(1), 0, 1, 4)
    assert np.allclose(values, [1, 1j, -1, -1j])


def test_skew_observable_reads_both_coordinates():
    """Test a two-frequency observable on the skew product."""
    system = DynSystem.skew_product(0.125)
    values = sample_observable(system, Observable.trig((1, 1)), (0.25, 0.5), 1, 2)
    assert np.allclose(values, np.exp(2j * np.pi * np.array([0.75, 0.125])))


def test_sample_negative_step_on_doubling():
    """Test that a < 0 needs an invertible system."""
    with pytest.raises(InvertibilityError):
        sample_observable(DynSystem.doubling(), Observable.trig(1), DoublingPoint(seed=0), -1, 4)


def test_measure_preservation_rotation():
    """Test orbit averages of a character under the golden rotation."""
    report = measure_preservation_report(
        DynSystem.rotation(), Observable.trig(1), [0.0, 0.3, 0.7], 4096
    )
    assert report.passed()
    assert len(report.rows) == 3


def test_empirical_mean_needs_samples():
    """Test L ≥ 1."""
    with pytest.raises(PreconditionError):
        empirical_mean(DynSystem.rotation(), Observable.trig(1), 0.0, 0)


# =============================================================================
# Transfer Tests
# =============================================================================


def test_transfer_window_geometry():
    """Test the anchor and window length for mixed-sign steps."""
    window = calderon_transfer(
        DynSystem.rotation(), 0.1, Observable.trig(1), Observable.trig(2), 2, -3, 5
    )
    assert window.anchor == 15
    assert window.J == 25
    assert window.phi.length == 26


@pytest.mark.parametrize("a,b", [(1, -1), (2, 3), (-2, 1)])
def test_transfer_is_term_by_term_exact(a, b):
    """Test that transferred samples equal the orbit samples bitwise."""
    system = DynSystem.rotation()
    f, g = Observable.trig(1), Observable.indicator(0.2, 0.6)
    x0, N = 0.37, 17
    window = calderon_transfer(system, x0, f, g, a, b, N)
    n = np.arange(N + 1)
    assert np.array_equal(window.phi.take(window.anchor + a * n), sample_observable(system, f, x0, a, N + 1))
    assert np.array_equal(window.psi.take(window.anchor + b * n), sample_observable(system, g, x0, b, N + 1))


def test_transfer_on_doubling_needs_forward_steps():
    """Test that negative steps on the doubling map raise."""
    point = DoublingPoint(seed=3)
    f = Observable.trig(1)
    with pytest.raises(InvertibilityError):
        calderon_transfer(DynSystem.doubling(), point, f, f, 1, -1, 4)
    window = calderon_transfer(DynSystem.doubling(), point, f, f, 1, 2, 4)
    assert window.anchor == 0
