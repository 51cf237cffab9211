# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Measure-Preserving Systems

Rotations, the doubling map, a skew product and cyclic shifts at desk scale,
with observables sampled along orbits and the exact transfer of a dynamical
bilinear average to the shift model on a finite window.

Every orbit value T^t x0 is computed in closed form from x0 and t, never by
iterating T, so two code paths that ask for the same time get bitwise equal
points.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ergolab.core.arith_seq import WeightSequence, raw_sequence
from ergolab.core.constants import (
    DOUBLING_PRECISION_BITS,
    GOLDEN_ALPHA,
    MAX_SEQUENCE_LENGTH,
    PHASE_SPLIT_BITS,
    PHASE_SPLIT_CHUNKS,
)
from ergolab.core.errors import (
    BoundViolationError,
    CapacityError,
    DomainError,
    InvertibilityError,
    PreconditionError,
    ShapeError,
)
from ergolab.core.report import ExperimentReport

logger = logging.getLogger(__name__)

BIT_BLOCK_SIZE = 4096
"""Bits drawn per seeded block of a doubling-map expansion"""


class SystemKind(Enum):
    """Supported systems."""

    ROTATION = "rotation"  # x -> x + alpha mod 1
    DOUBLING = "doubling"  # x -> 2x mod 1
    SKEW_PRODUCT = "skew_product"  # (x, y) -> (x + alpha, y + x) mod 1
    CYCLIC = "cyclic"  # x -> x + 1 mod J


@dataclass(frozen=True)
class DynSystem:
    """
    A measure-preserving system.

    alpha is used by rotations and skew products, modulus by cyclic shifts.
    """

    kind: SystemKind
    alpha: float = GOLDEN_ALPHA
    modulus: int = 0
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind in (SystemKind.ROTATION, SystemKind.SKEW_PRODUCT) and not 0.0 <= self.alpha < 1.0:
            raise DomainError(f"alpha must be in [0, 1), got {self.alpha}")
        if self.kind is SystemKind.CYCLIC and self.modulus < 1:
            raise DomainError(f"Cyclic system needs modulus >= 1, got {self.modulus}")

    @classmethod
    def rotation(cls, alpha: float = GOLDEN_ALPHA) -> "DynSystem":
        return cls(SystemKind.ROTATION, alpha=alpha, description=f"rotation by {alpha}")

    @classmethod
    def doubling(cls) -> "DynSystem":
        return cls(SystemKind.DOUBLING, description="doubling map")

    @classmethod
    def skew_product(cls, alpha: float = GOLDEN_ALPHA) -> "DynSystem":
        return cls(SystemKind.SKEW_PRODUCT, alpha=alpha, description=f"skew product over {alpha}")

    @classmethod
    def cyclic(cls, J: int) -> "DynSystem":
        return cls(SystemKind.CYCLIC, modulus=J, description=f"cyclic shift on Z/{J}")

    @property
    def invertible(self) -> bool:
        return self.kind is not SystemKind.DOUBLING


@dataclass(frozen=True)
class DoublingPoint:
    """
    Point of [0,1) given by its binary expansion.

    Digits come from `prefix` first, then from a seeded bit stream (or zeros
    when no seed is set). T shifts the expansion, so T^m only moves `offset`.
    """

    seed: Optional[int] = None
    prefix: Tuple[int, ...] = ()
    offset: int = 0

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.prefix):
            raise DomainError("Binary expansion digits must be 0 or 1")
        if self.offset < 0:
            raise DomainError(f"offset must be >= 0, got {self.offset}")

    def digits(self, start: int, count: int) -> np.ndarray:
        """Expansion digits offset+start .. offset+start+count-1."""
        lo = self.offset + start
        out = np.zeros(count, dtype=np.uint8)
        index = np.arange(lo, lo + count)
        in_prefix = index < len(self.prefix)
        if np.any(in_prefix):
            out[in_prefix] = np.asarray(self.prefix, dtype=np.uint8)[index[in_prefix]]
        if self.seed is None:
            return out
        stream = index[~in_prefix] - len(self.prefix)
        if stream.size:
            first, last = int(stream[0]) // BIT_BLOCK_SIZE, int(stream[-1]) // BIT_BLOCK_SIZE
            blocks = np.concatenate(
                [
                    np.random.default_rng([self.seed, k]).integers(0, 2, BIT_BLOCK_SIZE, dtype=np.uint8)
                    for k in range(first, last + 1)
                ]
            )
            out[~in_prefix] = blocks[stream - first * BIT_BLOCK_SIZE]
        return out

    def advanced(self, m: int) -> "DoublingPoint":
        if m < 0:
            raise InvertibilityError("The doubling map is not invertible")
        return DoublingPoint(self.seed, self.prefix, self.offset + m)

    @property
    def value(self) -> float:
        return float(_doubling_values(self, np.zeros(1, dtype=np.int64))[0])


Point = Union[float, int, Tuple[float, float], DoublingPoint]

_DOUBLING_WEIGHTS = np.ldexp(1.0, -np.arange(1, DOUBLING_PRECISION_BITS + 1))


def frac_multiple(k: Union[int, np.ndarray], alpha: float) -> np.ndarray:
    """
    k·α mod 1 for integer k without losing the fractional part to |k|.

    α is split into three 17-bit integer chunks plus a float remainder; each
    chunk product is reduced modulo its power of two in integer arithmetic.
    """
    k = np.asarray(k, dtype=np.int64)
    total = np.zeros(k.shape, dtype=float)
    rest = float(alpha)
    scale = 1 << PHASE_SPLIT_BITS
    for i in range(1, PHASE_SPLIT_CHUNKS + 1):
        rest *= scale
        chunk = int(rest)
        rest -= chunk
        modulus = 1 << (PHASE_SPLIT_BITS * i)
        total += ((k * chunk) % modulus) / float(modulus)
    total += k * (rest / float(1 << (PHASE_SPLIT_BITS * PHASE_SPLIT_CHUNKS)))
    return np.mod(total, 1.0)


def _doubling_values(point: DoublingPoint, times: np.ndarray) -> np.ndarray:
    digits = point.digits(0, int(times.max()) + DOUBLING_PRECISION_BITS)
    windows = sliding_window_view(digits, DOUBLING_PRECISION_BITS)[times]
    return windows.astype(float) @ _DOUBLING_WEIGHTS


def _check_point(system: DynSystem, x0: Point) -> None:
    kind = system.kind
    if kind is SystemKind.DOUBLING:
        if not isinstance(x0, DoublingPoint):
            raise DomainError("Doubling-map points must be DoublingPoint expansions")
    elif kind is SystemKind.CYCLIC:
        if isinstance(x0, bool) or not isinstance(x0, (int, np.integer)) or not 0 <= x0 < system.modulus:
            raise DomainError(f"Cyclic point must be an integer in [0, {system.modulus}), got {x0!r}")
    elif kind is SystemKind.SKEW_PRODUCT:
        if not isinstance(x0, tuple) or len(x0) != 2 or not all(0.0 <= c < 1.0 for c in x0):
            raise DomainError(f"Skew-product point must be (x, y) in [0,1)^2, got {x0!r}")
    elif isinstance(x0, (tuple, DoublingPoint)) or not 0.0 <= float(x0) < 1.0:
        raise DomainError(f"Rotation point must be in [0, 1), got {x0!r}")


def advance(system: DynSystem, x0: Point, times: Union[int, Sequence[int], np.ndarray]) -> np.ndarray:
    """
    T^t x0 for every t in `times`.

    Returns floats (rotation, doubling), integers (cyclic) or an (n, 2)
    array of (x, y) pairs (skew product).

    Raises:
        DomainError: If x0 is not a point of the system
        InvertibilityError: If a negative time is requested on the doubling map
    """
    _check_point(system, x0)
    t = np.atleast_1d(np.asarray(times, dtype=np.int64))
    kind = system.kind
    if kind is SystemKind.ROTATION:
        return np.mod(float(x0) + frac_multiple(t, system.alpha), 1.0)
    if kind is SystemKind.CYCLIC:
        return (int(x0) + t) % system.modulus
    if kind is SystemKind.SKEW_PRODUCT:
        x, y = x0
        xs = np.mod(x + frac_multiple(t, system.alpha), 1.0)
        ys = np.mod(y + np.mod(t * x, 1.0) + frac_multiple(t * (t - 1) // 2, system.alpha), 1.0)
        return np.stack([xs, ys], axis=1)
    if t.size and int(t.min()) < 0:
        raise InvertibilityError("The doubling map is not invertible; negative times requested")
    if t.size == 0:
        return np.zeros(0)
    return _doubling_values(x0, t)


def orbit(system: DynSystem, x0: Point, L: int) -> np.ndarray:
    """
    x0, Tx0, ..., T^{L-1}x0.

    Example:
        >>> orbit(DynSystem.cyclic(4), 0, 4)
        array([0, 1, 2, 3])
    """
    if L < 0:
        raise PreconditionError(f"L must be >= 0, got {L}")
    if L > MAX_SEQUENCE_LENGTH:
        raise CapacityError(f"Orbit length {L} exceeds {MAX_SEQUENCE_LENGTH}")
    return advance(system, x0, np.arange(L, dtype=np.int64))


# =============================================================================
# Observables
# =============================================================================


class ObservableKind(Enum):
    """Observable families."""

    TRIG = "trig"  # amplitude * e^{2πi k·x}
    INDICATOR = "indicator"  # 1 on [a, b)
    TABLE = "table"  # piecewise constant / lookup table


@dataclass(frozen=True, eq=False)
class Observable:
    """
    Bounded function on a system's space.

    On the skew product, a one-entry frequency acts on y and a two-entry
    frequency (k_x, k_y) on both coordinates; indicators and tables read y.
    On a cyclic system trig observables are the characters e^{2πikx/J}.
    """

    kind: ObservableKind
    frequency: Tuple[int, ...] = (1,)
    amplitude: complex = 1.0
    interval: Tuple[float, float] = (0.0, 1.0)
    table: Optional[np.ndarray] = field(default=None)

    def __post_init__(self) -> None:
        if abs(self.amplitude) > 1.0 + 1e-12:
            raise BoundViolationError(f"Observable amplitude must be <= 1, got {abs(self.amplitude)}")
        if self.kind is ObservableKind.TABLE:
            if self.table is None or np.asarray(self.table).size == 0:
                raise ShapeError("Table observable needs a non-empty table")
            table = np.array(self.table, dtype=np.complex128)
            if np.any(np.abs(table) > 1.0 + 1e-12):
                raise BoundViolationError("Table observable values must be 1-bounded")
            table.setflags(write=False)
            object.__setattr__(self, "table", table)
        if self.kind is ObservableKind.INDICATOR and self.interval[0] > self.interval[1]:
            raise DomainError(f"Indicator interval {self.interval} is reversed")

    @classmethod
    def trig(cls, frequency: Union[int, Tuple[int, ...]] = 1, amplitude: complex = 1.0) -> "Observable":
        if isinstance(frequency, int):
            frequency = (frequency,)
        return cls(ObservableKind.TRIG, frequency=tuple(frequency), amplitude=amplitude)

    @classmethod
    def constant(cls, value: complex = 1.0) -> "Observable":
        return cls(ObservableKind.TRIG, frequency=(0,), amplitude=value)

    @classmethod
    def indicator(cls, a: float, b: float) -> "Observable":
        return cls(ObservableKind.INDICATOR, interval=(a, b))

    @classmethod
    def from_table(cls, values: Sequence[complex]) -> "Observable":
        return cls(ObservableKind.TABLE, table=np.asarray(values))

    def mean(self, system: DynSystem) -> complex:
        """Integral against the reference measure, analytic for trig and indicators."""
        if self.kind is ObservableKind.TRIG:
            return complex(self.amplitude) if not any(self.frequency) else 0j
        if self.kind is ObservableKind.INDICATOR:
            a, b = self.interval
            if system.kind is SystemKind.CYCLIC:
                count = max(0, min(system.modulus, int(np.ceil(b))) - max(0, int(np.ceil(a))))
                return complex(count / system.modulus)
            return complex(max(0.0, min(b, 1.0) - max(a, 0.0)))
        return complex(np.mean(self.table))

    def mean_zero(self, system: DynSystem) -> bool:
        return self.mean(system) == 0

    def evaluate(self, system: DynSystem, points: np.ndarray) -> np.ndarray:
        """Observable values at points returned by `advance`."""
        if system.kind is SystemKind.SKEW_PRODUCT:
            return self._evaluate_skew(points)
        if system.kind is SystemKind.CYCLIC:
            return self._evaluate_cyclic(system.modulus, points)
        return self._evaluate_circle(points)

    def _evaluate_circle(self, x: np.ndarray) -> np.ndarray:
        if self.kind is ObservableKind.TRIG:
            return self.amplitude * np.exp(2j * np.pi * np.mod(self.frequency[0] * x, 1.0))
        if self.kind is ObservableKind.INDICATOR:
            a, b = self.interval
            return ((x >= a) & (x < b)).astype(np.complex128)
        size = self.table.size
        return self.table[np.minimum((x * size).astype(np.int64), size - 1)]

    def _evaluate_skew(self, points: np.ndarray) -> np.ndarray:
        x, y = points[:, 0], points[:, 1]
        if self.kind is ObservableKind.TRIG and len(self.frequency) == 2:
            kx, ky = self.frequency
            return self.amplitude * np.exp(2j * np.pi * np.mod(kx * x + ky * y, 1.0))
        return self._evaluate_circle(y)

    def _evaluate_cyclic(self, J: int, x: np.ndarray) -> np.ndarray:
        if self.kind is ObservableKind.TRIG:
            return self.amplitude * np.exp(2j * np.pi * (((self.frequency[0] * x) % J) / J))
        if self.kind is ObservableKind.INDICATOR:
            a, b = self.interval
            return ((x >= a) & (x < b)).astype(np.complex128)
        if self.table.size != J:
            raise ShapeError(f"Table of size {self.table.size} does not match modulus {J}")
        return self.table[x]

    def __repr__(self) -> str:
        return f"Observable(kind={self.kind.value}, frequency={self.frequency})"


def sample_observable(system: DynSystem, f: Observable, x0: Point, a: int, L: int) -> np.ndarray:
    """
    f(T^{an}x0) for n = 0..L-1.

    Raises:
        InvertibilityError: If a < 0 on the doubling map
    """
    if a < 0 and not system.invertible:
        raise InvertibilityError(f"a={a} needs an invertible system, got {system.kind.value}")
    return f.evaluate(system, advance(system, x0, a * np.arange(L, dtype=np.int64)))


def empirical_mean(system: DynSystem, f: Observable, x0: Point, L: int) -> complex:
    """Orbit average (1/L)Σ_{l<L} f(T^l x0)."""
    if L < 1:
        raise PreconditionError(f"L must be >= 1, got {L}")
    return complex(np.mean(sample_observable(system, f, x0, 1, L)))


def measure_preservation_report(
    system: DynSystem, f: Observable, x0_list: Sequence[Point], L: int, tolerance: float = 5.0 / 256
) -> ExperimentReport:
    """Orbit averages of f against its analytic mean, one row per starting point."""
    report = ExperimentReport(
        "measure_preservation",
        columns=["x_index", "empirical_mean", "analytic_mean", "deviation"],
        header={"system": system.kind.value, "L": L, "tolerance": tolerance},
    )
    expected = f.mean(system)
    for index, x0 in enumerate(x0_list):
        value = empirical_mean(system, f, x0, L)
        report.add_row(
            x_index=index, empirical_mean=value, analytic_mean=expected, deviation=abs(value - expected)
        )
    deviations = report.column("deviation") if report.rows else np.zeros(0)
    report.summary["max_deviation"] = float(deviations.max()) if deviations.size else 0.0
    report.summary["pass"] = bool(np.all(deviations <= tolerance))
    return report


# =============================================================================
# Transfer to the Shift Model
# =============================================================================


@dataclass(frozen=True)
class TransferWindow:
    """Shift-model functions φ, ψ on [0, J] and the anchor matching x0."""

    phi: WeightSequence
    psi: WeightSequence
    anchor: int
    J: int


def calderon_transfer(
    system: DynSystem, x0: Point, f: Observable, g: Observable, a: int, b: int, N: int
) -> TransferWindow:
    """
    φ(j) = f(T^{j-j0}x0), ψ(j) = g(T^{j-j0}x0) on [0, J].

    The anchor j0 = N·max(0, -a, -b) keeps every index j0 + a·n, j0 + b·n
    with 0 ≤ n ≤ N inside the window, and J = N·(max(0, a, b) + max(0, -a, -b)).
    Then (1/N)Σ ν(n)f(T^{an}x0)g(T^{bn}x0) equals (1/N)Σ ν(n)φ(j0+an)ψ(j0+bn)
    term by term, with the same floating-point operands.

    Raises:
        CapacityError: If the window exceeds the sequence capacity
        InvertibilityError: If negative times are needed on the doubling map
    """
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    anchor = N * max(0, -a, -b)
    J = N * (max(0, a, b) + max(0, -a, -b))
    if J + 1 > MAX_SEQUENCE_LENGTH:
        raise CapacityError(f"Transfer window [0, {J}] exceeds {MAX_SEQUENCE_LENGTH}")
    if anchor > 0 and not system.invertible:
        raise InvertibilityError(f"(a, b) = ({a}, {b}) needs negative times on {system.kind.value}")
    points = advance(system, x0, np.arange(J + 1, dtype=np.int64) - anchor)
    logger.debug(f"Transfer window [0, {J}] anchored at {anchor} for a={a}, b={b}, N={N}")
    return TransferWindow(
        phi=raw_sequence(f.evaluate(system, points), description="transferred f"),
        psi=raw_sequence(g.evaluate(system, points), description="transferred g"),
        anchor=anchor,
        J=J,
    )
