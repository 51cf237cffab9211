# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Trigonometric Polynomials and Exponential Sums

Sparse trigonometric polynomials on the torus, certified sup-norm estimates on
FFT grids, the local polynomials built from a sequence window, Wiener-algebra
norms, and decay profiles of weighted exponential sums.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ergolab.core.arith_seq import WeightSequence, raw_sequence
from ergolab.core.constants import (
    DEFAULT_OVERSAMPLE,
    GRID_CHUNK_SIZE,
    MAX_FREQUENCY,
    MAX_GRID_POINTS,
    MIN_OVERSAMPLE,
    WIENER_BW_CONSTANT,
)
from ergolab.core.errors import (
    CapacityError,
    DegeneratePolynomialError,
    PreconditionError,
    SequenceRangeError,
    ShapeError,
)
from ergolab.core.pool import ordered_map
from ergolab.core.report import ExperimentReport, loglog_slope

logger = logging.getLogger(__name__)

EVAL_BLOCK_ELEMENTS = 1 << 22
"""Largest (points x frequencies) block evaluated at once"""

DENSE_MAX_WIDTH = 1 << 30
"""Widest support expanded to a dense coefficient vector"""

Theta = Union[float, Fraction, np.ndarray, Sequence[float]]
SequenceLike = Union[WeightSequence, Sequence[complex], np.ndarray]


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """
    Finite sum Σ c_n e^{2πinθ} with sorted, distinct integer frequencies.

    Interval polynomials store every frequency of [lo, hi] (zeros included);
    sparse ones (e.g. frequencies n^k) store only their support.
    """

    frequencies: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        freqs = np.array(self.frequencies, dtype=np.int64)
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if freqs.ndim != 1 or freqs.shape != coeffs.shape:
            raise ShapeError(
                f"Frequencies {freqs.shape} and coefficients {coeffs.shape} must be matching 1-D arrays"
            )
        if freqs.size > 1 and np.any(np.diff(freqs) <= 0):
            raise ShapeError("Frequencies must be strictly increasing")
        if freqs.size and max(abs(int(freqs[0])), abs(int(freqs[-1]))) > MAX_FREQUENCY:
            raise CapacityError(f"Frequency magnitude exceeds {MAX_FREQUENCY}")
        freqs.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_interval(cls, lo: int, coeffs: Sequence[complex]) -> "TrigPolynomial":
        """Polynomial with coefficients on lo, lo+1, ..., lo+len(coeffs)-1."""
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        return cls(np.arange(lo, lo + coeffs.size, dtype=np.int64), coeffs)

    @classmethod
    def from_terms(cls, frequencies: Sequence[int], coeffs: Sequence[complex]) -> "TrigPolynomial":
        """Polynomial from unsorted terms; repeated frequencies are summed."""
        freqs = np.asarray(frequencies, dtype=np.int64)
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if freqs.shape != coeffs.shape:
            raise ShapeError(f"{freqs.size} frequencies but {coeffs.size} coefficients")
        unique, inverse = np.unique(freqs, return_inverse=True)
        summed = np.zeros(unique.size, dtype=np.complex128)
        np.add.at(summed, inverse, coeffs)
        return cls(unique, summed)

    @classmethod
    def zero(cls) -> "TrigPolynomial":
        return cls(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.complex128))

    @classmethod
    def constant(cls, value: complex = 1.0) -> "TrigPolynomial":
        return cls.from_interval(0, [value])

    @property
    def is_empty(self) -> bool:
        return self.frequencies.size == 0

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0))

    @property
    def lo(self) -> int:
        self._require_support()
        return int(self.frequencies[0])

    @property
    def hi(self) -> int:
        self._require_support()
        return int(self.frequencies[-1])

    @property
    def degree(self) -> int:
        """max(|lo|, |hi|)."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def is_interval(self) -> bool:
        return self.is_empty or self.frequencies.size == self.hi - self.lo + 1

    def _require_support(self) -> None:
        if self.is_empty:
            raise DegeneratePolynomialError("Trigonometric polynomial has empty support")

    def coefficient(self, n: int) -> complex:
        index = int(np.searchsorted(self.frequencies, n))
        if index < self.frequencies.size and self.frequencies[index] == n:
            return complex(self.coeffs[index])
        return 0j

    def dense(self) -> Tuple[int, np.ndarray]:
        """(lo, coefficients on every integer of [lo, hi])."""
        lo, hi = self.lo, self.hi
        if hi - lo + 1 > DENSE_MAX_WIDTH:
            raise CapacityError(f"Dense coefficient vector of width {hi - lo + 1} is too large")
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        out[self.frequencies - lo] = self.coeffs
        return lo, out

    def l2_norm(self) -> float:
        """‖P‖₂ by Parseval."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def derivative(self) -> "TrigPolynomial":
        """dP/dθ: coefficients 2πi·n·c_n."""
        return TrigPolynomial(self.frequencies, 2j * np.pi * self.frequencies * self.coeffs)

    def modulated(self, k: int) -> "TrigPolynomial":
        """e^{2πikθ}·P(θ)."""
        return TrigPolynomial(self.frequencies + np.int64(k), self.coeffs)

    def reflected(self) -> "TrigPolynomial":
        """P(-θ)."""
        return TrigPolynomial(-self.frequencies[::-1], self.coeffs[::-1])

    def scaled(self, factor: complex) -> "TrigPolynomial":
        return TrigPolynomial(self.frequencies, self.coeffs * factor)

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return TrigPolynomial.from_terms(
            np.concatenate([self.frequencies, other.frequencies]),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + other.scaled(-1.0)

    def __call__(self, theta: Theta) -> Union[complex, np.ndarray]:
        return evaluate(self, theta)

    def __repr__(self) -> str:
        if self.is_empty:
            return "TrigPolynomial(empty)"
        return f"TrigPolynomial(support=[{self.lo}, {self.hi}], terms={self.frequencies.size})"


@dataclass(frozen=True)
class SupEstimate:
    """Grid estimate of sup|P|; the true sup lies in [value, value + error_bound]."""

    value: float
    error_bound: float
    argmax_theta: float
    grid_size: int = 0

    @property
    def upper(self) -> float:
        return self.value + self.error_bound


# =============================================================================
# Evaluation
# =============================================================================


def evaluate(P: TrigPolynomial, theta: Theta) -> Union[complex, np.ndarray]:
    """
    Direct evaluation Σ c_n e^{2πinθ}.

    Fractions are reduced mod 1 exactly per frequency; floats and arrays are
    evaluated in blocks.

    Example:
        >>> TrigPolynomial.from_interval(1, [1.0])(0.25)
        (6.123233995736766e-17+1j)
    """
    if isinstance(theta, Fraction):
        turns = np.asarray(
            [float((int(n) * theta) % 1) for n in P.frequencies.tolist()], dtype=float
        )
        return complex(np.sum(P.coeffs * np.exp(2j * np.pi * turns)))
    points = np.asarray(theta, dtype=float)
    scalar = points.ndim == 0
    points = np.atleast_1d(points).ravel()
    out = np.zeros(points.size, dtype=np.complex128)
    if P.is_empty:
        return 0j if scalar else out
    block = max(1, EVAL_BLOCK_ELEMENTS // P.frequencies.size)
    freqs = P.frequencies.astype(float)
    for start in range(0, points.size, block):
        chunk = points[start : start + block]
        turns = np.mod(np.outer(chunk, freqs), 1.0)
        out[start : start + block] = (np.exp(2j * np.pi * turns) * P.coeffs).sum(axis=1)
    return complex(out[0]) if scalar else out.reshape(np.shape(theta))


def sample_grid(P: TrigPolynomial, size: int) -> np.ndarray:
    """Values of P at k/size, k = 0..size-1, via one FFT of the folded coefficients."""
    if size < 1:
        raise PreconditionError(f"Grid size must be >= 1, got {size}")
    folded = _fold(P.frequencies % size, P.coeffs, size)
    return np.fft.ifft(folded) * size


def _fold(indices: np.ndarray, coeffs: np.ndarray, size: int) -> np.ndarray:
    real = np.bincount(indices, weights=coeffs.real, minlength=size)
    imag = np.bincount(indices, weights=coeffs.imag, minlength=size)
    return real + 1j * imag


def sup_norm(P: TrigPolynomial, oversample: int = DEFAULT_OVERSAMPLE) -> SupEstimate:
    """
    Certified grid estimate of sup_θ |P(θ)|.

    |P| is unchanged by modulation, so frequencies are first centred on the
    midpoint of the support; deg below is the centred degree. The grid has at
    least oversample·(2·deg+1) points. The error bound is the smaller of
    spacing·2π·deg·Σ|c| and the Bernstein bound value·q/(1-q), q = π·deg·spacing.

    Args:
        P: Trigonometric polynomial
        oversample: Grid oversampling factor (≥ 4)

    Returns:
        SupEstimate with value, error_bound and argmax_theta

    Raises:
        DegeneratePolynomialError: If P has empty support
        PreconditionError: If oversample < 4
        CapacityError: If the grid would exceed its size limit
    """
    if P.is_empty:
        raise DegeneratePolynomialError("Cannot take the sup norm of an empty polynomial")
    if oversample < MIN_OVERSAMPLE:
        raise PreconditionError(f"oversample must be >= {MIN_OVERSAMPLE}, got {oversample}")

    center = (P.lo + P.hi) // 2
    shifted = P.frequencies - np.int64(center)
    deg = int(np.max(np.abs(shifted)))
    minimum = oversample * (2 * deg + 1)
    if minimum <= GRID_CHUNK_SIZE:
        chunk_len, chunks = minimum, 1
    else:
        chunk_len = GRID_CHUNK_SIZE
        chunks = -(-minimum // chunk_len)
    size = chunk_len * chunks
    if size > MAX_GRID_POINTS:
        raise CapacityError(f"Sup-norm grid of {size} points exceeds {MAX_GRID_POINTS}")
    logger.debug(f"sup_norm: deg={deg}, grid={size} ({chunks} chunk(s) of {chunk_len})")

    residues = shifted % size
    folded_index = shifted % chunk_len

    def scan(offset: int) -> Tuple[float, int]:
        # grid points offset + chunks*t, t = 0..chunk_len-1
        if offset == 0:
            twiddled = P.coeffs
        else:
            phase = (residues * offset) % size
            twiddled = P.coeffs * np.exp(2j * np.pi * (phase / size))
        values = np.abs(np.fft.ifft(_fold(folded_index, twiddled, chunk_len)) * chunk_len)
        t = int(np.argmax(values))
        return float(values[t]), offset + chunks * t

    best_value, best_index = -1.0, 0
    for value, index in ordered_map(scan, range(chunks)):
        if value > best_value:
            best_value, best_index = value, index

    spacing = 1.0 / size
    crude = spacing * 2.0 * math.pi * deg * float(np.sum(np.abs(P.coeffs)))
    q = math.pi * deg * spacing
    error = crude
    if q < 1.0:
        error = min(crude, best_value * q / (1.0 - q))
    return SupEstimate(
        value=best_value,
        error_bound=error,
        argmax_theta=best_index / size,
        grid_size=size,
    )


# =============================================================================
# Local Polynomials
# =============================================================================


def as_sequence(psi: SequenceLike, start: int = 0) -> WeightSequence:
    """Accept a WeightSequence or wrap a raw 1-bounded array starting at `start`."""
    if isinstance(psi, WeightSequence):
        return psi
    return raw_sequence(np.asarray(psi), start=start)


def local_poly(psi: SequenceLike, x: int, N: int) -> TrigPolynomial:
    """
    P_{x,N}(θ) = (1/N) Σ_{n=x-N}^{x-1} ψ(n) e^{2πinθ}.

    Raises:
        SequenceRangeError: If [x-N, x-1] is outside the stored range of ψ
    """
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    seq = as_sequence(psi)
    window = seq.segment(x - N, x - 1)
    return TrigPolynomial.from_interval(x - N, window / N)


def weighted_local_poly(nu: WeightSequence, psi: SequenceLike, x: int, N: int) -> TrigPolynomial:
    """
    Q_{x,N}(θ) = (1/N) Σ_{x-N≤n<x} ν(n+x) ψ(n) e^{-2πinθ}.

    The coefficient of index n attaches to frequency -n, so the support is
    [1-x, N-x].
    """
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    seq = as_sequence(psi)
    window = seq.segment(x - N, x - 1)
    weights = nu.segment(2 * x - N, 2 * x - 1)
    return TrigPolynomial.from_interval(1 - x, (weights * window)[::-1] / N)


def wiener_norm(P: TrigPolynomial) -> float:
    """‖P‖_A = Σ|c_n|."""
    return float(np.sum(np.abs(P.coeffs)))


def bw_sides(P: TrigPolynomial) -> Tuple[float, float]:
    """(‖P‖_A, (π/√3)·√‖P‖₂·√‖P'‖₂) for a mean-zero polynomial."""
    if P.coefficient(0) != 0:
        raise PreconditionError(
            f"Polynomial must be mean-zero, coefficient at 0 is {P.coefficient(0)}"
        )
    lhs = wiener_norm(P)
    rhs = WIENER_BW_CONSTANT * math.sqrt(P.l2_norm()) * math.sqrt(P.derivative().l2_norm())
    return lhs, rhs


def bw_inequality_report(P: TrigPolynomial) -> ExperimentReport:
    """
    Check ‖P‖_A ≤ (π/√3)·√‖P‖₂·√‖P'‖₂ for a mean-zero polynomial.

    Raises:
        PreconditionError: If the zeroth coefficient is nonzero
    """
    lhs, rhs = bw_sides(P)
    report = ExperimentReport("bw_inequality", columns=["lhs", "rhs", "holds"])
    holds = lhs <= rhs * (1.0 + 1e-12)
    report.add_row(lhs=lhs, rhs=rhs, holds=holds)
    report.summary["pass"] = holds
    return report


def convolution_bound_check(
    P: TrigPolynomial, phi: Sequence[complex], phi_start: int = 0
) -> ExperimentReport:
    """
    Check ‖F⁻¹(P·F(φ))‖_∞ ≤ ‖P‖_A·‖φ‖_∞ for finitely supported φ.

    The inverse transform of the product is the coefficient convolution c * φ.
    """
    phi = np.asarray(phi, dtype=np.complex128)
    report = ExperimentReport("convolution_bound", columns=["lhs", "rhs", "holds"])
    if P.is_empty or phi.size == 0:
        lhs = 0.0
    else:
        _, dense = P.dense()
        g = np.convolve(dense, phi)
        lhs = float(np.max(np.abs(g)))
    rhs = wiener_norm(P) * (float(np.max(np.abs(phi))) if phi.size else 0.0)
    holds = lhs <= rhs * (1.0 + 1e-12) + 1e-15
    report.add_row(lhs=lhs, rhs=rhs, holds=holds)
    report.header["phi_start"] = phi_start
    report.summary["pass"] = holds
    return report


def lipschitz_report(
    psi: SequenceLike, x: int, x2: int, N: int, nu: Optional[WeightSequence] = None
) -> ExperimentReport:
    """
    ‖P_{x,N} − P_{x2,N}‖₂² against the sliding-window bound 2·min(|x−x2|, N)/N².

    With a weight ν the same difference for Q_{x,N} is reported without a flag,
    since ν(n+x) moves with x.
    """
    report = ExperimentReport("lipschitz_in_x", columns=["polynomial", "lhs", "rhs", "holds"])
    diff = (local_poly(psi, x, N) - local_poly(psi, x2, N)).l2_norm() ** 2
    bound = 2.0 * min(abs(x - x2), N) / N**2
    holds = diff <= bound * (1.0 + 1e-12)
    report.add_row(polynomial="P", lhs=diff, rhs=bound, holds=holds)
    if nu is not None:
        qdiff = (weighted_local_poly(nu, psi, x, N) - weighted_local_poly(nu, psi, x2, N)).l2_norm()
        report.add_row(polynomial="Q", lhs=qdiff**2, rhs=bound, holds=None)
    report.summary["pass"] = holds
    return report


def derivative_bound_report(
    nu: WeightSequence, psi: SequenceLike, x: int, N: int
) -> ExperimentReport:
    """
    ‖Q_{x,N}‖₂ ≤ 1/√N and ‖∂(e^{2πixθ}Q_{x,N})‖₂ < √N.

    The derivative is taken per unit frequency (coefficients m·c_m); the
    2π-scaled value is reported alongside.
    """
    Q = weighted_local_poly(nu, psi, x, N)
    R = Q.modulated(x)
    scaled = float(np.sqrt(np.sum((R.frequencies * np.abs(R.coeffs)) ** 2)))
    report = ExperimentReport("local_poly_bounds", columns=["quantity", "value", "bound", "holds"])
    l2_holds = Q.l2_norm() <= (1.0 / math.sqrt(N)) * (1.0 + 1e-12)
    d_holds = scaled <= math.sqrt(N) * (1.0 + 1e-12)
    report.add_row(quantity="l2_norm", value=Q.l2_norm(), bound=1.0 / math.sqrt(N), holds=l2_holds)
    report.add_row(quantity="derivative", value=scaled, bound=math.sqrt(N), holds=d_holds)
    report.add_row(
        quantity="derivative_2pi", value=2.0 * math.pi * scaled, bound=2.0 * math.pi * math.sqrt(N), holds=d_holds
    )
    report.summary["pass"] = bool(l2_holds and d_holds)
    return report


def fourier_transfer_check(
    nu: WeightSequence, phi: SequenceLike, psi: SequenceLike, x: int, N: int
) -> ExperimentReport:
    """
    Compare (1/N)Σ ν(n)φ(x+n)ψ(x−n) with its Fourier form.

    The Fourier side is ∫ φ̂(θ)·B(θ) dθ with φ̂(θ) = Σφ(m)e^{-2πimθ} and
    B(θ) = (1/N)Σ ν(n)ψ(x−n)e^{-2πi(x−n)θ}·e^{4πixθ}, integrated exactly as a
    grid mean on more points than the product's degree.
    """
    phi_seq, psi_seq = as_sequence(phi), as_sequence(psi)
    weights = nu.segment(1, N)
    forward = phi_seq.segment(x + 1, x + N)
    backward = psi_seq.segment(x - N, x - 1)[::-1]
    direct = complex(np.sum(weights * forward * backward)) / N

    phi_hat = TrigPolynomial.from_interval(-phi_seq.stop, phi_seq.values[::-1])
    n = np.arange(1, N + 1, dtype=np.int64)
    B = TrigPolynomial(x + n, weights * backward / N)
    span = max(abs(phi_hat.lo + B.lo), abs(phi_hat.hi + B.hi))
    size = span + 1
    fourier = complex(np.mean(sample_grid(phi_hat, size) * sample_grid(B, size)))

    report = ExperimentReport("fourier_transfer", columns=["side", "re", "im"])
    report.add_row(side="direct", re=direct.real, im=direct.imag)
    report.add_row(side="fourier", re=fourier.real, im=fourier.imag)
    report.summary["abs_difference"] = abs(direct - fourier)
    report.summary["pass"] = abs(direct - fourier) <= 1e-9
    return report


# =============================================================================
# Exponential Sum Profiles
# =============================================================================


def power_sum_profile(
    w: WeightSequence, k: int, N_list: Iterable[int], oversample: int = DEFAULT_OVERSAMPLE
) -> ExperimentReport:
    """
    sup_θ |Σ_{n≤N} w(n) e^{2πi n^k θ}| / N for each N.

    Raises:
        CapacityError: If N^k overflows the signed 64-bit frequency range
        SequenceRangeError: If w is shorter than max(N_list)
    """
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    N_values = sorted(set(int(N) for N in N_list))
    report = ExperimentReport(
        "power_sum_profile",
        columns=["N", "value", "error_bound", "argmax_theta"],
        header={"weight": w.kind.value, "k": k, "oversample": oversample, "seed": w.seed},
    )
    if not N_values:
        return report
    if N_values[-1] ** k > MAX_FREQUENCY:
        raise CapacityError(f"Frequency {N_values[-1]}^{k} overflows signed 64-bit range")
    values: List[float] = []
    errors: List[float] = []
    for N in N_values:
        n = np.arange(1, N + 1, dtype=np.int64)
        P = TrigPolynomial(n**k, w.segment(1, N) / N)
        estimate = sup_norm(P, oversample)
        values.append(estimate.value)
        errors.append(estimate.error_bound)
        report.add_row(
            N=N, value=estimate.value, error_bound=estimate.error_bound, argmax_theta=estimate.argmax_theta
        )
        logger.info(f"power sum k={k} N={N}: {estimate.value:.6g} ± {estimate.error_bound:.3g}")
    report.summary["slope"] = loglog_slope(N_values, values)
    report.summary["certified_decreasing"] = all(
        values[i + 1] + errors[i + 1] < values[i] for i in range(len(values) - 1)
    )
    return report


def short_interval_profile(
    w: WeightSequence, N: int, M: int, oversample: int = DEFAULT_OVERSAMPLE
) -> ExperimentReport:
    """
    sup_θ |Σ_{N≤n<N+M} w(n) e^{2πinθ}| / M over the M terms starting at N.

    Raises:
        SequenceRangeError: If N + M - 1 exceeds the stored range
    """
    if M < 1:
        raise PreconditionError(f"M must be >= 1, got {M}")
    if N + M - 1 > w.stop:
        raise SequenceRangeError(f"Short interval [{N}, {N + M - 1}] exceeds stored range ending {w.stop}")
    P = TrigPolynomial.from_interval(N, w.segment(N, N + M - 1) / M)
    estimate = sup_norm(P, oversample)
    report = ExperimentReport(
        "short_interval_profile",
        columns=["N", "M", "value", "error_bound", "argmax_theta"],
        header={"weight": w.kind.value, "oversample": oversample},
    )
    report.add_row(
        N=N, M=M, value=estimate.value, error_bound=estimate.error_bound, argmax_theta=estimate.argmax_theta
    )
    return report


def short_interval_sweep(
    w: WeightSequence,
    N_list: Iterable[int],
    exponent: float = 0.7,
    oversample: int = DEFAULT_OVERSAMPLE,
) -> ExperimentReport:
    """short_interval_profile over growing N with M = ⌈N^exponent⌉."""
    N_values = sorted(set(int(N) for N in N_list))
    report = ExperimentReport(
        "short_interval_sweep",
        columns=["N", "M", "value", "error_bound", "argmax_theta"],
        header={"weight": w.kind.value, "exponent": exponent, "oversample": oversample},
    )
    for N in N_values:
        M = math.ceil(N**exponent)
        row = short_interval_profile(w, N, M, oversample).records()[0]
        report.add_row(**row)
    report.summary["slope"] = loglog_slope(N_values, report.column("value")) if N_values else 0.0
    return report
