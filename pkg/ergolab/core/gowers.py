# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Gowers Uniformity Norms

Gowers inner products and U^d norms on cyclic groups and intervals, discrete
derivatives, polynomial-phase invariance, and truncated orbit versions of the
Gowers-Host-Kra seminorms.

Cube vertices c ∈ {0,1}^d are indexed by the integer whose bit j is c_j;
vertices with an odd number of ones are conjugated. All cyclic averages are
normalized by M^{d+1}.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from ergolab.core.arith_seq import Rational, WeightSequence, compensated_sum, polynomial_phase_values
from ergolab.core.constants import GOWERS_D3_MAX_MODULUS, GOWERS_NEGATIVE_TOLERANCE
from ergolab.core.errors import CapacityError, PreconditionError, ShapeError
from ergolab.core.pool import ordered_map
from ergolab.core.report import ExperimentReport
from ergolab.core.spectra import TrigPolynomial, sup_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CyclicSequence:
    """Function on ℤ/Mℤ; values[x] is f(x mod M)."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        if values.ndim != 1 or values.size == 0:
            raise ShapeError(f"Cyclic sequence needs a non-empty 1-D array, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ShapeError("Cyclic sequence values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def modulus(self) -> int:
        return int(self.values.size)

    def __call__(self, x: int) -> complex:
        return complex(self.values[x % self.modulus])

    def shifted(self, a: int) -> "CyclicSequence":
        """x ↦ f(x + a)."""
        return CyclicSequence(np.roll(self.values, -a))

    def conjugate(self) -> "CyclicSequence":
        return CyclicSequence(np.conj(self.values))

    def modulated(self, phi_coeffs: Sequence[Rational]) -> "CyclicSequence":
        """x ↦ e^{2πiφ(x)}·f(x), φ reduced mod 1 exactly."""
        phases = polynomial_phase_values(phi_coeffs, np.arange(self.modulus, dtype=np.int64))
        return CyclicSequence(phases * self.values)

    def __add__(self, other: "CyclicSequence") -> "CyclicSequence":
        _check_moduli([self, other])
        return CyclicSequence(self.values + other.values)

    def __repr__(self) -> str:
        return f"CyclicSequence(modulus={self.modulus})"


@dataclass(frozen=True)
class GowersResult:
    """U^d norm with the raw power norm^{2^d} it was taken from."""

    d: int
    norm: float
    raw_power: float
    method: str
    cross_check: Optional[float] = None

    def as_dict(self) -> dict:
        return {"d": self.d, "norm": self.norm, "raw_power": self.raw_power, "method": self.method}


def _check_moduli(family: Sequence[CyclicSequence]) -> int:
    moduli = {f.modulus for f in family}
    if len(moduli) != 1:
        raise ShapeError(f"Family members must share one modulus, got {sorted(moduli)}")
    return moduli.pop()


def _check_degree(d: int) -> None:
    if d < 1:
        raise PreconditionError(f"d must be >= 1, got {d}")


def _conjugated(family: Sequence[CyclicSequence]) -> List[np.ndarray]:
    return [
        np.conj(f.values) if bin(i).count("1") % 2 else f.values for i, f in enumerate(family)
    ]


# =============================================================================
# Cyclic Groups
# =============================================================================


def _base_fft(arrays: List[np.ndarray]) -> complex:
    """E_{x,h1,h2} g0(x) g1(x+h1) g2(x+h2) g3(x+h1+h2) = Σ_ξ ĝ0(ξ)ĝ1(-ξ)ĝ2(-ξ)ĝ3(ξ)."""
    M = arrays[0].size
    hats = [np.fft.fft(a) / M for a in arrays]
    reflected = (-np.arange(M)) % M
    return compensated_sum(hats[0] * hats[1][reflected] * hats[2][reflected] * hats[3])


def _inner(arrays: List[np.ndarray], d: int, fft_base: bool, parallel: bool = False) -> complex:
    """Normalized average of Π g_c(x + c·h), conjugations already applied."""
    if d == 1:
        return complex(np.mean(arrays[0]) * np.mean(arrays[1]))
    if d == 2 and fft_base:
        return _base_fft(arrays)
    half = 1 << (d - 1)
    M = arrays[0].size

    def fixed_h(h: int) -> complex:
        reduced = [arrays[i] * np.roll(arrays[i + half], -h) for i in range(half)]
        return _inner(reduced, d - 1, fft_base)

    terms = ordered_map(fixed_h, range(M)) if parallel else [fixed_h(h) for h in range(M)]
    return compensated_sum(np.asarray(terms)) / M


def gowers_inner(family: Sequence[CyclicSequence], d: int, method: str = "fft") -> complex:
    """
    Gowers inner product ⟨(f_c)⟩ on ℤ/M.

    Args:
        family: 2^d sequences, vertex c at index Σ c_j 2^j
        d: Degree
        method: "fft" (d=2 base via Fourier) or "direct" (base at d=1)

    Raises:
        ShapeError: If the family size or moduli do not match
        PreconditionError: If d < 1
    """
    _check_degree(d)
    if len(family) != 1 << d:
        raise ShapeError(f"Family for d={d} needs {1 << d} members, got {len(family)}")
    M = _check_moduli(family)
    if d >= 3 and M ** (d - 2) > GOWERS_D3_MAX_MODULUS:
        raise CapacityError(f"U^{d} on modulus {M} exceeds the direct-summation cap")
    return _inner(_conjugated(family), d, method == "fft", parallel=True)


def gowers_cube_family(f: CyclicSequence, d: int) -> List[CyclicSequence]:
    """The constant family (f)_{c ∈ {0,1}^d}."""
    _check_degree(d)
    return [f] * (1 << d)


def _result(d: int, raw: complex, method: str, cross_check: Optional[float] = None) -> GowersResult:
    raw_power = float(raw.real)
    if raw_power < -GOWERS_NEGATIVE_TOLERANCE:
        logger.warning(f"U^{d} raw power {raw_power:.3g} is negative beyond rounding")
    norm = max(raw_power, 0.0) ** (1.0 / (1 << d))
    return GowersResult(d=d, norm=norm, raw_power=raw_power, method=method, cross_check=cross_check)


def gowers_norm_cyclic(f: CyclicSequence, d: int) -> GowersResult:
    """
    ‖f‖_{U^d(ℤ/M)} from the constant family.

    For d=2 the Fourier route is primary and the direct recursion is stored in
    cross_check (skipped above the direct-summation cap).

    Example:
        >>> gowers_norm_cyclic(CyclicSequence(np.ones(8)), 2).norm
        1.0
    """
    _check_degree(d)
    family = gowers_cube_family(f, d)
    if d == 1:
        return _result(1, gowers_inner(family, 1, "direct"), "direct")
    raw = gowers_inner(family, d, "fft")
    cross = None
    if d == 2 and f.modulus <= GOWERS_D3_MAX_MODULUS:
        cross = float(gowers_inner(family, 2, "direct").real)
    return _result(d, raw, "fft", cross)


def discrete_derivative(f: CyclicSequence, h: int) -> CyclicSequence:
    """∂_h f(x) = f(x+h)·conj f(x)."""
    return CyclicSequence(np.roll(f.values, -h) * np.conj(f.values))


def phase_invariance_check(
    f: CyclicSequence, phi_coeffs: Sequence[Rational], d: int
) -> ExperimentReport:
    """
    ‖e^{2πiφ}f‖_{U^d} against ‖f‖_{U^d}.

    φ of degree < d leaves the norm unchanged when it is a function on ℤ/M;
    the summary records whether φ is M-periodic mod 1.
    """
    base = gowers_norm_cyclic(f, d)
    twisted = gowers_norm_cyclic(f.modulated(phi_coeffs), d)
    x = np.arange(f.modulus, dtype=np.int64)
    periodic = bool(
        np.allclose(
            polynomial_phase_values(phi_coeffs, x), polynomial_phase_values(phi_coeffs, x + f.modulus)
        )
    )
    report = ExperimentReport(
        "phase_invariance",
        columns=["d", "norm", "twisted_norm", "difference"],
        header={"modulus": f.modulus, "phi": [str(c) for c in phi_coeffs]},
    )
    report.add_row(
        d=d, norm=base.norm, twisted_norm=twisted.norm, difference=abs(base.norm - twisted.norm)
    )
    report.summary["periodic_phase"] = periodic
    report.summary["phase_degree"] = _degree(phi_coeffs)
    report.summary["invariance_expected"] = periodic and _degree(phi_coeffs) < d
    return report


def _degree(coeffs: Sequence[Rational]) -> int:
    nonzero = [k for k, c in enumerate(coeffs) if Fraction(c) != 0]
    return nonzero[-1] if nonzero else 0


def cbs_gowers_check(family: Sequence[CyclicSequence], d: int) -> ExperimentReport:
    """|⟨(f_c)⟩| ≤ Π_c ‖f_c‖_{U^d}."""
    _check_moduli(family)
    lhs = abs(gowers_inner(family, d))
    rhs = math.prod(gowers_norm_cyclic(f, d).norm for f in family)
    holds = lhs <= rhs + 1e-10
    report = ExperimentReport("cbs_gowers", columns=["d", "lhs", "rhs", "holds"])
    report.add_row(d=d, lhs=lhs, rhs=rhs, holds=holds)
    report.summary["pass"] = holds
    return report


# =============================================================================
# Intervals
# =============================================================================


def _as_values(f) -> np.ndarray:
    if isinstance(f, WeightSequence):
        return f.values
    return np.asarray(f, dtype=np.complex128)


def _u2_count(values: np.ndarray) -> float:
    """Σ over additive quadruples in ℤ of f f̄ f̄ f, via a padded FFT."""
    size = 1 << max(1, (2 * values.size - 1).bit_length())
    spectrum = np.fft.fft(values, size)
    return float(np.sum(np.abs(spectrum) ** 4) / size)


def _interval_count(values: np.ndarray, d: int) -> float:
    """Σ_{x,h ∈ ℤ^{d+1}} Π_c C^{|c|} f(x + c·h) for f supported on an interval."""
    if values.size == 0:
        return 0.0
    if d == 1:
        return abs(complex(np.sum(values))) ** 2
    if d == 2:
        return _u2_count(values)
    L = values.size
    terms = []
    for h in range(-(L - 1), L):
        if h >= 0:
            derived = values[: L - h] * np.conj(values[h:])
        else:
            derived = values[-h:] * np.conj(values[: L + h])
        terms.append(_interval_count(derived, d - 1))
    return math.fsum(terms)


def gowers_norm_interval(f, d: int) -> GowersResult:
    """
    ‖f‖_{U^d[N]} = ‖f̃‖_{U^d(ℤ/2^dN)} / ‖1_{[N]}‖_{U^d(ℤ/2^dN)}.

    In ℤ/2^dN no parallelogram with vertices in the support wraps around, so
    both norms reduce to the same count over ℤ and the common power of the
    modulus cancels in the ratio.

    Args:
        f: Values f(1..N), as an array or WeightSequence
        d: Degree

    Returns:
        GowersResult with raw_power = norm^{2^d}
    """
    _check_degree(d)
    values = _as_values(f)
    N = values.size
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    count_f = _interval_count(values, d)
    count_one = _interval_count(np.ones(N, dtype=np.complex128), d)
    method = "fft" if d >= 2 else "direct"
    logger.debug(f"U^{d}[{N}]: count {count_f:.6g} / indicator {count_one:.6g}")
    return _result(d, complex(count_f / count_one), method)


LINEAR_PHASE_FACTOR = (8.0 / 3.0) ** 0.25
"""sup_θ |(1/N)Σ f(n)e(nθ)| ≤ (8/3)^{1/4}·‖f‖_{U²[N]} under the interval normalization"""


def linear_phase_sup_bound(f, oversample: int = 8) -> ExperimentReport:
    """
    sup_θ |(1/N)Σ f(n)e^{2πinθ}| against (8/3)^{1/4}·‖f‖_{U²[N]}.

    The flag allows the grid error of the sup estimate.
    """
    values = _as_values(f)
    N = values.size
    if N < 2:
        raise PreconditionError(f"N must be >= 2, got {N}")
    estimate = sup_norm(TrigPolynomial.from_interval(1, values / N), oversample)
    norm = gowers_norm_interval(values, 2).norm
    rhs = LINEAR_PHASE_FACTOR * norm
    holds = estimate.value <= rhs + estimate.error_bound
    report = ExperimentReport(
        "linear_phase_sup", columns=["N", "lhs", "error_bound", "norm", "rhs", "holds"]
    )
    report.add_row(N=N, lhs=estimate.value, error_bound=estimate.error_bound, norm=norm, rhs=rhs, holds=holds)
    report.summary["pass"] = holds
    return report


# =============================================================================
# Orbit Seminorms
# =============================================================================


def _ghk_raw(orbit: np.ndarray, k: int, H: int) -> float:
    if k == 1:
        return abs(complex(np.mean(orbit))) ** 2
    L = orbit.size
    terms = [_ghk_raw(np.conj(orbit[: L - l]) * orbit[l:], k - 1, H) for l in range(1, H + 1)]
    return math.fsum(terms) / H


def ghk_seminorm_empirical(orbit, k: int, H: int) -> float:
    """
    Truncated |||f|||_k from one orbit f(T^l x), l = 0..L-1.

    |||f|||_1² is the squared orbit mean; level k+1 averages level k of
    conj(f)·f∘T^l over 1 ≤ l ≤ H. Every level uses the orbit window still
    available after the shifts. Cost grows like L·H^{k-1}.

    Raises:
        PreconditionError: If k < 1, H < 1, H > L/4 or the shifts exhaust the orbit
    """
    values = _as_values(orbit)
    L = values.size
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if H < 1 or 4 * H > L:
        raise PreconditionError(f"H must be in [1, L/4] = [1, {L // 4}], got {H}")
    if (k - 1) * H >= L:
        raise PreconditionError(f"(k-1)*H must be < L = {L}, got {(k - 1) * H}")
    raw = _ghk_raw(values, k, H)
    if raw < 0:
        logger.warning(f"Truncated GHK value {raw:.3g} is negative; clamped at 0")
        raw = 0.0
    return float(raw ** (1.0 / (1 << k)))
