# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Weighted Ergodic Averages

Weighted bilinear and multilinear averages along orbits, their decay
profiles over lacunary time scales, maximal functions in the shift model,
weak-type statistics, and the empirical Wiener-Wintner and
Kátai-Bourgain-Sarnak-Ziegler criteria.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from ergolab.core.arith_seq import WeightSequence, compensated_sum, primes_up_to
from ergolab.core.constants import DEFAULT_OVERSAMPLE, DEFAULT_RHO, MIN_OVERSAMPLE, PRIME_PAIR_LIMIT
from ergolab.core.dynamics import DynSystem, Observable, Point, sample_observable
from ergolab.core.errors import PreconditionError, SequenceRangeError, ShapeError
from ergolab.core.gowers import gowers_norm_interval
from ergolab.core.pool import ordered_map
from ergolab.core.report import ExperimentReport, loglog_slope
from ergolab.core.spectra import SupEstimate, TrigPolynomial, sup_norm

logger = logging.getLogger(__name__)

SequenceLike = Union[WeightSequence, Sequence[complex], np.ndarray]

BOREL_CANTELLI_THRESHOLD_EXPONENT = 1e-9
"""Exponent of the per-δ threshold δ^{1/10^9} on the mean maximal value"""

BOREL_CANTELLI_EXCEEDANCE_EXPONENT = 1e-6
"""Exponent of the exceedance scale δ^{1/10^6}"""


@dataclass(frozen=True)
class TimeScale:
    """
    The lacunary times I_ρ = {⌊ρⁿ⌋ : n ≥ 0} restricted to [N0, Nbar].

    Nbar = None leaves the scale unbounded; `times` then needs a limit.
    """

    rho: float = DEFAULT_RHO
    N0: int = 1
    Nbar: Optional[int] = None

    def __post_init__(self) -> None:
        if self.rho <= 1.0:
            raise PreconditionError(f"rho must be > 1, got {self.rho}")
        if self.N0 < 1:
            raise PreconditionError(f"N0 must be >= 1, got {self.N0}")
        if self.Nbar is not None and self.Nbar < self.N0:
            raise PreconditionError(f"Nbar must be >= N0 = {self.N0}, got {self.Nbar}")

    def times(self, limit: Optional[int] = None) -> List[int]:
        """Sorted, deduplicated times up to min(Nbar, limit)."""
        upper = self.Nbar if limit is None else (limit if self.Nbar is None else min(self.Nbar, limit))
        if upper is None:
            raise PreconditionError("An unbounded time scale needs a limit")
        out = []
        n = 0
        while True:
            value = int(math.floor(self.rho**n))
            if value > upper:
                break
            if value >= self.N0 and (not out or value != out[-1]):
                out.append(value)
            n += 1
        return out


def _values(seq: SequenceLike) -> np.ndarray:
    if isinstance(seq, WeightSequence):
        return seq.values
    return np.asarray(seq, dtype=np.complex128)


def _scale_times(scale: TimeScale, nu: WeightSequence) -> List[int]:
    """Times of the scale, which must lie inside the weight's stored range."""
    times = scale.times() if scale.Nbar is not None else scale.times(limit=nu.stop)
    if times and times[-1] > nu.stop:
        raise SequenceRangeError(f"Weight ends at {nu.stop}, below the largest time {times[-1]}")
    return times


# =============================================================================
# Bilinear Averages
# =============================================================================


def weighted_bilinear(nu: WeightSequence, F: SequenceLike, G: SequenceLike, N: int) -> complex:
    """
    A_N = (1/N)Σ_{n=1}^N ν(n)F(n)G(n), F and G given as F(1..N).

    Raises:
        ShapeError: If F or G does not have exactly N entries
    """
    return weighted_multilinear(nu, [F, G], N)


def weighted_multilinear(nu: WeightSequence, samples: Sequence[SequenceLike], N: int) -> complex:
    """(1/N)Σ_{n=1}^N ν(n)Π_i F_i(n) for any number of factors."""
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    terms = np.array(nu.segment(1, N), dtype=np.complex128)
    for index, sample in enumerate(samples):
        values = _values(sample)
        if values.size != N:
            raise ShapeError(f"Factor {index} has {values.size} values, expected N = {N}")
        terms = terms * values
    return compensated_sum(terms) / N


def orbit_factors(
    system: DynSystem, x0: Point, f: Observable, g: Observable, a: int, b: int, N: int
):
    """(f(T^{an}x0), g(T^{bn}x0)) for n = 1..N."""
    F = sample_observable(system, f, x0, a, N + 1)[1:]
    G = sample_observable(system, g, x0, b, N + 1)[1:]
    return F, G


def dynamical_bilinear(
    nu: WeightSequence,
    system: DynSystem,
    x0: Point,
    f: Observable,
    g: Observable,
    a: int,
    b: int,
    N: int,
) -> complex:
    """(1/N)Σ ν(n)f(T^{an}x0)g(T^{bn}x0)."""
    F, G = orbit_factors(system, x0, f, g, a, b, N)
    return weighted_bilinear(nu, F, G, N)


def _prefix_averages(terms: np.ndarray, times: Sequence[int]) -> np.ndarray:
    """|(1/N)Σ_{n≤N} terms| for each N in times."""
    return np.asarray([abs(compensated_sum(terms[:N])) / N for N in times])


def decay_profile(
    nu: WeightSequence,
    system: DynSystem,
    x0_list: Sequence[Point],
    f: Observable,
    g: Observable,
    a: int,
    b: int,
    scale: TimeScale,
) -> ExperimentReport:
    """
    |A_N(x0)| for every starting point and every N in the time scale.

    The summary holds the per-N median and max over starting points and the
    log-log slope of the median.

    Raises:
        SequenceRangeError: If ν is shorter than the largest time
    """
    times = _scale_times(scale, nu)
    report = ExperimentReport(
        "decay_profile",
        columns=["x_index", "N", "abs_value"],
        header={
            "weight": nu.kind.value,
            "seed": nu.seed,
            "system": system.kind.value,
            "a": a,
            "b": b,
            "rho": scale.rho,
            "N0": scale.N0,
            "Nbar": scale.Nbar,
        },
    )
    if not times:
        return report
    N_max = times[-1]
    weights = nu.segment(1, N_max)

    def profile(x0: Point) -> np.ndarray:
        F, G = orbit_factors(system, x0, f, g, a, b, N_max)
        return _prefix_averages(weights * F * G, times)

    profiles = ordered_map(profile, list(x0_list))
    for index, values in enumerate(profiles):
        for N, value in zip(times, values.tolist()):
            report.add_row(x_index=index, N=N, abs_value=value)
    matrix = np.vstack(profiles) if profiles else np.zeros((0, len(times)))
    medians = np.median(matrix, axis=0) if profiles else np.zeros(len(times))
    maxima = np.max(matrix, axis=0) if profiles else np.zeros(len(times))
    report.summary["median"] = {str(N): float(v) for N, v in zip(times, medians)}
    report.summary["max"] = {str(N): float(v) for N, v in zip(times, maxima)}
    report.summary["slope"] = loglog_slope(times, medians)
    logger.info(f"decay profile over {len(x0_list)} points, {len(times)} times: slope {report.summary['slope']:.4f}")
    return report


# =============================================================================
# Maximal Functions
# =============================================================================


def _padded_take(values: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """values[indices], reading 0 outside [0, len)."""
    out = np.zeros(indices.size, dtype=np.complex128)
    inside = (indices >= 0) & (indices < values.size)
    out[inside] = values[indices[inside]]
    return out


def shift_bilinear(
    nu: WeightSequence, phi: SequenceLike, psi: SequenceLike, j: int, a: int, b: int, N: int
) -> complex:
    """(1/N)Σ ν(n)φ(j+an)ψ(j+bn) with φ, ψ read as zero outside their window."""
    n = np.arange(1, N + 1, dtype=np.int64)
    return weighted_bilinear(
        nu, _padded_take(_values(phi), j + a * n), _padded_take(_values(psi), j + b * n), N
    )


@dataclass
class MaximalReport:
    """Maximal values m(j) over a time scale with the weak-type statistic."""

    values: np.ndarray  # m(j), j = 0..J
    argmax_N: np.ndarray  # first N attaining m(j)
    times: List[int]
    weak_type: float  # sup_λ λ·|{j : m(j) > λ}|
    constant: float  # weak_type / (‖φ‖₂‖ψ‖₂)

    @property
    def J(self) -> int:
        return int(self.values.size - 1)

    def to_report(self) -> ExperimentReport:
        report = ExperimentReport(
            "maximal_function", columns=["j", "maximal", "argmax_N"], header={"times": self.times}
        )
        for j, (m, N) in enumerate(zip(self.values.tolist(), self.argmax_N.tolist())):
            report.add_row(j=j, maximal=m, argmax_N=N)
        report.summary["weak_type"] = self.weak_type
        report.summary["constant"] = self.constant
        return report


def weak_type_statistic(values: np.ndarray) -> float:
    """sup_λ λ·|{m > λ}| = max_k k·m_(k) over the decreasing rearrangement."""
    if values.size == 0:
        return 0.0
    ordered = np.sort(values)[::-1]
    return float(np.max(ordered * np.arange(1, ordered.size + 1)))


def maximal_function(
    nu: WeightSequence,
    phi: SequenceLike,
    psi: SequenceLike,
    scale: TimeScale,
    a: int = 1,
    b: int = -1,
) -> MaximalReport:
    """
    m(j) = max_{N ∈ scale} |(1/N)Σ_{n≤N} ν(n)φ(j+an)ψ(j+bn)| for j ∈ [0, J].

    φ and ψ are given on [0, J]; reads outside the window are 0. Each
    average is the same compensated sum used by `shift_bilinear`.
    """
    phi_v, psi_v = _values(phi), _values(psi)
    if phi_v.size != psi_v.size:
        raise ShapeError(f"phi and psi windows differ: {phi_v.size} vs {psi_v.size}")
    times = _scale_times(scale, nu)
    if not times:
        raise PreconditionError("Time scale has no times within the weight's range")
    N_max = times[-1]
    weights = nu.segment(1, N_max)
    n = np.arange(1, N_max + 1, dtype=np.int64)

    def at(j: int):
        terms = weights * _padded_take(phi_v, j + a * n) * _padded_take(psi_v, j + b * n)
        averages = _prefix_averages(terms, times)
        k = int(np.argmax(averages))
        return float(averages[k]), times[k]

    results = ordered_map(at, range(phi_v.size))
    values = np.asarray([r[0] for r in results])
    argmax = np.asarray([r[1] for r in results], dtype=np.int64)
    weak = weak_type_statistic(values)
    norms = float(np.linalg.norm(phi_v) * np.linalg.norm(psi_v))
    return MaximalReport(
        values=values,
        argmax_N=argmax,
        times=times,
        weak_type=weak,
        constant=weak / norms if norms > 0 else 0.0,
    )


# =============================================================================
# Wiener-Wintner and KBSZ Criteria
# =============================================================================


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(np.any(primes_up_to(p) == p))


def _sup_average(samples: np.ndarray, oversample: int = DEFAULT_OVERSAMPLE) -> SupEstimate:
    """sup_θ |(1/N)Σ_{n=1}^N s(n)e^{2πinθ}|."""
    N = samples.size
    return sup_norm(TrigPolynomial.from_interval(1, samples / N), oversample)


def _orbit_slice(orbit: np.ndarray, step: int, N: int, label: str) -> np.ndarray:
    if step < 0:
        raise PreconditionError(f"{label} must be >= 0 for a forward orbit, got {step}")
    if step * N >= orbit.size:
        raise SequenceRangeError(f"Orbit of length {orbit.size} does not cover {label}*N = {step * N}")
    return orbit[step * np.arange(1, N + 1)]


def wwdkbsz_statistic(
    orbit_f: SequenceLike,
    p: int,
    q: int,
    N: int,
    conjugate: bool = False,
    oversample: int = DEFAULT_OVERSAMPLE,
) -> float:
    """
    sup_t |(1/N)Σ_{n≤N} e^{2πin(p-q)t} f(T^{pn}x)f(T^{qn}x)|.

    t ↦ (p-q)t covers the circle, so the sup equals that of the unmodulated
    frequencies n. With conjugate=True the second factor is conjugated.

    Raises:
        PreconditionError: If p == q or either is not prime
    """
    if p == q:
        raise PreconditionError(f"p and q must differ, got p = q = {p}")
    for label, value in (("p", p), ("q", q)):
        if not _is_prime(value):
            raise PreconditionError(f"{label} must be prime, got {value}")
    orbit = _values(orbit_f)
    first = _orbit_slice(orbit, p, N, "p")
    second = _orbit_slice(orbit, q, N, "q")
    if conjugate:
        second = np.conj(second)
    return _sup_average(first * second, oversample).value


def kbsz_bound(eps: float) -> float:
    """2·√(ε·log(1/ε))."""
    return 2.0 * math.sqrt(eps * math.log(1.0 / eps))


def wwdkbsz_criterion_report(
    orbit_f: SequenceLike,
    nu: WeightSequence,
    eps: float,
    N: int,
    conjugate: bool = False,
) -> ExperimentReport:
    """
    The criterion as an implication on finite data.

    Premise: every pair statistic with primes p < q < e^{1/ε} is below ε.
    Conclusion: sup_t |(1/N)Σ ν(n)f(T^n x)e^{2πint}| < 2√(ε log 1/ε).
    """
    if not 0.0 < eps < 1.0:
        raise PreconditionError(f"eps must be in (0, 1), got {eps}")
    if 1.0 / eps > math.log(PRIME_PAIR_LIMIT):
        raise PreconditionError(
            f"eps must be >= 1/log({PRIME_PAIR_LIMIT}) = {1.0 / math.log(PRIME_PAIR_LIMIT):.6g}, got {eps}"
        )
    if not nu.is_multiplicative:
        logger.warning(f"Weight {nu.kind.value} is not marked multiplicative; criterion may not apply")
    limit = math.exp(1.0 / eps)
    primes = [int(p) for p in primes_up_to(int(math.ceil(limit))) if p < limit]
    orbit = _values(orbit_f)
    if primes:
        _orbit_slice(orbit, primes[-1], N, "q")
    report = ExperimentReport(
        "wwdkbsz_criterion",
        columns=["p", "q", "statistic"],
        header={"eps": eps, "N": N, "weight": nu.kind.value, "conjugate": conjugate},
    )
    largest = 0.0
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            value = wwdkbsz_statistic(orbit_f, p, q, N, conjugate)
            largest = max(largest, value)
            report.add_row(p=p, q=q, statistic=value)
    conclusion = _sup_average(nu.segment(1, N) * _orbit_slice(orbit, 1, N, "1")).value
    premise = largest < eps
    bound = kbsz_bound(eps)
    report.summary["max_statistic"] = largest
    report.summary["premise"] = premise
    report.summary["conclusion_value"] = conclusion
    report.summary["bound"] = bound
    report.summary["pass"] = (not premise) or conclusion < bound
    return report


def _uniform_estimate(
    orbit_f: SequenceLike, orbit_g: SequenceLike, a: int, b: int, N: int, z_grid: Optional[int]
) -> SupEstimate:
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    samples = _orbit_slice(_values(orbit_f), a, N, "a") * _orbit_slice(_values(orbit_g), b, N, "b")
    center = (1 + N) // 2
    width = 2 * max(center - 1, N - center) + 1
    oversample = DEFAULT_OVERSAMPLE if z_grid is None else max(MIN_OVERSAMPLE, -(-z_grid // width))
    return _sup_average(samples, oversample)


def ww_uniform_average(
    orbit_f: SequenceLike,
    orbit_g: SequenceLike,
    a: int,
    b: int,
    N: int,
    z_grid: Optional[int] = None,
) -> float:
    """
    sup_{|z|=1} |(1/N)Σ_{n≤N} zⁿ f(T^{an}x)g(T^{bn}x)| from forward orbits.

    z_grid sets the minimum number of grid points on the circle (default about 8N).
    """
    return _uniform_estimate(orbit_f, orbit_g, a, b, N, z_grid).value


def ww_gowers_bound_report(orbit_f: SequenceLike, N: int, a: int = 1) -> ExperimentReport:
    """sup-over-z single average of f(T^{an}x) against ‖f(T^{a·}x)‖_{U²[N]}."""
    samples = _orbit_slice(_values(orbit_f), a, N, "a")
    estimate = _sup_average(samples)
    rhs = gowers_norm_interval(samples, 2).norm
    holds = estimate.value <= rhs + estimate.error_bound
    report = ExperimentReport("ww_gowers_bound", columns=["N", "lhs", "error_bound", "rhs", "holds"])
    report.add_row(N=N, lhs=estimate.value, error_bound=estimate.error_bound, rhs=rhs, holds=holds)
    report.summary["pass"] = holds
    return report


def decomposition_bound_check(
    nu: WeightSequence,
    F: SequenceLike,
    G: SequenceLike,
    F1: SequenceLike,
    G1: SequenceLike,
    N: int,
) -> ExperimentReport:
    """
    |A_N(F,G) − A_N(F1,G1)| against the termwise split
    (1/N)Σ|F−F1||G| + (1/N)Σ|F1||G−G1| + (1/N)Σ|F−F1||G−G1|
    and its Cauchy-Schwarz form.
    """
    arrays = [_values(x) for x in (F, G, F1, G1)]
    if any(x.size != N for x in arrays):
        raise ShapeError(f"All factors must have N = {N} values")
    F, G, F1, G1 = arrays
    weights = np.abs(nu.segment(1, N))
    lhs = abs(weighted_bilinear(nu, F, G, N) - weighted_bilinear(nu, F1, G1, N))
    dF, dG = np.abs(F - F1), np.abs(G - G1)
    termwise = (
        math.fsum((weights * dF * np.abs(G)).tolist())
        + math.fsum((weights * np.abs(F1) * dG).tolist())
        + math.fsum((weights * dF * dG).tolist())
    ) / N

    def rms(x: np.ndarray) -> float:
        return float(np.sqrt(np.mean(np.abs(x) ** 2)))

    cauchy_schwarz = rms(dF) * rms(G) + rms(F1) * rms(dG) + rms(dF) * rms(dG)
    holds = lhs <= termwise + 1e-12 and termwise <= cauchy_schwarz + 1e-12
    report = ExperimentReport(
        "decomposition_bound", columns=["lhs", "termwise", "cauchy_schwarz", "holds"]
    )
    report.add_row(lhs=lhs, termwise=termwise, cauchy_schwarz=cauchy_schwarz, holds=holds)
    report.summary["pass"] = holds
    return report


# =============================================================================
# Dyadic δ Sweeps
# =============================================================================


@dataclass
class DeltaMaximal:
    """Maximal data at one δ: times N ∈ I_ρ with 1/δ < N ≤ N1."""

    delta: float
    maximal: MaximalReport


def dyadic_delta_sweep(
    nu: WeightSequence,
    phi: SequenceLike,
    psi: SequenceLike,
    deltas: Sequence[float],
    N1: int,
    a: int = 1,
    b: int = -1,
    rho: float = DEFAULT_RHO,
) -> List[DeltaMaximal]:
    """maximal_function for each δ over the times N ∈ I_ρ, N > 1/δ, N ≤ N1."""
    out = []
    for delta in sorted(deltas, reverse=True):
        if not 0.0 < delta < 1.0:
            raise PreconditionError(f"delta must be in (0, 1), got {delta}")
        N0 = int(math.floor(1.0 / delta)) + 1
        if N0 > N1:
            raise PreconditionError(f"N1 = {N1} must exceed 1/delta = {1.0 / delta}")
        maximal = maximal_function(nu, phi, psi, TimeScale(rho, N0, N1), a, b)
        logger.debug(f"delta={delta}: mean maximal {float(np.mean(maximal.values)):.6g}")
        out.append(DeltaMaximal(delta=delta, maximal=maximal))
    return out


def borel_cantelli_summary(sweep: Sequence[DeltaMaximal]) -> ExperimentReport:
    """
    Per δ: mean of m over the window, the threshold δ^{1/10^9}, and the
    fraction of j with m(j) above it; thresholds are reported, not asserted.
    """
    report = ExperimentReport(
        "borel_cantelli",
        columns=["delta", "mean", "threshold", "exceedance"],
    )
    constants = []
    for item in sorted(sweep, key=lambda s: s.delta, reverse=True):
        values = item.maximal.values
        threshold = item.delta**BOREL_CANTELLI_THRESHOLD_EXPONENT
        exceedance = float(np.mean(values > threshold)) if values.size else 0.0
        report.add_row(
            delta=item.delta, mean=float(np.mean(values)), threshold=threshold, exceedance=exceedance
        )
        constants.append(exceedance / item.delta**BOREL_CANTELLI_EXCEEDANCE_EXPONENT)
    means = report.column("mean") if report.rows else np.zeros(0)
    report.summary["mean_decreasing"] = bool(np.all(np.diff(means) <= 1e-12))
    report.summary["exceedance_constant"] = max(constants) if constants else 0.0
    return report
