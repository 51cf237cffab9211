# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Frequency Sets and Partition Lemmas

The dyadic partition of unity σ_δ, Marcinkiewicz-Zygmund nodes and
large-value sets, ε-neighbourhoods of finite frequency sets, and numerical
checks of the localization, λ-separated and entropy lemmas, together with
variation norms.

Arc integrals of trigonometric polynomials are evaluated in closed form from
the coefficient autocorrelation, so no quadrature error enters these checks.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ergolab.core.arith_seq import WeightSequence
from ergolab.core.constants import (
    DEFAULT_OVERSAMPLE,
    DEFAULT_SEED,
    DENSE_GRID_FACTOR,
    MZ_SEPARATION_CONSTANT,
    SIGMA_DELTA_MIN_EXPONENT,
    VARIATION_EXACT_MAX_LEN,
)
from ergolab.core.errors import PreconditionError, ShapeError
from ergolab.core.pool import ordered_map, trial_generators
from ergolab.core.report import ExperimentReport
from ergolab.core.spectra import TrigPolynomial, sample_grid, sup_norm

logger = logging.getLogger(__name__)

Arc = Tuple[float, float]
SequenceLike = Union[WeightSequence, Sequence[complex], np.ndarray]

LARGE_SIEVE_CONSTANT = 2.0
"""|E₀| ≤ 2δ^{-2} for 1/(J+1)-separated points with |P₀| > δJ (large sieve)"""


def _values(seq: SequenceLike) -> np.ndarray:
    if isinstance(seq, WeightSequence):
        return seq.values
    return np.asarray(seq, dtype=np.complex128)


# =============================================================================
# Frequency Sets
# =============================================================================


@dataclass(frozen=True, eq=False)
class FrequencySet:
    """Distinct points of the torus [0,1), kept sorted."""

    points: np.ndarray

    def __post_init__(self) -> None:
        points = np.sort(np.mod(np.asarray(self.points, dtype=float).ravel(), 1.0))
        if points.size > 1 and np.any(np.diff(points) <= 0):
            raise ShapeError("Frequency set points must be pairwise distinct")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def min_gap(self) -> float:
        """Smallest circular distance between distinct points (1.0 for a single point)."""
        if self.points.size < 2:
            return 1.0
        gaps = np.diff(self.points)
        wrap = 1.0 - self.points[-1] + self.points[0]
        return float(min(gaps.min(), wrap))

    def distance_to(self, theta: np.ndarray) -> np.ndarray:
        """Circular distance from each θ to the nearest point."""
        theta = np.mod(np.asarray(theta, dtype=float), 1.0)
        if self.points.size == 0:
            return np.full(theta.shape, np.inf)
        extended = np.concatenate([self.points - 1.0, self.points, self.points + 1.0])
        index = np.searchsorted(extended, theta)
        left = np.abs(theta - extended[np.clip(index - 1, 0, extended.size - 1)])
        right = np.abs(extended[np.clip(index, 0, extended.size - 1)] - theta)
        return np.minimum(left, right)

    def neighborhood_arcs(self, eps: float) -> List[Arc]:
        """
        Merged open arcs of radius eps around the points.

        Arcs are returned as (a, b) with b - a their length; a may be negative
        or b exceed 1 for arcs crossing 0. A full cover is [(0.0, 1.0)].
        """
        if eps <= 0:
            raise PreconditionError(f"eps must be > 0, got {eps}")
        if self.points.size == 0:
            return []
        if eps >= 0.5:
            return [(0.0, 1.0)]
        arcs: List[List[float]] = []
        for p in self.points.tolist():
            a, b = p - eps, p + eps
            if arcs and a <= arcs[-1][1]:
                arcs[-1][1] = max(arcs[-1][1], b)
            else:
                arcs.append([a, b])
        if len(arcs) > 1 and arcs[-1][1] - 1.0 >= arcs[0][0]:
            last = arcs.pop()
            arcs[0] = [last[0] - 1.0, max(arcs[0][1], last[1] - 1.0)]
        if sum(b - a for a, b in arcs) >= 1.0:
            return [(0.0, 1.0)]
        return [(a, b) for a, b in arcs]

    def __repr__(self) -> str:
        return f"FrequencySet(size={len(self)}, min_gap={self.min_gap:.6g})"


def neighborhood_measure(E: FrequencySet, eps: float) -> float:
    """
    Lebesgue measure of E(ε), the union of open arcs of radius ε.

    Example:
        >>> neighborhood_measure(FrequencySet([0.0, 0.5]), 0.125)
        0.5
    """
    return float(min(1.0, math.fsum(b - a for a, b in E.neighborhood_arcs(eps))))


def _arc_transform(arcs: Sequence[Arc], k: np.ndarray) -> np.ndarray:
    """∫_A e^{2πikθ} dθ for the union A of disjoint arcs."""
    k = np.asarray(k, dtype=np.int64)
    out = np.zeros(k.shape, dtype=np.complex128)
    if not arcs:
        return out
    nonzero = k != 0
    kf = k[nonzero].astype(float)
    for a, b in arcs:
        out[~nonzero] += b - a
        out[nonzero] += (
            np.exp(2j * np.pi * np.mod(kf * b, 1.0)) - np.exp(2j * np.pi * np.mod(kf * a, 1.0))
        ) / (2j * np.pi * kf)
    return out


def arc_energy(P: TrigPolynomial, arcs: Sequence[Arc]) -> float:
    """∫_A |P|² = Σ_k r(k)·∫_A e^{2πikθ} with r the coefficient autocorrelation."""
    if P.is_empty or not arcs:
        return 0.0
    _, c = P.dense()
    r = np.convolve(c, np.conj(c[::-1]))
    k = np.arange(-(c.size - 1), c.size, dtype=np.int64)
    return float(np.real(np.sum(r * _arc_transform(arcs, k))))


# =============================================================================
# Dyadic Partition of Unity
# =============================================================================


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0)


def _check_dyadic(delta: float) -> None:
    mantissa, _ = math.frexp(delta)
    if not 0.0 < delta < 1.0 or mantissa != 0.5:
        raise PreconditionError(f"delta must be a dyadic 2^-k in (0, 1), got {delta}")


def theta_ramp(delta: float, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """θ(δ, t): 0 for t ≤ δ, 1 for t ≥ 2δ, C² quintic transition in between."""
    value = _smoothstep((np.asarray(t, dtype=float) - delta) / delta)
    return float(value) if np.ndim(value) == 0 else value


def sigma_delta(delta: float, t: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    σ_δ(t) = θ(δ,t) − θ(2δ,t), supported in (δ, 4δ).

    Raises:
        PreconditionError: If δ is not a dyadic 2^-k in (0, 1)
    """
    _check_dyadic(delta)
    value = np.asarray(theta_ramp(delta, t)) - np.asarray(theta_ramp(2.0 * delta, t))
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class BumpPartition:
    """σ_δ for dyadic δ in [delta_min, delta_max]; they sum to 1 on [2δ_min, 2δ_max]."""

    delta_min: float = 2.0**-SIGMA_DELTA_MIN_EXPONENT
    delta_max: float = 0.5

    def __post_init__(self) -> None:
        _check_dyadic(self.delta_min)
        _check_dyadic(self.delta_max)
        if self.delta_min > self.delta_max:
            raise PreconditionError(f"delta_min {self.delta_min} exceeds delta_max {self.delta_max}")

    def deltas(self) -> List[float]:
        out = []
        delta = self.delta_max
        while delta >= self.delta_min:
            out.append(delta)
            delta /= 2.0
        return out

    @property
    def window(self) -> Tuple[float, float]:
        return 2.0 * self.delta_min, 2.0 * self.delta_max

    def total(self, t: Union[float, np.ndarray]) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.sum([np.asarray(sigma_delta(d, t)) for d in self.deltas()], axis=0)


def partition_of_unity_report(samples: int = 1000, seed: int = DEFAULT_SEED) -> ExperimentReport:
    """Max |Σ_δ σ_δ(t) − 1| over random t in the telescoping window."""
    partition = BumpPartition()
    lo, hi = partition.window
    rng = np.random.default_rng(seed)
    t = lo + (hi - lo) * (1.0 - rng.random(samples))
    deviation = float(np.max(np.abs(partition.total(t) - 1.0)))
    report = ExperimentReport(
        "partition_of_unity",
        columns=["delta_min", "delta_max", "samples", "max_deviation"],
        header={"seed": seed},
    )
    report.add_row(
        delta_min=partition.delta_min, delta_max=partition.delta_max, samples=samples, max_deviation=deviation
    )
    report.summary["pass"] = deviation <= 1e-12
    return report


# =============================================================================
# Marcinkiewicz-Zygmund Families
# =============================================================================


def mz_nodes(J: int) -> FrequencySet:
    """The J+1 equispaced nodes k/(J+1)."""
    if J < 1:
        raise PreconditionError(f"J must be >= 1, got {J}")
    return FrequencySet(np.arange(J + 1) / (J + 1))


def mz_inequality_report(P: TrigPolynomial, J: int) -> ExperimentReport:
    """
    (1/(J+1))Σ_k |P(k/(J+1))|² against ‖P‖₂².

    The two agree exactly when the support of P spans at most J frequencies
    (in particular for deg P ≤ J/2).
    """
    if P.hi - P.lo > J:
        raise PreconditionError(f"Support width {P.hi - P.lo} must be <= J = {J}")
    values = sample_grid(P, J + 1)
    lhs = float(np.mean(np.abs(values) ** 2))
    rhs = P.l2_norm() ** 2
    report = ExperimentReport("mz_inequality", columns=["J", "node_mean", "l2_squared", "difference"])
    report.add_row(J=J, node_mean=lhs, l2_squared=rhs, difference=abs(lhs - rhs))
    report.summary["pass"] = abs(lhs - rhs) <= 1e-10 * max(1.0, rhs)
    return report


def _large_value_data(psi: SequenceLike, delta: float):
    values = _values(psi)
    J = values.size
    if J < 1:
        raise PreconditionError("psi must have at least one value")
    if not 0.0 < delta < 1.0:
        raise PreconditionError(f"delta must be in (0, 1), got {delta}")
    P0 = TrigPolynomial.from_interval(1, values)
    dense_size = DENSE_GRID_FACTOR * J
    dense = np.abs(sample_grid(P0, dense_size))
    return values, J, P0, dense, dense_size


def _node_step(J: int) -> int:
    """Smallest cyclic node-index distance that is at least c/J."""
    return max(1, math.ceil(MZ_SEPARATION_CONSTANT * (J + 1) / J - 1e-12))


def large_value_set(psi: SequenceLike, delta: float) -> FrequencySet:
    """
    E₀ for P₀(λ) = Σ_{n=1}^J ψ(n)e^{2πinλ} at level δJ.

    A maximal subset of the MZ nodes k/(J+1) with |P₀| > δJ and pairwise
    distance at least c/J. Nodes are taken greedily, largest |P₀| first, ties
    to the smaller index.

    Raises:
        PreconditionError: If δ is outside (0, 1)
    """
    _, J, P0, _, _ = _large_value_data(psi, delta)
    nodes = np.abs(sample_grid(P0, J + 1))
    candidates = np.nonzero(nodes > delta * J)[0]
    # heights equal to 12 digits count as ties
    heights = np.round(nodes[candidates] / J, 12)
    order = candidates[np.lexsort((candidates, -heights))]
    step = _node_step(J)
    kept: List[int] = []
    for k in order.tolist():
        if all(min(abs(k - j), J + 1 - abs(k - j)) >= step for j in kept):
            kept.append(k)
    logger.debug(f"large_value_set J={J} delta={delta}: {len(kept)} of {candidates.size} nodes")
    return FrequencySet(np.asarray(sorted(kept), dtype=float) / (J + 1))


def bmz_report(psi: SequenceLike, delta: float, B2: float = LARGE_SIEVE_CONSTANT) -> ExperimentReport:
    """
    The three large-value-set properties of E₀:
    separation ≥ c/J, |E₀| ≤ B₂δ^{-2}, and every dense-grid point with
    |P₀| > δJ lying within c/J of E₀.

    E₀ holds nodes only, so a narrow excursion above δJ between two nodes
    that both stay below δJ is left uncovered; the cover row and the
    `uncovered` summary count such dense-grid points.
    """
    _, J, _, dense, dense_size = _large_value_data(psi, delta)
    E0 = large_value_set(psi, delta)
    radius = MZ_SEPARATION_CONSTANT / J
    above = np.nonzero(dense > delta * J)[0] / dense_size
    distances = E0.distance_to(above)
    covered_distance = float(np.max(distances)) if above.size else 0.0
    rows = [
        ("separation", E0.min_gap, radius, len(E0) < 2 or E0.min_gap >= radius * (1 - 1e-12)),
        ("cardinality", float(len(E0)), B2 / delta**2, len(E0) <= B2 / delta**2),
        ("cover", covered_distance, radius, covered_distance < radius),
    ]
    report = ExperimentReport(
        "bmz",
        columns=["clause", "value", "bound", "holds"],
        header={"J": J, "delta": delta, "B2": B2, "dense_grid": dense_size},
    )
    for clause, value, bound, holds in rows:
        report.add_row(clause=clause, value=value, bound=bound, holds=bool(holds))
    report.summary["size"] = len(E0)
    report.summary["uncovered"] = int(np.count_nonzero(distances >= radius))
    report.summary["pass"] = all(bool(r[3]) for r in rows)
    return report


# =============================================================================
# Localization Lemma
# =============================================================================


def _check_partition(P: TrigPolynomial, partition: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    cells = sorted((int(a), int(b)) for a, b in partition)
    if not cells:
        raise ShapeError("Partition must have at least one cell")
    expected = P.lo
    for a, b in cells:
        if b < a:
            raise ShapeError(f"Cell [{a}, {b}] is empty")
        if a != expected:
            kind = "gap" if a > expected else "overlap"
            raise ShapeError(f"Partition has a {kind} at {min(a, expected)}")
        expected = b + 1
    if expected != P.hi + 1:
        raise ShapeError(f"Partition ends at {expected - 1}, interval ends at {P.hi}")
    return cells


def _restrict(P: TrigPolynomial, cell: Tuple[int, int]) -> TrigPolynomial:
    lo, dense = P.dense()
    return TrigPolynomial.from_interval(cell[0], dense[cell[0] - lo : cell[1] - lo + 1])


def lp_lemma_check(
    P: TrigPolynomial,
    partition: Sequence[Tuple[int, int]],
    E: FrequencySet,
    R: float,
    D: float,
    localization: Optional[float] = None,
) -> ExperimentReport:
    """
    ∫_{E(1/|I|)}|P|² against Σ_α ∫_{E(R/|I_α|)}|P_α|².

    excess = max(0, lhs − rhs_main) is compared with the budget
    R^{-D}|E||I| + R^{-1/4}|I|. With `localization` = ε the left side is
    taken on E(R/|I|) and every cell must be shorter than ε|I|.

    Args:
        P: Polynomial on the interval I = [lo, hi], coefficients ≤ 1 in modulus
        partition: Inclusive cells (a, b) covering I disjointly
        E: Frequency set
        R: Scale, > 1
        D: Budget exponent
        localization: ε in (0, 1/10) for the localized variant

    Raises:
        ShapeError: If the partition has a gap or an overlap
        PreconditionError: If R <= 1, a coefficient exceeds 1, or a cell is too long
    """
    if R <= 1.0:
        raise PreconditionError(f"R must be > 1, got {R}")
    if np.any(np.abs(P.coeffs) > 1.0 + 1e-12):
        raise PreconditionError("Coefficients must be bounded by 1")
    cells = _check_partition(P, partition)
    length = P.hi - P.lo + 1
    if localization is not None:
        if not 0.0 < localization < 0.1:
            raise PreconditionError(f"localization must be in (0, 1/10), got {localization}")
        longest = max(b - a + 1 for a, b in cells)
        if longest >= localization * length:
            raise PreconditionError(f"Cells must be shorter than {localization * length}, got {longest}")
        lhs = arc_energy(P, E.neighborhood_arcs(R / length))
    else:
        lhs = arc_energy(P, E.neighborhood_arcs(1.0 / length))
    rhs_main = math.fsum(
        arc_energy(_restrict(P, cell), E.neighborhood_arcs(R / (cell[1] - cell[0] + 1))) for cell in cells
    )
    excess = lhs - rhs_main
    if excess <= 1e-12 * max(1.0, lhs):
        excess = 0.0
    budget = R ** (-D) * len(E) * length + R ** (-0.25) * length
    report = ExperimentReport(
        "lp_lemma",
        columns=["lhs", "rhs_main", "excess", "budget", "constant"],
        header={"R": R, "D": D, "cells": len(cells), "points": len(E), "localization": localization},
    )
    report.add_row(lhs=lhs, rhs_main=rhs_main, excess=excess, budget=budget, constant=excess / budget)
    return report


# =============================================================================
# λ-Separated Sets
# =============================================================================


def _arc_family_transform(E: FrequencySet, width: float, k: np.ndarray) -> np.ndarray:
    """Σ_r ∫_{λ_r-w}^{λ_r+w} e^{2πikα} dα = Σ_r e^{2πikλ_r}·sin(2πkw)/(πk)."""
    kf = k.astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = np.where(k == 0, 2.0 * width, np.sin(2.0 * np.pi * kf * width) / (np.pi * kf))
    phases = np.exp(2j * np.pi * np.mod(np.outer(kf, E.points), 1.0)).sum(axis=1)
    return phases * kernel


def lambda_separated_check(
    E: FrequencySet,
    f_hat: TrigPolynomial,
    s: int,
    j_max: int,
    window: Optional[int] = None,
) -> ExperimentReport:
    """
    ‖sup_{s<j≤j_max} |∫_{V_j} e^{2πinα}f(α)dα|‖_{ℓ²(n)} against (log K)²‖f‖₂.

    V_j is the union of arcs of radius 2^{-j} around the K points of E;
    n ranges over [-window, window]. The normalizer uses max(1, log K)² so a
    single point is compared with ‖f‖₂ itself.

    Raises:
        PreconditionError: If min_gap < 2^{-(s-1)} or j_max <= s
    """
    if s < 1:
        raise PreconditionError(f"s must be >= 1, got {s}")
    if j_max <= s:
        raise PreconditionError(f"j_max must be > s = {s}, got {j_max}")
    if len(E) == 0:
        raise PreconditionError("Frequency set must be non-empty")
    if E.min_gap < 2.0 ** (-(s - 1)):
        raise PreconditionError(f"min_gap {E.min_gap} is below 2^-(s-1) = {2.0 ** (-(s - 1))}")
    K = len(E)
    W = window if window is not None else (1 << (j_max + 2)) + (0 if f_hat.is_empty else f_hat.degree)
    norm = 0.0 if f_hat.is_empty else f_hat.l2_norm()
    if f_hat.is_empty or f_hat.is_zero:
        sups = np.zeros(2 * W + 1)
    else:
        lo, c = f_hat.dense()
        hi = lo + c.size - 1
        k = np.arange(lo - W, hi + W + 1, dtype=np.int64)
        sups = np.zeros(2 * W + 1)
        for j in range(s + 1, j_max + 1):
            G = _arc_family_transform(E, 2.0 ** (-j), k)
            # I_j(n) = Σ_m c_m G(n+m), n = -W..W
            I = np.correlate(G, np.conj(c), mode="valid")
            sups = np.maximum(sups, np.abs(I))
    lhs = float(np.linalg.norm(sups))
    normalizer = max(1.0, math.log(K)) ** 2
    rhs = normalizer * norm
    report = ExperimentReport(
        "lambda_separated",
        columns=["K", "lhs", "rhs", "constant"],
        header={"s": s, "j_max": j_max, "window": W},
    )
    report.add_row(K=K, lhs=lhs, rhs=rhs, constant=lhs / rhs if rhs > 0 else 0.0)
    return report


# =============================================================================
# Entropy Numbers
# =============================================================================


def entropy_numbers(points: np.ndarray, t: float) -> int:
    """
    Greedy covering number N(A, t).

    Farthest-point traversal from the first point: centres are added in
    order of decreasing distance to the current centres (ties to the smaller
    index) until every point lies within t. The count is monotone in t and
    bounded by the packing number at t.

    Example:
        >>> entropy_numbers(np.array([[0.0], [3.0]]), 1.0)
        2
    """
    if t <= 0:
        raise PreconditionError(f"t must be > 0, got {t}")
    A = np.asarray(points)
    if A.size == 0:
        return 0
    if A.ndim == 1:
        A = A[:, None]
    distance = np.linalg.norm(A - A[0], axis=1)
    count = 1
    while True:
        far = int(np.argmax(distance))
        if distance[far] <= t:
            return count
        count += 1
        distance = np.minimum(distance, np.linalg.norm(A - A[far], axis=1))


def _dyadic_scales(tau: float, J: int) -> List[int]:
    scales = []
    N = 1
    while N <= J:
        if N > 1.0 / tau:
            scales.append(N)
        N *= 2
    return scales


def entropy_gamma_sets(f: SequenceLike, lambdas: Sequence[float], tau: float) -> np.ndarray:
    """
    Γ_x for x = 0..J-1 as an array of shape (J, scales, K).

    v_N(x)_k = (1/N)Σ_{u=0}^{N} f(x−u)e^{2πiuλ_k} over dyadic N with
    1/τ < N ≤ J; f reads 0 outside [0, J).
    """
    values = _values(f)
    J = values.size
    if not 0.0 < tau < 1.0:
        raise PreconditionError(f"tau must be in (0, 1), got {tau}")
    scales = _dyadic_scales(tau, J)
    if not scales:
        raise PreconditionError(f"No dyadic N with 1/tau < N <= J = {J}")
    lam = np.asarray(lambdas, dtype=float)
    y = np.arange(J, dtype=np.int64)
    # g_k(y) = f(y)e^{-2πiyλ_k}; prefix[k, i] = Σ_{y<i} g_k(y)
    twisted = values[None, :] * np.exp(-2j * np.pi * np.mod(np.outer(lam, y), 1.0))
    prefix = np.concatenate([np.zeros((lam.size, 1)), np.cumsum(twisted, axis=1)], axis=1)
    x = np.arange(J, dtype=np.int64)
    modulation = np.exp(2j * np.pi * np.mod(np.outer(x, lam), 1.0))
    out = np.zeros((J, len(scales), lam.size), dtype=np.complex128)
    for i, N in enumerate(scales):
        upper = prefix[:, x + 1]
        lower = prefix[:, np.maximum(x - N, 0)]
        out[:, i, :] = modulation * (upper - lower).T / N
    return out


def entropy_sweep(f: SequenceLike, lambdas: Sequence[float], tau: float, t: float) -> ExperimentReport:
    """
    N(Γ_x, t) for every x, with the normalized statistic
    Ĉ = t²·Σ_x (N(Γ_x,t) − 1)/‖f‖₂².
    """
    gammas = entropy_gamma_sets(f, lambdas, tau)
    counts = [entropy_numbers(gammas[x], t) for x in range(gammas.shape[0])]
    energy = float(np.sum(np.abs(_values(f)) ** 2))
    report = ExperimentReport(
        "entropy",
        columns=["x", "count"],
        header={"tau": tau, "t": t, "K": len(lambdas), "scales": gammas.shape[1]},
    )
    for x, count in enumerate(counts):
        report.add_row(x=x, count=count)
    excess = sum(c - 1 for c in counts)
    report.summary["mean_count"] = float(np.mean(counts))
    report.summary["constant"] = t * t * excess / energy if energy > 0 else 0.0
    return report


# =============================================================================
# Variation Norms
# =============================================================================


def variation_norm(a: Sequence[complex], s: float) -> float:
    """
    V^s norm: sup over increasing index chains of (Σ|a_{n_{k+1}} − a_{n_k}|^s)^{1/s}.

    Exact by dynamic programming over chain end points up to 4096 entries;
    longer inputs get a lower bound (the exact value on the leading block or
    the consecutive-difference sum, whichever is larger) and a warning.

    Example:
        >>> variation_norm([0, 1, 0, 1], 1)
        3.0
    """
    if s < 1:
        raise PreconditionError(f"s must be >= 1, got {s}")
    values = np.asarray(a, dtype=np.complex128)
    if values.size < 2:
        return 0.0
    if values.size > VARIATION_EXACT_MAX_LEN:
        logger.warning(
            f"variation_norm: length {values.size} above {VARIATION_EXACT_MAX_LEN}, returning a lower bound"
        )
        consecutive = float(np.sum(np.abs(np.diff(values)) ** s)) ** (1.0 / s)
        return max(consecutive, variation_norm(values[:VARIATION_EXACT_MAX_LEN], s))
    best = np.zeros(values.size)
    for j in range(1, values.size):
        best[j] = np.max(best[:j] + np.abs(values[j] - values[:j]) ** s)
    return float(np.max(best) ** (1.0 / s))


def variation_is_exact(length: int) -> bool:
    return length <= VARIATION_EXACT_MAX_LEN


# =============================================================================
# Uniformity Hypothesis
# =============================================================================


def c_delta_hypothesis(
    psi: SequenceLike,
    N0: int,
    delta: float,
    oversample: int = DEFAULT_OVERSAMPLE,
    samples: int = 32,
    seed: int = DEFAULT_SEED,
) -> ExperimentReport:
    """
    sup over sampled intervals I ⊂ [0, J], |I| > N0, of
    sup_θ |(1/|I|)Σ_{n∈I} e^{2πinθ}ψ(n)|, checked against δ.

    Interval lengths and starts are drawn from one seeded generator.
    """
    seq = psi if isinstance(psi, WeightSequence) else WeightSequence(_values(psi), start=0)
    J = seq.stop
    if N0 < 1 or N0 >= seq.length:
        raise PreconditionError(f"N0 must be in [1, {seq.length - 1}], got {N0}")
    rng = np.random.default_rng(seed)
    report = ExperimentReport(
        "c_delta_hypothesis",
        columns=["start", "length", "value", "error_bound"],
        header={"N0": N0, "delta": delta, "seed": seed},
    )
    for _ in range(samples):
        length = int(rng.integers(N0 + 1, seq.length + 1))
        start = int(rng.integers(seq.start, J - length + 2))
        window = seq.segment(start, start + length - 1)
        estimate = sup_norm(TrigPolynomial.from_interval(start, window / length), oversample)
        report.add_row(start=start, length=length, value=estimate.value, error_bound=estimate.error_bound)
    largest = float(np.max(report.column("value"))) if report.rows else 0.0
    report.summary["max_value"] = largest
    report.summary["pass"] = largest < delta
    return report


# =============================================================================
# Calibration Sweeps
# =============================================================================


def _steinhaus(rng: np.random.Generator, size: int) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random(size))


def calibrate_lp(trials: int = 200, seed: int = DEFAULT_SEED, localized: bool = False) -> float:
    """
    Max Ĉ of lp_lemma_check over random polynomials on |I| = 256 with 8
    random points, R = 16, D = 2; four equal cells, or 32 cells of 8 with
    ε = 1/16 for the localized variant.
    """
    length, cell = 256, (8 if localized else 64)
    partition = [(a, a + cell - 1) for a in range(0, length, cell)]

    def trial(rng: np.random.Generator) -> float:
        P = TrigPolynomial.from_interval(0, _steinhaus(rng, length))
        E = FrequencySet(rng.random(8))
        report = lp_lemma_check(P, partition, E, 16.0, 2.0, 1.0 / 16 if localized else None)
        return float(report.column("constant")[0])

    return max(ordered_map(trial, trial_generators(seed, trials)))


def calibrate_lambda(trials: int = 50, seed: int = DEFAULT_SEED) -> float:
    """Max Ĉ of lambda_separated_check for K = 8 equispaced points and random f of degree ≤ 32."""
    E = FrequencySet(np.arange(8) / 8.0)

    def trial(rng: np.random.Generator) -> float:
        f_hat = TrigPolynomial.from_interval(-32, _steinhaus(rng, 65))
        report = lambda_separated_check(E, f_hat, s=4, j_max=10)
        return float(report.column("constant")[0])

    return max(ordered_map(trial, trial_generators(seed, trials)))


def calibrate_entropy(trials: int = 20, seed: int = DEFAULT_SEED) -> float:
    """Max entropy statistic for random unimodular f on 256 points, 4 random λ, τ = 1/8, t = 1/4."""

    def trial(rng: np.random.Generator) -> float:
        f = _steinhaus(rng, 256)
        report = entropy_sweep(f, rng.random(4).tolist(), tau=0.125, t=0.25)
        return float(report.summary["constant"])

    return max(ordered_map(trial, trial_generators(seed, trials)))


def calibrate_bmz(trials: int = 100, seed: int = DEFAULT_SEED) -> float:
    """Max |E₀|·δ² for random 1-bounded ψ with J ∈ {128, 512} and δ ∈ {0.1, 0.2, 0.4}."""

    def trial(args: Tuple[int, np.random.Generator]) -> float:
        index, rng = args
        J = (128, 512)[index % 2]
        psi = _steinhaus(rng, J) * (rng.random(J) < 0.9)
        return max(len(large_value_set(psi, delta)) * delta**2 for delta in (0.1, 0.2, 0.4))

    return max(ordered_map(trial, list(enumerate(trial_generators(seed, trials)))))
