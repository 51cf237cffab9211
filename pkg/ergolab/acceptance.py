# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Acceptance Suite

Frozen empirical constants and the numbered acceptance criteria run by
`ergolab verify`. Every criterion is deterministic in the seed; the verdict
is one JSON document listing each criterion with its pass flag.
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ergolab import __version__
from ergolab.core.arith_seq import liouville_sieve, mobius_sieve, unit_weight
from ergolab.core.averages import (
    TimeScale,
    decay_profile,
    dynamical_bilinear,
    maximal_function,
    shift_bilinear,
)
from ergolab.core.constants import (
    DEFAULT_OVERSAMPLE,
    DEFAULT_SEED,
    FIXTURE_ABSOLUTE_SLACK,
    FIXTURE_GROWTH_TOLERANCE,
)
from ergolab.core.dynamics import DoublingPoint, DynSystem, Observable, calderon_transfer
from ergolab.core.errors import ConfigurationError, ErgolabError, FixtureError
from ergolab.core.gowers import (
    CyclicSequence,
    cbs_gowers_check,
    gowers_norm_cyclic,
    linear_phase_sup_bound,
    phase_invariance_check,
)
from ergolab.core.kernels import (
    calibrate_smooth_tail,
    fejer_coefficients,
    fejer_eval,
    fejer_mass,
    vdp_eval,
    vdp_fourier_check,
)
from ergolab.core.partition import (
    LARGE_SIEVE_CONSTANT,
    FrequencySet,
    bmz_report,
    calibrate_entropy,
    calibrate_lambda,
    calibrate_lp,
    entropy_numbers,
    lp_lemma_check,
)
from ergolab.core.pool import trial_generators
from ergolab.core.report import plain_value
from ergolab.core.spectra import TrigPolynomial, bw_inequality_report, power_sum_profile
from ergolab.core.storage import PathLike, ReportStore

logger = logging.getLogger(__name__)

PACKAGE_FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_KEYS = ("lemma", "params", "empirical_constant", "seed")
SMOOTH_TAIL_D = 2.0


# =============================================================================
# Fixtures
# =============================================================================


@dataclass(frozen=True)
class Calibration:
    """A seeded sweep that produces one empirical constant."""

    run: Callable[[int], float]
    params: Dict[str, Any]
    seeded: bool = True


CALIBRATIONS: Dict[str, Calibration] = {
    "lp": Calibration(
        lambda seed: calibrate_lp(200, seed),
        {"trials": 200, "length": 256, "cells": 4, "points": 8, "R": 16, "D": 2},
    ),
    "lp_eps": Calibration(
        lambda seed: calibrate_lp(200, seed, localized=True),
        {"trials": 200, "length": 256, "cells": 32, "points": 8, "R": 16, "D": 2, "localization": 0.0625},
    ),
    "lambda": Calibration(
        lambda seed: calibrate_lambda(50, seed),
        {"trials": 50, "K": 8, "degree": 32, "s": 4, "j_max": 10},
    ),
    "entropy": Calibration(
        lambda seed: calibrate_entropy(20, seed),
        {"trials": 20, "J": 256, "K": 4, "tau": 0.125, "t": 0.25},
    ),
    "smooth_tail": Calibration(
        lambda seed: calibrate_smooth_tail(SMOOTH_TAIL_D),
        {"D": SMOOTH_TAIL_D},
        seeded=False,
    ),
    "bmz": Calibration(
        lambda seed: LARGE_SIEVE_CONSTANT,
        {"source": "large sieve for 1/(J+1)-separated points"},
        seeded=False,
    ),
}


@dataclass(frozen=True)
class Fixture:
    """Frozen empirical constant of one lemma."""

    lemma: str
    params: Dict[str, Any]
    empirical_constant: float
    seed: Optional[int]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "lemma": self.lemma,
            "params": self.params,
            "empirical_constant": self.empirical_constant,
            "seed": self.seed,
        }

    def admits(self, value: float, tolerance: float = FIXTURE_GROWTH_TOLERANCE) -> bool:
        """value ≤ frozen·(1 + tolerance), with a small absolute slack for zero constants."""
        return value <= self.empirical_constant * (1.0 + tolerance) + FIXTURE_ABSOLUTE_SLACK


class FixtureStore:
    """
    Loads frozen constants, bootstrapping a missing one from its calibration.

    Args:
        directory: Fixture directory (default: fixtures shipped with the package)
        store: Storage used for reads and the exclusive bootstrap write
        bootstrap: Calibrate and freeze missing fixtures (default: True)
    """

    def __init__(
        self,
        directory: Optional[PathLike] = None,
        store: Optional[ReportStore] = None,
        bootstrap: bool = True,
    ):
        self.directory = Path(directory) if directory is not None else PACKAGE_FIXTURES
        self.store = store if store is not None else ReportStore()
        self.bootstrap = bootstrap

    def path(self, lemma: str) -> Path:
        return self.directory / f"{lemma}.json"

    def load(self, lemma: str, path: Optional[PathLike] = None) -> Fixture:
        """
        Read one fixture.

        Raises:
            FixtureError: If the file is missing, unreadable or malformed
        """
        path = Path(path) if path is not None else self.path(lemma)
        data = self.store.read_json(path)
        missing = [key for key in FIXTURE_KEYS if key not in data]
        if missing:
            raise FixtureError(f"Fixture {path} is missing keys {missing}")
        constant = data["empirical_constant"]
        if isinstance(constant, bool) or not isinstance(constant, (int, float)) or not math.isfinite(constant):
            raise FixtureError(f"Fixture {path} has a non-numeric empirical_constant {constant!r}")
        if data["lemma"] != lemma:
            raise FixtureError(f"Fixture {path} is for lemma {data['lemma']!r}, expected {lemma!r}")
        return Fixture(
            lemma=lemma,
            params=dict(data["params"] or {}),
            empirical_constant=float(constant),
            seed=data["seed"],
        )

    def load_or_calibrate(self, lemma: str, seed: int = DEFAULT_SEED) -> Fixture:
        """Load a fixture, running its seeded calibration once if the file does not exist."""
        if lemma not in CALIBRATIONS:
            raise FixtureError(f"No calibration registered for lemma {lemma!r}")
        path = self.path(lemma)
        if path.exists() or not self.bootstrap:
            return self.load(lemma)
        calibration = CALIBRATIONS[lemma]
        logger.warning(f"Fixture {path} not found, calibrating '{lemma}' with seed {seed}")
        fixture = Fixture(
            lemma=lemma,
            params=dict(calibration.params),
            empirical_constant=float(calibration.run(seed)),
            seed=seed if calibration.seeded else None,
        )
        self.store.write_json(path, fixture.as_dict())
        logger.info(f"Froze fixture {path}: {fixture.empirical_constant:.6g}")
        return fixture

    def __repr__(self) -> str:
        return f"FixtureStore(directory={self.directory}, bootstrap={self.bootstrap})"


# =============================================================================
# Criteria
# =============================================================================


@dataclass
class AcceptanceContext:
    """Shared inputs of one verification run."""

    seed: int
    quick: bool
    fixtures: FixtureStore
    tolerance: float = FIXTURE_GROWTH_TOLERANCE
    oversample: int = DEFAULT_OVERSAMPLE
    completed: List[Dict[str, Any]] = field(default_factory=list)

    def trials(self, full: int, quick: int) -> int:
        return quick if self.quick else full

    def generators(self, full: int, quick: int, offset: int = 0) -> List[np.random.Generator]:
        return trial_generators(self.seed + offset, self.trials(full, quick))


CriterionResult = Tuple[bool, Dict[str, Any]]


def _trial_division_table(N: int) -> Tuple[np.ndarray, np.ndarray]:
    """μ(1..N) and λ(1..N) from smallest prime factors found by trial division."""
    n = np.arange(N + 1)
    spf = np.zeros(N + 1, dtype=np.int64)
    for d in range(2, math.isqrt(N) + 1):
        spf[(spf == 0) & (n > d) & (n % d == 0)] = d
    unset = (spf == 0) & (n >= 2)
    spf[unset] = n[unset]
    m = n[1:].copy()
    big_omega = np.zeros(N, dtype=np.int64)
    squarefree = np.ones(N, dtype=bool)
    last = np.zeros(N, dtype=np.int64)
    active = m > 1
    while np.any(active):
        p = spf[m[active]]
        squarefree[active] &= p != last[active]
        last[active] = p
        m[active] //= p
        big_omega[active] += 1
        active = m > 1
    lam = np.where(big_omega % 2 == 0, 1.0, -1.0)
    return np.where(squarefree, lam, 0.0), lam


def _random_unit_disc(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.random(size) * np.exp(2j * np.pi * rng.random(size))


def _cube_average(values: np.ndarray, d: int) -> complex:
    """E_{x,h} Π_c C^{|c|} f(x + c·h) over (ℤ/M)^{d+1}, by full enumeration."""
    M = values.size
    grids = np.indices((M,) * (d + 1))
    product = np.ones(grids.shape[1:], dtype=np.complex128)
    for c in itertools.product((0, 1), repeat=d):
        index = (grids[0] + sum(cj * grids[1 + j] for j, cj in enumerate(c))) % M
        term = values[index]
        product = product * (np.conj(term) if sum(c) % 2 else term)
    return complex(np.mean(product))


def check_sieves(ctx: AcceptanceContext) -> CriterionResult:
    """μ, λ against trial division on every n ≤ 10^5, and λ(n) = Σ_{d²|n} μ(n/d²) exactly."""
    N = 100_000
    mu = mobius_sieve(N).values.real
    lam = liouville_sieve(N).values.real
    identity = np.zeros(N + 1)
    for d in range(1, math.isqrt(N) + 1):
        m = np.arange(1, N // (d * d) + 1)
        identity[d * d * m] += mu[m - 1]
    identity_ok = bool(np.array_equal(identity[1:], lam))
    mu_trial, lam_trial = _trial_division_table(N)
    mismatches = int(np.count_nonzero((mu != mu_trial) | (lam != lam_trial)))
    return identity_ok and mismatches == 0, {"N": N, "identity": identity_ok, "mismatches": mismatches}


def check_gowers_oracle(ctx: AcceptanceContext) -> CriterionResult:
    """gowers_norm_cyclic against full enumeration, and the U² Fourier identity."""
    worst = 0.0
    for i, rng in enumerate(ctx.generators(200, 20)):
        M = int(rng.integers(2, 33))
        d = 2 + i % 2
        values = _random_unit_disc(rng, M)
        worst = max(worst, abs(gowers_norm_cyclic(CyclicSequence(values), d).raw_power - _cube_average(values, d).real))
    fourier = 0.0
    for rng in ctx.generators(20, 5, offset=1):
        M = int(rng.integers(2, 1025))
        result = gowers_norm_cyclic(CyclicSequence(_random_unit_disc(rng, M)), 2)
        fourier = max(fourier, abs(result.raw_power - result.cross_check))
    return worst <= 1e-10 and fourier <= 1e-10, {"oracle_deviation": worst, "fourier_deviation": fourier}


def check_gowers_inequalities(ctx: AcceptanceContext) -> CriterionResult:
    """CBS, U² ≤ U³, shift invariance, phase invariance and the linear-phase bound."""
    failures: Dict[str, int] = {"cbs": 0, "monotone": 0, "shift": 0, "phase": 0, "linear_phase": 0}
    for rng in ctx.generators(200, 20):
        M = int(rng.integers(2, 17))
        family = [CyclicSequence(_random_unit_disc(rng, M)) for _ in range(4)]
        f = family[0]
        failures["cbs"] += int(not cbs_gowers_check(family, 2).passed())
        u2, u3 = gowers_norm_cyclic(f, 2), gowers_norm_cyclic(f, 3).norm
        failures["monotone"] += int(u2.norm > u3 + 1e-10)
        shift = int(rng.integers(1, M + 1))
        failures["shift"] += int(abs(gowers_norm_cyclic(f.shifted(shift), 2).raw_power - u2.raw_power) > 1e-12)
        phi = ["0", f"{int(rng.integers(0, M))}/{M}", f"{int(rng.integers(0, M))}/{M}"]
        report = phase_invariance_check(f, phi, 3)
        failures["phase"] += int(float(report.column("difference")[0]) > 1e-10)
        N = int(rng.integers(2, 65))
        failures["linear_phase"] += int(not linear_phase_sup_bound(_random_unit_disc(rng, N)).passed())
    return not any(failures.values()), {"failures": failures}


def check_kernels(ctx: AcceptanceContext) -> CriterionResult:
    """Fejér closed form and unit mass to 1e-12 absolute, V_{(n,n)} = 2K_{2n-1} − K_{n-1} and the vdP multiplier."""
    rng = np.random.default_rng(ctx.seed)
    theta = rng.random(1000)
    fejer = max(
        float(np.max(np.abs(fejer_eval(n, theta) - fejer_coefficients(n)(theta).real))) for n in (1, 8, 16)
    )
    mass = max(abs(fejer_mass(n) - 1.0) for n in (0, 1, 8, 64, 255))
    identity = max(
        float(np.max(np.abs(vdp_eval(n, n, theta) - (2 * fejer_eval(2 * n - 1, theta) - fejer_eval(n - 1, theta)))))
        for n in (1, 5, 32)
    )
    orders = [(1, 1), (16, 3), (64, 64)] if ctx.quick else [(1, 1), (16, 3), (64, 64), (300, 17), (512, 512)]
    multiplier = max(vdp_fourier_check(n, p) for n, p in orders)
    passed = fejer <= 1e-12 and mass <= 1e-12 and identity <= 1e-10 and multiplier <= 1e-10
    return passed, {"fejer": fejer, "mass": mass, "vdp_identity": identity, "multiplier": multiplier}


def check_bw(ctx: AcceptanceContext) -> CriterionResult:
    """The Wiener-norm inequality on random mean-zero polynomials, |I| ≤ 128."""
    violations = 0
    for rng in ctx.generators(1000, 100):
        length = int(rng.integers(1, 129))
        lo = int(rng.integers(-length, 2))
        coeffs = _random_unit_disc(rng, length)
        if lo <= 0 < lo + length:
            coeffs[-lo] = 0.0
        P = TrigPolynomial.from_interval(lo, coeffs)
        if P.is_zero:
            continue
        violations += int(not bw_inequality_report(P).passed())
    return violations == 0, {"violations": violations}


def check_bmz(ctx: AcceptanceContext) -> CriterionResult:
    """Node-only large-value sets for random ψ are separated and within the frozen B₂; cover is tallied."""
    B2 = ctx.fixtures.load_or_calibrate("bmz", ctx.seed).empirical_constant
    violations = 0
    uncovered_instances = 0
    uncovered_points = 0
    for i, rng in enumerate(ctx.generators(100, 10)):
        J = (128, 512)[i % 2]
        psi = np.exp(2j * np.pi * rng.random(J)) * (rng.random(J) < 0.9)
        for delta in (0.1, 0.2, 0.4):
            report = bmz_report(psi, delta, B2)
            holds = dict(zip(report.column("clause"), report.column("holds")))
            violations += int(not (holds["separation"] and holds["cardinality"]))
            uncovered_instances += int(report.summary["uncovered"] > 0)
            uncovered_points += report.summary["uncovered"]
    return violations == 0, {
        "B2": B2,
        "violations": violations,
        "uncovered_instances": uncovered_instances,
        "uncovered_points": uncovered_points,
    }


def _fixture_check(ctx: AcceptanceContext, lemma: str, rerun: Callable[[int], float]) -> Tuple[bool, Dict[str, Any]]:
    fixture = ctx.fixtures.load_or_calibrate(lemma, ctx.seed)
    seed = (fixture.seed if fixture.seed is not None else ctx.seed) + 1
    value = rerun(seed)
    return fixture.admits(value, ctx.tolerance), {"frozen": fixture.empirical_constant, "rerun": value}


def check_lp(ctx: AcceptanceContext) -> CriterionResult:
    """Trivial partition has zero excess; calibrated constants stay within tolerance."""
    nonzero = 0
    for rng in ctx.generators(50, 10):
        length = int(rng.integers(8, 257))
        P = TrigPolynomial.from_interval(0, np.exp(2j * np.pi * rng.random(length)))
        E = FrequencySet(rng.random(int(rng.integers(1, 9))))
        report = lp_lemma_check(P, [(0, length - 1)], E, 16.0, 2.0)
        nonzero += int(float(report.column("excess")[0]) != 0.0)
    lp_ok, lp_detail = _fixture_check(ctx, "lp", lambda s: calibrate_lp(200, s))
    eps_ok, eps_detail = _fixture_check(ctx, "lp_eps", lambda s: calibrate_lp(200, s, localized=True))
    return nonzero == 0 and lp_ok and eps_ok, {"trivial_nonzero": nonzero, "lp": lp_detail, "lp_eps": eps_detail}


def check_lambda_entropy(ctx: AcceptanceContext) -> CriterionResult:
    """λ-separated and entropy constants against fixtures; covering-number sanity."""
    lam_ok, lam_detail = _fixture_check(ctx, "lambda", lambda s: calibrate_lambda(50, s))
    ent_ok, ent_detail = _fixture_check(ctx, "entropy", lambda s: calibrate_entropy(20, s))
    sanity = 0
    for rng in ctx.generators(50, 10, offset=2):
        A = rng.standard_normal((int(rng.integers(1, 40)), 3))
        counts = [entropy_numbers(A, t) for t in (0.1, 0.25, 0.5, 1.0, 2.0, 4.0)]
        sanity += int(any(b > a for a, b in zip(counts, counts[1:])) or counts[0] > len(A))
    return lam_ok and ent_ok and sanity == 0, {"lambda": lam_detail, "entropy": ent_detail, "sanity_failures": sanity}


def check_calderon(ctx: AcceptanceContext) -> CriterionResult:
    """Dynamical and shift-model averages agree exactly."""
    N_max = 1 << (8 if ctx.quick else 12)
    nu = mobius_sieve(N_max)
    f, g = Observable.trig(1), Observable.trig(2)
    cases = [(DynSystem.cyclic(97), 5), (DynSystem.rotation(), 0.25)]
    mismatches = 0
    for (system, x0), (a, b), N in itertools.product(cases, [(1, -1), (2, 3)], [1, 17, N_max]):
        window = calderon_transfer(system, x0, f, g, a, b, N)
        dynamic = dynamical_bilinear(nu, system, x0, f, g, a, b, N)
        shifted = shift_bilinear(nu, window.phi, window.psi, window.anchor, a, b, N)
        mismatches += int(dynamic != shifted)
    return mismatches == 0, {"N_max": N_max, "mismatches": mismatches}


def check_maximal_oracle(ctx: AcceptanceContext) -> CriterionResult:
    """maximal_function against the explicit max over the time list."""
    J = 64 if ctx.quick else 256
    rng = np.random.default_rng(ctx.seed)
    phi, psi = _random_unit_disc(rng, J + 1), _random_unit_disc(rng, J + 1)
    nu = mobius_sieve(J)
    scale = TimeScale(2.0, 1, J)
    result = maximal_function(nu, phi, psi, scale)
    worst = 0.0
    for j in range(J + 1):
        brute = max(abs(shift_bilinear(nu, phi, psi, j, 1, -1, N)) for N in scale.times())
        worst = max(worst, abs(brute - float(result.values[j])))
    return worst <= 1e-12, {"J": J, "deviation": worst}


def _decay_slope(nu, system: DynSystem, points: Sequence, f: Observable, a: int, b: int) -> float:
    N_max = nu.stop
    scale = TimeScale(2.0, 1 << 10, N_max)
    return float(decay_profile(nu, system, points, f, f, a, b, scale).summary["slope"])


def check_decay_trend(ctx: AcceptanceContext) -> CriterionResult:
    """Negative decay slopes for μ and λ on the rotation and for μ on the doubling map."""
    N_max = 1 << (14 if ctx.quick else 18)
    samples = 8 if ctx.quick else 32
    rng = np.random.default_rng(ctx.seed)
    circle_points = rng.random(samples).tolist()
    doubling_points = [DoublingPoint(seed=ctx.seed + i) for i in range(samples)]
    f = Observable.trig(1)
    slopes = {
        "mobius_rotation": _decay_slope(mobius_sieve(N_max), DynSystem.rotation(), circle_points, f, 1, -1),
        "liouville_rotation": _decay_slope(liouville_sieve(N_max), DynSystem.rotation(), circle_points, f, 1, -1),
        # the doubling map is not invertible, so both times run forward
        "mobius_doubling": _decay_slope(mobius_sieve(N_max), DynSystem.doubling(), doubling_points, f, 1, 2),
    }
    return all(s < 0 for s in slopes.values()), {"slopes": slopes}


def check_exponential_sum_trend(ctx: AcceptanceContext) -> CriterionResult:
    """sup_θ|Σ_{n≤N} μ(n)e(nθ)|/N decreases within certified error bars."""
    top = 16 if ctx.quick else 20
    N_list = [1 << k for k in range(10, top + 1, 2)]
    report = power_sum_profile(mobius_sieve(N_list[-1]), 1, N_list, ctx.oversample)
    values = report.column("value").tolist()
    return bool(report.summary["certified_decreasing"]), {"N": N_list, "values": values}


def check_negative_control(ctx: AcceptanceContext) -> CriterionResult:
    """ν ≡ 1 with mean-one observables does not decay."""
    N_max = 1 << (14 if ctx.quick else 18)
    rng = np.random.default_rng(ctx.seed)
    points = rng.random(8).tolist()
    slope = _decay_slope(unit_weight(N_max), DynSystem.rotation(), points, Observable.constant(1.0), 1, -1)
    return abs(slope) < 0.05, {"slope": slope}


def check_determinism(ctx: AcceptanceContext) -> CriterionResult:
    """A second verify_all over the criteria already run gives a byte-identical verdict; reports render identically."""
    earlier = [dict(result) for result in ctx.completed]
    names = [result["name"] for result in earlier]
    rerun_identical = True
    if names:
        first = Verdict(seed=ctx.seed, quick=ctx.quick, results=earlier).to_json()
        second = verify_all(ctx.seed, ctx.quick, ctx.fixtures, names, ctx.tolerance).to_json()
        rerun_identical = first == second
    nu = mobius_sieve(1 << 12)
    rng = np.random.default_rng(ctx.seed)
    points = rng.random(4).tolist()

    def render() -> str:
        scale = TimeScale(2.0, 16, 1 << 12)
        return decay_profile(nu, DynSystem.rotation(), points, Observable.trig(1), Observable.trig(1), 1, -1, scale).to_csv()

    report_identical = render() == render()
    return rerun_identical and report_identical, {
        "rerun": names,
        "rerun_identical": rerun_identical,
        "report_identical": report_identical,
    }


CRITERIA: Dict[str, Callable[[AcceptanceContext], CriterionResult]] = {
    "sieves": check_sieves,
    "gowers_oracle": check_gowers_oracle,
    "gowers_inequalities": check_gowers_inequalities,
    "kernels": check_kernels,
    "bw": check_bw,
    "bmz": check_bmz,
    "lp": check_lp,
    "lambda_entropy": check_lambda_entropy,
    "calderon": check_calderon,
    "maximal_oracle": check_maximal_oracle,
    "decay_trend": check_decay_trend,
    "exponential_sum_trend": check_exponential_sum_trend,
    "negative_control": check_negative_control,
    "determinism": check_determinism,
}


# =============================================================================
# Verification
# =============================================================================


@dataclass
class Verdict:
    """Outcome of one verification run."""

    seed: int
    quick: bool
    results: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.results)

    @property
    def failures(self) -> List[str]:
        return [r["name"] for r in self.results if not r["passed"]]

    def to_json(self) -> str:
        document = {
            "tool": "ergolab",
            "version": __version__,
            "seed": self.seed,
            "quick": self.quick,
            "passed": self.passed,
            "failures": self.failures,
            "criteria": plain_value(self.results),
        }
        return json.dumps(document, sort_keys=True, indent=2) + "\n"


def verify_all(
    seed: int = DEFAULT_SEED,
    quick: bool = False,
    fixtures: Optional[FixtureStore] = None,
    only: Optional[Sequence[str]] = None,
    tolerance: float = FIXTURE_GROWTH_TOLERANCE,
) -> Verdict:
    """
    Run the acceptance criteria.

    A criterion raising a domain error fails with the message recorded, so a
    corrupt fixture shows up as a failure naming the file.

    Args:
        seed: Master seed
        quick: Reduced sizes for CI
        fixtures: Fixture store (default: package fixtures)
        only: Criterion names to run (default: all)
        tolerance: Allowed relative growth of calibrated constants
    """
    names = list(CRITERIA) if only is None else list(only)
    unknown = [name for name in names if name not in CRITERIA]
    if unknown:
        raise ConfigurationError(f"Unknown acceptance criteria {unknown}")
    ctx = AcceptanceContext(
        seed=seed,
        quick=quick,
        fixtures=fixtures if fixtures is not None else FixtureStore(),
        tolerance=tolerance,
    )
    verdict = Verdict(seed=seed, quick=quick)
    ctx.completed = verdict.results
    for name in names:
        logger.info(f"Acceptance criterion '{name}'")
        try:
            passed, detail = CRITERIA[name](ctx)
        except ErgolabError as e:
            logger.error(f"Criterion '{name}' failed with {type(e).__name__}: {e}")
            passed, detail = False, {"error": f"{type(e).__name__}: {e}"}
        verdict.results.append({"name": name, "passed": bool(passed), "detail": detail})
        logger.info(f"Criterion '{name}': {'pass' if passed else 'FAIL'}")
    return verdict
