# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Arithmetic Weight Sequences

Möbius and Liouville sieves, custom (completely) multiplicative functions
built from prime data, automatic sequences, polynomial phases, and the
aperiodicity profile of a weight along arithmetic progressions.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ergolab.core.constants import (
    EXACT_PHASE_MAX_MODULUS,
    MAX_SEQUENCE_LENGTH,
    SIEVE_SEGMENT_SIZE,
)
from ergolab.core.errors import (
    BoundViolationError,
    CapacityError,
    PreconditionError,
    SequenceRangeError,
    ShapeError,
)
from ergolab.core.report import ExperimentReport, loglog_slope

logger = logging.getLogger(__name__)

BOUND_TOLERANCE = 1e-12
"""Rounding slack allowed above modulus 1"""

PrimeValues = Union[Mapping[int, complex], Callable[[int], complex]]
PrimePowerValues = Union[Mapping[int, complex], Callable[[int, int], complex]]
Rational = Union[int, str, Fraction]


class SequenceKind(Enum):
    """Origin of a weight sequence."""

    MOBIUS = "mobius"
    LIOUVILLE = "liouville"
    CUSTOM_MULTIPLICATIVE = "custom_multiplicative"
    CUSTOM_COMPLETELY_MULTIPLICATIVE = "custom_completely_multiplicative"
    AUTOMATIC = "automatic"
    POLYNOMIAL_PHASE = "polynomial_phase"
    RAW = "raw"


class AutomaticKind(Enum):
    """Supported 2-automatic ±1 sequences."""

    THUE_MORSE = "thue_morse"
    RUDIN_SHAPIRO = "rudin_shapiro"


class RandomFamily(Enum):
    """Distribution of random prime values."""

    STEINHAUS = "steinhaus"  # uniform on the unit circle
    RADEMACHER = "rademacher"  # uniform on {-1, +1}


MULTIPLICATIVE_KINDS = {
    SequenceKind.MOBIUS,
    SequenceKind.LIOUVILLE,
    SequenceKind.CUSTOM_MULTIPLICATIVE,
    SequenceKind.CUSTOM_COMPLETELY_MULTIPLICATIVE,
}

COMPLETELY_MULTIPLICATIVE_KINDS = {
    SequenceKind.LIOUVILLE,
    SequenceKind.CUSTOM_COMPLETELY_MULTIPLICATIVE,
}


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """
    Finite 1-bounded complex sequence indexed by consecutive integers.

    Values are stored for n = start .. start + length - 1 (start is 1 for
    arithmetic weights, 0 for automatic sequences). The array is read-only
    after construction.
    """

    values: np.ndarray
    kind: SequenceKind = SequenceKind.RAW
    start: int = 1
    seed: Optional[int] = None  # generator seed for random constructions
    description: str = ""

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        if values.ndim != 1:
            raise ShapeError(f"Weight values must be one-dimensional, got shape {values.shape}")
        if values.size > MAX_SEQUENCE_LENGTH:
            raise CapacityError(
                f"Sequence length {values.size} exceeds capacity {MAX_SEQUENCE_LENGTH}"
            )
        moduli = np.abs(values)
        if values.size and moduli.max() > 1.0 + BOUND_TOLERANCE:
            bad = int(np.argmax(moduli > 1.0 + BOUND_TOLERANCE))
            raise BoundViolationError(
                f"|w({self.start + bad})| = {moduli[bad]:.6g} exceeds 1 ({self.kind.value})"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def length(self) -> int:
        return int(self.values.size)

    @property
    def stop(self) -> int:
        """Last stored index."""
        return self.start + self.length - 1

    @property
    def is_multiplicative(self) -> bool:
        return self.kind in MULTIPLICATIVE_KINDS

    @property
    def is_completely_multiplicative(self) -> bool:
        return self.kind in COMPLETELY_MULTIPLICATIVE_KINDS

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, n: int) -> complex:
        if not self.start <= n <= self.stop:
            raise SequenceRangeError(f"Index {n} outside stored range [{self.start}, {self.stop}]")
        return complex(self.values[n - self.start])

    def segment(self, lo: int, hi: int) -> np.ndarray:
        """Values for n = lo .. hi inclusive (empty when hi < lo)."""
        if hi < lo:
            return self.values[:0]
        if lo < self.start or hi > self.stop:
            raise SequenceRangeError(
                f"Range [{lo}, {hi}] outside stored range [{self.start}, {self.stop}]"
            )
        return self.values[lo - self.start : hi - self.start + 1]

    def take(self, indices: np.ndarray) -> np.ndarray:
        """Gather values at arbitrary indices."""
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size and (idx.min() < self.start or idx.max() > self.stop):
            raise SequenceRangeError(
                f"Indices [{idx.min()}, {idx.max()}] outside stored range "
                f"[{self.start}, {self.stop}]"
            )
        return self.values[idx - self.start]

    def shifted(self, x: int) -> "WeightSequence":
        """The shifted weight n ↦ w(n + x); multiplicativity is not preserved."""
        return WeightSequence(
            self.values,
            kind=SequenceKind.RAW,
            start=self.start - x,
            seed=self.seed,
            description=f"{self.description or self.kind.value} shifted by {x}",
        )

    def __repr__(self) -> str:
        return (
            f"WeightSequence(kind={self.kind.value}, range=[{self.start}, {self.stop}], "
            f"seed={self.seed})"
        )


def raw_sequence(values: Sequence[complex], start: int = 0, description: str = "") -> WeightSequence:
    """Wrap arbitrary 1-bounded values as a RAW weight sequence."""
    return WeightSequence(np.asarray(values), kind=SequenceKind.RAW, start=start, description=description)


def compensated_sum(terms: np.ndarray) -> complex:
    """Exactly rounded sum of complex terms in index order."""
    terms = np.asarray(terms)
    if np.iscomplexobj(terms):
        return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))
    return complex(math.fsum(terms.tolist()), 0.0)


# =============================================================================
# Sieves
# =============================================================================


def _check_length(N: int) -> None:
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    if N > MAX_SEQUENCE_LENGTH:
        raise CapacityError(f"N = {N} exceeds capacity {MAX_SEQUENCE_LENGTH}")


def primes_up_to(limit: int) -> np.ndarray:
    """All primes p ≤ limit (Eratosthenes on a boolean array)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _factor_segment(lo: int, hi: int, primes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """μ(n) and Ω(n) for lo ≤ n < hi, dividing out every prime ≤ √N."""
    remaining = np.arange(lo, hi, dtype=np.int64)
    mu = np.ones(hi - lo, dtype=np.int8)
    omega = np.zeros(hi - lo, dtype=np.int16)
    for p in primes.tolist():
        first = (-lo) % p
        mu[first::p] = -mu[first::p]
        power = p
        while power < hi:
            offset = (-lo) % power
            remaining[offset::power] //= p
            omega[offset::power] += 1
            power *= p
        square = p * p
        if square < hi:
            mu[(-lo) % square :: square] = 0
    # at most one prime factor above √N is left over
    large = remaining > 1
    omega[large] += 1
    mu[large] = -mu[large]
    return mu, omega


def _factor_sieve(N: int) -> Tuple[np.ndarray, np.ndarray]:
    _check_length(N)
    try:
        mu = np.empty(N, dtype=np.int8)
        omega = np.empty(N, dtype=np.int16)
    except MemoryError as e:
        raise CapacityError(f"Cannot allocate sieve of length {N}: {e}")
    primes = primes_up_to(math.isqrt(N))
    for lo in range(1, N + 1, SIEVE_SEGMENT_SIZE):
        hi = min(lo + SIEVE_SEGMENT_SIZE, N + 1)
        mu[lo - 1 : hi - 1], omega[lo - 1 : hi - 1] = _factor_segment(lo, hi, primes)
    logger.debug(f"Sieved 1..{N} with {primes.size} base primes")
    return mu, omega


def mobius_sieve(N: int) -> WeightSequence:
    """
    Möbius function μ(1..N) by a segmented sieve.

    Args:
        N: Sequence length (≥ 1)

    Returns:
        WeightSequence of kind MOBIUS with values in {-1, 0, 1}

    Raises:
        PreconditionError: If N < 1
        CapacityError: If N exceeds addressable memory

    Example:
        >>> mu = mobius_sieve(10)
        >>> mu[6]
        (1+0j)
    """
    mu, _ = _factor_sieve(N)
    return WeightSequence(mu, kind=SequenceKind.MOBIUS, start=1, description="Möbius")


def liouville_sieve(N: int) -> WeightSequence:
    """Liouville function λ(n) = (-1)^Ω(n) for n = 1..N."""
    _, omega = _factor_sieve(N)
    values = np.where(omega % 2 == 0, 1, -1).astype(np.int8)
    return WeightSequence(values, kind=SequenceKind.LIOUVILLE, start=1, description="Liouville")


def smallest_prime_factors(N: int) -> np.ndarray:
    """spf[n] for 0 ≤ n ≤ N (spf[0] = spf[1] = 0)."""
    _check_length(N)
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(N)).tolist():
        block = spf[p * p :: p]
        block[block == 0] = p
        if spf[p] == 0:
            spf[p] = p
    untouched = np.flatnonzero(spf == 0)
    untouched = untouched[untouched >= 2]
    spf[untouched] = untouched
    return spf


# =============================================================================
# Custom Multiplicative Functions
# =============================================================================


def _checked(value: complex, label: str) -> complex:
    value = complex(value)
    if abs(value) > 1.0 + BOUND_TOLERANCE:
        raise BoundViolationError(f"|{label}| = {abs(value):.6g} exceeds 1")
    return value


def _prime_value(prime_values: PrimeValues, p: int) -> complex:
    if callable(prime_values):
        return _checked(prime_values(p), f"value at prime {p}")
    if p not in prime_values:
        raise PreconditionError(f"Prime {p} has no assigned value")
    return _checked(prime_values[p], f"value at prime {p}")


def _prime_power_value(prime_power_values: Optional[PrimePowerValues], p: int, k: int) -> complex:
    label = f"value at prime power {p}^{k}"
    if prime_power_values is None:
        raise PreconditionError(
            f"No value for prime power {p}^{k}; non-completely multiplicative "
            f"sequences need explicit prime-power values"
        )
    if callable(prime_power_values):
        return _checked(prime_power_values(p, k), label)
    key = p**k
    if key not in prime_power_values:
        raise PreconditionError(f"Prime power {key} = {p}^{k} has no assigned value")
    return _checked(prime_power_values[key], label)


def multiplicative_from_primes(
    prime_values: PrimeValues,
    N: int,
    completely: bool = False,
    prime_power_values: Optional[PrimePowerValues] = None,
    seed: Optional[int] = None,
    description: str = "",
) -> WeightSequence:
    """
    Extend prime data to a multiplicative function on 1..N.

    Args:
        prime_values: Map (or callable) prime -> value, every prime ≤ N covered
        N: Sequence length
        completely: Extend by complete multiplicativity
        prime_power_values: Map p^k -> value (or callable (p, k) -> value), k ≥ 2;
            required when completely is False and some p^2 ≤ N
        seed: Seed recorded on the result when the prime data is random
        description: Free-form label

    Returns:
        WeightSequence of kind CUSTOM_(COMPLETELY_)MULTIPLICATIVE

    Raises:
        BoundViolationError: If an assigned value has modulus > 1
        PreconditionError: If a needed prime or prime-power value is missing

    Example:
        >>> lam = multiplicative_from_primes(lambda p: -1, 100, completely=True)
    """
    spf = smallest_prime_factors(N).tolist()
    values: List[complex] = [0j] * (N + 1)
    if N >= 1:
        values[1] = 1 + 0j
    cache: Dict[Tuple[int, int], complex] = {}
    for n in range(2, N + 1):
        p = spf[n]
        if p == n:
            values[n] = _prime_value(prime_values, p)
            continue
        m = n // p
        if completely:
            values[n] = values[p] * values[m]
            continue
        k = 1
        while m % p == 0:
            m //= p
            k += 1
        if k == 1:
            values[n] = values[p] * values[m]
        else:
            if (p, k) not in cache:
                cache[(p, k)] = _prime_power_value(prime_power_values, p, k)
            values[n] = cache[(p, k)] * values[m]
    kind = (
        SequenceKind.CUSTOM_COMPLETELY_MULTIPLICATIVE
        if completely
        else SequenceKind.CUSTOM_MULTIPLICATIVE
    )
    return WeightSequence(np.asarray(values[1:]), kind=kind, start=1, seed=seed, description=description)


def random_multiplicative(
    N: int,
    seed: int,
    completely: bool = True,
    family: Union[str, RandomFamily] = RandomFamily.STEINHAUS,
) -> WeightSequence:
    """
    Seeded random multiplicative function.

    Prime values are drawn in increasing prime order from one generator. The
    non-complete variant vanishes on non-squarefree integers.
    """
    family = RandomFamily(family)
    rng = np.random.default_rng(seed)
    primes = primes_up_to(N)
    if family is RandomFamily.STEINHAUS:
        draws = np.exp(2j * np.pi * rng.random(primes.size))
    else:
        draws = rng.choice(np.array([-1.0, 1.0]), size=primes.size).astype(np.complex128)
    table = dict(zip(primes.tolist(), draws.tolist()))
    logger.debug(f"Drew {primes.size} {family.value} prime values (seed={seed})")
    return multiplicative_from_primes(
        table,
        N,
        completely=completely,
        prime_power_values=None if completely else (lambda p, k: 0.0),
        seed=seed,
        description=f"random {family.value}",
    )


def unit_weight(N: int) -> WeightSequence:
    """The constant weight 1 on 1..N."""
    _check_length(N)
    return WeightSequence(
        np.ones(N), kind=SequenceKind.CUSTOM_COMPLETELY_MULTIPLICATIVE, description="unit"
    )


# =============================================================================
# Automatic Sequences and Polynomial Phases
# =============================================================================


def _bit_count(n: np.ndarray) -> np.ndarray:
    counts = np.zeros_like(n)
    x = n.copy()
    while np.any(x):
        counts += x & 1
        x >>= 1
    return counts


def automatic_sequence(
    kind: Union[str, AutomaticKind], N: int, start: int = 0
) -> WeightSequence:
    """
    Thue–Morse or Rudin–Shapiro ±1 values for n = start .. start + N - 1.

    Thue–Morse is (-1)^(binary digit sum); Rudin–Shapiro is (-1)^(number of
    "11" blocks in binary).
    """
    kind = AutomaticKind(kind)
    _check_length(N)
    if start < 0:
        raise PreconditionError(f"start must be >= 0, got {start}")
    n = np.arange(start, start + N, dtype=np.int64)
    if kind is AutomaticKind.THUE_MORSE:
        count = _bit_count(n)
    else:
        count = _bit_count(n & (n >> 1))
    values = np.where(count % 2 == 0, 1, -1).astype(np.int8)
    return WeightSequence(values, kind=SequenceKind.AUTOMATIC, start=start, description=kind.value)


def phase_residues(coeffs: Sequence[Rational], n: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    P(n) mod 1 in exact rational arithmetic.

    Args:
        coeffs: Rational coefficients c_0, c_1, ... of P(n) = Σ c_k n^k
        n: Integer arguments

    Returns:
        (residues, q) with P(n) ≡ residues / q (mod 1) and 0 ≤ residues < q
    """
    fractions = [Fraction(c) for c in coeffs]
    q = 1
    for f in fractions:
        q = q * f.denominator // math.gcd(q, f.denominator)
    numerators = [int(f * q) % q for f in fractions]
    n = np.asarray(n, dtype=np.int64)
    if q < EXACT_PHASE_MAX_MODULUS:
        base = n % q
        acc = np.zeros(n.shape, dtype=np.int64)
        power = np.ones(n.shape, dtype=np.int64) % q
        for a in numerators:
            acc = (acc + a * power) % q
            power = (power * base) % q
        return acc, q
    logger.debug(f"Phase denominator {q} too large for int64 path, using exact integers")
    residues = [
        sum(a * pow(int(m), k, q) for k, a in enumerate(numerators)) % q for m in n.ravel().tolist()
    ]
    return np.asarray(residues, dtype=object).reshape(n.shape), q


_QUARTER_TURNS = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


def phases_from_residues(residues: np.ndarray, q: int) -> np.ndarray:
    """e^{2πi r/q}, exact at quarter turns."""
    if residues.dtype == object:
        turns = np.asarray([Fraction(int(r), q) for r in residues.ravel()], dtype=object)
        values = np.exp(2j * np.pi * turns.astype(float)).reshape(residues.shape)
        quarter = np.asarray([(4 * int(r)) % q == 0 for r in residues.ravel()]).reshape(residues.shape)
        exact = np.asarray([(4 * int(r)) // q % 4 for r in residues.ravel()]).reshape(residues.shape)
    else:
        values = np.exp(2j * np.pi * (residues / q))
        quarter = (4 * residues) % q == 0
        exact = ((4 * residues) // q) % 4
    values = np.where(quarter, _QUARTER_TURNS[exact.astype(np.int64)], values)
    return values


def polynomial_phase_values(coeffs: Sequence[Rational], n: np.ndarray) -> np.ndarray:
    """e^{2πi P(n)} with P reduced mod 1 exactly before exponentiation."""
    residues, q = phase_residues(coeffs, n)
    return phases_from_residues(residues, q)


def polynomial_phase(coeffs: Sequence[Rational], N: int, start: int = 1) -> WeightSequence:
    """
    Polynomial phase sequence e^{2πi P(n)} for n = start .. start + N - 1.

    Args:
        coeffs: Rational coefficients (int, Fraction or "p/q" strings), constant term first
        N: Sequence length

    Example:
        >>> polynomial_phase([0, "1/2"], 4).values.real
        array([-1.,  1., -1.,  1.])
    """
    _check_length(N)
    n = np.arange(start, start + N, dtype=np.int64)
    values = polynomial_phase_values(coeffs, n)
    label = " + ".join(f"({Fraction(c)})n^{k}" for k, c in enumerate(coeffs)) or "0"
    return WeightSequence(values, kind=SequenceKind.POLYNOMIAL_PHASE, start=start, description=label)


# =============================================================================
# Diagnostics
# =============================================================================


def aperiodicity_profile(
    w: WeightSequence,
    pairs: Iterable[Tuple[int, int]],
    N_list: Iterable[int],
) -> ExperimentReport:
    """
    Averages of w along progressions: (1/N)|Σ_{n=1}^{N} w(an + b)|.

    Args:
        w: Weight sequence
        pairs: (a, b) with a ≥ 1, b ≥ 0
        N_list: Averaging lengths

    Returns:
        Report with columns a, b, N, value sorted by (a, b, N) and one
        log-log slope per pair in the summary

    Raises:
        SequenceRangeError: If a·N + b exceeds the stored range
    """
    pairs = sorted(set((int(a), int(b)) for a, b in pairs))
    N_values = sorted(set(int(N) for N in N_list))
    report = ExperimentReport(
        "aperiodicity_profile",
        columns=["a", "b", "N", "value"],
        header={"weight": w.kind.value, "seed": w.seed},
    )
    if not N_values:
        return report
    for a, b in pairs:
        if a < 1 or b < 0:
            raise PreconditionError(f"Progression (a, b) must have a >= 1 and b >= 0, got ({a}, {b})")
        top = a * N_values[-1] + b
        if top > w.stop:
            raise SequenceRangeError(
                f"Progression ({a}, {b}) up to N={N_values[-1]} reads index {top} "
                f"beyond stored range [{w.start}, {w.stop}]"
            )
        samples = w.take(a * np.arange(1, N_values[-1] + 1, dtype=np.int64) + b)
        values = []
        for N in N_values:
            value = abs(compensated_sum(samples[:N])) / N
            values.append(value)
            report.add_row(a=a, b=b, N=N, value=value)
        report.summary[f"slope[a={a},b={b}]"] = loglog_slope(N_values, values)
    logger.info(f"Aperiodicity profile of {w.kind.value}: {len(report.rows)} rows")
    return report


def multiplicativity_defects(
    w: WeightSequence, trials: int, seed: int, completely: Optional[bool] = None
) -> int:
    """
    Count random pairs (n, m) with nm ≤ stop where w(nm) ≠ w(n)w(m).

    Coprime pairs are drawn unless the check is for complete multiplicativity.
    """
    if w.start > 1:
        raise PreconditionError(f"Weight must be stored from n=1, starts at {w.start}")
    if completely is None:
        completely = w.is_completely_multiplicative
    rng = np.random.default_rng(seed)
    N = w.stop
    defects = 0
    checked = 0
    while checked < trials:
        n = int(rng.integers(1, max(2, math.isqrt(N)) + 1))
        m = int(rng.integers(1, N // n + 1))
        if not completely and math.gcd(n, m) != 1:
            continue
        checked += 1
        if abs(w[n * m] - w[n] * w[m]) > 1e-12:
            defects += 1
    return defects
