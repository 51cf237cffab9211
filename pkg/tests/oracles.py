# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Brute-force reference implementations used by the test suite.

Each oracle is deliberately slow and obviously correct: trial division,
full enumeration, or direct summation.
"""

import itertools
import math
from typing import Sequence

import numpy as np


def mobius_trial(n: int) -> int:
    """μ(n) by trial division."""
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def big_omega_trial(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    count = 0
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            m //= p
            count += 1
        p += 1
    if m > 1:
        count += 1
    return count


def gowers_enumerated(values: Sequence[complex], d: int) -> float:
    """‖f‖_{U^d(Z/JZ)} by summing over all (x, h_1, .., h_d)."""
    f = np.asarray(values, dtype=np.complex128)
    J = f.size
    total = 0j
    for x in range(J):
        for h in itertools.product(range(J), repeat=d):
            term = 1 + 0j
            for omega in itertools.product((0, 1), repeat=d):
                idx = (x + sum(o * hi for o, hi in zip(omega, h))) % J
                value = f[idx]
                term *= value.conjugate() if sum(omega) % 2 else value
            total += term
    raw = total.real / J ** (d + 1)
    return max(raw, 0.0) ** (1.0 / 2**d)


def trig_direct(frequencies: Sequence[int], coeffs: Sequence[complex], theta: float) -> complex:
    """Σ c_n e(nθ) term by term."""
    return sum(c * np.exp(2j * np.pi * n * theta) for n, c in zip(frequencies, coeffs))


def variation_enumerated(a: Sequence[float], s: float) -> float:
    """s-variation by enumerating every increasing index subsequence."""
    values = list(a)
    best = 0.0
    for size in range(2, len(values) + 1):
        for idx in itertools.combinations(range(len(values)), size):
            total = sum(abs(values[j] - values[i]) ** s for i, j in zip(idx, idx[1:]))
            best = max(best, total ** (1.0 / s))
    return best


def arc_energy_riemann(frequencies, coeffs, arcs, samples: int = 20000) -> float:
    """∫_A |P|² by the midpoint rule on each arc."""
    total = 0.0
    for a, b in arcs:
        theta = a + (np.arange(samples) + 0.5) * (b - a) / samples
        values = sum(c * np.exp(2j * np.pi * n * theta) for n, c in zip(frequencies, coeffs))
        total += float(np.sum(np.abs(values) ** 2)) * (b - a) / samples
    return total


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def exponent_table(N: int):
    """μ(1..N) and λ(1..N) by dividing out every prime up to √N, all n at once."""
    m = np.arange(1, N + 1)
    big_omega = np.zeros(N, dtype=np.int64)
    squarefree = np.ones(N, dtype=bool)
    for p in range(2, math.isqrt(N) + 1):
        if not is_prime(p):
            continue
        exponent = np.zeros(N, dtype=np.int64)
        hit = m % p == 0
        while np.any(hit):
            m[hit] //= p
            exponent[hit] += 1
            hit = m % p == 0
        big_omega += exponent
        squarefree &= exponent < 2
    big_omega += m > 1
    lam = (-1) ** big_omega
    return np.where(squarefree, lam, 0), lam
