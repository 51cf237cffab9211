# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Ergolab Numeric Constants

Defaults, limits and tolerances shared by the sequence, spectral, kernel,
Gowers, dynamics, averaging and partition layers.
"""

import math

# =============================================================================
# Capacity Limits
# =============================================================================

MAX_SEQUENCE_LENGTH = 1 << 28
"""Largest sequence length any constructor will allocate"""

SIEVE_SEGMENT_SIZE = 1 << 16
"""Segment length used by the Möbius/Liouville block sieve"""

MAX_FREQUENCY = 1 << 62
"""Largest absolute frequency stored in a signed 64-bit index"""

MAX_GRID_POINTS = 1 << 34
"""Largest torus grid a sup-norm estimate may request"""

GRID_CHUNK_SIZE = 1 << 20
"""Grid points evaluated per FFT chunk"""

EXACT_PHASE_MAX_MODULUS = 1 << 31
"""Common denominators below this are reduced with vectorized int64 arithmetic"""

# =============================================================================
# Spectral Defaults
# =============================================================================

DEFAULT_OVERSAMPLE = 8
"""Default grid oversampling factor for sup-norm estimation"""

MIN_OVERSAMPLE = 4
"""Smallest allowed oversampling factor"""

WIENER_BW_CONSTANT = math.pi / math.sqrt(3.0)
"""Constant in the Wiener-norm versus L2/derivative inequality"""

DENSE_GRID_FACTOR = 64
"""Dense verification grid is this many points per unit of J"""

# =============================================================================
# Kernel Quadrature
# =============================================================================

QUAD_ABS_TOL = 1e-10
"""Absolute tolerance of the adaptive kernel quadrature"""

QUAD_PANEL_LIMIT = 50
"""Subdivision limit per quadrature panel"""

SMOOTH_TAIL_GRID_FACTOR = 32
"""Grid points per kernel degree when integrating smoothed kernels"""

# =============================================================================
# Gowers Norms
# =============================================================================

GOWERS_NEGATIVE_TOLERANCE = 1e-12
"""Raw powers above -tolerance are treated as rounding noise"""

GOWERS_D3_MAX_MODULUS = 4096
"""Practical modulus cap for cyclic U^3 computations"""

# =============================================================================
# Dynamical Systems
# =============================================================================

GOLDEN_ALPHA = (math.sqrt(5.0) - 1.0) / 2.0
"""Default badly approximable rotation number"""

DOUBLING_PRECISION_BITS = 53
"""Binary digits per doubling-map point (double precision mantissa)"""

PHASE_SPLIT_BITS = 17
"""Width of each chunk when splitting a real number for exact k*alpha mod 1"""

PHASE_SPLIT_CHUNKS = 3
"""Number of exact chunks before the floating remainder"""

# =============================================================================
# Averages and Time Scales
# =============================================================================

DEFAULT_RHO = 2.0
"""Default time-scale base (dyadic times)"""

DEFAULT_X_SAMPLES = 32
"""Default number of sampled base points in decay profiles"""

PRIME_PAIR_LIMIT = 1000
"""Largest e^{1/ε} accepted by the prime-pair criterion (168 primes)"""

# =============================================================================
# Partition and Lemma Checks
# =============================================================================

SIGMA_DELTA_MIN_EXPONENT = 20
"""Smallest dyadic scale 2^-20 used by the partition-of-unity checks"""

MZ_SEPARATION_CONSTANT = 1.0
"""Separation constant c for large-value sets (nodes 1/(J+1) apart)"""

VARIATION_EXACT_MAX_LEN = 4096
"""Longest sequence whose variation norm is computed exactly"""

FIXTURE_GROWTH_TOLERANCE = 0.10
"""Allowed relative growth of a re-run constant over its frozen value"""

FIXTURE_ABSOLUTE_SLACK = 1e-9
"""Absolute slack added when comparing against a frozen constant"""

# =============================================================================
# Output
# =============================================================================

FLOAT_SIGNIFICANT_DIGITS = 17
"""Significant digits when serializing floats"""

DEFAULT_SEED = 20250101
"""Seed used when none is configured"""

DEFAULT_LOCK_TIMEOUT = 10.0
"""Seconds to wait for a report or fixture lock"""

THREADS_ENV_VAR = "ERGOLAB_THREADS"
"""Environment variable capping the worker pool"""
