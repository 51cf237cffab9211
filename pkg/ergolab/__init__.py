"""
Ergolab

Numerical laboratory for multiplicative weights in ergodic averages:
exponential sums, summability kernels, Gowers norms, weighted bilinear
averages along orbits, maximal functions and frequency-partition lemmas.
"""

__version__ = "0.1.0"
__author__ = "Contributors to the ergolab project"
__license__ = "MIT"

# Weights and sequences
from ergolab.core.arith_seq import (
    AutomaticKind,
    RandomFamily,
    SequenceKind,
    WeightSequence,
    automatic_sequence,
    liouville_sieve,
    mobius_sieve,
    multiplicative_from_primes,
    polynomial_phase,
    random_multiplicative,
    unit_weight,
)

# Averages and maximal functions
from ergolab.core.averages import MaximalReport, TimeScale, decay_profile, maximal_function

# Systems and observables
from ergolab.core.dynamics import DoublingPoint, DynSystem, Observable, SystemKind

# Exceptions
from ergolab.core.errors import (
    BoundViolationError,
    CapacityError,
    ConfigurationError,
    DegeneratePolynomialError,
    DomainError,
    ErgolabError,
    FixtureError,
    InvertibilityError,
    PreconditionError,
    SequenceRangeError,
    ShapeError,
    StorageError,
    StorageLockError,
)
from ergolab.core.gowers import CyclicSequence, GowersResult, gowers_norm_cyclic, gowers_norm_interval
from ergolab.core.kernels import KernelForm, KernelSpec
from ergolab.core.partition import FrequencySet
from ergolab.core.report import ExperimentReport
from ergolab.core.spectra import SupEstimate, TrigPolynomial, sup_norm
from ergolab.core.storage import ReportStore

# Configuration management
from ergolab.settings import ConfigManager, LabConfig

__all__ = [
    # Weights
    "WeightSequence",
    "SequenceKind",
    "AutomaticKind",
    "RandomFamily",
    "mobius_sieve",
    "liouville_sieve",
    "multiplicative_from_primes",
    "random_multiplicative",
    "unit_weight",
    "automatic_sequence",
    "polynomial_phase",
    # Polynomials and kernels
    "TrigPolynomial",
    "SupEstimate",
    "sup_norm",
    "KernelForm",
    "KernelSpec",
    # Gowers norms
    "CyclicSequence",
    "GowersResult",
    "gowers_norm_cyclic",
    "gowers_norm_interval",
    # Dynamics and averages
    "DynSystem",
    "SystemKind",
    "DoublingPoint",
    "Observable",
    "TimeScale",
    "MaximalReport",
    "decay_profile",
    "maximal_function",
    # Frequency sets
    "FrequencySet",
    # Reports and storage
    "ExperimentReport",
    "ReportStore",
    # Configuration management
    "ConfigManager",
    "LabConfig",
    # Exceptions
    "ErgolabError",
    "CapacityError",
    "BoundViolationError",
    "SequenceRangeError",
    "PreconditionError",
    "ShapeError",
    "DegeneratePolynomialError",
    "DomainError",
    "InvertibilityError",
    "ConfigurationError",
    "FixtureError",
    "StorageError",
    "StorageLockError",
    # Version
    "__version__",
]
