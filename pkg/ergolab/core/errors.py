# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Ergolab Exceptions

Exception hierarchy shared by every layer of the laboratory.
"""


class ErgolabError(Exception):
    """Base exception for ergolab errors."""

    pass


class CapacityError(ErgolabError):
    """Raised when a request exceeds addressable memory or index arithmetic."""

    pass


class BoundViolationError(ErgolabError):
    """Raised when a value that must be 1-bounded is not."""

    pass


class SequenceRangeError(ErgolabError):
    """Raised when a sequence is read outside its stored range."""

    pass


class PreconditionError(ErgolabError):
    """Raised when an operation's precondition does not hold."""

    pass


class ShapeError(ErgolabError):
    """Raised on mismatched lengths, moduli or partitions."""

    pass


class DegeneratePolynomialError(ErgolabError):
    """Raised when a trigonometric polynomial has empty support."""

    pass


class DomainError(ErgolabError):
    """Raised when a point does not belong to a system's space."""

    pass


class InvertibilityError(ErgolabError):
    """Raised when negative times are requested on a non-invertible system."""

    pass


class ConfigurationError(ErgolabError):
    """Raised when an experiment configuration is invalid."""

    pass


class FixtureError(ErgolabError):
    """Raised when a frozen-constant fixture is missing keys or unreadable."""

    pass


class StorageError(ErgolabError):
    """Raised when a report or fixture cannot be written or read."""

    pass


class StorageLockError(StorageError):
    """Raised when a storage lock cannot be acquired."""

    pass
