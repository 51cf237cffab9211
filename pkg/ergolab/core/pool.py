# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Worker Pool

Thread pool used for grid chunks, sweeps over base points and seeded trials.
Results always come back in submission order, so the pool size never changes
a report.
"""

import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

from ergolab.core.constants import THREADS_ENV_VAR

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_lock = threading.Lock()
_configured_threads: Optional[int] = None


def configure_threads(threads: Optional[int]) -> None:
    """Set the pool size used when the environment does not cap it."""
    global _configured_threads
    with _lock:
        _configured_threads = threads if threads and threads > 0 else None


def worker_count() -> int:
    """
    Number of worker threads.

    ERGOLAB_THREADS wins over the configured value; both default to the CPU count.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw:
        try:
            value = int(raw)
            if value > 0:
                return value
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV_VAR}={raw!r}")
    with _lock:
        if _configured_threads:
            return _configured_threads
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Apply fn to every item, in parallel when more than one worker is available."""
    work = list(items)
    threads = min(worker_count(), len(work))
    if threads <= 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, work))


def trial_generators(seed: int, trials: int) -> List[np.random.Generator]:
    """One independent generator per trial index, forked from a single seed."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [np.random.default_rng(child) for child in children]
