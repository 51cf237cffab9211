# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Report and Fixture Storage

Atomic file output with cross-process locking. Every write goes to a
temporary file in the target directory and is renamed into place while a
file lock on the target is held, so readers never observe partial reports
and concurrent calibrations never interleave fixture writes.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional, Union

from filelock import FileLock, Timeout

from ergolab.core.constants import DEFAULT_LOCK_TIMEOUT
from ergolab.core.errors import FixtureError, StorageError, StorageLockError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ReportStore:
    """
    Locked, atomic writer for reports and fixtures.

    Args:
        lock_enabled: Enable cross-process locking (default: True)
        lock_timeout: Lock acquisition timeout in seconds (default: 10.0)
        lock_dir: Directory for lock files (default: next to the target)

    Example:
        >>> store = ReportStore()
        >>> store.write_text("out/decay.csv", report.to_csv())
    """

    def __init__(
        self,
        lock_enabled: bool = True,
        lock_timeout: float = DEFAULT_LOCK_TIMEOUT,
        lock_dir: Optional[PathLike] = None,
    ):
        self.lock_enabled = lock_enabled
        self.lock_timeout = lock_timeout
        self.lock_dir = Path(lock_dir) if lock_dir is not None else None

    def _lock_for(self, target: Path) -> Optional[FileLock]:
        if not self.lock_enabled:
            return None
        directory = self.lock_dir if self.lock_dir is not None else target.parent
        directory.mkdir(parents=True, exist_ok=True)
        lock_file = directory / f"{target.name}.lock"
        logger.debug(f"Locking {target} via {lock_file}")
        return FileLock(str(lock_file), timeout=self.lock_timeout)

    def write_text(self, path: PathLike, text: str) -> Path:
        """
        Atomically replace a file's contents.

        Args:
            path: Target file
            text: UTF-8 text to write

        Returns:
            The resolved target path

        Raises:
            StorageError: If the file cannot be written
            StorageLockError: If the lock cannot be acquired
        """
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        lock = self._lock_for(target)
        if lock is None:
            self._write_unlocked(target, text)
            return target
        try:
            with lock:
                self._write_unlocked(target, text)
        except Timeout:
            raise StorageLockError(f"Failed to acquire lock on {target} within {self.lock_timeout}s")
        return target

    def _write_unlocked(self, target: Path, text: str) -> None:
        """Internal write without locking: temp file + rename."""
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=str(target.parent))
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, target)
            logger.debug(f"Wrote {len(text)} characters to {target}")
        except OSError as e:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise StorageError(f"Failed to write {target}: {e}")

    def read_json(self, path: PathLike) -> Dict[str, Any]:
        """
        Read a JSON document written by this store.

        Raises:
            FixtureError: If the file is missing or not a JSON object
        """
        target = Path(path)
        try:
            with open(target, encoding="utf-8") as handle:
                data = json.load(handle)
        except FileNotFoundError:
            raise FixtureError(f"Fixture {target} does not exist")
        except (OSError, ValueError) as e:
            raise FixtureError(f"Fixture {target} is unreadable: {e}")
        if not isinstance(data, dict):
            raise FixtureError(f"Fixture {target} must hold a JSON object")
        return data

    def write_json(self, path: PathLike, data: Dict[str, Any]) -> Path:
        return self.write_text(path, json.dumps(data, sort_keys=True, indent=2) + "\n")

    def __repr__(self) -> str:
        return f"ReportStore(lock_enabled={self.lock_enabled}, lock_timeout={self.lock_timeout})"
