"""
Frame-Parallel Execution
========================
Worker pool for Monte-Carlo frame batches.

Every batch carries its own frame indices and derives its random streams
from them, so results never depend on how many workers ran or in which
order batches finished. Results are always reassembled by batch index.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import threading
from concurrent.futures import Future, ProcessPoolExecutor, ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, TypeVar

import psutil

from modules.errors import SweepInfrastructureError

logger = logging.getLogger(__name__)

T = TypeVar('T')


@dataclass
class ParallelConfig:
    """Configuration for frame-parallel processing."""
    max_workers: int = 1  # 1 runs in-process
    use_processes: bool = True  # ProcessPoolExecutor (True) vs ThreadPoolExecutor (False)

    def __post_init__(self):
        """Clamp the worker count to the machine."""
        cpu_count = psutil.cpu_count(logical=True) or 1
        if self.max_workers < 1:
            logger.warning(f"max_workers={self.max_workers} is invalid; using 1")
            self.max_workers = 1
        elif self.max_workers > cpu_count:
            logger.warning(
                f"Reducing max_workers from {self.max_workers} to {cpu_count} "
                f"(logical CPU count)"
            )
            self.max_workers = cpu_count


@dataclass(frozen=True)
class FrameBatch:
    """A contiguous run of frames at one sweep point."""
    point: int
    first_frame: int
    count: int

    @property
    def frames(self) -> range:
        return range(self.first_frame, self.first_frame + self.count)


class FrameWorkerPool:
    """
    Manages a pool of workers for parallel frame batches.

    Uses ProcessPoolExecutor for true parallelism (bypasses the GIL).
    """

    def __init__(self, config: ParallelConfig):
        self.config = config
        self._executor: Optional[ProcessPoolExecutor | ThreadPoolExecutor] = None
        self._futures: dict[int, Future] = {}
        self._results: dict[int, Any] = {}
        self._errors: dict[int, str] = {}
        self._lock = threading.Lock()

    def __enter__(self) -> FrameWorkerPool:
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.shutdown()

    @property
    def in_process(self) -> bool:
        return self.config.max_workers == 1

    def start(self) -> None:
        """Start the worker pool (no executor when running in-process)."""
        if self.in_process:
            logger.debug("Running frame batches in-process")
            return
        if self.config.use_processes:
            self._executor = ProcessPoolExecutor(
                max_workers=self.config.max_workers,
                mp_context=mp.get_context('spawn'),
                initializer=_init_worker,
            )
            logger.info(f"Started ProcessPoolExecutor with {self.config.max_workers} workers")
        else:
            self._executor = ThreadPoolExecutor(max_workers=self.config.max_workers)
            logger.info(f"Started ThreadPoolExecutor with {self.config.max_workers} workers")

    def submit(self, batch_idx: int, func: Callable[..., T], *args, **kwargs) -> Future:
        """Submit a batch for processing."""
        if self._executor is None:
            raise SweepInfrastructureError("Worker pool not started")

        future = self._executor.submit(func, *args, **kwargs)
        with self._lock:
            self._futures[batch_idx] = future
        future.add_done_callback(lambda f, idx=batch_idx: self._on_complete(idx, f))
        return future

    def _on_complete(self, batch_idx: int, future: Future) -> None:
        try:
            result = future.result()
            with self._lock:
                self._results[batch_idx] = result
        except Exception as e:
            with self._lock:
                self._errors[batch_idx] = str(e)
            logger.error(f"Batch {batch_idx} failed: {e}")

    def wait_for_all(self) -> dict[int, Any]:
        """Wait for all submitted batches to complete."""
        with self._lock:
            futures_list = list(self._futures.values())
        if futures_list:
            wait(futures_list)
        with self._lock:
            return dict(self._results)

    def map_ordered(self, func: Callable[..., T], arg_list: Sequence[tuple]) -> list[T]:
        """
        Run func(*args) for every entry and return results in input order.

        Raises:
            SweepInfrastructureError: If any batch raised
        """
        if self.in_process:
            return [func(*args) for args in arg_list]

        self._clear()
        for idx, args in enumerate(arg_list):
            self.submit(idx, func, *args)
        results = self.wait_for_all()
        errors = self.get_errors()
        if errors:
            idx = min(errors)
            raise SweepInfrastructureError(f"{len(errors)} batch(es) failed", f"batch {idx}: {errors[idx]}")
        return [results[idx] for idx in range(len(arg_list))]

    def _clear(self) -> None:
        with self._lock:
            self._futures.clear()
            self._results.clear()
            self._errors.clear()

    def shutdown(self, wait: bool = True) -> None:
        """Shutdown the worker pool."""
        if self._executor:
            self._executor.shutdown(wait=wait)
            self._executor = None
        with self._lock:
            self._futures.clear()

    def get_errors(self) -> dict[int, str]:
        with self._lock:
            return dict(self._errors)


def _init_worker() -> None:
    """
    Initialize worker process.

    Called once per worker process in ProcessPoolExecutor.
    """
    import signal
    signal.signal(signal.SIGINT, signal.SIG_IGN)  # Ignore Ctrl+C in workers
