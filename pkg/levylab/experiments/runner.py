"""Replicate runner: fans independent replicates over worker processes."""

import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import psutil
from tqdm import tqdm

from ..utils.config import ConfigManager
from ..utils.exceptions import ExperimentError, LevyLabError
from ..utils.logger import Logger
from ..utils.random_streams import substream
from .tasks import Row, Task, TaskPayload

Columns = Dict[str, np.ndarray]


def _run_chunk(task: Task, payload: TaskPayload, seed: int, stream: str,
               start: int, stop: int) -> List[Row]:
    """Run replicates ``start..stop-1``; replicate i always draws from substream i."""
    return [task(payload, substream(seed, stream, i)) for i in range(start, stop)]


def _columns(rows: Sequence[Row]) -> Columns:
    if not rows:
        return {}
    names = list(rows[0])
    for row in rows:
        if list(row) != names:
            raise ExperimentError(f"replicates returned different fields: {names} vs {list(row)}")
    return {name: np.array([row[name] for row in rows], dtype=float) for name in names}


class ExperimentRunner:
    """Runs replicate tasks in chunks, inline or on a process pool.

    Results are ordered by replicate index, and each replicate has its own
    random substream, so the output does not depend on the worker count.
    """

    def __init__(self, config_manager: Optional[ConfigManager] = None,
                 workers: Optional[int] = None, chunk_size: Optional[int] = None,
                 progress: Optional[bool] = None):
        """Initialize runner.

        Args:
            config_manager: Source of ``parallel.*`` defaults
            workers: Worker processes; ``parallel.workers`` or a psutil
                heuristic when None
            chunk_size: Replicates per submitted job
            progress: Show a tqdm bar per batch
        """
        self.logger = Logger(__name__)
        config = config_manager or ConfigManager()
        self.workers = workers or config.get('parallel.workers') or self._get_optimal_workers()
        self.chunk_size = int(chunk_size or config.get('parallel.chunk_size', 256))
        self.progress = bool(config.get('parallel.progress', False) if progress is None else progress)
        if self.workers < 1 or self.chunk_size < 1:
            raise ExperimentError("workers and chunk_size must be positive")

        self.run_stats = {
            'batches': 0,
            'replicates': 0,
            'parallel_batches': 0,
            'sequential_batches': 0,
            'fallbacks': 0,
        }

    def _get_optimal_workers(self) -> int:
        """Calculate optimal number of workers based on system resources."""
        cpu_count = mp.cpu_count()
        memory_gb = psutil.virtual_memory().total / (1024**3)

        # 80% of the cores, at most one worker per 1.2GB of RAM
        max_workers_by_cpu = max(1, int(cpu_count * 0.8))
        max_workers_by_memory = max(1, int(memory_gb / 1.2))

        optimal_workers = min(max_workers_by_cpu, max_workers_by_memory, 12)
        self.logger.info(f"System: {cpu_count} CPUs, {memory_gb:.1f}GB RAM -> {optimal_workers} workers")
        return optimal_workers

    def _chunks(self, n: int) -> List[Tuple[int, int]]:
        return [(start, min(start + self.chunk_size, n)) for start in range(0, n, self.chunk_size)]

    def map(self, task: Task, payload: TaskPayload, seed: int, stream: str, n: int) -> Columns:
        """Run ``n`` replicates of ``task`` on the named stream.

        Args:
            task: Module-level task function
            payload: Model, settings and parameters shared by all replicates
            seed: Master seed
            stream: Stream name; distinct ensembles must use distinct names
            n: Number of replicates

        Returns:
            One array per output field, indexed by replicate

        Raises:
            LevyLabError: Re-raised from the task
        """
        if n < 1:
            raise ExperimentError(f"replicate count must be positive, got {n}")
        start_time = time.perf_counter()
        chunks = self._chunks(n)

        if self.workers > 1 and len(chunks) > 1:
            rows = self._map_parallel(task, payload, seed, stream, chunks)
        else:
            self.run_stats['sequential_batches'] += 1
            rows = self._map_sequential(task, payload, seed, stream, chunks)

        self.run_stats['batches'] += 1
        self.run_stats['replicates'] += n
        self.logger.log_performance(f"batch {stream}", time.perf_counter() - start_time,
                                    {'replicates': n, 'task': task.__name__})
        return _columns(rows)

    def _progress(self, total: int, stream: str) -> tqdm:
        return tqdm(total=total, desc=stream, unit='rep', disable=not self.progress, leave=False)

    def _map_sequential(self, task: Task, payload: TaskPayload, seed: int, stream: str,
                        chunks: Sequence[Tuple[int, int]]) -> List[Row]:
        rows: List[Row] = []
        with self._progress(chunks[-1][1], stream) as bar:
            for start, stop in chunks:
                rows.extend(_run_chunk(task, payload, seed, stream, start, stop))
                bar.update(stop - start)
        return rows

    def _map_parallel(self, task: Task, payload: TaskPayload, seed: int, stream: str,
                      chunks: Sequence[Tuple[int, int]]) -> List[Row]:
        results: Dict[int, List[Row]] = {}
        try:
            with ProcessPoolExecutor(max_workers=min(self.workers, len(chunks))) as executor:
                futures = [
                    executor.submit(_run_chunk, task, payload, seed, stream, start, stop)
                    for start, stop in chunks
                ]
                with self._progress(chunks[-1][1], stream) as bar:
                    for index, future in enumerate(futures):
                        results[index] = future.result()
                        bar.update(chunks[index][1] - chunks[index][0])
        except LevyLabError:
            raise
        except Exception as e:
            self.logger.error(f"Multiprocessing failed, falling back to sequential: {e}")
            self.run_stats['fallbacks'] += 1
            self.run_stats['sequential_batches'] += 1
            return self._map_sequential(task, payload, seed, stream, chunks)

        self.run_stats['parallel_batches'] += 1
        return [row for index in range(len(chunks)) for row in results[index]]

    def get_run_stats(self) -> Dict[str, int]:
        """Get runner statistics."""
        return dict(self.run_stats)
