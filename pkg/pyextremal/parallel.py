"""
Parallel lexicographic engine.
After the sequential prefix pass, P workers drain a shared fetch-and-
increment counter over dataset positions and run read-only subset queries,
clearing shared flags one way (True to False).
"""

import logging
import multiprocessing
import os
import queue
import threading

from pyextremal import vars as v
from pyextremal.engine import Engine
from pyextremal.lex import RangeSearch, contains_subset_of, prefix_subsume_pass
from pyextremal.stats import RangeSearchStats

_LOGGER = logging.getLogger(__name__)

COLLECT_POLL = 0.1


class WorkDispenser:
    """Hands out dataset positions; each position is dispensed exactly once."""

    def __init__(self, limit, chunk=1, ctx=None):
        """Initialise a counter over positions [0, @limit) in @chunk steps."""
        if chunk < 1:
            raise ValueError(f"Chunk size must be at least 1, got {chunk}")
        ctx = ctx or multiprocessing.get_context()
        self._next = ctx.Value("q", 0)
        self.limit = limit
        self.chunk = chunk

    def take(self):
        """Fetch-and-increment; return the range of positions claimed."""
        with self._next.get_lock():
            start = self._next.value
            self._next.value = start + self.chunk
        return range(start, min(start + self.chunk, self.limit))


class SharedFlags:
    """Per-position flag bytes, shared without locks; cleared one way only."""

    def __init__(self, flags, ctx=None):
        """Initialise the shared cells from a list of booleans."""
        ctx = ctx or multiprocessing.get_context()
        self._cells = ctx.RawArray("b", [1 if flag else 0 for flag in flags])

    def __getitem__(self, index):
        return bool(self._cells[index])

    def __len__(self):
        return len(self._cells)

    def clear(self, index):
        """Mark the itemset at @index as not retained."""
        self._cells[index] = 0

    def to_list(self):
        """Return the flags as a list of booleans"""
        return [bool(cell) for cell in self._cells]


def _drain(itemsets, dispenser, flags, search, results):
    """Worker loop: query dispensed positions until the counter runs out."""
    stats = RangeSearchStats()
    searcher = RangeSearch(itemsets, stats, search)
    last = len(itemsets) - 1
    while True:
        batch = dispenser.take()
        if not batch:
            break
        for i in batch:
            if i >= last or not flags[i]:
                continue
            stats.subset_queries += 1
            if contains_subset_of(searcher, itemsets[i], i + 1, last):
                flags.clear(i)
    results.put(stats.as_dict())


def default_workers():
    """Return the available hardware parallelism."""
    return os.cpu_count() or 1


class ParallelEngine(Engine):
    """Lexicographic engine with P workers over a shared work counter."""

    name = v.ENGINE_PARALLEL

    def __init__(
        self,
        workers=None,
        backend=v.BACKEND_PROCESS,
        chunk=1,
        search=v.SEARCH_BINARY,
    ):
        """Initialise the engine; @workers defaults to the CPU count."""
        if workers is None:
            workers = default_workers()
        if workers < 1:
            raise ValueError(f"Worker count must be at least 1, got {workers}")
        if backend not in (v.BACKEND_PROCESS, v.BACKEND_THREAD):
            raise ValueError(f"Unknown worker backend: {backend}")
        if chunk < 1:
            raise ValueError(f"Chunk size must be at least 1, got {chunk}")
        self.workers = workers
        self.backend = backend
        self.chunk = chunk
        self.search = search

    def _find(self, dataset, stats, extra):
        data = dataset.itemsets
        flags = prefix_subsume_pass(dataset)
        extra["workers"] = self.workers
        if len(data) < 2:
            return flags
        ctx = multiprocessing.get_context()
        shared = SharedFlags(flags, ctx)
        dispenser = WorkDispenser(len(data), self.chunk, ctx)
        args = (data, dispenser, shared, self.search)
        if self.workers == 1:
            results = queue.SimpleQueue()
            _drain(*args, results)
            collected = [results.get()]
        elif self.backend == v.BACKEND_THREAD:
            collected = self._run_threads(args)
        else:
            collected = self._run_processes(ctx, args)
        for counts in collected:
            stats.merge(RangeSearchStats.from_dict(counts))
        return shared.to_list()

    def _run_threads(self, args):
        results = queue.SimpleQueue()
        workers = [
            threading.Thread(target=_drain, args=(*args, results), daemon=True)
            for _ in range(self.workers)
        ]
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()
        collected = []
        while not results.empty():
            collected.append(results.get())
        if len(collected) != len(workers):
            raise RuntimeError(
                f"{len(workers) - len(collected)} worker threads failed"
            )
        return collected

    def _run_processes(self, ctx, args):
        results = ctx.Queue()
        workers = [
            ctx.Process(target=_drain, args=(*args, results), daemon=True)
            for _ in range(self.workers)
        ]
        for worker in workers:
            worker.start()
        _LOGGER.debug("Started %d worker processes", len(workers))
        collected = []
        try:
            # Drain the queue before joining so workers can exit.
            while len(collected) < len(workers):
                try:
                    collected.append(results.get(timeout=COLLECT_POLL))
                except queue.Empty:
                    failed = [w for w in workers if w.exitcode not in (None, 0)]
                    if failed:
                        raise RuntimeError(
                            f"Worker process exited with code {failed[0].exitcode}"
                        ) from None
        finally:
            for worker in workers:
                if worker.is_alive() and len(collected) < len(workers):
                    worker.terminate()
                worker.join()
        return collected


def get_minimal_itemsets_parallel(
    dataset, workers, backend=v.BACKEND_PROCESS, chunk=1, search=v.SEARCH_BINARY
):
    """Return (MinimalityFlags, RangeSearchStats) computed by P workers."""
    result = ParallelEngine(workers, backend, chunk, search).run(dataset)
    return result.flags, result.stats
