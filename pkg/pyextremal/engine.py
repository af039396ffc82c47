"""Common engine plumbing: timing, result packaging."""

import logging
import time

from pyextremal.model import require_canonical
from pyextremal.stats import RangeSearchStats

_LOGGER = logging.getLogger(__name__)


class EngineResult:
    """Flags, counters and wall time of one engine run."""

    def __init__(self, engine, flags, stats, wall_ms, extra=None):
        """Initialise the result object."""
        self.engine = engine
        self.flags = flags
        self.stats = stats
        self.wall_ms = wall_ms
        self.extra = extra or {}

    @property
    def result_count(self):
        """Return the number of retained itemsets"""
        return sum(self.flags)

    def retained(self, dataset):
        """Return the retained itemsets of @dataset in dataset order."""
        return [itemset for itemset, keep in zip(dataset, self.flags) if keep]

    def as_dict(self):
        """Return the JSON stats object of this run"""
        report = self.stats.as_dict()
        report["wall_ms"] = self.wall_ms
        report["result_count"] = self.result_count
        report.update(self.extra)
        return report


class Engine:
    """
    Base class of the extremal set engines.
    Subclasses implement _find() returning the flag list.
    """

    name = None
    requires_canonical = True

    def run(self, dataset):
        """Run the engine on @dataset and return an EngineResult."""
        if self.requires_canonical:
            require_canonical(dataset)
        stats = RangeSearchStats()
        extra = {}
        start = time.perf_counter()
        flags = self._find(dataset, stats, extra)
        wall_ms = (time.perf_counter() - start) * 1000.0
        result = EngineResult(self.name, flags, stats, wall_ms, extra)
        _LOGGER.info(
            "Engine %s kept %d of %d itemsets in %.2f ms",
            self.name,
            result.result_count,
            len(dataset),
            wall_ms,
        )
        return result

    def _find(self, dataset, stats, extra):
        raise NotImplementedError
