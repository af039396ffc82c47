"""
Benchmark and verification drivers.
Run an engine matrix over one or more datasets, average wall time over
repetitions, and report speedup and range-search reduction relative to the
sequential lexicographic engine.
"""

import logging
import statistics

from pyextremal import vars as v
from pyextremal.generator import GeneratorConfig, generate, inject_variants, make_rng

_LOGGER = logging.getLogger(__name__)


class EngineRun:
    """Averaged measurements of one engine on one dataset."""

    def __init__(self, engine, wall_ms, stats, result_count, extra=None):
        """Initialise the run record."""
        self.engine = engine
        self.wall_ms = wall_ms
        self.stats = stats
        self.result_count = result_count
        self.extra = extra or {}
        self.speedup = None
        self.range_reduction = None

    def as_dict(self):
        """Return the run as a JSON-ready dict"""
        return {
            "engine": self.engine,
            "wall_ms": self.wall_ms,
            "result_count": self.result_count,
            "speedup": self.speedup,
            "range_reduction": self.range_reduction,
            **self.stats.as_dict(),
            **self.extra,
        }


class BenchmarkReport:
    """Engine runs over one dataset, with ratios against the lex engine."""

    def __init__(self, label, itemsets, total_items, runs, reps):
        """Initialise the report and compute the ratios."""
        self.label = label
        self.itemsets = itemsets
        self.total_items = total_items
        self.runs = runs
        self.reps = reps
        baseline = self.run_for(v.ENGINE_LEX)
        for run in runs:
            if baseline is None:
                continue
            run.speedup = _ratio(baseline.wall_ms, run.wall_ms)
            run.range_reduction = _ratio(
                baseline.stats.range_search_calls, run.stats.range_search_calls
            )

    def run_for(self, engine):
        """Return the run of @engine, or None"""
        for run in self.runs:
            if run.engine == engine:
                return run
        return None

    def as_dict(self):
        """Return the report as a JSON-ready dict"""
        return {
            "dataset": self.label,
            "itemsets": self.itemsets,
            "total_items": self.total_items,
            "reps": self.reps,
            "runs": [run.as_dict() for run in self.runs],
        }


def _ratio(numerator, denominator):
    """Return numerator / denominator, or None when undefined."""
    if not denominator:
        return None
    return numerator / denominator


def run_benchmark(finder, dataset, engines, reps=v.DEFAULT_BENCH_REPS, label=""):
    """
    Run every engine in @engines @reps times on @dataset and return a
    BenchmarkReport. The lex engine is always run as the baseline.
    """
    if reps < 1:
        raise ValueError(f"Repetitions must be at least 1, got {reps}")
    names = list(engines)
    if v.ENGINE_LEX not in names:
        names.insert(0, v.ENGINE_LEX)
    runs = []
    for name in names:
        engine = finder.engine(name)
        results = [engine.run(dataset) for _ in range(reps)]
        last = results[-1]
        runs.append(
            EngineRun(
                name,
                statistics.mean(result.wall_ms for result in results),
                last.stats,
                last.result_count,
                last.extra,
            )
        )
        _LOGGER.info("Benchmarked %s on %s over %d runs", name, label, reps)
    return BenchmarkReport(label, len(dataset), dataset.total_items, runs, reps)


def parse_grid(grid):
    """Parse 'n:alphabet:fmin[,n:alphabet:fmin...]' into GeneratorConfigs."""
    configs = []
    for point in grid.split(","):
        try:
            n, alphabet, f_min = point.split(":")
            configs.append(GeneratorConfig(int(n), int(alphabet), float(f_min)))
        except ValueError as err:
            raise ValueError(f"Bad grid point {point!r}: {err}") from err
    return configs


class Disagreement:
    """The first position where two engines disagree on one trial."""

    def __init__(self, trial, config, reference, engine, position, dataset):
        """Initialise the record."""
        self.trial = trial
        self.config = config
        self.reference = reference
        self.engine = engine
        self.position = position
        self.itemset = dataset[position]

    def __str__(self):
        return (
            f"trial {self.trial} ({self.config}): {self.engine} disagrees with "
            f"{self.reference} at position {self.position} {self.itemset}"
        )


def first_difference(a, b):
    """Return the first index where two flag lists differ, or None."""
    for index, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return index
    if len(a) != len(b):
        return min(len(a), len(b))
    return None


def verify_engines(finder, engines, dataset):
    """
    Run @engines (plus the oracle when the dataset is small enough) and
    return (reference, engine, position) of the first disagreement, or None.
    """
    names = list(engines)
    cap = finder.options[v.OPT_ORACLE_CAP]
    if v.ENGINE_NAIVE in names and len(dataset) > cap:
        _LOGGER.warning(
            "Skipping the oracle: %d itemsets exceed the cap of %d",
            len(dataset),
            cap,
        )
        names.remove(v.ENGINE_NAIVE)
    elif v.ENGINE_NAIVE not in names and len(dataset) <= cap:
        names.insert(0, v.ENGINE_NAIVE)
    if not names:
        return None
    results = {name: finder.engine(name).run(dataset).flags for name in names}
    reference = names[0]
    for name in names[1:]:
        position = first_difference(results[reference], results[name])
        if position is not None:
            return reference, name, position
    return None


def run_verification(finder, engines, trials, configs, injections=0):
    """
    Generate @trials datasets cycling through @configs (seeds advance per
    trial), optionally inject duplicates and prefixes, and return the first
    Disagreement or None.
    """
    for trial in range(trials):
        base = configs[trial % len(configs)]
        config = GeneratorConfig(base.n, base.alphabet, base.f_min, base.seed + trial)
        dataset = generate(config).dataset
        if injections:
            dataset = inject_variants(dataset, make_rng(config.seed), injections)
        outcome = verify_engines(finder, engines, dataset)
        if outcome is not None:
            reference, engine, position = outcome
            return Disagreement(trial, config, reference, engine, position, dataset)
        _LOGGER.debug("Trial %d agreed on %d itemsets", trial, len(dataset))
    return None
