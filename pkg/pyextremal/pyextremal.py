"""pyextremal is a library to identify the extremal itemsets of a dataset."""

import logging
import os
from copy import deepcopy

from pyextremal import vars as v
from pyextremal.bench import run_benchmark, run_verification, verify_engines
from pyextremal.dataset import canonicalize
from pyextremal.lex import LexEngine
from pyextremal.memo import MemoEngine
from pyextremal.oracle import OracleEngine
from pyextremal.parallel import ParallelEngine, default_workers

_LOGGER = logging.getLogger(__name__)


class ExtremalSetFinder:
    """Main ExtremalSetFinder object abstraction"""

    def __init__(self, **options):
        """
        Create an ExtremalSetFinder object.
        Keyword arguments override the entries of vars.DEFAULT_OPTIONS;
        invalid ones raise ValueError.
        """
        self._options = deepcopy(v.DEFAULT_OPTIONS)
        if options and not self.set_options(**options):
            raise ValueError(f"Invalid options: {', '.join(sorted(options))}")
        self.engines = {
            v.ENGINE_NAIVE: self._make_oracle,
            v.ENGINE_LEX: self._make_lex,
            v.ENGINE_MEMO: self._make_memo,
            v.ENGINE_PARALLEL: self._make_parallel,
        }

    @property
    def options(self):
        """Return a copy of the current options"""
        return dict(self._options)

    def set_options(self, **kwargs):
        """
        Set engine options. Valid kwargs are the keys of
        vars.DEFAULT_OPTIONS. Returns True on success, False on fail.
        """
        for arg, value in kwargs.items():
            if arg not in self._options:
                _LOGGER.error("Invalid option: %s", arg)
                return False
            if not self._valid_option(arg, value):
                _LOGGER.error("Invalid value for option %s: %r", arg, value)
                return False
        self._options.update(kwargs)
        return True

    @staticmethod
    def _valid_option(arg, value):
        """Check a single option value."""
        if arg == v.OPT_THREADS:
            return value is None or (isinstance(value, int) and value >= 1)
        if arg == v.OPT_BACKEND:
            return value in (v.BACKEND_PROCESS, v.BACKEND_THREAD)
        if arg in (v.OPT_CHUNK, v.OPT_ORACLE_CAP):
            return isinstance(value, int) and value >= 1
        if arg == v.OPT_SEARCH:
            return value in (v.SEARCH_BINARY, v.SEARCH_GALLOPING)
        if arg in (v.OPT_VERIFY_WITNESS, v.OPT_RESUME_FRONTIER):
            return isinstance(value, bool)
        return True

    def threads(self):
        """
        Return the worker count: the threads option, else the
        PYEXTREMAL_THREADS environment variable, else the CPU count.
        """
        if self._options[v.OPT_THREADS] is not None:
            return self._options[v.OPT_THREADS]
        env = os.environ.get(v.ENV_THREADS)
        if env:
            try:
                threads = int(env)
                if threads >= 1:
                    return threads
            except ValueError:
                pass
            _LOGGER.warning("Ignoring invalid %s value: %r", v.ENV_THREADS, env)
        return default_workers()

    def _make_oracle(self):
        return OracleEngine()

    def _make_lex(self):
        return LexEngine(
            self._options[v.OPT_SEARCH], self._options[v.OPT_VERIFY_WITNESS]
        )

    def _make_memo(self):
        return MemoEngine(
            self._options[v.OPT_SEARCH],
            self._options[v.OPT_DUMP_GRAPHS],
            self._options[v.OPT_RESUME_FRONTIER],
        )

    def _make_parallel(self):
        return ParallelEngine(
            self.threads(),
            self._options[v.OPT_BACKEND],
            self._options[v.OPT_CHUNK],
            self._options[v.OPT_SEARCH],
        )

    def engine(self, name):
        """Return a configured engine instance for @name."""
        try:
            factory = self.engines[name]
        except KeyError:
            raise ValueError(
                f"Unknown engine {name!r}, choose from {', '.join(v.ENGINE_NAMES)}"
            ) from None
        return factory()

    def find_minimal(self, dataset, algo=v.ENGINE_LEX):
        """
        Run engine @algo on a canonical @dataset and return the
        EngineResult; its flags mark the minimal itemsets.
        """
        return self.engine(algo).run(dataset)

    def find_maximal(self, dataset):
        """Return the EngineResult of the maximal set oracle on @dataset."""
        return OracleEngine(maximal=True).run(dataset)

    def minimal_itemsets(self, dataset, algo=v.ENGINE_LEX, remap=v.REMAP_NONE):
        """
        Canonicalize any @dataset with @remap, run @algo and return the
        minimal itemsets in original ids, in canonical order.
        """
        canonical, remapping = canonicalize(dataset, remap)
        result = self.find_minimal(canonical, algo)
        return [remapping.restore(itemset) for itemset in result.retained(canonical)]

    def verify(self, dataset, engines=v.ENGINE_NAMES):
        """
        Run @engines on a canonical @dataset and return the first
        disagreement as (reference, engine, position), or None.
        """
        return verify_engines(self, engines, dataset)

    def verify_generated(self, engines, trials, configs, injections=0):
        """Run a generated differential campaign; see bench.run_verification."""
        return run_verification(self, engines, trials, configs, injections)

    def benchmark(self, dataset, engines, reps=v.DEFAULT_BENCH_REPS, label=""):
        """Benchmark @engines on a canonical @dataset; see bench.run_benchmark."""
        return run_benchmark(self, dataset, engines, reps, label)
