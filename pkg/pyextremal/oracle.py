"""
Brute force minimal and maximal set identification.
Quadratic pairwise scans over hash sets; ground truth for the fast engines
on small inputs.
"""

import logging

from pyextremal import vars as v
from pyextremal.engine import Engine

_LOGGER = logging.getLogger(__name__)


def _scan(dataset, dominated):
    """
    Flag every itemset as retained unless an earlier equal itemset exists
    or dominated(other, mine) holds for some other itemset.
    """
    sets = [frozenset(itemset) for itemset in dataset]
    flags = [True] * len(sets)
    seen = set()
    for i, mine in enumerate(sets):
        if mine in seen:
            flags[i] = False
            continue
        seen.add(mine)
        if any(dominated(other, mine) for other in sets):
            flags[i] = False
    return flags


def naive_minimal(dataset):
    """
    Return MinimalityFlags of @dataset: False where another itemset is a
    proper subset, or where an equal itemset occurs earlier.
    """
    return _scan(dataset, lambda other, mine: other < mine)


def naive_maximal(dataset):
    """
    Return flags of @dataset retained as maximal: False where another
    itemset is a proper superset, or where an equal itemset occurs earlier.
    """
    return _scan(dataset, lambda other, mine: other > mine)


class OracleEngine(Engine):
    """Pairwise reference engine. Works on any dataset order."""

    name = v.ENGINE_NAIVE
    requires_canonical = False

    def __init__(self, maximal=False):
        """Initialise the oracle for minimal (default) or maximal sets."""
        self.maximal = maximal

    def _find(self, dataset, stats, extra):
        _LOGGER.debug(
            "Pairwise %s scan over %d itemsets",
            "maximal" if self.maximal else "minimal",
            len(dataset),
        )
        if self.maximal:
            return naive_maximal(dataset)
        return naive_minimal(dataset)
