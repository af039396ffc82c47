"""
Synthetic dataset generator.
Each of d items draws a frequency f_i uniformly from [f_min, 1] and joins
floor(f_i * n) distinct itemsets chosen uniformly at random. The random
source is numpy's PCG64 bit generator, so a seed reproduces a dataset on
any platform.
"""

import logging
import math

import numpy as np

from pyextremal import vars as v
from pyextremal.dataset import canonicalize
from pyextremal.model import Dataset

_LOGGER = logging.getLogger(__name__)


class GeneratorConfig:
    """Parameters of one generated dataset."""

    def __init__(self, n, alphabet, f_min, seed=0):
        """Initialise and validate the configuration."""
        if n < 0:
            raise ValueError(f"Itemset count must not be negative, got {n}")
        if alphabet < 1:
            raise ValueError(f"Alphabet size must be at least 1, got {alphabet}")
        if not 0.0 <= f_min <= 1.0:
            raise ValueError(f"Minimal frequency must be in [0, 1], got {f_min}")
        if not 0 <= seed < 2**64:
            raise ValueError(f"Seed must fit in 64 unsigned bits, got {seed}")
        self.n = n
        self.alphabet = alphabet
        self.f_min = f_min
        self.seed = seed

    def as_dict(self):
        """Return the configuration as a dict"""
        return {
            "n": self.n,
            "alphabet": self.alphabet,
            "f_min": self.f_min,
            "seed": self.seed,
        }

    def __repr__(self):
        return (
            f"GeneratorConfig(n={self.n}, alphabet={self.alphabet}, "
            f"f_min={self.f_min}, seed={self.seed})"
        )


class GeneratedDataset:
    """A generated canonical dataset and its side-channel metadata."""

    def __init__(self, dataset, config, frequencies, item_counts, dropped):
        """Initialise the result object."""
        self.dataset = dataset
        self.config = config
        self.frequencies = frequencies
        self.item_counts = item_counts
        self.dropped = dropped

    @property
    def metadata(self):
        """Return the JSON-ready metadata dict"""
        return {
            "config": self.config.as_dict(),
            "dropped_slots": self.dropped,
            "frequencies": self.frequencies,
            "item_counts": self.item_counts,
            "itemsets": len(self.dataset),
            "total_items": self.dataset.total_items,
        }


def make_rng(seed):
    """Return the seeded random source used by the generator."""
    return np.random.Generator(np.random.PCG64(seed))


def generate(config):
    """Generate a canonical dataset for @config."""
    rng = make_rng(config.seed)
    n, alphabet = config.n, config.alphabet
    membership = np.zeros((n, alphabet), dtype=bool)
    frequencies = []
    item_counts = []
    for column in range(alphabet):
        freq = float(rng.uniform(config.f_min, 1.0))
        count = math.floor(freq * n)
        if count:
            slots = rng.choice(n, size=count, replace=False)
            membership[slots, column] = True
        frequencies.append(freq)
        item_counts.append(count)
    realized = membership.sum(axis=0).tolist()
    if realized != item_counts:
        raise RuntimeError(f"Slot counts {realized} differ from {item_counts}")
    itemsets = []
    for row in membership:
        items = np.flatnonzero(row)
        if items.size:
            itemsets.append(tuple((items + 1).tolist()))
    dropped = n - len(itemsets)
    if dropped:
        _LOGGER.info("Dropped %d empty itemsets out of %d slots", dropped, n)
    dataset, _ = canonicalize(Dataset(itemsets, validate=False), v.REMAP_NONE)
    _LOGGER.debug("Generated %d itemsets for %s", len(dataset), config)
    return GeneratedDataset(dataset, config, frequencies, item_counts, dropped)


def inject_variants(dataset, rng, count):
    """
    Return a canonical copy of @dataset with @count extra itemsets, each a
    duplicate or a proper prefix of a randomly chosen existing itemset.
    """
    if not len(dataset) or count <= 0:
        return canonicalize(dataset, v.REMAP_NONE)[0]
    itemsets = list(dataset)
    for _ in range(count):
        source = itemsets[int(rng.integers(len(itemsets)))]
        cut = int(rng.integers(1, len(source) + 1))
        itemsets.append(source[:cut])
    return canonicalize(Dataset(itemsets, validate=False), v.REMAP_NONE)[0]
