"""Itemsets, datasets and the set relations every engine relies on."""

from collections.abc import Sequence
from enum import IntEnum

from pyextremal import vars as v


class Ordering(IntEnum):
    """Three-way comparison result."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


def make_itemset(items, normalize=False):
    """
    Validate @items and return them as an itemset tuple.
    With @normalize the items are sorted and deduplicated first, otherwise
    they must already be strictly increasing.
    Raise ValueError for empty itemsets or ids outside the 32-bit range.
    """
    if normalize:
        items = sorted(set(items))
    itemset = tuple(items)
    if not itemset:
        raise ValueError("Itemsets must contain at least one item")
    prev = -1
    for item in itemset:
        if not isinstance(item, int) or isinstance(item, bool):
            raise ValueError(f"Item {item!r} is not an integer")
        if item < 0 or item > v.ITEM_MAX:
            raise ValueError(f"Item {item} does not fit in 32 unsigned bits")
        if item <= prev:
            raise ValueError(f"Items must be strictly increasing: {itemset}")
        prev = item
    return itemset


def lex_compare(a, b):
    """Compare two itemsets lexicographically; a proper prefix is Less."""
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def is_proper_subset(a, b):
    """Return True iff every item of @a occurs in @b and @a is shorter."""
    size = len(a)
    if size >= len(b):
        return False
    k = 0
    for item in b:
        if k == size:
            break
        if item == a[k]:
            k += 1
        elif item > a[k]:
            # a[k] was skipped over, it cannot occur later in b.
            return False
    return k == size


def is_proper_prefix(a, b):
    """Return True iff @a is shorter than @b and starts it."""
    return len(a) < len(b) and b[: len(a)] == a


def longest_common_prefix(a, b):
    """Return the number of leading items @a and @b share."""
    count = 0
    for x, y in zip(a, b):
        if x != y:
            break
        count += 1
    return count


class Dataset(Sequence):
    """
    An immutable ordered multiset of itemsets.
    The canonical flag asserts that the itemsets are sorted
    lexicographically; it is verified when set.
    """

    def __init__(self, itemsets=(), canonical=False, validate=True):
        """Create a dataset, validating every itemset unless told not to."""
        if validate:
            itemsets = tuple(make_itemset(itemset) for itemset in itemsets)
        else:
            itemsets = tuple(itemsets)
        self._itemsets = itemsets
        self._canonical = False
        if canonical:
            if not self.is_sorted():
                raise v.NotCanonicalError(
                    "Canonical flag set on a dataset that is not sorted"
                )
            self._canonical = True

    @property
    def itemsets(self):
        """Return the tuple of itemsets"""
        return self._itemsets

    @property
    def canonical(self):
        """Return whether the dataset is known to be sorted"""
        return self._canonical

    @property
    def total_items(self):
        """Return the sum of all itemset cardinalities"""
        return sum(len(itemset) for itemset in self._itemsets)

    def is_sorted(self):
        """Check lexicographic order with a linear scan."""
        data = self._itemsets
        return all(data[i] <= data[i + 1] for i in range(len(data) - 1))

    def as_canonical(self):
        """
        Return this dataset with the canonical flag set.
        Raise NotCanonicalError if the itemsets are out of order.
        """
        if self._canonical:
            return self
        return Dataset(self._itemsets, canonical=True, validate=False)

    def __getitem__(self, index):
        return self._itemsets[index]

    def __len__(self):
        return len(self._itemsets)

    def __iter__(self):
        return iter(self._itemsets)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._itemsets == other._itemsets

    def __hash__(self):
        return hash(self._itemsets)

    def __repr__(self):
        return (
            f"Dataset(n={len(self._itemsets)}, canonical={self._canonical})"
        )


def require_canonical(dataset):
    """Raise NotCanonicalError unless @dataset carries the canonical flag."""
    if not isinstance(dataset, Dataset) or not dataset.canonical:
        raise v.NotCanonicalError(
            "Engines need a canonical dataset, canonicalize it first"
        )
