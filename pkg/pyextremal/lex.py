"""
Lexicographic minimal set identification.
The prefix subsumption pass and the recursive subset search over a
canonical dataset, with counted binary-search subroutines.
"""

import logging
from bisect import bisect_left, bisect_right
from operator import itemgetter

from pyextremal import vars as v
from pyextremal.engine import Engine
from pyextremal.model import is_proper_subset, require_canonical
from pyextremal.oracle import naive_maximal
from pyextremal.stats import RangeSearchStats

_LOGGER = logging.getLogger(__name__)


def _gallop(data, x, lo, hi, key, right):
    """
    Exponential steps from @lo, then binary search in the bracketed run.
    Same result as bisect_left (or bisect_right if @right) on data[lo:hi].
    """
    low = lo
    pos = lo
    step = 1
    while pos < hi:
        k = data[pos] if key is None else key(data[pos])
        if k > x or (k == x and not right):
            break
        low = pos + 1
        pos = lo + step
        step *= 2
    high = min(pos, hi)
    if right:
        return bisect_right(data, x, low, high, key=key)
    return bisect_left(data, x, low, high, key=key)


class RangeSearch:
    """
    The NextItem / NextBeginRange / NextEndRange subroutines bound to one
    dataset and one stats sink. Counters count calls, not comparisons.
    """

    def __init__(self, itemsets, stats=None, search=v.SEARCH_BINARY):
        """Initialise the searcher over a tuple of sorted itemsets."""
        if search not in (v.SEARCH_BINARY, v.SEARCH_GALLOPING):
            raise ValueError(f"Unknown range search strategy: {search}")
        self.itemsets = itemsets
        self.stats = stats if stats is not None else RangeSearchStats()
        self.galloping = search == v.SEARCH_GALLOPING

    def next_item(self, itemset, j, target):
        """
        Return the smallest position k >= @j with itemset[k] >= @target,
        or None when every remaining item is smaller.
        """
        self.stats.next_item_calls += 1
        size = len(itemset)
        if self.galloping:
            k = _gallop(itemset, target, j, size, None, False)
        else:
            k = bisect_left(itemset, target, j)
        return k if k < size else None

    def next_end_range(self, b, e, item, col):
        """
        Return the last position in [@b, @e] whose itemset holds @item in
        column @col. The itemset at @b must hold it.
        """
        self.stats.next_end_range_calls += 1
        key = itemgetter(col)
        if self.galloping:
            return _gallop(self.itemsets, item, b, e + 1, key, True) - 1
        return bisect_right(self.itemsets, item, b, e + 1, key=key) - 1

    def next_begin_range(self, b, e, item, col):
        """
        Return the first position in [@b, @e] whose item in column @col is
        >= @item, or @e + 1 when there is none.
        """
        self.stats.next_begin_range_calls += 1
        key = itemgetter(col)
        if self.galloping:
            return _gallop(self.itemsets, item, b, e + 1, key, False)
        return bisect_left(self.itemsets, item, b, e + 1, key=key)


def check_cursor(itemsets, itemset, b, e, j, d):
    """
    Verify the query cursor invariants: a non-empty range, j inside the
    query, d below the head length, and a d-item prefix shared by the whole
    range whose items occur in the query before position j.
    """
    if not 0 <= b <= e < len(itemsets):
        raise v.ContractError(f"Invalid range [{b}, {e}]")
    if not 0 <= j < len(itemset):
        raise v.ContractError(f"Query position {j} outside itemset {itemset}")
    head = itemsets[b]
    if not 0 <= d < len(head):
        raise v.ContractError(f"Prefix depth {d} not below head length {len(head)}")
    prefix = head[:d]
    if any(itemsets[k][:d] != prefix for k in range(b + 1, e + 1)):
        raise v.ContractError(f"Range [{b}, {e}] does not share prefix {prefix}")
    if not set(prefix) <= set(itemset[:j]):
        raise v.ContractError(f"Prefix {prefix} not matched before position {j}")


def find_subset_of(search, itemset, b, e, j=0, d=0, check=False):
    """
    Return the position of a proper subset of @itemset within the range
    [@b, @e] of the search's itemsets, or None. All itemsets in the range
    share their first @d items, which occur in @itemset before @j.
    The continuation over the rest of the range is a loop, so recursion
    depth is bounded by the itemset length.
    """
    data = search.itemsets
    size = len(itemset)
    while True:
        if check:
            check_cursor(data, itemset, b, e, j, d)
        head = data[b]
        target = head[d]
        if itemset[j] < target:
            j = search.next_item(itemset, j, target)
            if j is None:
                return None
        if itemset[j] == target:
            end = search.next_end_range(b, e, target, d)
            if size > d + 1 and len(head) == d + 1:
                # head is a proper subset of itemset
                return b
            if j + 1 < size:
                found = find_subset_of(search, itemset, b, end, j + 1, d + 1, check)
                if found is not None:
                    return found
            b = end + 1
        else:
            b = search.next_begin_range(b, e, itemset[j], d)
        if b > e:
            return None


def contains_subset_of(search, itemset, b, e, j=0, d=0):
    """Return True iff a proper subset of @itemset lies in [@b, @e]."""
    return find_subset_of(search, itemset, b, e, j, d) is not None


def prefix_subsume_pass(dataset):
    """
    Flag itemsets that extend (or equal) the running representative, the
    last itemset left unflagged. Covers proper-prefix subsumption and later
    duplicates in one linear scan.
    """
    data = dataset.itemsets
    flags = [True] * len(data)
    if not data:
        return flags
    rep = data[0]
    for i in range(1, len(data)):
        cur = data[i]
        if len(rep) <= len(cur) and cur[: len(rep)] == rep:
            flags[i] = False
        else:
            rep = cur
    return flags


class LexEngine(Engine):
    """Sequential lexicographic engine."""

    name = v.ENGINE_LEX

    def __init__(self, search=v.SEARCH_BINARY, verify_witness=False):
        """Initialise the engine."""
        self.search = search
        self.verify_witness = verify_witness

    def _find(self, dataset, stats, extra):
        data = dataset.itemsets
        flags = prefix_subsume_pass(dataset)
        _LOGGER.debug(
            "Prefix pass flagged %d of %d itemsets",
            flags.count(False),
            len(flags),
        )
        search = RangeSearch(data, stats, self.search)
        last = len(data) - 1
        for i in range(last):
            if not flags[i]:
                continue
            stats.subset_queries += 1
            witness = find_subset_of(
                search, data[i], i + 1, last, check=self.verify_witness
            )
            if witness is None:
                continue
            if self.verify_witness and not is_proper_subset(data[witness], data[i]):
                raise v.ContractError(
                    f"Witness {witness} {data[witness]} is not a proper subset "
                    f"of itemset {i} {data[i]}"
                )
            flags[i] = False
        return flags


def get_minimal_itemsets_lex(dataset, search=v.SEARCH_BINARY, verify_witness=False):
    """Return (MinimalityFlags, RangeSearchStats) for a canonical dataset."""
    result = LexEngine(search, verify_witness).run(dataset)
    return result.flags, result.stats


def get_maximal_itemsets_naive_bridge(dataset):
    """Return maximal-set flags of a canonical dataset via the oracle."""
    require_canonical(dataset)
    return naive_maximal(dataset)
