"""
Memoized lexicographic engine.
Each subset query records its call graph. When the next queried itemset
shares a common prefix with the previous one, every graph node that only
read query items inside that prefix behaves identically for the new
itemset and is reused without any range search; nodes that read past the
prefix are re-executed against the new itemset.
A query that finds a subset stops early. With frontier resume, the
continuations it left unexplored are kept as pending nodes, so its graph
stays reusable; otherwise the memo is dropped.
"""

import json
import logging

from pyextremal import vars as v
from pyextremal.engine import Engine
from pyextremal.lex import RangeSearch, prefix_subsume_pass
from pyextremal.model import longest_common_prefix

_LOGGER = logging.getLogger(__name__)

TALLY_REUSED = "reused_nodes"
TALLY_REEXECUTED = "reexecuted_nodes"


class CallNode:
    """
    One invocation of the subset search: the range [b, e], query position
    j and matched depth d at entry, whether the range head was a direct
    hit (t), the largest query position read locally (m, len(S) when the
    query ran out), the descend child c1 and the continuation child c2.
    A pending node is an entry state that was never executed.
    """

    __slots__ = ("b", "e", "j", "d", "t", "m", "c1", "c2", "truncated", "pending")

    def __init__(self, b, e, j, d, pending=False):
        """Initialise a node at entry state."""
        self.b = b
        self.e = e
        self.j = j
        self.d = d
        self.t = False
        self.m = j
        self.c1 = None
        self.c2 = None
        self.truncated = False
        self.pending = pending

    @property
    def label(self):
        """Return the (b, e, j, d) entry label"""
        return (self.b, self.e, self.j, self.d)

    def __repr__(self):
        return (
            f"CallNode(b={self.b}, e={self.e}, j={self.j}, d={self.d}, "
            f"t={self.t}, m={self.m}, pending={self.pending})"
        )


def _frontier(node):
    """Return a pending copy of the entry state of @node, or None."""
    if node is None:
        return None
    return CallNode(node.b, node.e, node.j, node.d, pending=True)


def _trace(search, itemset, b, e, j, d, full):
    """
    Run the subset search over [@b, @e] recording its call graph.
    Without @full, stop at the first subset found and tag the graph
    truncated; every loop left behind on the way out gets a pending
    continuation node. A direct hit keeps nothing past it, as any later
    query reusing the hit node finds the same subset. With @full, direct
    hits only set t and the whole graph is explored.
    """
    data = search.itemsets
    size = len(itemset)
    root = node = CallNode(b, e, j, d)
    found = False
    while True:
        head = data[b]
        target = head[d]
        if itemset[j] < target:
            j = search.next_item(itemset, j, target)
            if j is None:
                node.m = size
                break
            node.m = j
        if itemset[j] == target:
            end = search.next_end_range(b, e, target, d)
            start = b
            if size > d + 1 and len(head) == d + 1:
                node.t = True
                found = True
                if not full:
                    break
                # Skip the head and its duplicates before descending.
                start = b + 1
                while start <= end and len(data[start]) == d + 1:
                    start += 1
            if j + 1 < size and start <= end:
                child_found, node.c1 = _trace(
                    search, itemset, start, end, j + 1, d + 1, full
                )
                if child_found:
                    found = True
                    if not full:
                        if end < e:
                            node.c2 = CallNode(end + 1, e, j, d, pending=True)
                        break
            b = end + 1
        else:
            b = search.next_begin_range(b, e, itemset[j], d)
        if b > e:
            break
        node.c2 = CallNode(b, e, j, d)
        node = node.c2
    if found and not full:
        root.truncated = True
        node.truncated = True
    return found, root


def contains_subset_of_traced(search, itemset, b, e, j=0, d=0):
    """
    Return (found, root) where root is the call graph of the subset search.
    A graph returned with found=True is truncated.
    """
    return _trace(search, itemset, b, e, j, d, False)


def trace_full(search, itemset, b, e, j=0, d=0):
    """Return the complete call graph of the subset search, no early exit."""
    return _trace(search, itemset, b, e, j, d, True)[1]


def contains_subset_of_memoized(
    search, itemset, i, prefix, node, previous=None, tally=None, resume=False
):
    """
    Answer the subset query for @itemset (at dataset position @i) from the
    graph @node recorded for an earlier itemset sharing @prefix leading
    items. Return (found, node) where node is the updated graph, or None
    when nothing of it remains.
    Nodes that read past the prefix, and pending nodes, are re-executed over
    the part of their range after @i. The continuation chain is walked
    iteratively. A truncated graph is accepted only with @resume.
    """
    if node.truncated and not resume:
        raise v.ContractError("Cannot reuse a truncated call graph")
    if prefix >= len(itemset):
        raise v.ContractError(
            f"Common prefix {prefix} must be shorter than the query {itemset}"
        )
    if previous is not None and longest_common_prefix(previous, itemset) != prefix:
        raise v.ContractError(
            f"Common prefix {prefix} does not match {previous} and {itemset}"
        )
    head = None
    parent = None
    while node is not None:
        if node.pending or node.m >= prefix:
            if tally is not None:
                tally[TALLY_REEXECUTED] += 1
            b = max(node.b, i + 1)
            if b <= node.e:
                found, fresh = _trace(search, itemset, b, node.e, node.j, node.d, False)
            else:
                found, fresh = False, None
            if parent is None:
                head = fresh
            else:
                parent.c2 = fresh
            break
        if tally is not None:
            tally[TALLY_REUSED] += 1
        if parent is None:
            head = node
        if node.t and len(itemset) > node.d + 1:
            found = True
            node.c1 = node.c2 = None
            break
        if node.c1 is not None:
            found, node.c1 = contains_subset_of_memoized(
                search, itemset, i, prefix, node.c1, tally=tally, resume=resume
            )
            if found:
                # The rest of the chain was recorded for an older itemset.
                node.c2 = _frontier(node.c2)
                break
        parent = node
        node = node.c2
    else:
        found = False
    if found and head is not None:
        head.truncated = True
    return found, head


class MemoState:
    """The previously queried itemset and its reusable call graph."""

    def __init__(self, resume=False):
        """
        Initialise an empty memo. With @resume, graphs of queries that
        found a subset are kept too.
        """
        self.prev_itemset = None
        self.root = None
        self.resume = resume

    def query(self, search, i, tally=None):
        """
        Run the subset query for dataset position @i, reusing the memo when
        one is held. Return (found, graph).
        """
        data = search.itemsets
        itemset = data[i]
        if self.root is None:
            found, graph = contains_subset_of_traced(
                search, itemset, i + 1, len(data) - 1
            )
        else:
            prefix = longest_common_prefix(self.prev_itemset, itemset)
            found, graph = contains_subset_of_memoized(
                search, itemset, i, prefix, self.root, tally=tally, resume=self.resume
            )
        self.prev_itemset = itemset
        self.root = graph if self.resume or not found else None
        return found, graph


def graph_nodes(root):
    """Yield the nodes of a call graph in execution order."""
    stack = [root] if root is not None else []
    while stack:
        node = stack.pop()
        yield node
        if node.c2 is not None:
            stack.append(node.c2)
        if node.c1 is not None:
            stack.append(node.c1)


def dump_graph(root):
    """Return the graph as JSON-ready node records in execution order."""
    nodes = list(graph_nodes(root))
    ids = {id(node): k for k, node in enumerate(nodes)}
    return [
        {
            "id": ids[id(node)],
            "b": node.b,
            "e": node.e,
            "j": node.j,
            "d": node.d,
            "t": node.t,
            "m": node.m,
            "pending": node.pending,
            "c1": ids[id(node.c1)] if node.c1 is not None else None,
            "c2": ids[id(node.c2)] if node.c2 is not None else None,
        }
        for node in nodes
    ]


class MemoEngine(Engine):
    """Sequential lexicographic engine with call graph reuse."""

    name = v.ENGINE_MEMO

    def __init__(self, search=v.SEARCH_BINARY, dump_graphs=None, resume=False):
        """
        Initialise the engine. @dump_graphs is an optional text stream that
        receives one JSON line per query with the resulting graph. @resume
        keeps the graphs of queries that found a subset for reuse.
        """
        self.search = search
        self.dump_graphs = dump_graphs
        self.resume = resume

    def _find(self, dataset, stats, extra):
        data = dataset.itemsets
        flags = prefix_subsume_pass(dataset)
        search = RangeSearch(data, stats, self.search)
        state = MemoState(self.resume)
        tally = {TALLY_REUSED: 0, TALLY_REEXECUTED: 0}
        for i in range(len(data) - 1):
            if not flags[i]:
                continue
            stats.subset_queries += 1
            found, graph = state.query(search, i, tally)
            if found:
                flags[i] = False
            if self.dump_graphs is not None:
                self._dump(i, data[i], found, graph)
        _LOGGER.debug(
            "Memo reused %d nodes and re-executed %d",
            tally[TALLY_REUSED],
            tally[TALLY_REEXECUTED],
        )
        extra.update(tally)
        return flags

    def _dump(self, i, itemset, found, graph):
        record = {
            "query": i,
            "itemset": list(itemset),
            "found": found,
            "nodes": dump_graph(graph),
        }
        self.dump_graphs.write(json.dumps(record) + "\n")


def get_minimal_itemsets_memoized(dataset, search=v.SEARCH_BINARY, resume=False):
    """Return (MinimalityFlags, RangeSearchStats) for a canonical dataset."""
    result = MemoEngine(search, resume=resume).run(dataset)
    return result.flags, result.stats
