"""Helper functions and hypothesis strategies for tests"""

from hypothesis import strategies as st

from pyextremal.dataset import canonicalize
from pyextremal.lex import check_cursor
from pyextremal.memo import graph_nodes
from pyextremal.model import Dataset


def itemsets(alphabet):
    """Strategy for itemsets over items 1..alphabet"""
    return st.lists(
        st.integers(1, alphabet), min_size=1, max_size=alphabet, unique=True
    ).map(lambda items: tuple(sorted(items)))


@st.composite
def datasets(draw, max_n=200, max_alphabet=12, injections=True):
    """
    Draw an unsorted dataset; with injections, some duplicates and proper
    prefixes of drawn itemsets are appended.
    """
    alphabet = draw(st.integers(1, max_alphabet))
    drawn = draw(st.lists(itemsets(alphabet), max_size=max_n))
    if injections and drawn:
        extra = draw(
            st.lists(
                st.tuples(st.integers(0, len(drawn) - 1), st.integers(1, alphabet)),
                max_size=max(1, len(drawn) // 4),
            )
        )
        for index, cut in extra:
            drawn.append(drawn[index][:cut])
    return Dataset(drawn)


def canonical_datasets(**kwargs):
    """Strategy for canonical datasets"""
    return datasets(**kwargs).map(lambda dataset: canonicalize(dataset)[0])


@st.composite
def shared_prefix_queries(draw, max_n=60, max_alphabet=10):
    """
    Draw (dataset, first, second, prefix): two itemsets sharing exactly
    @prefix leading items, both strictly longer than the prefix.
    """
    dataset = draw(canonical_datasets(max_n=max_n, max_alphabet=max_alphabet))
    alphabet = max_alphabet + 2
    prefix = draw(
        st.lists(st.integers(1, alphabet - 2), min_size=1, max_size=4, unique=True)
    )
    prefix = tuple(sorted(prefix))
    rest = list(range(prefix[-1] + 1, alphabet + 1))
    heads = draw(st.lists(st.sampled_from(rest), min_size=2, max_size=2, unique=True))
    tails = []
    for head in heads:
        above = list(range(head + 1, alphabet + 1))
        extra = draw(st.lists(st.sampled_from(above), unique=True)) if above else []
        tails.append((head, *sorted(extra)))
    return dataset, prefix + tails[0], prefix + tails[1], len(prefix)


def restricted(node, limit):
    """Return the nested (label, c1, c2) view of nodes with j < limit."""
    if node is None or node.j >= limit:
        return None
    return (
        node.label,
        restricted(node.c1, limit),
        restricted(node.c2, limit),
    )


def validate_graph(data, itemset, root):
    """Check the cursor invariants of every node in a call graph."""
    for node in graph_nodes(root):
        check_cursor(data, itemset, node.b, node.e, node.j, node.d)
        assert node.j <= node.m <= len(itemset)
        if node.c1 is not None:
            assert node.c1.d == node.d + 1
            assert node.b <= node.c1.b <= node.c1.e <= node.e
        if node.c2 is not None:
            assert node.c2.d == node.d
            assert node.c2.e == node.e
            assert node.c2.b > node.b


def prefix_flags_brute(data):
    """Flags cleared where an earlier itemset is a proper prefix or equal."""
    return [
        not any(
            len(data[j]) <= len(data[i]) and data[i][: len(data[j])] == data[j]
            for j in range(i)
        )
        for i in range(len(data))
    ]
