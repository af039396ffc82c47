"""Config and fixtures for pyextremal tests"""

from itertools import combinations

import pytest

import pyextremal
import pyextremal.vars as v
from pyextremal.dataset import canonicalize
from pyextremal.lex import RangeSearch
from pyextremal.model import Dataset
from tests.data import memo_example, worked_example


@pytest.fixture
def finder():
    """Return an ExtremalSetFinder with fast thread workers"""
    return pyextremal.ExtremalSetFinder(threads=2, backend=v.BACKEND_THREAD)


@pytest.fixture
def example_dataset():
    """Return the canonical five itemset worked example"""
    return Dataset(worked_example, canonical=True)


@pytest.fixture
def example_search(example_dataset):
    """Return a RangeSearch over the worked example"""
    return RangeSearch(example_dataset.itemsets)


@pytest.fixture
def memo_dataset():
    """Return the canonical three itemset memo example"""
    return Dataset(memo_example, canonical=True)


@pytest.fixture
def unsorted_dataset():
    """Return a dataset that is not in canonical order"""
    return Dataset([(2, 4), (1, 2, 3), (3,), (1, 2, 4, 6), (1, 2, 4, 5)])


@pytest.fixture
def example_file(tmp_path):
    """Return the path of the worked example as a text dataset"""
    path = tmp_path / "example.txt"
    path.write_text("# worked example, a..f as 1..6\n1 2 3\n1 2 4 5\n1 2 4 6\n2 4\n3\n")
    return path


@pytest.fixture
def unsorted_file(tmp_path, unsorted_dataset):
    """Return the path of an unsorted text dataset"""
    path = tmp_path / "unsorted.txt"
    path.write_text("".join(" ".join(map(str, s)) + "\n" for s in unsorted_dataset))
    return path


@pytest.fixture
def combinations_dataset():
    """Return all 4 item subsets of 1..12; no itemset contains another"""
    return canonicalize(Dataset(combinations(range(1, 13), 4)))[0]
