"""The main pyextremal __init__ file"""

from pyextremal.dataset import canonicalize, read_dataset, write_dataset
from pyextremal.generator import GeneratorConfig, generate
from pyextremal.model import Dataset, make_itemset
from pyextremal.pyextremal import ExtremalSetFinder

__all__ = [
    "Dataset",
    "ExtremalSetFinder",
    "GeneratorConfig",
    "canonicalize",
    "generate",
    "make_itemset",
    "read_dataset",
    "write_dataset",
]
