"""
Dataset input/output and canonicalization.
Text and binary codecs, plus the optional frequency based item relabeling
applied before sorting.
"""

import logging
import struct
from collections import Counter

from pyextremal import vars as v
from pyextremal.model import Dataset, make_itemset

_LOGGER = logging.getLogger(__name__)

_HEADER = struct.Struct("<4sIQ")
_LENGTH = struct.Struct("<I")


class Remapping:
    """An old-id to new-id bijection over the items of a dataset."""

    def __init__(self, mode, forward):
        """Initialise the remapping from a forward lookup dict."""
        if mode not in v.REMAP_MODES:
            raise ValueError(f"Unknown remap mode: {mode}")
        self.mode = mode
        self._forward = dict(forward)
        self._inverse = {new: old for old, new in self._forward.items()}
        if len(self._inverse) != len(self._forward):
            raise ValueError("Remapping is not a bijection")

    @property
    def forward(self):
        """Return a copy of the old-id to new-id table"""
        return dict(self._forward)

    @property
    def inverse(self):
        """Return a copy of the new-id to old-id table"""
        return dict(self._inverse)

    def apply(self, itemset):
        """Relabel @itemset to new ids, re-sorted ascending."""
        return tuple(sorted(self._forward[item] for item in itemset))

    def restore(self, itemset):
        """Relabel @itemset back to original ids, re-sorted ascending."""
        return tuple(sorted(self._inverse[item] for item in itemset))

    def __eq__(self, other):
        if not isinstance(other, Remapping):
            return NotImplemented
        return self.mode == other.mode and self._forward == other._forward

    def __repr__(self):
        return f"Remapping(mode={self.mode!r}, items={len(self._forward)})"


def parse_text(stream):
    """
    Parse a text dataset from a binary stream (or any iterable of byte
    lines): one itemset per line, base-10 item ids separated by spaces.
    Blank lines and lines starting with '#' are skipped. Items within a
    line are sorted and deduplicated; line order is preserved.
    """
    itemsets = []
    lineno = 0
    for lineno, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as err:
                raise v.DatasetFormatError("not valid UTF-8", lineno) from err
        else:
            line = raw
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        items = set()
        for token in line.split():
            if not (token.isascii() and token.isdigit()):
                raise v.DatasetFormatError(f"malformed item id {token!r}", lineno)
            item = int(token)
            if item > v.ITEM_MAX:
                raise v.DatasetFormatError(
                    f"item id {item} does not fit in 32 bits", lineno
                )
            items.add(item)
        itemsets.append(tuple(sorted(items)))
    _LOGGER.debug("Parsed %d itemsets from %d lines", len(itemsets), lineno)
    return Dataset(itemsets, validate=False)


def write_text(dataset, stream):
    """Write @dataset to a binary stream in the text format."""
    for itemset in dataset:
        stream.write(" ".join(map(str, itemset)).encode("ascii") + b"\n")


def write_binary(dataset, stream):
    """Write @dataset to a binary stream in the XSET format."""
    stream.write(_HEADER.pack(v.BINARY_MAGIC, v.BINARY_VERSION, len(dataset)))
    for itemset in dataset:
        size = len(itemset)
        stream.write(struct.pack(f"<I{size}I", size, *itemset))


def _read_exact(stream, size, what):
    """Read exactly @size bytes or raise a truncation error."""
    data = stream.read(size)
    if len(data) != size:
        raise v.DatasetFormatError(
            f"truncated {what}: expected {size} bytes, got {len(data)}"
        )
    return data


def parse_binary(stream):
    """Parse an XSET binary dataset from a binary stream."""
    header = stream.read(_HEADER.size)
    if header[:4] != v.BINARY_MAGIC:
        raise v.DatasetFormatError(f"bad magic {header[:4]!r}, expected XSET")
    if len(header) != _HEADER.size:
        raise v.DatasetFormatError("truncated header")
    _, version, count = _HEADER.unpack(header)
    if version != v.BINARY_VERSION:
        raise v.DatasetFormatError(
            f"version mismatch: got {version}, supported {v.BINARY_VERSION}"
        )
    itemsets = []
    for index in range(count):
        (size,) = _LENGTH.unpack(_read_exact(stream, _LENGTH.size, "record length"))
        payload = stream.read(size * 4)
        if len(payload) != size * 4:
            raise v.DatasetFormatError(
                f"record {index} declares length {size} but only "
                f"{len(payload) // 4} items remain"
            )
        try:
            itemsets.append(make_itemset(struct.unpack(f"<{size}I", payload)))
        except ValueError as err:
            raise v.DatasetFormatError(f"record {index}: {err}") from err
    if stream.read(1):
        raise v.DatasetFormatError(f"trailing bytes after {count} records")
    _LOGGER.debug("Parsed %d itemsets from binary stream", count)
    return Dataset(itemsets, validate=False)


def read_dataset(path):
    """Read a dataset file, detecting the binary format by its magic."""
    with open(path, "rb") as stream:
        magic = stream.read(len(v.BINARY_MAGIC))
        stream.seek(0)
        if magic == v.BINARY_MAGIC:
            return parse_binary(stream)
        return parse_text(stream)


def write_dataset(dataset, path, fmt=v.FORMAT_TEXT):
    """Write a dataset file in the text or binary format."""
    if fmt not in (v.FORMAT_TEXT, v.FORMAT_BINARY):
        raise ValueError(f"Unknown dataset format: {fmt}")
    with open(path, "wb") as stream:
        if fmt == v.FORMAT_BINARY:
            write_binary(dataset, stream)
        else:
            write_text(dataset, stream)


def build_remapping(dataset, mode=v.REMAP_NONE):
    """
    Return the Remapping for @mode over the items present in @dataset.
    Frequency modes number items from 1 in order of (count, old id);
    ascending gives the rarest item the smallest id, descending the most
    frequent one.
    """
    counts = Counter(item for itemset in dataset for item in itemset)
    if mode == v.REMAP_NONE:
        return Remapping(mode, {item: item for item in counts})
    if mode == v.REMAP_FREQ_ASC:
        order = sorted(counts, key=lambda item: (counts[item], item))
    elif mode == v.REMAP_FREQ_DESC:
        order = sorted(counts, key=lambda item: (-counts[item], item))
    else:
        raise ValueError(f"Unknown remap mode: {mode}")
    return Remapping(mode, {old: new for new, old in enumerate(order, start=1)})


def canonicalize(dataset, mode=v.REMAP_NONE):
    """
    Remap items per @mode, re-sort every itemset and sort the itemsets
    lexicographically. Return the canonical dataset and the Remapping.
    The sort is stable, so duplicate itemsets keep their input order.
    """
    remapping = build_remapping(dataset, mode)
    if mode == v.REMAP_NONE:
        itemsets = list(dataset)
    else:
        itemsets = [remapping.apply(itemset) for itemset in dataset]
    itemsets.sort()
    _LOGGER.debug(
        "Canonicalized %d itemsets with remap mode %s", len(itemsets), mode
    )
    return Dataset(itemsets, canonical=True, validate=False), remapping
