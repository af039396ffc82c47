"""Tests for pyextremal/dataset.py"""

import io
import logging
import struct

import pytest
from hypothesis import given, settings

import pyextremal.vars as v
from pyextremal.dataset import (
    Remapping,
    build_remapping,
    canonicalize,
    parse_binary,
    parse_text,
    read_dataset,
    write_binary,
    write_dataset,
    write_text,
)
from pyextremal.model import Dataset
from pyextremal.oracle import naive_minimal
from tests.data import bad_text_lines, worked_example
from tests.helpers import canonical_datasets, datasets


def _binary(dataset):
    stream = io.BytesIO()
    write_binary(dataset, stream)
    return stream.getvalue()


def test_parse_text():
    """Test parse_text()"""
    assert parse_text(io.BytesIO(b"1 2 3\n2 4\n")).itemsets == ((1, 2, 3), (2, 4))
    assert parse_text(io.BytesIO(b"3 1 2\n")).itemsets == ((1, 2, 3),)
    assert len(parse_text(io.BytesIO(b""))) == 0
    assert parse_text(io.BytesIO(b"# c\n\n  5  5 1 \n")).itemsets == ((1, 5),)
    assert parse_text(["2 1\n", "3\n"]).itemsets == ((1, 2), (3,))
    assert not parse_text(io.BytesIO(b"1\n")).canonical


@pytest.mark.parametrize("text, line, message", bad_text_lines)
def test_parse_text_errors(text, line, message):
    """Test parse_text() error reporting"""
    with pytest.raises(v.DatasetFormatError) as err:
        parse_text(io.BytesIO(text))
    assert err.value.line == line
    assert str(err.value) == f"line {line}: {message}"


def test_write_text():
    """Test write_text()"""
    stream = io.BytesIO()
    write_text(Dataset([(1, 2, 3), (2, 4)]), stream)
    assert stream.getvalue() == b"1 2 3\n2 4\n"


def test_binary_layout():
    """Test the XSET byte layout"""
    data = _binary(Dataset([(1, 2, 3), (2, 4)]))
    assert data[:4] == b"XSET"
    assert struct.unpack("<IQ", data[4:16]) == (1, 2)
    assert struct.unpack("<4I", data[16:32]) == (3, 1, 2, 3)
    assert struct.unpack("<3I", data[32:]) == (2, 2, 4)
    assert parse_binary(io.BytesIO(data)).itemsets == ((1, 2, 3), (2, 4))


def test_parse_binary_errors():
    """Test parse_binary() error reporting"""
    with pytest.raises(v.DatasetFormatError, match="bad magic"):
        parse_binary(io.BytesIO(b"XSEX" + bytes(12)))
    with pytest.raises(v.DatasetFormatError, match="bad magic"):
        parse_binary(io.BytesIO(b""))
    with pytest.raises(v.DatasetFormatError, match="truncated header"):
        parse_binary(io.BytesIO(b"XSET\x01\x00"))
    with pytest.raises(v.DatasetFormatError, match="version mismatch: got 2"):
        parse_binary(io.BytesIO(struct.pack("<4sIQ", b"XSET", 2, 0)))

    header = struct.pack("<4sIQ", b"XSET", 1, 1)
    with pytest.raises(
        v.DatasetFormatError,
        match="record 0 declares length 3 but only 2 items remain",
    ):
        parse_binary(io.BytesIO(header + struct.pack("<3I", 3, 1, 2)))
    with pytest.raises(v.DatasetFormatError, match="truncated record length"):
        parse_binary(io.BytesIO(header + b"\x01"))
    with pytest.raises(v.DatasetFormatError, match="record 0: .*strictly increasing"):
        parse_binary(io.BytesIO(header + struct.pack("<3I", 2, 4, 1)))
    with pytest.raises(v.DatasetFormatError, match="record 0: .*at least one item"):
        parse_binary(io.BytesIO(header + struct.pack("<I", 0)))
    with pytest.raises(v.DatasetFormatError, match="trailing bytes"):
        parse_binary(io.BytesIO(header + struct.pack("<2I", 1, 7) + b"\x00"))


@settings(max_examples=100)
@given(datasets(max_n=50))
def test_binary_round_trip(dataset):
    """Test write_binary() then parse_binary() byte for byte"""
    data = _binary(dataset)
    parsed = parse_binary(io.BytesIO(data))
    assert parsed == dataset
    assert _binary(parsed) == data


@pytest.mark.parametrize("fmt", [v.FORMAT_TEXT, v.FORMAT_BINARY])
def test_read_write_dataset(tmp_path, example_dataset, fmt):
    """Test write_dataset() and read_dataset() format detection"""
    path = tmp_path / f"example.{fmt}"
    write_dataset(example_dataset, path, fmt)
    assert read_dataset(path) == example_dataset
    assert path.read_bytes().startswith(b"XSET") == (fmt == v.FORMAT_BINARY)

    with pytest.raises(ValueError, match="Unknown dataset format"):
        write_dataset(example_dataset, path, "csv")


def test_canonicalize(unsorted_dataset, caplog):
    """Test canonicalize() without remapping"""
    with caplog.at_level(logging.DEBUG):
        canonical, remapping = canonicalize(unsorted_dataset)
    assert canonical.canonical
    assert canonical.itemsets == tuple(worked_example)
    assert remapping.mode == v.REMAP_NONE
    assert remapping.forward == {item: item for item in range(1, 7)}
    assert caplog.record_tuples == [
        (
            "pyextremal.dataset",
            logging.DEBUG,
            "Canonicalized 5 itemsets with remap mode none",
        ),
    ]
    assert canonicalize(canonical)[0] == canonical
    assert canonicalize(Dataset([(2, 4), (1, 2, 3)]))[0].itemsets == (
        (1, 2, 3),
        (2, 4),
    )


def test_canonicalize_keeps_duplicates():
    """Test duplicates stay adjacent after sorting"""
    canonical, _ = canonicalize(Dataset([(2,), (1, 3), (2,), (1,)]))
    assert canonical.itemsets == ((1,), (1, 3), (2,), (2,))


def test_frequency_remapping():
    """Test the frequency based remap modes"""
    dataset = Dataset([(1, 2), (1, 3), (1, 4)])

    ascending, remapping = canonicalize(dataset, v.REMAP_FREQ_ASC)
    assert remapping.forward == {2: 1, 3: 2, 4: 3, 1: 4}
    assert ascending.itemsets == ((1, 4), (2, 4), (3, 4))
    assert len({itemset[0] for itemset in ascending}) == 3
    assert [remapping.restore(itemset) for itemset in ascending] == list(dataset)

    descending, remapping = canonicalize(dataset, v.REMAP_FREQ_DESC)
    assert remapping.forward == {1: 1, 2: 2, 3: 3, 4: 4}
    assert descending.itemsets == dataset.itemsets

    with pytest.raises(ValueError, match="Unknown remap mode"):
        build_remapping(dataset, "random")


def test_remapping():
    """Test Remapping()"""
    remapping = Remapping(v.REMAP_FREQ_ASC, {7: 1, 3: 2})
    assert remapping.apply((3, 7)) == (1, 2)
    assert remapping.restore((1, 2)) == (3, 7)
    assert remapping.inverse == {1: 7, 2: 3}
    assert remapping == Remapping(v.REMAP_FREQ_ASC, {3: 2, 7: 1})
    assert remapping != Remapping(v.REMAP_FREQ_DESC, {3: 2, 7: 1})

    with pytest.raises(ValueError, match="not a bijection"):
        Remapping(v.REMAP_FREQ_ASC, {1: 1, 2: 1})
    with pytest.raises(ValueError, match="Unknown remap mode"):
        Remapping("shuffle", {})


@settings(max_examples=200)
@given(datasets(max_n=60, max_alphabet=10))
def test_remapping_preserves_minimality(dataset):
    """Test every remap mode yields the same minimal sets in original ids"""
    expected = None
    for mode in v.REMAP_MODES:
        canonical, remapping = canonicalize(dataset, mode)
        assert canonical.is_sorted()
        flags = naive_minimal(canonical)
        found = sorted(
            remapping.restore(itemset)
            for itemset, keep in zip(canonical, flags)
            if keep
        )
        if expected is None:
            expected = found
        assert found == expected


@settings(max_examples=100)
@given(canonical_datasets(max_n=50))
def test_canonicalize_is_idempotent(dataset):
    """Test canonicalize() is a fixpoint on canonical input"""
    assert canonicalize(dataset)[0] == dataset
