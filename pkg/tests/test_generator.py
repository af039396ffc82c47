"""Tests for pyextremal/generator.py"""

import io
import logging
import statistics

import pytest

from pyextremal.dataset import write_binary
from pyextremal.generator import (
    GeneratorConfig,
    generate,
    inject_variants,
    make_rng,
)
from pyextremal.model import longest_common_prefix
from pyextremal.oracle import naive_minimal


def _bytes(dataset):
    stream = io.BytesIO()
    write_binary(dataset, stream)
    return stream.getvalue()


def test_generator_config():
    """Test GeneratorConfig() validation"""
    config = GeneratorConfig(10, 5, 0.5, seed=3)
    assert config.as_dict() == {"n": 10, "alphabet": 5, "f_min": 0.5, "seed": 3}
    assert repr(config) == "GeneratorConfig(n=10, alphabet=5, f_min=0.5, seed=3)"

    with pytest.raises(ValueError, match="Itemset count"):
        GeneratorConfig(-1, 5, 0.5)
    with pytest.raises(ValueError, match="Alphabet size"):
        GeneratorConfig(10, 0, 0.5)
    with pytest.raises(ValueError, match="Minimal frequency"):
        GeneratorConfig(10, 5, 1.5)
    with pytest.raises(ValueError, match="Seed"):
        GeneratorConfig(10, 5, 0.5, seed=-1)


def test_generate_saturated():
    """Test f_min = 1 puts every item in every itemset"""
    generated = generate(GeneratorConfig(25, 7, 1.0, seed=11))
    dataset = generated.dataset
    assert len(dataset) == 25
    assert set(dataset) == {tuple(range(1, 8))}
    assert generated.item_counts == [25] * 7
    assert sum(naive_minimal(dataset)) == 1


def test_generate_empty():
    """Test n = 0 yields an empty dataset"""
    generated = generate(GeneratorConfig(0, 4, 0.3))
    assert len(generated.dataset) == 0
    assert generated.dropped == 0
    assert generated.item_counts == [0, 0, 0, 0]


def test_generate_is_deterministic():
    """Test the same seed reproduces the dataset byte for byte"""
    config = GeneratorConfig(300, 20, 0.4, seed=42)
    first = generate(config)
    second = generate(GeneratorConfig(300, 20, 0.4, seed=42))
    assert _bytes(first.dataset) == _bytes(second.dataset)
    assert first.frequencies == second.frequencies
    assert _bytes(generate(GeneratorConfig(300, 20, 0.4, seed=43)).dataset) != (
        _bytes(first.dataset)
    )


def test_generate_counts():
    """Test realized item counts match floor(f_i * n)"""
    generated = generate(GeneratorConfig(500, 30, 0.2, seed=5))
    dataset = generated.dataset
    assert dataset.canonical
    for item, (freq, count) in enumerate(
        zip(generated.frequencies, generated.item_counts), start=1
    ):
        assert 0.2 <= freq <= 1.0
        assert count == int(freq * 500)
        assert sum(item in itemset for itemset in dataset) == count
    metadata = generated.metadata
    assert metadata["itemsets"] == len(dataset) == 500 - generated.dropped
    assert metadata["total_items"] == sum(generated.item_counts)
    assert metadata["config"]["seed"] == 5


def test_generate_drops_empty_slots(caplog):
    """Test empty itemsets are dropped and reported"""
    with caplog.at_level(logging.INFO, logger="pyextremal.generator"):
        generated = generate(GeneratorConfig(200, 1, 0.0, seed=9))
    kept = generated.item_counts[0]
    assert len(generated.dataset) == kept
    assert generated.dropped == 200 - kept
    assert generated.dropped > 0
    assert caplog.record_tuples == [
        (
            "pyextremal.generator",
            logging.INFO,
            f"Dropped {200 - kept} empty itemsets out of 200 slots",
        ),
    ]


def test_inject_variants():
    """Test injected itemsets are duplicates or prefixes of existing ones"""
    dataset = generate(GeneratorConfig(50, 8, 0.3, seed=1)).dataset
    injected = inject_variants(dataset, make_rng(1), 20)
    assert len(injected) == len(dataset) + 20
    assert injected.canonical
    originals = set(dataset)
    for itemset in injected:
        assert any(other[: len(itemset)] == itemset for other in originals)
    assert inject_variants(dataset, make_rng(1), 0) == dataset


def test_prefix_sharing_grows_with_min_frequency():
    """Test adjacent itemsets share longer prefixes as f_min grows"""
    means = []
    for f_min in (0.1, 0.5, 0.9):
        samples = []
        for seed in range(5):
            data = generate(GeneratorConfig(300, 20, f_min, seed=seed)).dataset
            samples.extend(
                longest_common_prefix(data[i], data[i + 1])
                for i in range(len(data) - 1)
            )
        means.append(statistics.mean(samples))
    assert means[0] <= means[1] + 0.25
    assert means[1] <= means[2] + 0.25
    assert means[0] < means[2]
