"""
Tests for Sorter Models
=======================
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.errors import SorterInputError
from modules.hardware.sorter import (
    SORT2D_PHASES,
    bitonic_sort,
    check_sorters,
    merge_sort_latency,
    shear_sort_sorts,
    sort2d,
    sort2d_cycles,
    sorter_width,
    to_snake,
)

pytestmark = [pytest.mark.sorter]


@pytest.mark.unit
class TestBitonicSort:
    """Tests for the one-dimensional bitonic network."""

    def test_ascending(self, rng):
        values = rng.permutation(64)
        report = bitonic_sort(values)
        assert np.array_equal(report.sorted, np.arange(64))
        assert report.stages == 21
        assert report.cycles == 21

    def test_descending(self, rng):
        values = rng.normal(size=32)
        report = bitonic_sort(values, descending=True)
        assert np.array_equal(report.sorted, np.sort(values)[::-1])

    def test_input_untouched(self):
        values = np.array([3, 1, 2, 0])
        bitonic_sort(values)
        assert values.tolist() == [3, 1, 2, 0]

    def test_rejects_non_power_of_two(self):
        with pytest.raises(SorterInputError):
            bitonic_sort(np.arange(6))


@pytest.mark.unit
class TestSort2D:
    """Tests for the W x W sorter."""

    @pytest.mark.parametrize("width,passes,stages", [(4, 5, 10), (16, 9, 36), (32, 11, 55)])
    def test_sorts_permutation(self, rng, width, passes, stages):
        report = sort2d(rng.permutation(width * width))
        assert np.array_equal(report.sorted, np.arange(width * width))
        assert report.passes == passes
        assert report.stages == stages
        assert report.phases == SORT2D_PHASES

    def test_cycles(self):
        assert sort2d_cycles(16) == 120
        assert sort2d_cycles(32) == 222
        assert sort2d(np.arange(256)).cycles == 120

    def test_descending(self, rng):
        values = rng.normal(size=256)
        report = sort2d(values, descending=True)
        assert np.array_equal(report.sorted, np.sort(values)[::-1])

    def test_ties(self):
        values = np.array([1, 0] * 8)
        assert sort2d(values).sorted.tolist() == [0] * 8 + [1] * 8

    @pytest.mark.parametrize("length", [15, 36, 8])
    def test_rejects_bad_shape(self, length):
        with pytest.raises(SorterInputError):
            sort2d(np.arange(length))

    def test_snake_readout(self):
        assert to_snake(np.array([[0, 1], [2, 3]])).tolist() == [0, 1, 3, 2]


@pytest.mark.property
class TestSort2DProperties:
    """Property-based tests for the 2D sorter."""

    @given(st.lists(st.integers(-1000, 1000), min_size=64, max_size=64))
    @settings(max_examples=50)
    def test_matches_numpy(self, values):
        assert sort2d(np.array(values)).sorted.tolist() == sorted(values)

    @given(st.permutations(list(range(16))))
    def test_enough_shear_phases_always_sort(self, values):
        assert shear_sort_sorts(np.array(values), phases=5)


@pytest.mark.unit
class TestSorterSizing:
    """Tests for widths and merge-sort latency."""

    @pytest.mark.parametrize("entries,width", [(1024, 32), (256, 16), (5, 4), (16, 4), (17, 8), (1, 1)])
    def test_sorter_width(self, entries, width):
        assert sorter_width(entries) == width

    def test_sorter_width_rejects_zero(self):
        with pytest.raises(SorterInputError):
            sorter_width(0)

    @pytest.mark.parametrize("k,cycles", [(1024, 3083), (256, 617), (10, 10), (2, 1)])
    def test_merge_sort_latency(self, k, cycles):
        assert merge_sort_latency(k) == cycles

    def test_merge_sort_latency_rejects_one(self):
        with pytest.raises(SorterInputError):
            merge_sort_latency(1)


class TestCheckSorters:
    """Tests for randomized sorter validation."""

    def test_summary(self):
        summary = check_sorters(16, trials=20, seed=3)
        assert summary["sorted"] == 20
        assert summary["cycles"] == 120
        assert summary["passes"] == 9
        assert 0 <= summary["shear6_counterexamples"] <= 20

    def test_deterministic(self):
        assert check_sorters(8, trials=30, seed=1) == check_sorters(8, trials=30, seed=1)
