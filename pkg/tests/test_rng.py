"""Tests for deterministic random streams."""

import numpy as np
import pytest

from qfidelity.exceptions import QFidelityDomainException
from qfidelity.rng import RandomStream, draw_seed


class TestRandomStream:
    """Tests for RandomStream construction and determinism."""

    def test_same_seed_same_draws(self):
        a = RandomStream(42).generator.standard_normal(5)
        b = RandomStream(42).generator.standard_normal(5)
        np.testing.assert_array_equal(a, b)

    def test_different_seeds_differ(self):
        a = RandomStream(1).generator.standard_normal(5)
        b = RandomStream(2).generator.standard_normal(5)
        assert not np.array_equal(a, b)

    def test_algorithm_is_pcg64(self):
        stream = RandomStream(0)
        assert stream.algorithm == "PCG64"
        assert isinstance(stream.generator.bit_generator, np.random.PCG64)

    @pytest.mark.parametrize("seed", [-1, 1.5, "7", True])
    def test_rejects_bad_seed(self, seed):
        with pytest.raises(QFidelityDomainException):
            RandomStream(seed)

    def test_accepts_numpy_integer(self):
        assert RandomStream(np.int64(9)).seed == 9


class TestSpawn:
    """Tests for RandomStream.spawn substreams."""

    def test_substreams_independent_of_parent_consumption(self):
        fresh = RandomStream(7).spawn(3)
        used = RandomStream(7)
        used.generator.standard_normal(1000)
        after = used.spawn(3)
        for left, right in zip(fresh, after):
            np.testing.assert_array_equal(
                left.generator.standard_normal(4), right.generator.standard_normal(4)
            )

    def test_substreams_differ_from_each_other(self):
        first, second = RandomStream(7).spawn(2)
        assert not np.array_equal(
            first.generator.standard_normal(4), second.generator.standard_normal(4)
        )

    def test_names_and_keys(self):
        streams = RandomStream(3, name="mc").spawn(2)
        assert [s.name for s in streams] == ["mc/0", "mc/1"]
        assert [s.spawn_key for s in streams] == [(0,), (1,)]

    def test_rejects_zero_count(self):
        with pytest.raises(QFidelityDomainException):
            RandomStream(3).spawn(0)


class TestChild:
    """Tests for named substreams."""

    def test_same_name_replays(self):
        a = RandomStream(5).child("sample").generator.integers(0, 1000, 6)
        b = RandomStream(5).child("sample").generator.integers(0, 1000, 6)
        np.testing.assert_array_equal(a, b)

    def test_different_names_differ(self):
        a = RandomStream(5).child("a").generator.integers(0, 2**30, 6)
        b = RandomStream(5).child("b").generator.integers(0, 2**30, 6)
        assert not np.array_equal(a, b)

    def test_rejects_empty_name(self):
        with pytest.raises(QFidelityDomainException):
            RandomStream(5).child("")


class TestDrawSeed:
    """Tests for draw_seed."""

    def test_fits_in_63_bits(self):
        for _ in range(20):
            seed = draw_seed()
            assert 0 <= seed < 2**63
