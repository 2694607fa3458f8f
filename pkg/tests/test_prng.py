import numpy as np
import pytest

from lattice.prng import MASK64, SplitMix64


def test_reference_outputs():
    rng = SplitMix64(1234567)
    assert [rng.next() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_seed_zero():
    assert SplitMix64(0).next() == 0xE220A8397B1DCDAF


def test_seed_is_reduced_mod_2_64():
    assert SplitMix64(2**64 + 5).next() == SplitMix64(5).next()


def test_block_draws_match_sequential_draws():
    sequential = SplitMix64(99)
    block = SplitMix64(99)
    expected = [sequential.next() for _ in range(257)]
    assert [int(v) for v in block.next_array(257)] == expected
    # both generators continue from the same state
    assert block.next() == sequential.next()


def test_random_array_matches_random():
    one, many = SplitMix64(7), SplitMix64(7)
    expected = [one.random() for _ in range(100)]
    assert many.random_array(100).tolist() == expected


def test_doubles_in_unit_interval():
    values = SplitMix64(3).random_array(10_000)
    assert values.min() >= 0.0
    assert values.max() < 1.0
    assert abs(values.mean() - 0.5) < 0.02


@pytest.mark.parametrize("n", [1, 2, 3, 10, 18])
def test_below_stays_in_range(n):
    rng = SplitMix64(n)
    draws = {rng.below(n) for _ in range(500)}
    assert draws <= set(range(n))
    assert len(draws) == n


def test_below_rejects_non_positive_bound():
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


def test_state_stays_64_bit():
    rng = SplitMix64(MASK64)
    rng.next_array(1000)
    assert 0 <= rng.state <= MASK64
    assert isinstance(rng.next_array(1)[0], np.uint64)
