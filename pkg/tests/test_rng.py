import numpy as np
import pytest

from paintlab import rng


def test_stream_at_matches_block():
    seed = 987654321
    vals = [rng.stream_at(seed, i) for i in range(100)]
    blk = rng.block(seed, 0, 100)
    assert vals == [int(x) for x in blk]


def test_blocks_are_contiguous():
    seed = 5
    whole = rng.block(seed, 0, 64)
    parts = np.concatenate([rng.block(seed, 0, 10), rng.block(seed, 10, 54)])
    assert np.array_equal(whole, parts)


def test_child_streams_differ_from_parent():
    s = 12345
    parent = {rng.stream_at(s, i) for i in range(64)}
    child = {rng.stream_at(rng.child_seed(s, 0), i) for i in range(64)}
    assert not parent & child
    assert rng.child_seed(s, 0) != rng.child_seed(s, 1)


def test_coin_threshold_edges():
    assert rng.coin_threshold(0.0) == 0
    assert rng.coin_threshold(1.0) == 1 << 53
    # threshold comparison == float comparison for every 53-bit numerator
    for p in (0.25, 0.3, 1e-6, 0.999):
        t = rng.coin_threshold(p)
        for y in (0, 1, t - 1, t, t + 1, (1 << 53) - 1):
            if 0 <= y < (1 << 53):
                assert (y < t) == (y * 2.0**-53 < p)


def test_uniform_range_and_mean():
    st = rng.SplitStream(2024)
    xs = [st.uniform() for _ in range(4000)]
    assert all(0.0 <= x < 1.0 for x in xs)
    assert abs(sum(xs) / len(xs) - 0.5) < 0.02


def test_randrange_bounds_and_determinism():
    a = rng.SplitStream(7)
    b = rng.SplitStream(7)
    xs = [a.randrange(13) for _ in range(500)]
    ys = [b.randrange(13) for _ in range(500)]
    assert xs == ys
    assert set(xs) <= set(range(13))
    assert len(set(xs)) == 13


def test_randrange_rejects_nonpositive():
    with pytest.raises(ValueError):
        rng.SplitStream(1).randrange(0)


def test_permutation_is_permutation():
    st = rng.SplitStream(99)
    perm = st.permutation(257)
    assert sorted(perm.tolist()) == list(range(257))
    # a fresh stream reproduces it
    assert np.array_equal(rng.SplitStream(99).permutation(257), perm)


def test_child_fork_sequence():
    st = rng.SplitStream(42)
    c0, c1 = st.child(), st.child()
    assert c0.seed != c1.seed
    assert c0.seed == rng.child_seed(42, 0)
    assert c1.seed == rng.child_seed(42, 1)


def test_coins_at_matches_scalar():
    seed, p = 31337, 0.37
    counters = np.array([0, 1, 5, 1000, 2**40], dtype=np.uint64)
    coins = rng.coins_at(seed, counters, p)
    t = rng.coin_threshold(p)
    expected = [(rng.stream_at(seed, int(c)) >> 11) < t for c in counters]
    assert coins.tolist() == expected
