from kglab.rng import ALGORITHM_ID, RngStream, derive_seed

# first sample pair for seed 0 at 192 bits, pinned when the generator was
# frozen; any change to the block layout must show up here
GOLDEN_SEED0 = (
    5544631807123668049011633225712033197979014764206880277839,
    1542214527129718300827335145151534561252927169058516843785,
)


def test_deterministic_same_seed():
    a = RngStream(123456789)
    b = RngStream(123456789)
    for _ in range(50):
        assert a.next_unit().mantissa == b.next_unit().mantissa


def test_golden_first_pair():
    x, y = RngStream(0).sample_torus_point()
    assert (x.mantissa, y.mantissa) == GOLDEN_SEED0


def test_counter_advance():
    r = RngStream(5)
    assert r.counter == 0
    r.sample_torus_point()
    assert r.counter == 2
    r.next_unit()
    assert r.counter == 3


def test_distinct_seeds_differ():
    differing = 0
    for s in range(1000):
        a = RngStream(s).next_unit().mantissa
        b = RngStream(s + 1000).next_unit().mantissa
        differing += a != b
    assert differing == 1000


def test_scale_extension_is_prefix():
    # a larger scale extends the same sample bitwise
    a = RngStream(42).next_unit(192)
    b = RngStream(42).next_unit(256)
    assert b.mantissa >> (256 - 192) == a.mantissa


def test_derive_seed_stable():
    assert derive_seed(0, 0) == derive_seed(0, 0)
    seen = {derive_seed(7, k) for k in range(100)}
    assert len(seen) == 100


def test_uniformity_coarse():
    # 4096 samples into 8 bins: no bin empty, no bin > 3x expected
    counts = [0] * 8
    r = RngStream(99)
    for _ in range(4096):
        counts[r.next_unit(64).mantissa >> 61] += 1
    assert min(counts) > 0
    assert max(counts) < 3 * 4096 / 8


def test_algorithm_id_present():
    assert "splitmix64" in ALGORITHM_ID
