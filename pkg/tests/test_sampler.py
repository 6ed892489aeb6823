import numpy as np
import pytest

from lozenge import sampler
from lozenge._numbers import Q
from lozenge._rng import next_u64, seed_state
from lozenge.enumeration import Measure, enumerate_tilings, is_interlacing
from lozenge.sampler import ChainState, minimal_tiling, sample, sample_many, stats, step, trajectory

needs_ext = pytest.mark.skipif(sampler._sampler_ext is None, reason="compiled sampler not built")


def test_rng_reference_stream():
    # splitmix64 seeding followed by xoshiro256**, frozen
    s = seed_state(0)
    first = [next_u64(s) for _ in range(3)]
    s2 = seed_state(0)
    assert first == [next_u64(s2) for _ in range(3)]
    assert len(set(first)) == 3 and all(0 <= v < 2 ** 64 for v in first)


def test_minimal_tiling_is_valid_and_lowest(hex222):
    t = minimal_tiling(hex222)
    assert is_interlacing(hex222, t)
    assert t == min(enumerate_tilings(hex222), key=lambda u: sum(map(sum, u)))


def test_zero_steps_returns_start(small_two_cut):
    assert sample(small_two_cut, Measure.uniform(), steps=0, seed=3) == minimal_tiling(small_two_cut)
    with pytest.raises(ValueError):
        step(ChainState.initial(small_two_cut, 0), Measure.uniform(), -1)


@needs_ext
@pytest.mark.parametrize("q", [Q(1), Q(1, 2)])
def test_backends_are_identical(small_two_cut, q):
    m = Measure.qmeasure(q)
    a = step(ChainState.initial(small_two_cut, 11), m, 20000, backend="python")
    b = step(ChainState.initial(small_two_cut, 11), m, 20000, backend="cython")
    assert np.array_equal(a.vals, b.vals) and np.array_equal(a.rng, b.rng)
    assert a.accepted == b.accepted


def test_seeded_runs_repeat(multicut):
    m = Measure.uniform()
    assert sample(multicut, m, 5000, seed=7) == sample(multicut, m, 5000, seed=7)
    many = sample_many(multicut, m, 2000, [1, 2, 3], threads=2)
    assert many == [sample(multicut, m, 2000, seed=s) for s in (1, 2, 3)]


def test_chain_preserves_interlacing(small_two_cut):
    for t in trajectory(small_two_cut, Measure.qmeasure(Q(1, 3)), 3000, thin=50, seed=5):
        assert is_interlacing(small_two_cut, t)


def test_chain_visits_every_tiling(hex222):
    seen = set(trajectory(hex222, Measure.uniform(), 20000, seed=1))
    assert seen == set(enumerate_tilings(hex222))


def test_hex111_is_fair(hex111):
    s = ChainState.initial(hex111, 2)
    lo = minimal_tiling(hex111)
    n, hits = 100000, 0
    for _ in range(n):
        step(s, Measure.uniform())
        hits += s.tiling() == lo
    # successive states are correlated, so the band is wider than 3 sigma of iid draws
    assert abs(hits / n - 0.5) < 0.02


def test_stats_report(small_two_cut):
    P = small_two_cut
    res = stats(P, sample_many(P, Measure.uniform(), 500, range(8)))
    assert res["samples"] == 8
    assert res["red_per_line"] == tuple(P.d + k for k in range(P.N + 1))
    assert res["blue_profile_constant"] and res["rho_strip_equals_r"]


def test_unknown_backend(hex111):
    with pytest.raises(ValueError):
        step(ChainState.initial(hex111, 0), Measure.uniform(), 1, backend="fortran")
