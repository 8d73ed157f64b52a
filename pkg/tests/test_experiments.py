from collections import Counter

from luequiv.experiments import SweepConfig, one_sided_iff_sweep, round_trip_sweep


def test_schedule_covers_every_dimension_pair():
    cfg = SweepConfig(pairs_per_dim=8, dims=(2, 3, 4, 5))
    counts = Counter(cfg.dimension_schedule())
    assert len(counts) == 16 and set(counts.values()) == {2}


def test_sweeps_are_seeded():
    cfg = SweepConfig(seed=3, pairs_per_dim=10, dims=(2, 3))
    a, b = round_trip_sweep(cfg), round_trip_sweep(cfg)
    assert a.worst == b.worst and a.cases == 20
    assert one_sided_iff_sweep(cfg).violations == 0
