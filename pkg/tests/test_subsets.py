from itertools import combinations
from math import comb

import pytest

from sparkforge.subsets import chunk_ranges, default_workers, enumerate_subsets, ordered_map, unrank_subset


def test_examples():
    assert list(enumerate_subsets(4, 4)) == [(0, 1, 2, 3)]
    assert len(list(enumerate_subsets(6, 3))) == 20
    subs = list(enumerate_subsets(10, 5))
    assert len(subs) == 252
    assert subs[0] == (0, 1, 2, 3, 4) and subs[-1] == (5, 6, 7, 8, 9)


@pytest.mark.parametrize("pool, choose", [(6, 3), (8, 4), (7, 2), (5, 5), (5, 0)])
def test_matches_itertools_and_unrank(pool, choose):
    ref = list(combinations(range(pool), choose))
    assert list(enumerate_subsets(pool, choose)) == ref
    for r, s in enumerate(ref):
        assert unrank_subset(pool, choose, r) == s


def test_resume_ranges():
    ref = list(combinations(range(10), 5))
    pieces = []
    for lo, hi in chunk_ranges(comb(10, 5), 64):
        pieces.extend(enumerate_subsets(10, 5, lo, hi))
    assert pieces == ref
    assert list(enumerate_subsets(10, 5, 100, 103)) == ref[100:103]
    assert chunk_ranges(130, 64, start=64) == [(64, 128), (128, 130)]
    with pytest.raises(ValueError):
        chunk_ranges(10, 0)


def _square(x):
    return x * x


def test_ordered_map_serial_and_parallel():
    jobs = [(i,) for i in range(20)]
    assert list(ordered_map(_square, jobs)) == [i * i for i in range(20)]
    assert list(ordered_map(_square, jobs, workers=2)) == [i * i for i in range(20)]


def test_ordered_map_stops():
    seen = []

    def stop():
        return len(seen) >= 3

    for r in ordered_map(_square, [(i,) for i in range(10)], should_stop=stop):
        seen.append(r)
    assert seen == [0, 1, 4]


def test_default_workers(monkeypatch):
    monkeypatch.delenv("SPARKFORGE_WORKERS", raising=False)
    assert default_workers() == 1
    monkeypatch.setenv("SPARKFORGE_WORKERS", "3")
    assert default_workers() == 3
