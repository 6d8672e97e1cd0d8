import random

import pytest

from dynsa.counters import Counters
from dynsa.rangetree import RangeTree


def test_basic_examples():
    t = RangeTree(2)
    h = t.insert((1, 2), 5)
    assert t.count([(1, 1), (2, 2)]) == 1
    t.insert((1, 2), 5)
    assert t.count([(1, 1), (2, 2)]) == 2  # multiset semantics
    t.remove(h)
    assert t.count([(1, 1), (2, 2)]) == 1
    t2 = RangeTree(2)
    t2.insert((1, 1), 2)
    t2.insert((3, 4), 7)
    assert t2.sum([(0, 5), (0, 5)]) == 9
    assert t2.count([(None, None), (None, None)]) == 2
    assert t2.sum([(4, 2), (0, 5)]) == 0  # empty after resolution
    assert RangeTree(3).count([(None, None)] * 3) == 0


def test_handle_errors():
    t = RangeTree(2)
    h = t.insert((0, 0))
    t.remove(h)
    with pytest.raises(ValueError):
        t.remove(h)
    other = RangeTree(2)
    h2 = other.insert((1, 1))
    with pytest.raises(ValueError):
        t.remove(h2)
    with pytest.raises(ValueError):
        t.insert((1, 2, 3))
    with pytest.raises(ValueError):
        t.count([(0, 1)])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_differential_mixed_ops(d):
    # flat-list oracle over a random mixed insert/remove/query workload
    rng = random.Random(100 + d)
    t = RangeTree(d)
    live = []
    queries = 0
    for step in range(6000):
        roll = rng.random()
        if roll < 0.45 or not live:
            coords = tuple(rng.randrange(-30, 31) for _ in range(d))
            v = rng.randrange(-4, 9)
            live.append((coords, v, t.insert(coords, v)))
        elif roll < 0.6:
            coords, v, h = live.pop(rng.randrange(len(live)))
            t.remove(h)
        else:
            r = []
            for _ in range(d):
                a, b = rng.randrange(-35, 36), rng.randrange(-35, 36)
                lo, hi = min(a, b), max(a, b)
                r.append((None if rng.random() < 0.1 else lo,
                          None if rng.random() < 0.1 else hi))

            def inside(c):
                return all((lo is None or x >= lo) and (hi is None or x <= hi)
                           for x, (lo, hi) in zip(c, r))

            exp = [(c, v) for c, v, _ in live if inside(c)]
            assert t.count(r) == len(exp)
            assert t.sum(r) == sum(v for _, v in exp)
            got = sorted((p.coords, p.value) for p in t.report(r))
            assert got == sorted(exp)
            queries += 1
    assert queries > 500


def test_count_matches_report_and_partition(rng):
    t = RangeTree(2)
    for _ in range(500):
        t.insert((rng.randrange(0, 50), rng.randrange(0, 50)), rng.randrange(1, 5))
    box = [(5, 40), (10, 45)]
    assert t.count(box) == len(t.report(box))
    mid = 22
    left = t.sum([(5, mid), (10, 45)])
    right = t.sum([(mid + 1, 40), (10, 45)])
    assert left + right == t.sum(box)


def test_visit_counter_polylog(rng):
    counters = Counters()
    for d in (2, 3, 4):
        t = RangeTree(d, counters)
        pts = 3000 if d == 2 else 800
        for _ in range(pts):
            t.insert(tuple(rng.randrange(0, 1000) for _ in range(d)))
        import math

        budget = 40 * math.log2(pts) ** d  # generous fitted constant
        for _ in range(30):
            counters.reset()
            r = [(rng.randrange(0, 500), rng.randrange(500, 1000)) for _ in range(d)]
            t.count(r)
            assert counters.range_visits <= budget, (d, counters.range_visits, budget)
