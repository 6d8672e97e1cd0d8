import random

import pytest

from dynsa import oracle
from dynsa.stairs import (Arith, Fixed, FixedWidthStairsStore,
                          IntervalIncrementStore, reduce_interval_sequence,
                          seq_max, seq_min, value_at)


def test_interval_store_examples():
    st = IntervalIncrementStore(5)
    st.add(2, 4, 1)
    assert [st.read(i) for i in range(1, 6)] == [0, 1, 1, 1, 0]
    st = IntervalIncrementStore(5)
    st.add(1, 5, 2)
    st.add(3, 3, -2)
    assert [st.read(i) for i in range(1, 6)] == [2, 2, 0, 2, 2]
    with pytest.raises(ValueError):
        st.add(4, 2, 1)


def test_interval_store_differential(rng):
    n = 300
    st = IntervalIncrementStore(n)
    arr = [0] * n
    for _ in range(3000):
        i = rng.randrange(1, n + 1)
        j = rng.randrange(i, n + 1)
        x = rng.randrange(-6, 7)
        st.add(i, j, x)
        oracle.apply_interval(arr, i, j, x)
    assert [st.read(i) for i in range(1, n + 1)] == arr


def test_stairs_formal_definition_examples():
    s = FixedWidthStairsStore(2, 10)
    s.apply(3, 8, "dec", 1)
    assert [s.read(x) for x in range(1, 11)] == [0, 0, 3, 3, 2, 2, 1, 1, 0, 0]
    assert (s.read(4), s.read(7), s.read(9)) == (3, 1, 0)
    s = FixedWidthStairsStore(3, 10)
    s.apply(2, 8, "inc", 1)
    # the paper's worked example lists a malformed 11-entry array; the formal
    # step definition clips the last step at j=8
    assert [s.read(x) for x in range(1, 11)] == [0, 1, 1, 1, 2, 2, 2, 3, 0, 0]
    s = FixedWidthStairsStore(2, 10)
    s.apply(1, 2, "dec", 1)  # single step == interval add
    assert [s.read(x) for x in range(1, 11)] == [1, 1] + [0] * 8
    s2 = FixedWidthStairsStore(2, 10)
    s2.apply(1, 8, "dec", 1)
    s2.apply(3, 8, "dec", 1)
    assert s2.read(4) == 6
    empty = FixedWidthStairsStore(7, 64)
    assert all(empty.read(x) == 0 for x in range(1, 65))


def test_zero_index():
    s = FixedWidthStairsStore(2, 10)
    s.apply(3, 8, "dec", 1)
    assert s.zero_index(4) == 3
    assert s.read(4) == 0
    assert s.zero_index(9) == 0  # untouched index
    s.apply(1, 6, "dec", 1)
    assert s.read(4) == 2  # only the new update's contribution


@pytest.mark.parametrize("p", [1, 2, 3, 7, 50])
def test_store_differential_all_variants(p):
    rng = random.Random(900 + p)
    cap = 400
    store = FixedWidthStairsStore(p, cap)
    arr = [0] * cap
    for step in range(1200):
        i = rng.randrange(1, cap + 1)
        j = rng.randrange(i, cap + 1)
        orient = rng.choice(["dec", "inc"])
        sign = rng.choice([1, -1])
        store.apply(i, j, orient, sign)
        oracle.apply_stairs(arr, i, j, p, orient, sign)
        x = rng.randrange(1, cap + 1)
        assert store.read(x) == arr[x - 1]
        if rng.random() < 0.02:
            x = rng.randrange(1, cap + 1)
            prev = store.zero_index(x)
            assert prev == arr[x - 1]
            arr[x - 1] = 0
    assert [store.read(x) for x in range(1, cap + 1)] == arr


def _rand_tree(rng, deg, p, lo, hi):
    if deg == 1:
        if rng.random() < 0.5:
            return Fixed(rng.randrange(lo, hi))
        return Arith(rng.randrange(lo, hi), p)
    dl = rng.randrange(1, deg)
    a = _rand_tree(rng, dl, p, lo, hi)
    b = _rand_tree(rng, deg - dl, p, lo, hi)
    return seq_min(a, b) if rng.random() < 0.5 else seq_max(a, b)


def _lift(t, off):
    if isinstance(t, Fixed):
        return Fixed(t.c + off)
    if isinstance(t, Arith):
        return Arith(t.b0 + off, t.d)
    return type(t)(t.op, _lift(t.a, off), _lift(t.b, off))


def test_reduce_examples():
    u = reduce_interval_sequence(Fixed(2), Fixed(6), 3)
    assert len(u) == 1 and (u[0].i, u[0].j, u[0].amount) == (2, 6, 3)
    assert reduce_interval_sequence(Fixed(1), Fixed(5), 0) == []
    # fixed/arith: stairs + interval, checked by applying both to an array
    u = reduce_interval_sequence(Fixed(1), Arith(4, 2), 3)
    arr, exp = [0] * 12, [0] * 12
    for upd in u:
        upd.apply_to(arr)
    for t in range(3):
        oracle.apply_interval(exp, 1, 4 + 2 * t, 1)
    assert arr == exp
    # min/max elimination with the split point
    u = reduce_interval_sequence(seq_max(Fixed(5), Arith(1, 2)), Arith(9, 2), 4)
    arr, exp = [0] * 20, [0] * 20
    for upd in u:
        upd.apply_to(arr)
    for t in range(4):
        oracle.apply_interval(exp, max(5, 1 + 2 * t), 9 + 2 * t, 1)
    assert arr == exp
    with pytest.raises(ValueError):
        reduce_interval_sequence(Arith(1, 2), Arith(5, 3), 4)  # mixed differences
    # output normalization: stairs before intervals
    u = reduce_interval_sequence(Arith(1, 2), Arith(6, 2), 4)
    kinds = [x.kind for x in u]
    assert kinds == sorted(kinds, key=lambda k: k != "stairs")


def test_reduce_random_trees(rng):
    for trial in range(1500):
        p = rng.choice([1, 2, 3, 5, -1, -2, -3, 7])
        count = rng.randrange(1, 14)
        di = rng.randrange(1, 5)
        dj = rng.randrange(1, 5)
        it = _rand_tree(rng, di, p, 1, 40)
        jt = _rand_tree(rng, dj, p, 1, 40)
        worst = max(value_at(it, t) - value_at(jt, t) for t in range(count))
        jt = _lift(jt, max(0, worst) + rng.randrange(0, 3))
        n = 260
        arr, exp = [0] * n, [0] * n
        ups = reduce_interval_sequence(it, jt, count)
        assert len(ups) <= 3 * (1 << (di + dj))
        touched_lo = min(value_at(it, t) for t in range(count))
        touched_hi = max(value_at(jt, t) for t in range(count))
        for upd in ups:
            assert touched_lo <= upd.i <= upd.j <= touched_hi  # never leaves the union
            upd.apply_to(arr)
        for t in range(count):
            oracle.apply_interval(exp, value_at(it, t), value_at(jt, t), 1)
        assert arr == exp


def test_store_epoch_drain():
    p, cap = 3, 120
    store = FixedWidthStairsStore(p, cap)
    arr = [0] * cap
    rng = random.Random(5)
    for _ in range(40):
        i = rng.randrange(1, cap + 1)
        j = rng.randrange(i, cap + 1)
        store.apply(i, j, "dec", 1)
        oracle.apply_stairs(arr, i, j, p, "dec", 1)
    drained = dict(store.drain())
    assert drained == {i + 1: v for i, v in enumerate(arr) if v}
    assert store.update_count == 0
    assert all(store.read(x) == 0 for x in range(1, cap + 1))
