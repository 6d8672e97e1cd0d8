"""Batched counter stores: interval increments, fixed-width stairs, and the
reduction from p-normal interval-update sequences to O(1) batched updates.

A decreasing stairs update (i, j, p) adds t to the t'th width-p step
counted from the right end j; increasing mirrors from the left; negative
variants subtract.  The fixed-width store answers point reads from two
range structures: points (i, j) valued ceil(j/p) and points (i, j, j mod p
with 0 mapped to p), combining SUM - COUNT*q_x - D with the positive
remainder convention x = q_x*p + r_x, r_x in [1..p].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Union

from .rangetree import RangeTree


class IntervalIncrementStore:
    """Logical integer array, all zeros, with (i, j, x) range add and point read."""

    def __init__(self, n, counters=None):
        self.n = n
        self._tree = [0] * (n + 2)
        self._counters = counters

    def add(self, i, j, x):
        if i > j:
            raise ValueError(f"empty interval ({i}, {j})")
        if not (1 <= i and j <= self.n):
            raise ValueError(f"interval ({i}, {j}) out of range 1..{self.n}")
        self._fen(i, x)
        self._fen(j + 1, -x)

    def _fen(self, i, x):
        t = self._tree
        c = self._counters
        n = self.n + 1
        while i <= n:
            t[i] += x
            if c is not None:
                c.range_visits += 1
            i += i & (-i)

    def read(self, i):
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} out of range 1..{self.n}")
        t = self._tree
        c = self._counters
        acc = 0
        while i > 0:
            acc += t[i]
            if c is not None:
                c.range_visits += 1
            i -= i & (-i)
        return acc


class _DecStairs:
    """Positive decreasing stairs with one step width."""

    __slots__ = ("p", "occ", "rem", "count")

    def __init__(self, p, counters):
        self.p = p
        self.occ = RangeTree(2, counters)
        self.rem = RangeTree(3, counters)
        self.count = 0

    def add(self, i, j):
        p = self.p
        self.occ.insert((i, j), -(-j // p))
        r = j % p or p
        self.rem.insert((i, j, r), 1)
        self.count += 1

    def read(self, x):
        if self.count == 0:
            return 0
        r_x = x % self.p or self.p
        q_x = (x - r_x) // self.p
        s = self.occ.sum([(None, x), (x, None)])
        c = self.occ.count([(None, x), (x, None)])
        if c == 0:
            return 0
        d = self.rem.count([(None, x), (x, None), (1, r_x - 1)]) if r_x > 1 else 0
        return s - c * q_x - d


class FixedWidthStairsStore:
    """All four stairs variants at one step width p over indexes [1..capacity].

    Also supports per-index zeroing: an offset recorded at zero time is
    subtracted from reads, so later updates covering the index show through.
    """

    def __init__(self, p, capacity, counters=None):
        if p < 1:
            raise ValueError("step width must be positive")
        self.p = p
        self.capacity = capacity
        self._counters = counters
        self._subs = {}  # (orient, sign) -> _DecStairs on possibly mirrored coords
        self._zero = {}
        self.update_count = 0
        self._lo = None
        self._hi = None

    def _mirror(self, i):
        return self.capacity + 1 - i

    def apply(self, i, j, orient="dec", sign=1):
        if not (1 <= i <= j <= self.capacity):
            raise ValueError(f"stairs bounds ({i}, {j}) out of range 1..{self.capacity}")
        if orient not in ("dec", "inc") or sign not in (1, -1):
            raise ValueError("bad stairs variant")
        key = (orient, sign)
        sub = self._subs.get(key)
        if sub is None:
            sub = self._subs[key] = _DecStairs(self.p, self._counters)
        if orient == "dec":
            sub.add(i, j)
        else:
            sub.add(self._mirror(j), self._mirror(i))
        self.update_count += 1
        self._lo = i if self._lo is None else min(self._lo, i)
        self._hi = j if self._hi is None else max(self._hi, j)

    def read(self, x):
        if not 1 <= x <= self.capacity:
            raise ValueError(f"index {x} out of range 1..{self.capacity}")
        total = 0
        for (orient, sign), sub in self._subs.items():
            q = x if orient == "dec" else self._mirror(x)
            v = sub.read(q)
            total += sign * v
        off = self._zero.get(x)
        if off is not None:
            total -= off
        return total

    def zero_index(self, x):
        prev = self.read(x)
        if prev:
            self._zero[x] = self._zero.get(x, 0) + prev
        return prev

    def touched_range(self):
        if self._lo is None:
            return None
        return (self._lo, self._hi)

    def drain(self):
        """Yield (index, value) for nonzero reads, then reset the store."""
        rng = self.touched_range()
        if rng is not None:
            for x in range(rng[0], rng[1] + 1):
                v = self.read(x)
                if v:
                    yield (x, v)
        self._subs = {}
        self._zero = {}
        self.update_count = 0
        self._lo = self._hi = None


# ---------------------------------------------------------------------------
# p-normal sequences and the reduction to batched updates


@dataclass(frozen=True)
class Fixed:
    c: int


@dataclass(frozen=True)
class Arith:
    b0: int
    d: int


@dataclass(frozen=True)
class MinMax:
    op: str  # 'min' | 'max'
    a: "Seq"
    b: "Seq"


Seq = Union[Fixed, Arith, MinMax]


def seq_min(a: Seq, b: Seq) -> Seq:
    return MinMax("min", a, b)


def seq_max(a: Seq, b: Seq) -> Seq:
    return MinMax("max", a, b)


def degree(t: Seq) -> int:
    if isinstance(t, MinMax):
        return degree(t.a) + degree(t.b)
    return 1


def value_at(t: Seq, x: int) -> int:
    if isinstance(t, Fixed):
        return t.c
    if isinstance(t, Arith):
        return t.b0 + t.d * x
    va = value_at(t.a, x)
    vb = value_at(t.b, x)
    return min(va, vb) if t.op == "min" else max(va, vb)


def _tree_diff(t: Seq, acc):
    if isinstance(t, Arith):
        acc.add(t.d)
    elif isinstance(t, MinMax):
        _tree_diff(t.a, acc)
        _tree_diff(t.b, acc)


def _shift(t: Seq, t0: int) -> Seq:
    if isinstance(t, Fixed):
        return t
    if isinstance(t, Arith):
        return Arith(t.b0 + t.d * t0, t.d)
    return MinMax(t.op, _shift(t.a, t0), _shift(t.b, t0))


def _reverse(t: Seq, count: int) -> Seq:
    if isinstance(t, Fixed):
        return t
    if isinstance(t, Arith):
        return Arith(t.b0 + t.d * (count - 1), -t.d)
    return MinMax(t.op, _reverse(t.a, count), _reverse(t.b, count))


@dataclass(frozen=True)
class BatchUpdate:
    kind: str  # 'interval' | 'stairs'
    i: int
    j: int
    amount: int = 0  # interval: signed value added on [i..j]
    p: int = 0  # stairs step width
    orient: str = "dec"
    sign: int = 1

    def apply_to(self, arr):
        """Apply to a plain 1-based list (index k stored at arr[k-1]); for tests."""
        if self.kind == "interval":
            for a in range(self.i, self.j + 1):
                arr[a - 1] += self.amount
        else:
            steps = -(-(self.j - self.i + 1) // self.p)
            for t in range(1, steps + 1):
                if self.orient == "dec":
                    lo = max(self.j - t * self.p + 1, self.i)
                    hi = self.j - (t - 1) * self.p
                else:
                    lo = self.i + (t - 1) * self.p
                    hi = min(self.i + t * self.p - 1, self.j)
                for a in range(lo, hi + 1):
                    arr[a - 1] += self.sign * t


def _interval(i, j, amount):
    return BatchUpdate("interval", i, j, amount=amount)


def _stairs(i, j, p, orient, sign=1):
    return BatchUpdate("stairs", i, j, p=p, orient=orient, sign=sign)


def _find_minmax_path(t: Seq, path=()):
    if isinstance(t, MinMax):
        if not isinstance(t.a, MinMax) and not isinstance(t.b, MinMax):
            return path
        p = _find_minmax_path(t.a, path + ("a",))
        if p is not None:
            return p
        return _find_minmax_path(t.b, path + ("b",))
    return None


def _get(t: Seq, path):
    for step in path:
        t = t.a if step == "a" else t.b
    return t


def _replace(t: Seq, path, leaf: Seq) -> Seq:
    if not path:
        return leaf
    if path[0] == "a":
        return MinMax(t.op, _replace(t.a, path[1:], leaf), t.b)
    return MinMax(t.op, t.a, _replace(t.b, path[1:], leaf))


def reduce_interval_sequence(i_seq: Seq, j_seq: Seq, count: int) -> List[BatchUpdate]:
    """Batched updates equivalent to applying (i_t, j_t, +1) for t in [0..count-1].

    Both sequences must be p-normal with a common |difference| and satisfy
    i_t <= j_t throughout.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return []
    diffs = set()
    _tree_diff(i_seq, diffs)
    _tree_diff(j_seq, diffs)
    diffs.discard(0)
    if len({abs(d) for d in diffs}) > 1:
        raise ValueError(f"mixed differences {sorted(diffs)}")
    if len(diffs) == 2:  # same magnitude, both signs in play: normalize per subtree
        raise ValueError(f"mixed differences {sorted(diffs)}")
    out: List[BatchUpdate] = []
    _reduce(i_seq, j_seq, count, out)
    out.sort(key=lambda u: (u.kind != "stairs", u.i, u.j, u.orient, u.sign, u.amount))
    return out


def _reduce(it: Seq, jt: Seq, count: int, out: List[BatchUpdate]):
    if count <= 0:
        return
    if count == 1:
        i0, j0 = value_at(it, 0), value_at(jt, 0)
        if i0 > j0:
            raise ValueError(f"empty interval ({i0}, {j0}) in sequence")
        out.append(_interval(i0, j0, 1))
        return
    diffs = set()
    _tree_diff(it, diffs)
    _tree_diff(jt, diffs)
    diffs.discard(0)
    d = next(iter(diffs)) if diffs else 0
    if d < 0:
        it = _reverse(it, count)
        jt = _reverse(jt, count)
        d = -d

    for which in ("i", "j"):
        tree = it if which == "i" else jt
        other = jt if which == "i" else it
        path = _find_minmax_path(tree)
        if path is None:
            continue
        node = _get(tree, path)
        a, b = node.a, node.b
        a_fix = isinstance(a, Fixed) or a.d == 0
        b_fix = isinstance(b, Fixed) or b.d == 0
        if a_fix and b_fix:
            va, vb = value_at(a, 0), value_at(b, 0)
            leaf = Fixed(min(va, vb) if node.op == "min" else max(va, vb))
            segs = [(0, count - 1, leaf)]
        elif not a_fix and not b_fix:
            b0 = min(a.b0, b.b0) if node.op == "min" else max(a.b0, b.b0)
            segs = [(0, count - 1, Arith(b0, a.d))]
        else:
            fx, ar = (a, b) if a_fix else (b, a)
            fc = value_at(fx, 0)
            t_cross = (fc - ar.b0) // ar.d  # ar.d > 0 after normalization
            lo_leaf, hi_leaf = (ar, Fixed(fc)) if node.op == "min" else (Fixed(fc), ar)
            segs = []
            if t_cross >= 0:
                segs.append((0, min(t_cross, count - 1), lo_leaf))
            if t_cross + 1 <= count - 1:
                segs.append((max(t_cross + 1, 0), count - 1, hi_leaf))
        for lo, hi, leaf in segs:
            tree_s = _shift(tree, lo)
            other_s = _shift(other, lo)
            leaf_s = _shift(leaf, lo)
            new_tree = _replace(tree_s, path, leaf_s)
            if which == "i":
                _reduce(new_tree, other_s, hi - lo + 1, out)
            else:
                _reduce(other_s, new_tree, hi - lo + 1, out)
        return

    # both trees are single leaves now
    _base_case(it, jt, count, d, out)


def _base_case(it: Seq, jt: Seq, count: int, p: int, out: List[BatchUpdate]):
    fi = isinstance(it, Fixed) or it.d == 0
    fj = isinstance(jt, Fixed) or jt.d == 0
    i0, j0 = value_at(it, 0), value_at(jt, 0)
    ilast, jlast = value_at(it, count - 1), value_at(jt, count - 1)
    if i0 > j0 or ilast > jlast:
        raise ValueError("sequence contains an empty interval")
    if fi and fj:
        out.append(_interval(i0, j0, count))
        return
    if fi:
        out.append(_interval(i0, j0, count))
        out.append(_stairs(j0 + 1, jlast, p, "dec"))
        return
    if fj:
        out.append(_stairs(i0, ilast - 1, p, "inc"))
        out.append(_interval(ilast, j0, count))
        return
    out.append(_stairs(i0, ilast - 1, p, "inc"))
    out.append(_interval(ilast, jlast, count))
    out.append(_stairs(j0 + 1, jlast, p, "inc", sign=-1))


def expand_stairs(i, j, p, orient, sign):
    """Explicit interval increments equivalent to one stairs update."""
    steps = -(-(j - i + 1) // p)
    out = []
    for t in range(1, steps + 1):
        if orient == "dec":
            lo = max(j - t * p + 1, i)
            hi = j - (t - 1) * p
        else:
            lo = i + (t - 1) * p
            hi = min(i + t * p - 1, j)
        out.append((lo, hi, sign * t))
    return out
