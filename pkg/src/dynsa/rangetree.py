"""Dynamic d-dimensional orthogonal range counting (d in 2..4).

Static nested range trees made dynamic with the logarithmic method: the
point set is kept as a binary decomposition of static trees, inserts merge
carry-style, and deletions go into a parallel "ghost" decomposition that
queries subtract (a tombstone count in structure form).  A global rebuild
drops ghosts once they reach half the live weight.

COUNT/SUM are exact multiset answers; REPORT returns the live point
handles.  Query ranges are per-axis closed intervals; ``None`` bounds mean
unbounded.  Every node touched bumps ``counters.range_visits`` so tests
can use visit counts as the complexity proxy.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

_LEAF = 8


class PointHandle:
    __slots__ = ("coords", "value", "alive", "owner")

    def __init__(self, coords, value, owner):
        self.coords = coords
        self.value = value
        self.alive = True
        self.owner = owner

    def __repr__(self):
        return f"Point({self.coords}, v={self.value}, alive={self.alive})"


class _Static:
    """Immutable nested range tree over a list of point records."""

    __slots__ = ("d", "keys", "pts", "prefix", "left", "right", "sub", "counters")

    def __init__(self, points, d, counters):
        self.d = d
        self.counters = counters
        dim = len(points[0].coords) - d  # first unfixed axis
        pts = sorted(points, key=lambda p: p.coords[dim])
        self.pts = pts
        self.keys = [p.coords[dim] for p in pts]
        if d == 1:
            acc = 0
            prefix = [0]
            for p in pts:
                acc += p.value
                prefix.append(acc)
            self.prefix = prefix
            self.left = self.right = self.sub = None
        else:
            self.prefix = None
            if len(pts) > _LEAF:
                mid = len(pts) // 2
                self.left = _Static(pts[:mid], d, counters)
                self.right = _Static(pts[mid:], d, counters)
                self.sub = _Static(pts, d - 1, counters)
            else:
                self.left = self.right = self.sub = None

    # --- queries -----------------------------------------------------------

    def query(self, ranges, want_sum):
        self.counters.range_visits += 1
        lo, hi = ranges[0]
        l = bisect_left(self.keys, lo) if lo is not None else 0
        r = bisect_right(self.keys, hi) if hi is not None else len(self.keys)
        if l >= r:
            return 0
        if self.d == 1:
            if want_sum:
                return self.prefix[r] - self.prefix[l]
            return r - l
        if len(ranges) == 1:
            raise AssertionError("dimension mismatch")
        return self._narrow(l, r, ranges[1:], want_sum)

    def _narrow(self, l, r, rest, want_sum):
        """Aggregate over pts[l:r] with the remaining axis constraints."""
        if l >= r:
            return 0
        self.counters.range_visits += 1
        if l == 0 and r == len(self.pts):
            if self.sub is not None:
                return self.sub.query(rest, want_sum)
            return self._scan(0, len(self.pts), rest, want_sum)
        if self.left is None:
            return self._scan(l, r, rest, want_sum)
        mid = len(self.left.pts)
        if r <= mid:
            return self.left._narrow(l, r, rest, want_sum)
        if l >= mid:
            return self.right._narrow(l - mid, r - mid, rest, want_sum)
        return (self.left._narrow(l, mid, rest, want_sum)
                + self.right._narrow(0, r - mid, rest, want_sum))

    def _scan(self, l, r, rest, want_sum):
        dim = len(self.pts[0].coords) - len(rest)
        total = 0
        for p in self.pts[l:r]:
            self.counters.range_visits += 1
            ok = True
            for off, (lo, hi) in enumerate(rest):
                c = p.coords[dim + off]
                if (lo is not None and c < lo) or (hi is not None and c > hi):
                    ok = False
                    break
            if ok:
                total += p.value if want_sum else 1
        return total

    def report(self, ranges, out):
        self.counters.range_visits += 1
        lo, hi = ranges[0]
        l = bisect_left(self.keys, lo) if lo is not None else 0
        r = bisect_right(self.keys, hi) if hi is not None else len(self.keys)
        if l >= r:
            return
        if self.d == 1 or len(ranges) == 1:
            for p in self.pts[l:r]:
                out.append(p)
            return
        self._report_narrow(l, r, ranges[1:], out)

    def _report_narrow(self, l, r, rest, out):
        if l >= r:
            return
        self.counters.range_visits += 1
        if l == 0 and r == len(self.pts) and self.sub is not None:
            self.sub.report(rest, out)
            return
        if self.left is None:
            dim = len(self.pts[0].coords) - len(rest)
            for p in self.pts[l:r]:
                ok = True
                for off, (lo, hi) in enumerate(rest):
                    c = p.coords[dim + off]
                    if (lo is not None and c < lo) or (hi is not None and c > hi):
                        ok = False
                        break
                if ok:
                    out.append(p)
            return
        mid = len(self.left.pts)
        if r <= mid:
            self.left._report_narrow(l, r, rest, out)
        elif l >= mid:
            self.right._report_narrow(l - mid, r - mid, rest, out)
        else:
            self.left._report_narrow(l, mid, rest, out)
            self.right._report_narrow(0, r - mid, rest, out)


class RangeTree:
    """d-dimensional points with insert/remove and COUNT/SUM/REPORT."""

    def __init__(self, d, counters=None):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        self.d = d
        from .counters import Counters

        self.counters = counters if counters is not None else Counters()
        self._levels = []
        self._ghost = []
        self._n_main = 0
        self._n_ghost = 0

    @classmethod
    def build_static(cls, d, items, counters=None):
        """Bulk construction from (coords, value) pairs."""
        t = cls(d, counters)
        pts = [PointHandle(tuple(c), v, t) for c, v in items]
        if pts:
            t._levels = [_Static(pts, d, t.counters)]
            t._n_main = len(pts)
        return t, pts

    def __len__(self):
        return self._n_main - self._n_ghost

    def insert(self, coords, value=1):
        coords = tuple(coords)
        if len(coords) != self.d:
            raise ValueError(f"expected {self.d} coordinates, got {len(coords)}")
        h = PointHandle(coords, value, self)
        self._push(self._levels, [h])
        self._n_main += 1
        return h

    def remove(self, handle):
        if not isinstance(handle, PointHandle) or handle.owner is not self:
            raise ValueError("handle does not belong to this structure")
        if not handle.alive:
            raise ValueError("handle already removed")
        handle.alive = False
        ghost = PointHandle(handle.coords, handle.value, self)
        self._push(self._ghost, [ghost])
        self._n_ghost += 1
        if self._n_ghost * 2 >= self._n_main and self._n_ghost > 8:
            self._rebuild()

    def _push(self, levels, pending):
        j = 0
        while True:
            if j == len(levels):
                levels.append(None)
            if levels[j] is None:
                levels[j] = _Static(pending, self.d, self.counters)
                return
            pending = pending + levels[j].pts
            levels[j] = None
            j += 1

    def _rebuild(self):
        alive = [p for lvl in self._levels if lvl is not None for p in lvl.pts if p.alive]
        self._levels = []
        self._ghost = []
        self._n_main = len(alive)
        self._n_ghost = 0
        if alive:
            self._levels = [_Static(alive, self.d, self.counters)]

    def _normalize(self, ranges):
        ranges = list(ranges)
        if len(ranges) != self.d:
            raise ValueError(f"expected {self.d} ranges, got {len(ranges)}")
        out = []
        for lo, hi in ranges:
            lo = None if lo is not None and lo == float("-inf") else lo
            hi = None if hi is not None and hi == float("inf") else hi
            out.append((lo, hi))
        return out

    def _agg(self, ranges, want_sum):
        ranges = self._normalize(ranges)
        total = 0
        for lvl in self._levels:
            if lvl is not None:
                total += lvl.query(ranges, want_sum)
        for lvl in self._ghost:
            if lvl is not None:
                total -= lvl.query(ranges, want_sum)
        return total

    def count(self, ranges):
        return self._agg(ranges, want_sum=False)

    def sum(self, ranges):
        return self._agg(ranges, want_sum=True)

    def report(self, ranges):
        ranges = self._normalize(ranges)
        out = []
        for lvl in self._levels:
            if lvl is not None:
                lvl.report(ranges, out)
        return [p for p in out if p.alive]
