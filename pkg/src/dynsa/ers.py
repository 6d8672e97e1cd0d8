"""Per-word occurrence-selection and extension-restricting queries.

A word's sorted suffix array A_w decomposes as D ++ I (occurrences from
decreasing clusters, then increasing): within I occurrences sort by
descending period rank then ascending tail order, within D by ascending
rank then tail order.  Each side is a bucket list of equal-size T_z
sub-arrays plus range structures over the cluster summaries

    (|C|, r_L(C), r_R(C), head-lcs, tail-lcp, tail-rank)

held as 4-coordinate projections, which answer occurrence selection,
(l,r)-extendable range counting (periodic and aperiodic dispatch), and
extension-restricting selection by binary search over counts.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from .occindex import POR, Cluster
from .rangetree import RangeTree

_ANY = (None, None)


class RankRangeError(IndexError):
    """Selection rank beyond the number of qualifying occurrences."""

    def __init__(self, rank, total):
        super().__init__(f"rank {rank} out of range; only {total} occurrences qualify")
        self.rank = rank
        self.total = total


@dataclass
class ClusterMeta:
    a: int
    b: int
    p: int
    size: int
    r_l: int
    r_r: int
    head_lcs: int
    tail_lcp: int
    tail_pos: int
    cls: str  # 'D' | 'I'
    tr: int = 0


@dataclass(frozen=True)
class Selection:
    pos: int
    rank: int  # period rank of the selected occurrence
    inner: int  # 0-based index within its T_rank sub-array
    meta: ClusterMeta


class _Side:
    """One class (D or I) of clusters, bucketed by period rank."""

    def __init__(self, metas: List[ClusterMeta], direction: str, counters):
        self.direction = direction
        self.metas = metas  # sorted by tail order; tr = index + 1
        self.M = len(metas)
        self.total = sum(m.size for m in metas)
        self.buckets = []  # (start, z_first, step, t_size, num_ts)
        self.starts = []
        if not metas:
            self.tlex_sel = self.tlex_per = None
            self.tlex_head = self.tlex_tail = self.tlex_mid = None
            return
        all_ranks = sorted(m.size - 1 for m in metas)
        maxranks = sorted(set(all_ranks))

        def ge(v):  # clusters with max rank >= v
            lo, hi = 0, len(all_ranks)
            while lo < hi:
                mid = (lo + hi) // 2
                if all_ranks[mid] < v:
                    lo = mid + 1
                else:
                    hi = mid
            return len(all_ranks) - lo

        start = 0
        if direction == "I":
            desc = list(reversed(maxranks))
            for q, r_q in enumerate(desc):
                z_last = desc[q + 1] + 1 if q + 1 < len(desc) else 0
                num = r_q - z_last + 1
                t_size = ge(r_q)
                self.buckets.append((start, r_q, -1, t_size, num))
                start += t_size * num
        else:
            prev = -1
            for r_q in maxranks:
                z_first = prev + 1
                num = r_q - z_first + 1
                t_size = ge(z_first)
                self.buckets.append((start, z_first, 1, t_size, num))
                start += t_size * num
                prev = r_q
        self.starts = [b[0] for b in self.buckets]
        assert start == self.total, (start, self.total)
        cnt = counters
        self.tlex_sel, _ = RangeTree.build_static(
            2, [((m.tr, m.size), 1) for m in metas], cnt)
        self.tlex_per, _ = RangeTree.build_static(
            4, [((m.size, m.r_l, m.r_r, m.tr), m.size) for m in metas], cnt)
        self.tlex_head, _ = RangeTree.build_static(
            4, [((m.size, m.r_r, m.head_lcs, m.tr), 1) for m in metas], cnt)
        self.tlex_tail, _ = RangeTree.build_static(
            4, [((m.size, m.r_l, m.tail_lcp, m.tr), 1) for m in metas], cnt)
        self.tlex_mid, _ = RangeTree.build_static(
            4, [((m.size, m.head_lcs, m.tail_lcp, m.tr), 1) for m in metas], cnt)

    def locate(self, idx0: int) -> Tuple[int, int]:
        """0-based side index -> (period rank z, 0-based index within T_z)."""
        b = bisect_right(self.starts, idx0) - 1
        start, z_first, step, t_size, num = self.buckets[b]
        off = idx0 - start
        which = off // t_size
        return z_first + step * which, off % t_size

    def count_T(self, z: int) -> int:
        return self.tlex_sel.count([(None, None), (z + 1, None)]) if self.M else 0

    def select_in_T(self, z: int, inner: int) -> ClusterMeta:
        """(inner+1)-th smallest tail rank among clusters with size >= z+1."""
        need = inner + 1
        lo, hi = 1, self.M
        while lo < hi:
            mid = (lo + hi) // 2
            if self.tlex_sel.count([(1, mid), (z + 1, None)]) >= need:
                hi = mid
            else:
                lo = mid + 1
        return self.metas[lo - 1]


class SortedOccView:
    """Selection and (l,r)-extendable counting over one word's occurrences."""

    def __init__(self, view, s, e, por: POR, counters=None):
        self.view = view
        self.s = s
        self.e = e
        self.p = por.p
        n = view.n
        p = por.p
        x = e - s + 1
        self.x = x
        self.E_l = view.lcs(s - 1, s - 1 + p) if s - 1 + p <= n else 0
        self.E_r = view.lcp(e + 1, e + 1 - p) if e + 1 - p >= 1 else 0
        own = None
        for c in por.clusters:
            if c.a <= s <= c.b and (s - c.a) % p == 0:
                own = c
                break
        if own is None:
            raise ValueError("POR does not contain the word's own occurrence")
        own_end = own.b + x - 1
        ws_start = e - p + 1
        metas = []
        for c in por.clusters:
            end = c.b + x - 1
            r_l = view.lcs(c.a - 1, c.a - 1 + p) if c.a - 1 + p <= n else 0
            r_r = view.lcp(end + 1, end + 1 - p) if end + 1 - p >= 1 else 0
            head_lcs = view.lcs(c.a - 1, own.a - 1)
            tail_lcp = view.lcp(end + 1, own_end + 1)
            tail_pos = end + 1
            cls = "D" if self._tail_below_ws(view, tail_pos, ws_start, p) else "I"
            metas.append(ClusterMeta(c.a, c.b, p, c.size, r_l, r_r,
                                     head_lcs, tail_lcp, tail_pos, cls))

        def tail_cmp(u, v):
            if u.tail_pos == v.tail_pos:
                return 0
            if u.tail_pos > n:
                return -1
            if v.tail_pos > n:
                return 1
            return view.suffix_cmp(u.tail_pos, v.tail_pos)

        self.sides: Dict[str, _Side] = {}
        for cls in ("D", "I"):
            group = sorted((m for m in metas if m.cls == cls), key=cmp_to_key(tail_cmp))
            for idx, m in enumerate(group, start=1):
                m.tr = idx
            self.sides[cls] = _Side(group, cls, counters)
        self.d_total = self.sides["D"].total

    @staticmethod
    def _tail_below_ws(view, tail_pos, ws_start, p):
        """Tail(C) < w_s under the shorter-is-smaller rule."""
        n = view.n
        if tail_pos > n:
            return True
        tlen = n - tail_pos + 1
        cap = min(p, tlen)
        ell = view.lcp(tail_pos, ws_start, cap=cap)
        if ell >= p:
            return False  # cannot happen for maximal clusters; treat as increasing
        if ell == tlen:
            return True  # proper prefix of w_s
        return view.char_at(tail_pos + ell) < view.char_at(ws_start + ell)

    def size(self):
        return self.d_total + self.sides["I"].total

    # --- selection -----------------------------------------------------------

    def select(self, i: int) -> Selection:
        total = self.size()
        if not 1 <= i <= total:
            raise RankRangeError(i, total)
        if i <= self.d_total:
            side = self.sides["D"]
            idx0 = i - 1
        else:
            side = self.sides["I"]
            idx0 = i - self.d_total - 1
        z, inner = side.locate(idx0)
        meta = side.select_in_T(z, inner)
        pos = meta.a + (meta.size - z - 1) * meta.p
        return Selection(pos, z, inner, meta)

    # --- extension restricting range counting --------------------------------

    def erc_count(self, l, r, i, j):
        total = self.size()
        if l < 0 or r < 0 or i < 1 or j > total or i > j:
            raise ValueError(f"malformed query ({l},{r},{i},{j})")
        n = self.view.n
        if l > self.s - 1 or r > n - self.e:
            return 0
        out = 0
        dlo, dhi = i, min(j, self.d_total)
        if dlo <= dhi:
            out += self._count_side(self.sides["D"], l, r, dlo, dhi)
        ilo, ihi = max(i, self.d_total + 1) - self.d_total, j - self.d_total
        if ilo <= ihi and ihi >= 1:
            out += self._count_side(self.sides["I"], l, r, max(ilo, 1), ihi)
        return out

    def _count_side(self, side: _Side, l, r, li, lj):
        if side.total == 0 or li > lj:
            return 0
        z_i, in_i = side.locate(li - 1)
        z_j, in_j = side.locate(lj - 1)
        periodic = l <= self.E_l and r <= self.E_r
        if z_i == z_j:
            ci = side.select_in_T(z_i, in_i)
            cj = side.select_in_T(z_j, in_j)
            return self._partial(side, z_i, ci.tr, cj.tr, l, r, periodic)
        total = 0
        # partial windows at both ends
        ci = side.select_in_T(z_i, in_i)
        total += self._partial(side, z_i, ci.tr, None, l, r, periodic)
        cj = side.select_in_T(z_j, in_j)
        total += self._partial(side, z_j, None, cj.tr, l, r, periodic)
        a, b = (z_j + 1, z_i - 1) if side.direction == "I" else (z_i + 1, z_j - 1)
        if a <= b:
            total += self._full(side, a, b, l, r, periodic)
        return total

    def _partial(self, side, z, tr_lo, tr_hi, l, r, periodic):
        p = self.p
        win = (tr_lo, tr_hi)
        if periodic:
            q_l, r_l = divmod(l, p)
            q_r, r_r = divmod(r, p)
            if z < q_r:
                return 0
            if z == q_r:
                c1 = side.tlex_per.count([(q_r + q_l + 2, None), _ANY, (r_r, None), win])
                c2 = side.tlex_per.count(
                    [(q_r + q_l + 1, q_r + q_l + 1), (r_l, None), (r_r, None), win])
                return c1 + c2
            bord = side.tlex_per.count([(z + q_l + 1, z + q_l + 1), (r_l, None), _ANY, win])
            cent = side.tlex_per.count([(z + q_l + 2, None), _ANY, _ANY, win])
            return bord + cent
        q_el = self.E_l // p
        q_er = self.E_r // p
        if l > self.E_l and r <= self.E_r:
            q_r = r // p
            r_r = r - q_r * p
            lh = l - q_el * p
            if z < q_r:
                return 0
            sz = z + q_el + 1
            if z == q_r:
                return side.tlex_head.count([(sz, sz), (r_r, None), (lh, None), win])
            return side.tlex_head.count([(sz, sz), _ANY, (lh, None), win])
        if l <= self.E_l and r > self.E_r:
            q_l = l // p
            r_l = l - q_l * p
            rt = r - q_er * p
            if z != q_er:
                return 0
            c1 = side.tlex_tail.count([(q_l + q_er + 2, None), _ANY, (rt, None), win])
            c2 = side.tlex_tail.count(
                [(q_l + q_er + 1, q_l + q_er + 1), (r_l, None), (rt, None), win])
            return c1 + c2
        # both exceeded
        if z != q_er:
            return 0
        sz = q_el + q_er + 1
        lh = l - q_el * p
        rt = r - q_er * p
        return side.tlex_mid.count([(sz, sz), (lh, None), (rt, None), win])

    def _full(self, side, a, b, l, r, periodic):
        """Extendable occurrences with period rank in [a..b] (whole T_z's)."""
        p = self.p
        total = 0
        if periodic:
            q_l, r_l = divmod(l, p)
            q_r, r_r = divmod(r, p)
            m = max(a - 1, q_r)
            if b >= m + 1:
                large = side.tlex_per.count([(b + q_l + 2, None), _ANY, _ANY, _ANY])
                total += large * (b - m)
                lo_sz, hi_sz = m + q_l + 3, b + q_l + 1
                if lo_sz <= hi_sz:
                    s_mid = side.tlex_per.sum([(lo_sz, hi_sz), _ANY, _ANY, _ANY])
                    c_mid = side.tlex_per.count([(lo_sz, hi_sz), _ANY, _ANY, _ANY])
                    total += s_mid - c_mid * (q_l + 2 + m)
            if a <= q_r <= b:
                total += side.tlex_per.count([(q_r + q_l + 2, None), _ANY, (r_r, None), _ANY])
                total += side.tlex_per.count(
                    [(q_r + q_l + 1, q_r + q_l + 1), (r_l, None), (r_r, None), _ANY])
            lo_sz = max(q_r + q_l + 2, a + q_l + 1)
            hi_sz = b + q_l + 1
            if lo_sz <= hi_sz:
                total += side.tlex_per.count([(lo_sz, hi_sz), (r_l, None), _ANY, _ANY])
            return total
        q_el = self.E_l // p
        q_er = self.E_r // p
        if l > self.E_l and r <= self.E_r:
            q_r = r // p
            r_r = r - q_r * p
            lh = l - q_el * p
            lo_sz = max(a + q_el + 1, q_r + q_el + 2)
            hi_sz = b + q_el + 1
            if lo_sz <= hi_sz:
                total += side.tlex_head.count([(lo_sz, hi_sz), _ANY, (lh, None), _ANY])
            if a <= q_r <= b:
                sz = q_r + q_el + 1
                total += side.tlex_head.count([(sz, sz), (r_r, None), (lh, None), _ANY])
            return total
        if l <= self.E_l and r > self.E_r:
            if not a <= q_er <= b:
                return 0
            q_l = l // p
            r_l = l - q_l * p
            rt = r - q_er * p
            total += side.tlex_tail.count([(q_l + q_er + 2, None), _ANY, (rt, None), _ANY])
            total += side.tlex_tail.count(
                [(q_l + q_er + 1, q_l + q_er + 1), (r_l, None), (rt, None), _ANY])
            return total
        if not a <= q_er <= b:
            return 0
        sz = q_el + q_er + 1
        lh = l - q_el * p
        rt = r - q_er * p
        return side.tlex_mid.count([(sz, sz), (lh, None), (rt, None), _ANY])

    # --- extension restricting selection -------------------------------------

    def ers_select(self, l, r, i):
        total = self.size()
        if total == 0:
            raise RankRangeError(i, 0)
        qualifying = self.erc_count(l, r, 1, total)
        if not 1 <= i <= qualifying:
            raise RankRangeError(i, qualifying)
        lo, hi = 1, total
        while lo < hi:
            mid = (lo + hi) // 2
            if self.erc_count(l, r, 1, mid) >= i:
                hi = mid
            else:
                lo = mid + 1
        return self.select(lo).pos
