"""Dynamic inverted suffix array under substitutions (threshold k = sqrt n).

The engine maintains the close-suffix rank array R[1..n] (rank of each
suffix among suffixes sharing its k-prefix).  A substitution at x triggers,
in order:

1. registry maintenance: registered extremely-periodic runs containing x
   are cut (short remnants folded out of their stairs store), runs abutting
   x are extended;
2. k-words tree maintenance for both word lengths (k and k/2);
3. overtake updates from the occurrences of S[x-k..x-1] (pairs of static
   suffixes whose order flipped);
4. shift updates from the occurrences of the half-words ending/starting at
   x in the new text (+1) and in the old text (-1);
5. evaluation updates recomputing the ranks of the 2k/2 dynamic suffixes
   through a scratch counter array indexed by distance from x.

Cluster-shaped occurrence sets turn into p-normal interval sequences and
reduce to O(1) stairs updates; stairs land in per-width stores gated by
the registry of extremely periodic runs, everything else goes straight
into the base Fenwick.
"""

from __future__ import annotations

import math
import os

from .counters import Counters
from .dynstr import DynamicString, EditOp
from .occindex import (IntLedger, KWordsTree, cluster_lce_progression,
                       extract_por, is_extremely_periodic, lex_intervals,
                       run_with_period)
from .rangetree import RangeTree
from .stairs import (Arith, Fixed, FixedWidthStairsStore,
                     IntervalIncrementStore, expand_stairs,
                     reduce_interval_sequence, seq_max, seq_min)


def _static_sa(sym):
    """Prefix-doubling suffix sort; 1-based start positions."""
    n = len(sym)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda i: sym[i])
    rank = [0] * n
    r = 0
    for idx, i in enumerate(order):
        if idx and sym[i] != sym[order[idx - 1]]:
            r += 1
        rank[i] = r
    k = 1
    while True:
        def key(i):
            return (rank[i], rank[i + k] if i + k < n else -1)

        order.sort(key=key)
        tmp = [0] * n
        r = 0
        for idx, i in enumerate(order):
            if idx and key(i) != key(order[idx - 1]):
                r += 1
            tmp[i] = r
        rank = tmp
        if rank[order[-1]] == n - 1:
            break
        k <<= 1
    return [i + 1 for i in order]


def _lcp_array(sym, sa):
    """Kasai; la[i] = lcp(sa[i-1], sa[i]) for i >= 1, la[0] = 0."""
    n = len(sym)
    rank = [0] * n
    for idx, pos in enumerate(sa):
        rank[pos - 1] = idx
    la = [0] * n
    h = 0
    for i in range(n):
        if rank[i] == 0:
            h = 0
            continue
        j = sa[rank[i] - 1] - 1
        while i + h < n and j + h < n and sym[i + h] == sym[j + h]:
            h += 1
        la[rank[i]] = h
        if h:
            h -= 1
    return la


class RankStore:
    """Base Fenwick + per-width stairs stores gated by the run registry."""

    def __init__(self, n, counters):
        self.n = n
        self.counters = counters
        self.base = IntervalIncrementStore(n, counters)
        self.per_p = {}
        self.act_int = RangeTree(2, counters)
        self._reg = {}
        self.stairs_routed = 0
        self.stairs_expanded = 0

    def covering(self, i):
        return self.act_int.report([(None, i), (i, None)])

    def close_rank(self, i):
        v = self.base.read(i)
        seen = set()
        for pt in self.covering(i):
            p = pt.value
            if p in seen:
                continue
            seen.add(p)
            store = self.per_p.get(p)
            if store is not None:
                v += store.read(i)
        return v

    def register(self, a, b, p):
        key = (a, b, p)
        if key in self._reg:
            return
        self._reg[key] = self.act_int.insert((a, b), p)

    def unregister(self, a, b, p):
        key = (a, b, p)
        h = self._reg.pop(key, None)
        if h is not None:
            self.act_int.remove(h)

    def registered(self):
        return list(self._reg.keys())

    def store_for(self, p):
        store = self.per_p.get(p)
        if store is None:
            store = self.per_p[p] = FixedWidthStairsStore(p, self.n, self.counters)
        return store

    def covered_with_p(self, i, p):
        return any(pt.value == p for pt in self.covering(i))

    def route_stairs(self, new_view, upd, sign, preferred=None):
        """Apply one stairs update: to St_p inside an extremely periodic run,
        or expanded into explicit interval increments otherwise."""
        run = None
        if preferred is not None and preferred[0] <= upd.i and upd.j <= preferred[1]:
            run = preferred
        else:
            run = run_with_period(new_view, upd.i, upd.j, upd.p)
        if run is not None and is_extremely_periodic(run[0], run[1], upd.p):
            assert run[0] <= upd.i <= upd.j <= run[1], "stairs outside its run"
            self.register(run[0], run[1], upd.p)
            self.store_for(upd.p).apply(upd.i, upd.j, upd.orient, upd.sign * sign)
            self.stairs_routed += 1
        else:
            for lo, hi, amt in expand_stairs(upd.i, upd.j, upd.p, upd.orient, upd.sign * sign):
                self.base.add(lo, hi, amt)
            self.stairs_expanded += 1

    def maintain(self, new_view, x):
        """Invariant maintenance after a substitution at x (run before this
        substitution's own stairs registrations)."""
        n = self.n
        for pt in self.covering(x):
            a, b = pt.coords
            p = pt.value
            self.unregister(a, b, p)
            exclude = [x]
            for lo, hi in ((a, x - 1), (x + 1, b)):
                if hi - lo + 1 >= 5 * p:
                    self.register(lo, hi, p)
                elif lo <= hi:
                    exclude.extend(range(lo, hi + 1))
            store = self.per_p.get(p)
            if store is None:
                continue
            for i in exclude:
                if 1 <= i <= n and not self.covered_with_p(i, p):
                    prev = store.zero_index(i)
                    if prev:
                        self.base.add(i, i, prev)
        # runs abutting x may have been extended by the new symbol
        for pt in self.act_int.report([(None, x - 1), (x - 1, x - 1)]):
            a, b = pt.coords
            if b != x - 1:
                continue
            p = pt.value
            r = new_view.lcp(x, x - p) if x - p >= 1 else 0
            if r > 0:
                self.unregister(a, b, p)
                self.register(a, min(b + r, n), p)
        for pt in self.act_int.report([(x + 1, x + 1), (x + 1, None)]):
            a, b = pt.coords
            if a != x + 1:
                continue
            p = pt.value
            r = new_view.lcs(x, x + p) if x + p <= n else 0
            if r > 0:
                self.unregister(a, b, p)
                self.register(max(a - r, 1), b, p)

    def flush_if_due(self, limit):
        for p, store in list(self.per_p.items()):
            if store.update_count > limit:
                for i, v in store.drain():
                    self.base.add(i, i, v)


class _EvalScratch:
    """The Re counter array over offsets [0..cap], stairs-capable."""

    def __init__(self, cap, p, counters):
        self.cap = cap
        self.p = p
        self.fen = IntervalIncrementStore(cap + 1, counters)
        self.stairs = None
        self.counters = counters

    def add_interval(self, lo, hi, amt):
        lo = max(lo, 0)
        hi = min(hi, self.cap)
        if lo <= hi:
            self.fen.add(lo + 1, hi + 1, amt)

    def add_stairs(self, upd, sign):
        if self.stairs is None:
            self.stairs = FixedWidthStairsStore(self.p, self.cap + 1, self.counters)
        self.stairs.apply(upd.i + 1, upd.j + 1, upd.orient, upd.sign * sign)

    def read(self, delta):
        v = self.fen.read(delta + 1)
        if self.stairs is not None:
            v += self.stairs.read(delta + 1)
        return v


def _valid_range(f, lo, hi):
    """Largest contiguous [a..b] within [lo..hi] where concave f >= 0."""
    if lo > hi:
        return None
    flo, fhi = f(lo), f(hi)
    if flo >= 0 and fhi >= 0:
        return (lo, hi)
    if flo >= 0 or fhi >= 0:
        if flo >= 0:  # valid prefix: find last t with f >= 0
            a, b = lo, hi
            while a < b:
                mid = (a + b + 1) // 2
                if f(mid) >= 0:
                    a = mid
                else:
                    b = mid - 1
            return (lo, a)
        a, b = lo, hi
        while a < b:
            mid = (a + b) // 2
            if f(mid) >= 0:
                b = mid
            else:
                a = mid + 1
        return (a, hi)
    # both ends negative: peak search (f concave)
    a, b = lo, hi
    while b - a > 2:
        m1 = a + (b - a) // 3
        m2 = b - (b - a) // 3
        if f(m1) < f(m2):
            a = m1 + 1
        else:
            b = m2
    peak = max(range(a, b + 1), key=f)
    if f(peak) < 0:
        return None
    left = _valid_range(f, lo, peak)
    right = _valid_range(f, peak, hi)
    return (left[0] if left else peak, right[1] if right else peak)


class DynamicISA:
    """Inverted suffix array of a dynamic text under substitution updates."""

    def __init__(self, text, alphabet=None, counters=None):
        self.counters = counters if counters is not None else Counters()
        self.ds = DynamicString(text, alphabet=alphabet, backend="array",
                                counters=self.counters)
        n = self.ds.n
        self.n = n
        k = math.isqrt(n) if n else 1
        if k * k < n:
            k += 1
        if k & 1:
            k += 1
        k = max(2, k)
        self.k = k
        self.h = k // 2
        self.ledger = IntLedger()
        raw = self.ds.snapshot()
        handles = list(range(1, n + 1))
        self.tree_k = KWordsTree(k, self.ledger)
        self.tree_k.build(raw, handles)
        self.tree_h = KWordsTree(self.h, self.ledger)
        self.tree_h.build(raw, handles)
        self.ranks = RankStore(n, self.counters)
        self._init_ranks(raw)
        policy = os.environ.get("DYNSA_EPOCH_POLICY", "")
        self._flush_limit = 1 if policy == "aggressive" else 4 * max(n, 1)

    def _init_ranks(self, raw):
        sym = [raw[i] if isinstance(raw[i], int) else ord(raw[i]) for i in range(len(raw))]
        sa = _static_sa(sym)
        la = _lcp_array(sym, sa)
        base = self.ranks.base
        prev_rank = 0
        for idx, pos in enumerate(sa):
            if idx == 0 or la[idx] < self.k:
                prev_rank = 0
            else:
                prev_rank += 1
            if prev_rank:
                base.add(pos, pos, prev_rank)

    # --- queries -------------------------------------------------------------

    def close_rank(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        return self.ranks.close_rank(i)

    def isa(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        _, far = self.tree_k.find_node(self.ds.view(), i)
        return far + self.ranks.close_rank(i) + 1

    def isa_all(self):
        out = [0] * (self.n + 1)
        far = 0
        for node in self.tree_k.iter_nodes():
            for h in node.occs:
                out[h] = far
            far += len(node.occs)
        cr = self.ranks.close_rank
        return [out[i] + cr(i) + 1 for i in range(1, self.n + 1)]

    # --- update ----------------------------------------------------------------

    def substitute(self, x, symbol):
        """Apply the non-trivial substitution S[x] = symbol and repair all ranks."""
        dual = self.ds.apply(EditOp("sub", x, symbol))
        old, new = dual.old, dual.new
        h = self.h
        k = self.k
        por_ul = extract_por(old, self.tree_h, x - h + 1) if x >= h else None
        por_ur = extract_por(old, self.tree_h, x)
        self.ranks.maintain(new, x)
        self.tree_k.apply_substitution(old, new, x)
        self.tree_h.apply_substitution(old, new, x)
        if x - k >= 1:
            self._overtakes(old, new, x)
        if x >= h:
            por_wl = extract_por(new, self.tree_h, x - h + 1)
            self._shift_pass(new, new, por_wl, h, +1)
        else:
            por_wl = None
        por_wr = extract_por(new, self.tree_h, x)
        if h >= 2:
            self._shift_pass(new, new, por_wr, h - 2, +1)
            if por_ur is not None:
                self._shift_pass(old, new, por_ur, h - 2, -1)
        if por_ul is not None:
            self._shift_pass(old, new, por_ul, h, -1)
        self._evaluate(new, x, por_wl, por_wr)
        self.ranks.flush_if_due(self._flush_limit)
        dual.commit()

    # --- shifts ----------------------------------------------------------------

    def _shift_pass(self, view, new_view, por, cap, sign):
        """One anchor word's shift contributions (sign +1 new text, -1 old)."""
        if cap < 0:
            return
        s, e = por.s, por.e
        if e - s + 1 < self.h:  # padded anchor: no other occurrences
            return
        p = por.p
        base = self.ranks.base
        run_w = run_with_period(view, s, e, p)
        anchor_extreme = run_w is not None and is_extremely_periodic(run_w[0], run_w[1], p)
        for c in por.clusters:
            if c.size == 1 or not anchor_extreme:
                for s1 in c.positions():
                    self._shift_occ(view, s, e, s1, cap, sign)
                continue
            self._shift_cluster(view, new_view, s, e, c, cap, sign)

    def _shift_occ(self, view, s, e, s1, cap, sign):
        if s1 == s:
            return
        if view.suffix_cmp(s1, s) <= 0:
            return
        h = self.h
        l = view.lcs(s1 - 1, s - 1)
        e1 = s1 + (e - s)
        r = view.lcp(e1 + 1, e + 1)
        lo = s1 - min(l, cap)
        hi = s1 - max(0, h - r)
        if lo <= hi:
            self.ranks.base.add(lo, hi, sign)

    def _shift_cluster(self, view, new_view, s, e, c, cap, sign):
        gt = lex_intervals(view, c.a, c.p, c.size, s, e)[1]
        if gt is None:
            return
        re = cluster_lce_progression(view, s, e, c)
        p = c.p
        h = self.h
        run_c = run_with_period(new_view, c.a, c.b + (e - s), p)

        def f(t):
            l_t = min(re.ex_l, re.exc_l + p * t)
            r_t = min(re.ex_r, re.exc_r - p * t)
            return min(l_t, cap) - max(0, h - r_t)

        for t_lo, t_hi in _split_segments(gt, re.aligned):
            if t_lo == t_hi and t_lo in re.aligned:
                self._shift_occ(view, s, e, c.a + t_lo * p, cap, sign)
                continue
            vr = _valid_range(f, t_lo, t_hi)
            if vr is None:
                continue
            u, v = vr
            s_u = c.a + u * p
            i_seq = seq_max(seq_max(Arith(s_u - re.ex_l, p), Fixed(c.a - re.exc_l)),
                            Arith(s_u - cap, p))
            j_seq = seq_min(Arith(s_u, p),
                            seq_min(Arith(s_u + re.ex_r - h, p), Fixed(c.a + re.exc_r - h)))
            for upd in reduce_interval_sequence(i_seq, j_seq, v - u + 1):
                if upd.kind == "interval":
                    self.ranks.base.add(upd.i, upd.j, sign * upd.amount)
                else:
                    self.ranks.route_stairs(new_view, upd, sign, preferred=run_c)

    # --- overtakes ---------------------------------------------------------------

    def _overtakes(self, old, new, x):
        k = self.k
        s = x - k
        e = x - 1
        por = extract_por(new, self.tree_k, s)
        p = por.p
        run_w = run_with_period(new, s, e, p)
        anchor_extreme = run_w is not None and is_extremely_periodic(run_w[0], run_w[1], p)
        dyn_lo, dyn_hi = x - k + 1, x
        for c in por.clusters:
            statics = []
            # t with s_t <= x-k
            t1 = (dyn_lo - 1 - c.a) // c.p if c.a <= dyn_lo - 1 else -1
            if t1 >= 0:
                statics.append((0, min(t1, c.size - 1)))
            # t with s_t >= x+1
            t2 = -(-(dyn_hi + 1 - c.a) // c.p)
            if t2 <= c.size - 1:
                statics.append((max(t2, 0), c.size - 1))
            for t_a, t_b in statics:
                if t_a > t_b:
                    continue
                a1 = c.a + t_a * c.p
                m1 = t_b - t_a + 1
                if m1 <= 2 or c.size == 1 or not anchor_extreme:
                    for t in range(t_a, t_b + 1):
                        self._overtake_occ(old, new, s, c.a + t * c.p)
                    continue
                self._overtake_progression(old, new, x, s, e, a1, c.p, m1, run_w)

    def _overtake_occ(self, old, new, s, s1):
        if s1 == s:
            return
        c_s = new.suffix_cmp(s1, s)
        c_t = old.suffix_cmp(s1, s)
        if c_s < 0 and c_t > 0:
            sgn = 1  # the suffix at s moved above the one at s1
        elif c_s > 0 and c_t < 0:
            sgn = -1
        else:
            return
        m = min(new.lcs(s1 - 1, s - 1), old.lcs(s1 - 1, s - 1))
        base = self.ranks.base
        base.add(s - m, s, sgn)
        base.add(s1 - m, s1, -sgn)

    def _overtake_progression(self, old, new, x, s, e, a, p, m, run_w):
        lt_s, gt_s = lex_intervals(new, a, p, m, s, e)
        lt_t, gt_t = lex_intervals(old, a, p, m, s, e)
        re_s = cluster_lce_progression(new, s, e, _C(a, p, m, e - s + 1))
        re_t = cluster_lce_progression(old, s, e, _C(a, p, m, e - s + 1))
        aligned = tuple(sorted(set(re_s.aligned) | set(re_t.aligned)))
        run_c = run_with_period(new, a, a + (m - 1) * p + (e - s), p)

        for iv, sgn in ((_intersect(lt_s, gt_t), 1), (_intersect(gt_s, lt_t), -1)):
            if iv is None:
                continue
            for t_lo, t_hi in _split_segments(iv, aligned):
                if t_lo == t_hi and t_lo in aligned:
                    self._overtake_occ(old, new, s, a + t_lo * p)
                    continue
                u, v = t_lo, t_hi
                cnt = v - u + 1
                s_u = a + u * p
                # around the anchor word: [s - m_t .. s], amount sgn
                i_seq = seq_max(
                    seq_max(Fixed(s - re_s.ex_l), Arith(s - re_s.exc_l - p * u, -p)),
                    seq_max(Fixed(s - re_t.ex_l), Arith(s - re_t.exc_l - p * u, -p)))
                for upd in reduce_interval_sequence(i_seq, Fixed(s), cnt):
                    if upd.kind == "interval":
                        self.ranks.base.add(upd.i, upd.j, sgn * upd.amount)
                    else:
                        self.ranks.route_stairs(new, upd, sgn, preferred=run_w)
                # around the occurrences: [s_t - m_t .. s_t], amount -sgn
                i_seq2 = seq_max(
                    seq_max(Arith(s_u - re_s.ex_l, p), Fixed(a - re_s.exc_l)),
                    seq_max(Arith(s_u - re_t.ex_l, p), Fixed(a - re_t.exc_l)))
                for upd in reduce_interval_sequence(i_seq2, Arith(s_u, p), cnt):
                    if upd.kind == "interval":
                        self.ranks.base.add(upd.i, upd.j, -sgn * upd.amount)
                    else:
                        self.ranks.route_stairs(new, upd, -sgn, preferred=run_c)

    # --- evaluation ---------------------------------------------------------------

    def _evaluate(self, new, x, por_wl, por_wr):
        h = self.h
        n = self.n
        if por_wl is not None:
            dmax = min(h, x - h)
            if dmax >= 0:
                scratch = self._eval_half(new, por_wl, h, dmax)
                self._flush_eval(scratch, x, lambda d: x - h + 1 - d, dmax)
        if h >= 2 and por_wr is not None:
            dmax = min(h - 2, x - 1)
            if dmax >= 0:
                scratch = self._eval_half(new, por_wr, h - 2, dmax)
                self._flush_eval(scratch, x, lambda d: x - d, dmax)

    def _eval_half(self, new, por, cap, dmax):
        s, e = por.s, por.e
        h = self.h
        p = por.p
        scratch = _EvalScratch(cap, p, self.counters) if cap >= 0 else None
        if e - s + 1 < h and e >= new.n:
            return scratch  # padded anchor word occurs nowhere else
        for c in por.clusters:
            if c.size == 1:
                self._eval_occ(new, scratch, s, e, c.a, cap)
                continue
            lt = lex_intervals(new, c.a, c.p, c.size, s, e)[0]
            if lt is None:
                continue
            re = cluster_lce_progression(new, s, e, c)

            def f(t):
                l_t = min(re.ex_l, re.exc_l + p * t)
                r_t = min(re.ex_r, re.exc_r - p * t)
                return min(l_t, cap) - max(0, h - r_t)

            for t_lo, t_hi in _split_segments(lt, re.aligned):
                if t_lo == t_hi and t_lo in re.aligned:
                    self._eval_occ(new, scratch, s, e, c.a + t_lo * p, cap)
                    continue
                vr = _valid_range(f, t_lo, t_hi)
                if vr is None:
                    continue
                u, v = vr
                i_seq = seq_max(Fixed(0),
                                seq_max(Fixed(h - re.ex_r),
                                        Arith(h - re.exc_r + p * u, p)))
                j_seq = seq_min(seq_min(Fixed(re.ex_l), Arith(re.exc_l + p * u, p)),
                                Fixed(cap))
                for upd in reduce_interval_sequence(i_seq, j_seq, v - u + 1):
                    if upd.kind == "interval":
                        scratch.add_interval(upd.i, upd.j, upd.amount)
                    else:
                        scratch.add_stairs(upd, +1)
        return scratch

    def _eval_occ(self, new, scratch, s, e, s1, cap):
        if s1 == s:
            return
        if new.suffix_cmp(s1, s) >= 0:
            return
        h = self.h
        l = new.lcs(s1 - 1, s - 1)
        r = new.lcp(s1 + (e - s) + 1, e + 1)
        lo = max(0, h - r)
        hi = min(l, cap)
        if lo <= hi:
            scratch.add_interval(lo, hi, 1)

    def _flush_eval(self, scratch, x, dpos, dmax):
        cr = self.ranks.close_rank
        base = self.ranks.base
        for d in range(dmax + 1):
            i = dpos(d)
            v = scratch.read(d)
            cur = cr(i)
            if v != cur:
                base.add(i, i, v - cur)

    # --- invariants (test support) -------------------------------------------------

    def check_invariants(self):
        view = self.ds.view()
        for a, b, p in self.ranks.registered():
            run = run_with_period(view, a, b, p)
            assert run == (a, b), f"registry entry ({a},{b},{p}) is not a maximal run: {run}"
            assert is_extremely_periodic(a, b, p), f"registry entry ({a},{b},{p}) not extreme"
        for p, store in self.ranks.per_p.items():
            rng = store.touched_range()
            idxs = set(store._zero)
            if rng is not None:
                idxs.update(range(rng[0], rng[1] + 1))
            for i in idxs:
                if store.read(i) != 0:
                    assert self.ranks.covered_with_p(i, p), \
                        f"St_{p}[{i}] != 0 but no covering registered run"


class _C:
    __slots__ = ("a", "p", "size", "b")

    def __init__(self, a, p, size, x):
        self.a = a
        self.p = p
        self.size = size
        self.b = a + (size - 1) * p


def _intersect(u, v):
    if u is None or v is None:
        return None
    lo = max(u[0], v[0])
    hi = min(u[1], v[1])
    return (lo, hi) if lo <= hi else None


def _split_segments(interval, aligned):
    """Break [lo..hi] at the aligned points; aligned points come out as
    degenerate single-t segments."""
    lo, hi = interval
    cuts = [t for t in aligned if lo <= t <= hi]
    out = []
    cur = lo
    for t in cuts:
        if cur <= t - 1:
            out.append((cur, t - 1))
        out.append((t, t))
        cur = t + 1
    if cur <= hi:
        out.append((cur, hi))
    return out
