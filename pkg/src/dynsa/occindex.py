"""k-words tree, periodic occurrence representation, and run machinery.

The k-words tree is a treap over the distinct k-length subwords (padded
convention at the text end: a shorter word sorts below every extension of
it and is distinct from every other word).  Each node keeps its occurrence
start positions ordered and a subtree occurrence total, so lexicographic
rank counting and rank selection are both O(log n) descents.

Occurrence positions are stored as ledger handles: under substitutions the
ledger is the identity on integers, under insert/delete it is an
order-statistic treap whose handles keep their relative order, so one edit
shifts every downstream position implicitly.

POR extraction walks a node's occurrence list left to right.  The period
is learned from the first consecutive gap g with 2g <= |w| (such a gap
always equals per(w)); clusters are then extended arithmetically through
their run and the walk jumps over them, so the cost is proportional to the
number of clusters, not occurrences.  If no such gap exists the word's
occurrences are grouped at distance exactly |w| with declared step |w|;
all downstream formulas use the declared step consistently.
"""

from __future__ import annotations

import random as _random_mod
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

_rng = _random_mod.Random(0xC0FFEE)


# ---------------------------------------------------------------------------
# position ledgers


class IntLedger:
    """Identity ledger for fixed-length texts (substitutions only)."""

    def rank(self, h):
        return h

    def handle_at(self, r):
        return r


class _LNode:
    __slots__ = ("prio", "size", "left", "right", "parent")

    def __init__(self, prio):
        self.prio = prio
        self.size = 1
        self.left = None
        self.right = None
        self.parent = None


def _lupd(n):
    size = 1
    if n.left is not None:
        size += n.left.size
        n.left.parent = n
    if n.right is not None:
        size += n.right.size
        n.right.parent = n
    n.size = size


def _lmerge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        a.right = _lmerge(a.right, b)
        _lupd(a)
        return a
    b.left = _lmerge(a, b.left)
    _lupd(b)
    return b


def _lsplit(t, k):
    if t is None:
        return None, None
    ls = t.left.size if t.left is not None else 0
    if k <= ls:
        l, r = _lsplit(t.left, k)
        t.left = r
        _lupd(t)
        return l, t
    l, r = _lsplit(t.right, k - ls - 1)
    t.right = l
    _lupd(t)
    return t, r


class TreapLedger:
    """Order-statistic treap mapping handles to current 1-based positions."""

    def __init__(self, n):
        self.root = self._build(n)
        if self.root is not None:
            self.root.parent = None

    def _build(self, n):
        if n == 0:
            return None
        nodes = [_LNode(_rng.random()) for _ in range(n)]
        # cartesian tree over the random priorities, O(n)
        stack = []
        for node in nodes:
            last = None
            while stack and stack[-1].prio < node.prio:
                last = stack.pop()
            node.left = last
            if stack:
                stack[-1].right = node
            stack.append(node)
        root = stack[0]
        self._fix(root)
        return root

    def _fix(self, n):
        stack = [(n, False)]
        while stack:
            node, done = stack.pop()
            if done:
                _lupd(node)
            else:
                stack.append((node, True))
                if node.left is not None:
                    stack.append((node.left, False))
                if node.right is not None:
                    stack.append((node.right, False))

    def rank(self, h):
        r = (h.left.size if h.left is not None else 0) + 1
        cur = h
        while cur.parent is not None:
            p = cur.parent
            if cur is p.right:
                r += (p.left.size if p.left is not None else 0) + 1
            cur = p
        return r

    def handle_at(self, r):
        cur = self.root
        while cur is not None:
            ls = cur.left.size if cur.left is not None else 0
            if r == ls + 1:
                return cur
            if r <= ls:
                cur = cur.left
            else:
                r -= ls + 1
                cur = cur.right
        raise IndexError("rank out of range")

    def insert(self, r):
        """New handle at position r (existing >= r shift right)."""
        h = _LNode(_rng.random())
        l, rt = _lsplit(self.root, r - 1)
        self.root = _lmerge(_lmerge(l, h), rt)
        self.root.parent = None
        return h

    def delete(self, h):
        r = self.rank(h)
        l, rt = _lsplit(self.root, r - 1)
        mid, rt = _lsplit(rt, 1)
        assert mid is h
        self.root = _lmerge(l, rt)
        if self.root is not None:
            self.root.parent = None


# ---------------------------------------------------------------------------
# k-words tree


class KNode:
    __slots__ = ("prio", "left", "right", "occs", "total")

    def __init__(self, prio, occs):
        self.prio = prio
        self.left = None
        self.right = None
        self.occs = occs
        self.total = len(occs)

    @property
    def count(self):
        return len(self.occs)


def _ktotal(n):
    return n.total if n is not None else 0


def _kupd(n):
    n.total = len(n.occs) + _ktotal(n.left) + _ktotal(n.right)


def _rot_right(y):
    x = y.left
    y.left = x.right
    x.right = y
    _kupd(y)
    _kupd(x)
    return x


def _rot_left(x):
    y = x.right
    x.right = y.left
    y.left = x
    _kupd(x)
    _kupd(y)
    return y


def _kmerge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        a.right = _kmerge(a.right, b)
        _kupd(a)
        return a
    b.left = _kmerge(a, b.left)
    _kupd(b)
    return b


class KWordsTree:
    """Balanced tree over distinct k-length subwords with occurrence multisets."""

    def __init__(self, k, ledger):
        self.k = k
        self.ledger = ledger
        self.root = None

    # --- construction ------------------------------------------------------

    def build(self, raw, handles):
        """Bulk build from the raw text (bytes/str) and the handle list."""
        k = self.k
        n = len(raw)
        order = sorted(range(n), key=lambda i: raw[i:i + k])
        groups = []
        prev_key = None
        for i in order:
            key = raw[i:i + k]
            if key != prev_key:
                groups.append([])
                prev_key = key
            groups[-1].append(handles[i])
        nodes = [KNode(_rng.random(), occs) for occs in groups]
        stack = []
        for node in nodes:
            last = None
            while stack and stack[-1].prio < node.prio:
                last = stack.pop()
            node.left = last
            if stack:
                stack[-1].right = node
            stack.append(node)
        self.root = stack[0] if stack else None
        if self.root is not None:
            self._fix_totals(self.root)

    def _fix_totals(self, n):
        stack = [(n, False)]
        while stack:
            node, done = stack.pop()
            if done:
                _kupd(node)
            else:
                stack.append((node, True))
                if node.left is not None:
                    stack.append((node.left, False))
                if node.right is not None:
                    stack.append((node.right, False))

    # --- occurrence list helpers -------------------------------------------

    def _occ_index(self, node, pos):
        occs = node.occs
        rank = self.ledger.rank
        lo, hi = 0, len(occs)
        while lo < hi:
            mid = (lo + hi) // 2
            if rank(occs[mid]) < pos:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def occ_positions(self, node):
        rank = self.ledger.rank
        return [rank(h) for h in node.occs]

    def occ_at(self, node, idx):
        return self.ledger.rank(node.occs[idx])

    def first_occ_after(self, node, pos):
        """Index into node.occs of the first occurrence with position > pos."""
        return self._occ_index(node, pos + 1)

    def anchor(self, node):
        return self.ledger.rank(node.occs[0])

    # --- search -------------------------------------------------------------

    def find_node(self, view, i):
        """Node whose word equals the word at i, and the occurrence count
        of all lexicographically smaller nodes (far suffixes below S^i)."""
        k = self.k
        node = self.root
        left = 0
        while node is not None:
            c = view.word_cmp(i, self.anchor(node), k)
            if c == 0:
                return node, left + _ktotal(node.left)
            if c < 0:
                node = node.left
            else:
                left += _ktotal(node.left) + len(node.occs)
                node = node.right
        raise KeyError(f"word at position {i} not present")

    def findvr(self, i):
        """Node containing the i-th smallest suffix and its in-node rank."""
        if not 1 <= i <= _ktotal(self.root):
            raise IndexError(f"rank {i} out of range 1..{_ktotal(self.root)}")
        node = self.root
        while True:
            ls = _ktotal(node.left)
            if ls >= i:
                node = node.left
            elif ls + len(node.occs) >= i:
                return node, i - ls
            else:
                i -= ls + len(node.occs)
                node = node.right

    def total(self):
        return _ktotal(self.root)

    def iter_nodes(self):
        """In-order (lexicographic) node iteration."""
        stack = []
        node = self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node
            node = node.right

    # --- incremental maintenance -------------------------------------------

    def _insert_handle(self, view, h, pos):
        k = self.k

        def rec(node):
            if node is None:
                return KNode(_rng.random(), [h])
            c = view.word_cmp(pos, self.anchor(node), k)
            if c == 0:
                node.occs.insert(self._occ_index(node, pos), h)
                _kupd(node)
                return node
            if c < 0:
                node.left = rec(node.left)
                _kupd(node)
                if node.left.prio > node.prio:
                    node = _rot_right(node)
            else:
                node.right = rec(node.right)
                _kupd(node)
                if node.right.prio > node.prio:
                    node = _rot_left(node)
            return node

        self.root = rec(self.root)

    def _remove_handle(self, view, h, pos):
        k = self.k

        def rec(node):
            if node is None:
                raise KeyError(f"occurrence at {pos} not found")
            c = view.word_cmp(pos, self.anchor(node), k)
            if c == 0:
                idx = self._occ_index(node, pos)
                if idx >= len(node.occs) or self.ledger.rank(node.occs[idx]) != pos:
                    raise KeyError(f"occurrence at {pos} not in its node")
                node.occs.pop(idx)
                if not node.occs:
                    return _kmerge(node.left, node.right)
                _kupd(node)
                return node
            if c < 0:
                node.left = rec(node.left)
            else:
                node.right = rec(node.right)
            _kupd(node)
            return node

        self.root = rec(self.root)

    def apply_substitution(self, old_view, new_view, x):
        k = self.k
        n = new_view.n
        lo = max(1, x - k + 1)
        handles = [self.ledger.handle_at(i) for i in range(lo, x + 1)]
        for i, h in zip(range(lo, x + 1), handles):
            self._remove_handle(old_view, h, i)
        for i, h in zip(range(lo, x + 1), handles):
            self._insert_handle(new_view, h, i)

    def apply_insert(self, old_view, new_view, q):
        """Insert-after-q applied to the text; the new symbol is at position q+1."""
        k = self.k
        old_n = old_view.n
        lo = max(1, q - k + 2)
        for i in range(lo, q + 1):
            h = self.ledger.handle_at(i)
            self._remove_handle(old_view, h, i)
        self.ledger.insert(q + 1)
        for j in range(lo, q + 2):
            h = self.ledger.handle_at(j)
            self._insert_handle(new_view, h, j)

    def apply_delete(self, old_view, new_view, d):
        k = self.k
        lo = max(1, d - k + 1)
        for i in range(lo, d + 1):
            h = self.ledger.handle_at(i)
            self._remove_handle(old_view, h, i)
        self.ledger.delete(self.ledger.handle_at(d))
        hi = min(d - 1, new_view.n)
        for j in range(lo, hi + 1):
            h = self.ledger.handle_at(j)
            self._insert_handle(new_view, h, j)


# ---------------------------------------------------------------------------
# periodic occurrences representation


@dataclass(frozen=True)
class Cluster:
    a: int
    b: int
    p: int
    size: int

    def positions(self):
        return range(self.a, self.b + 1, self.p) if self.p else (self.a,)


@dataclass
class POR:
    s: int
    e: int
    p: int
    clusters: List[Cluster] = field(default_factory=list)

    def occurrence_count(self):
        return sum(c.size for c in self.clusters)

    def occurrences(self):
        for c in self.clusters:
            yield from c.positions()


def extract_por(view, tree, s):
    """POR of the word starting at s with the tree's word length."""
    x = tree.k
    n = view.n
    node, _ = tree.find_node(view, s)
    m = len(node.occs)
    occ = tree.occ_at
    if s + x - 1 > n:
        # padded word: unique occurrence by construction
        return POR(s, n, max(1, n - s + 1), [Cluster(s, s, max(1, n - s + 1), 1)])
    e = s + x - 1
    p = None
    out = []
    idx = 0
    while idx < m:
        a = occ(node, idx)
        if p is None and idx + 1 < m:
            g = occ(node, idx + 1) - a
            if 2 * g <= x:
                p = g
        if p is not None:
            ext = view.lcp(a, a + p) if a + p <= n else 0
            cnt = (ext + p - x) // p + 1
            if cnt < 1:
                cnt = 1
            b = a + (cnt - 1) * p
            out.append((a, b, cnt))
            idx = tree.first_occ_after(node, b)
        else:
            out.append((a, a, 1))
            idx += 1
    if p is None:
        p = x
        merged = []
        for a, b, cnt in out:
            if merged and a - merged[-1][1] == x:
                pa, pb, pc = merged[-1]
                merged[-1] = (pa, b, pc + 1)
            else:
                merged.append((a, b, cnt))
        out = merged
    clusters = [Cluster(a, b, p, cnt) for a, b, cnt in out]
    return POR(s, e, p, clusters)


# ---------------------------------------------------------------------------
# runs and cluster comparison machinery


def run_with_period(view, lo, hi, p):
    """Maximal interval with formal period p containing [lo..hi], or None."""
    n = view.n
    if lo < 1 or hi > n or lo > hi:
        return None
    if hi - lo + 1 > p:
        if view.lcp(lo, lo + p) < hi - lo + 1 - p:
            return None
    right = hi
    if lo + p <= n:
        right = max(hi, lo + p - 1 + view.lcp(lo, lo + p))
    left = lo
    if lo - 1 >= 1 and lo - 1 + p <= n:
        left = lo - view.lcs(lo - 1, lo - 1 + p)
    return (left, right)


def is_extremely_periodic(a, b, p):
    return b - a + 1 >= 5 * p


def run_around_position(view, i, p):
    """Maximal period-p interval containing [i..i+p-1] (spec op form)."""
    return run_with_period(view, i, min(i + p - 1, view.n), p)


@dataclass(frozen=True)
class RunExtensions:
    ex_l: int
    ex_r: int
    exc_l: int
    exc_r: int
    aligned: Tuple[int, ...]


def cluster_lce_progression(view, s, e, cluster):
    """Run extensions around the word at [s..e] and around the cluster's first
    occurrence, plus the <=2 aligned t values where the min-formulas break."""
    p = cluster.p
    a = cluster.a
    x = e - s + 1
    n = view.n
    ex_l = view.lcs(s - 1, s - 1 + p)
    ex_r = view.lcp(e + 1, e + 1 - p) if e + 1 - p >= 1 else 0
    exc_l = view.lcs(a - 1, a - 1 + p)
    e0 = a + x - 1
    exc_r = view.lcp(e0 + 1, e0 + 1 - p) if e0 + 1 - p >= 1 else 0
    aligned = []
    num = ex_l - exc_l
    if num % p == 0 and 0 <= num // p < cluster.size:
        aligned.append(num // p)
    num = exc_r - ex_r
    if num % p == 0 and 0 <= num // p < cluster.size:
        t = num // p
        if t not in aligned:
            aligned.append(t)
    return RunExtensions(ex_l, ex_r, exc_l, exc_r, tuple(sorted(aligned)))


def lex_intervals(view, a, p, m, s, e):
    """Intervals (lo, hi) of t in [0..m-1] with S^{a+tp} < S^s and > S^s.

    The occurrences a+tp must all start with the word at [s..e].  Returns
    (I_lt, I_gt), each None when empty.  O(1) suffix comparisons.
    """
    if m <= 0:
        return None, None
    x = e - s + 1

    def seg(lo, hi):
        return (lo, hi) if lo <= hi else None

    if a <= s <= a + (m - 1) * p and (s - a) % p == 0:
        te = (s - a) // p
        if m == 1:
            return None, None
        if view.suffix_cmp(a, a + p) < 0:  # increasing in t
            return seg(0, te - 1), seg(te + 1, m - 1)
        return seg(te + 1, m - 1), seg(0, te - 1)

    if m == 1:
        c = view.suffix_cmp(a, s)
        return (seg(0, 0), None) if c < 0 else (None, seg(0, 0))

    r0 = view.lcp(a, s)
    if r0 < min(x, view.n - s + 1, view.n - a + 1):
        c = view.suffix_cmp(a, s)
        return (seg(0, m - 1), None) if c < 0 else (None, seg(0, m - 1))

    ex_r = view.lcp(e + 1, e + 1 - p) if e + 1 - p >= 1 else 0
    e0 = a + x - 1
    exc_r = view.lcp(e0 + 1, e0 + 1 - p) if e0 + 1 - p >= 1 else 0
    # pieces split at the t solving Ex_r = Ex^C_r - p*t (the aligned occurrence);
    # below it r_t = x + Ex_r is t-independent, above it r_t = x + Ex^C_r - p*t
    num = exc_r - ex_r
    # t < num/p ; t == num/p (if integral) ; t > num/p
    hi1 = min((num - 1) // p if num >= 1 else -1, m - 1)
    lo3 = max(num // p + 1, 0)
    pieces = []
    if hi1 >= 0:
        pieces.append((0, hi1))
    if num % p == 0 and 0 <= num // p <= m - 1:
        pieces.append((num // p, num // p))
    if lo3 <= m - 1:
        pieces.append((max(lo3, 0), m - 1))
    lt = []
    gt = []
    for lo, hi in pieces:
        c = view.suffix_cmp(a + lo * p, s)
        (lt if c < 0 else gt).append((lo, hi))

    def join(parts):
        if not parts:
            return None
        lo = min(q[0] for q in parts)
        hi = max(q[1] for q in parts)
        assert hi - lo + 1 == sum(q[1] - q[0] + 1 for q in parts), "non-contiguous side"
        return (lo, hi)

    return join(lt), join(gt)
