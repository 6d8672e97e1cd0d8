"""Dynamic string with polylog LCE queries and a pre/post-edit dual view.

Two interchangeable backends:

* ``ArrayText`` -- flat segment tree of fingerprints over a fixed-length
  text.  Substitutions only, O(log n) per update, and the pre-edit view is
  served by an O(1) fingerprint correction (no structure is copied).
* ``TreapText`` -- randomized balanced tree with composable fingerprints
  and path-copy persistence; supports insert/delete, and an uncommitted
  edit keeps both versions alive as two roots sharing structure.

LCE queries do a short direct scan first (random texts almost always
mismatch within a few symbols) and fall back to fingerprint-guided binary
search.  Every fingerprint-derived answer has its mismatch boundary
verified by a direct symbol comparison, so a wrong answer requires a
fingerprint collision at every probed prefix, probability O(log n / 2^61)
per query with the random per-process base.

Positions are 1-based.  There is no materialized sentinel: reads past the
end are out of bounds, LCE stops at position n, and a shorter suffix
compares below any extension of it.
"""

from __future__ import annotations

import random as _random_mod
from dataclasses import dataclass
from typing import Optional

_MOD = (1 << 61) - 1
_sysrand = _random_mod.SystemRandom()
_BASE = _sysrand.randrange(1 << 20, _MOD - 1)
_rng = _random_mod.Random(_sysrand.randrange(1 << 62))

_POW = [1]


def _pow_base(k):
    while len(_POW) <= k:
        _POW.append(_POW[-1] * _BASE % _MOD)
    return _POW[k]


class SymbolError(ValueError):
    """A symbol outside the declared alphabet, with the offending position."""

    def __init__(self, position, symbol):
        super().__init__(f"symbol {symbol!r} at position {position} is not in the alphabet")
        self.position = position
        self.symbol = symbol


class PendingEditError(RuntimeError):
    pass


@dataclass(frozen=True)
class EditOp:
    """One edit: kind in {'sub','ins','del'}; 'ins' position 0..n inserts after it.

    Symbols may be given as single characters or ints; stored as ints.
    """

    kind: str
    position: int
    symbol: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("sub", "ins", "del"):
            raise ValueError(f"unknown edit kind {self.kind!r}")
        if self.kind != "del" and self.symbol is None:
            raise ValueError(f"{self.kind} needs a symbol")
        if self.symbol is not None:
            object.__setattr__(self, "symbol", _to_symbol(self.symbol))


def _to_symbol(sym):
    if isinstance(sym, str):
        if len(sym) != 1:
            raise ValueError("symbol must be a single character")
        return ord(sym)
    return int(sym)


# ---------------------------------------------------------------------------
# array backend (substitution only)


class ArrayText:
    def __init__(self, symbols):
        self._s = list(symbols)
        n = len(self._s)
        size = 1
        while size < max(n, 1):
            size *= 2
        self._size = size
        _pow_base(size + 1)
        tree = [0] * (2 * size)
        for i, c in enumerate(self._s):
            tree[size + i] = c + 1
        # bottom-up combine with per-level segment lengths
        half = 1
        v = size - 1
        while v >= 1:
            tree[v] = (tree[2 * v] * _POW[half] + tree[2 * v + 1]) % _MOD
            if v & (v - 1) == 0:  # crossed a level boundary (v is a power of two)
                half *= 2
            v -= 1
        self._tree = tree
        self.n = n
        self._pending = None  # (pos0, old_char, new_char)

    def supports_resize(self):
        return False

    def set_char(self, pos, c):
        """Substitute (1-based), keeping the old symbol readable until commit."""
        i = pos - 1
        old = self._s[i]
        self._pending = (i, old, c)
        self._s[i] = c
        t = self._tree
        size = self._size
        v = size + i
        t[v] = c + 1
        seg = 1
        v >>= 1
        while v:
            seg *= 2
            t[v] = (t[2 * v] * _POW[seg >> 1] + t[2 * v + 1]) % _MOD
            v >>= 1

    def commit(self):
        self._pending = None

    def char_at(self, pos, old=False):
        i = pos - 1
        if old and self._pending is not None and i == self._pending[0]:
            return self._pending[1]
        return self._s[i]

    def range_hash(self, lo, hi, old=False):
        """Fingerprint of positions [lo..hi], 1-based inclusive."""
        l = lo - 1 + self._size
        r = hi + self._size  # exclusive
        t = self._tree
        hl = 0
        ll = 0
        hr = 0
        lr = 0
        seg = 1
        while l < r:
            if l & 1:
                hl = (hl * _POW[seg] + t[l]) % _MOD
                ll += seg
                l += 1
            if r & 1:
                r -= 1
                hr = (t[r] * _POW[lr] + hr) % _MOD
                lr += seg
            l >>= 1
            r >>= 1
            seg <<= 1
        h = (hl * _POW[lr] + hr) % _MOD
        if old and self._pending is not None:
            i, oldc, newc = self._pending
            if lo - 1 <= i <= hi - 1:
                h = (h + (oldc - newc) * _POW[hi - 1 - i]) % _MOD
        return h

    def scan_list(self, old=False):
        # direct-scan support; the old view patches one index lazily
        if old and self._pending is not None:
            i, oldc, _ = self._pending
            s = self._s
            return _PatchedList(s, i, oldc)
        return self._s


class _PatchedList:
    __slots__ = ("_s", "_i", "_c")

    def __init__(self, s, i, c):
        self._s = s
        self._i = i
        self._c = c

    def __getitem__(self, i):
        if i == self._i:
            return self._c
        return self._s[i]

    def __len__(self):
        return len(self._s)


# ---------------------------------------------------------------------------
# treap backend (full edits, persistent dual view)


class _TNode:
    __slots__ = ("ch", "size", "h", "left", "right")

    def __init__(self, ch, size, h, left, right):
        self.ch = ch
        self.size = size
        self.h = h
        self.left = left
        self.right = right


def _mk(ch, left, right):
    ls = left.size if left is not None else 0
    rs = right.size if right is not None else 0
    h = ((left.h if left is not None else 0) * _pow_base(rs + 1)
         + (ch + 1) * _POW[rs]
         + (right.h if right is not None else 0)) % _MOD
    return _TNode(ch, ls + rs + 1, h, left, right)


def _build(symbols, lo, hi):
    if lo > hi:
        return None
    mid = (lo + hi) // 2
    return _mk(symbols[mid], _build(symbols, lo, mid - 1), _build(symbols, mid + 1, hi))


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if _rng.randrange(a.size + b.size) < a.size:
        return _mk(a.ch, a.left, _merge(a.right, b))
    return _mk(b.ch, _merge(a, b.left), b.right)


def _split(node, k):
    """First k elements to the left part."""
    if node is None:
        return None, None
    ls = node.left.size if node.left is not None else 0
    if k <= ls:
        l, r = _split(node.left, k)
        return l, _mk(node.ch, r, node.right)
    l, r = _split(node.right, k - ls - 1)
    return _mk(node.ch, node.left, l), r


def _set_at(node, idx, ch):
    """Path-copied substitution at 0-based idx."""
    ls = node.left.size if node.left is not None else 0
    if idx < ls:
        return _mk(node.ch, _set_at(node.left, idx, ch), node.right)
    if idx == ls:
        return _mk(ch, node.left, node.right)
    return _mk(node.ch, node.left, _set_at(node.right, idx - ls - 1, ch))


def _node_hash_range(node, lo, hi):
    """Hash of 0-based [lo..hi] within node's subtree; assumes in range."""
    if lo == 0 and hi == node.size - 1:
        return node.h
    ls = node.left.size if node.left is not None else 0
    if hi < ls:
        return _node_hash_range(node.left, lo, hi)
    if lo > ls:
        return _node_hash_range(node.right, lo - ls - 1, hi - ls - 1)
    h = 0
    length = 0
    if lo < ls:
        h = _node_hash_range(node.left, lo, ls - 1)
        length = ls - lo
    h = (h * _BASE + node.ch + 1) % _MOD
    length += 1
    if hi > ls:
        rlen = hi - ls
        h = (h * _pow_base(rlen) + _node_hash_range(node.right, 0, rlen - 1)) % _MOD
    return h


class TreapText:
    def __init__(self, symbols, _root=None, _list=None):
        self._list = list(symbols) if _list is None else _list
        _pow_base(len(self._list) + 2)
        self._root = _build(self._list, 0, len(self._list) - 1) if _root is None else _root
        self.n = len(self._list)
        self._old_root = None
        self._old_list = None

    def supports_resize(self):
        return True

    def set_char(self, pos, c):
        self._begin_edit()
        self._root = _set_at(self._root, pos - 1, c)
        self._list[pos - 1] = c

    def insert_char(self, pos, c):
        """Insert after 1-based position pos (0 = front)."""
        self._begin_edit()
        _pow_base(self.n + 2)
        l, r = _split(self._root, pos)
        self._root = _merge(_merge(l, _mk(c, None, None)), r)
        self._list.insert(pos, c)
        self.n += 1

    def delete_char(self, pos):
        self._begin_edit()
        l, r = _split(self._root, pos - 1)
        _, r = _split(r, 1)
        self._root = _merge(l, r)
        del self._list[pos - 1]
        self.n -= 1

    def _begin_edit(self):
        self._old_root = self._root
        self._old_list = list(self._list)

    def commit(self):
        self._old_root = None
        self._old_list = None

    def char_at(self, pos, old=False):
        if old:
            return self._old_list[pos - 1]
        return self._list[pos - 1]

    def range_hash(self, lo, hi, old=False):
        root = self._old_root if old else self._root
        return _node_hash_range(root, lo - 1, hi - 1)

    def scan_list(self, old=False):
        return self._old_list if old else self._list


# ---------------------------------------------------------------------------
# views and the public wrapper

_SCAN = 32


class TextView:
    """Read handle on one version of the text (pre- or post-edit)."""

    __slots__ = ("_b", "_old", "n", "_counters")

    def __init__(self, backend, old, n, counters):
        self._b = backend
        self._old = old
        self.n = n
        self._counters = counters

    def char_at(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        return self._b.char_at(i, self._old)

    def lcp(self, i, j, cap=None):
        """Longest common prefix of suffixes i and j; i, j in [1..n+1]."""
        n = self.n
        if not (1 <= i <= n + 1 and 1 <= j <= n + 1):
            raise IndexError(f"lcp positions ({i},{j}) out of range 1..{n}")
        if self._counters is not None:
            self._counters.lce_calls += 1
        limit = min(n - i + 1, n - j + 1)
        if cap is not None and cap < limit:
            limit = cap
        if limit <= 0:
            return 0
        if i == j:
            return limit
        s = self._b.scan_list(self._old)
        a = i - 1
        b = j - 1
        ell = 0
        scan = _SCAN if _SCAN < limit else limit
        while ell < scan and s[a + ell] == s[b + ell]:
            ell += 1
        if ell < scan or ell == limit:
            return ell
        return self._hash_extend(i, j, ell, limit, s)

    def _hash_extend(self, i, j, ell, limit, s):
        rh = self._b.range_hash
        old = self._old
        # exponential probe
        step = _SCAN
        while True:
            nxt = ell + step
            if nxt > limit:
                break
            if rh(i, i + nxt - 1, old) != rh(j, j + nxt - 1, old):
                break
            ell = nxt
            step <<= 1
        lo, hi = ell, min(ell + step, limit)  # invariant: lo matched, probe (lo..hi]
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if rh(i, i + mid - 1, old) == rh(j, j + mid - 1, old):
                lo = mid
            else:
                hi = mid - 1
        # verify the mismatch boundary directly; on collision fall back to scan
        if lo < limit and s[i - 1 + lo] == s[j - 1 + lo]:
            while lo < limit and s[i - 1 + lo] == s[j - 1 + lo]:
                lo += 1
        return lo

    def lcs(self, i, j, cap=None):
        """Longest common suffix of prefixes ending at i and j; 0 allowed (empty)."""
        n = self.n
        if not (0 <= i <= n and 0 <= j <= n):
            raise IndexError(f"lcs positions ({i},{j}) out of range 0..{n}")
        if self._counters is not None:
            self._counters.lce_calls += 1
        limit = min(i, j)
        if cap is not None and cap < limit:
            limit = cap
        if limit <= 0:
            return 0
        if i == j:
            return limit
        s = self._b.scan_list(self._old)
        a = i - 1
        b = j - 1
        ell = 0
        scan = _SCAN if _SCAN < limit else limit
        while ell < scan and s[a - ell] == s[b - ell]:
            ell += 1
        if ell < scan or ell == limit:
            return ell
        rh = self._b.range_hash
        old = self._old
        step = _SCAN
        while True:
            nxt = ell + step
            if nxt > limit:
                break
            if rh(i - nxt + 1, i, old) != rh(j - nxt + 1, j, old):
                break
            ell = nxt
            step <<= 1
        lo, hi = ell, min(ell + step, limit)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if rh(i - mid + 1, i, old) == rh(j - mid + 1, j, old):
                lo = mid
            else:
                hi = mid - 1
        if lo < limit and s[a - lo] == s[b - lo]:
            while lo < limit and s[a - lo] == s[b - lo]:
                lo += 1
        return lo

    def suffix_cmp(self, i, j):
        """-1/0/+1 order of suffixes S^i, S^j; a proper prefix sorts first."""
        n = self.n
        if i == j:
            return 0
        ell = self.lcp(i, j)
        li = n - i + 1
        lj = n - j + 1
        if ell >= li or ell >= lj:
            return -1 if li < lj else 1
        s = self._b.scan_list(self._old)
        return -1 if s[i - 1 + ell] < s[j - 1 + ell] else 1

    def word_cmp(self, i, j, k):
        """Order of the k-length words at i and j under the padded convention."""
        n = self.n
        li = min(k, n - i + 1)
        lj = min(k, n - j + 1)
        if i == j:
            return 0
        m = li if li < lj else lj
        ell = self.lcp(i, j, cap=m)
        if ell < m:
            s = self._b.scan_list(self._old)
            return -1 if s[i - 1 + ell] < s[j - 1 + ell] else 1
        if li == lj:
            return 0
        return -1 if li < lj else 1

    def snapshot(self):
        s = self._b.scan_list(self._old)
        return bytes(s[i] for i in range(self.n))


class DualView:
    """Pre-edit and post-edit read handles, valid until commit."""

    __slots__ = ("old", "new", "_ds")

    def __init__(self, old, new, ds):
        self.old = old
        self.new = new
        self._ds = ds

    def commit(self):
        self._ds.commit()


class DynamicString:
    """The text under edits; positions 1-based, symbols from an ordered alphabet."""

    def __init__(self, text, alphabet=None, backend="treap", counters=None):
        self._symtype = str if isinstance(text, str) else bytes
        symbols = [ord(c) for c in text] if isinstance(text, str) else [int(c) for c in text]
        if alphabet is not None:
            alphabet = frozenset(_to_symbol(a) for a in alphabet)
            for pos, c in enumerate(symbols, start=1):
                if c not in alphabet:
                    raise SymbolError(pos, c)
        self.alphabet = alphabet
        if backend == "array":
            self._b = ArrayText(symbols)
        elif backend == "treap":
            self._b = TreapText(symbols)
        else:
            raise ValueError(f"unknown backend {backend!r}")
        self.version = 0
        self._counters = counters
        self._pending = False

    @property
    def n(self):
        return self._b.n

    def __len__(self):
        return self._b.n

    def view(self, old=False):
        n = self._b.n if not old else len(self._b.scan_list(True))
        return TextView(self._b, old, n, self._counters)

    def apply(self, op: EditOp) -> DualView:
        if self._pending:
            raise PendingEditError("an edit is already in flight; commit it first")
        n = self._b.n
        sym = None if op.symbol is None else _to_symbol(op.symbol)
        if op.kind == "sub":
            if not 1 <= op.position <= n:
                raise IndexError(f"substitute position {op.position} out of range 1..{n}")
            self._check_symbol(op.position, sym)
            if self._b.char_at(op.position) == sym:
                raise ValueError(f"trivial substitution at {op.position}")
            self._b.set_char(op.position, sym)
        elif op.kind == "ins":
            if not self._b.supports_resize():
                raise ValueError("this backend only supports substitutions")
            if not 0 <= op.position <= n:
                raise IndexError(f"insert position {op.position} out of range 0..{n}")
            self._check_symbol(op.position, sym)
            self._b.insert_char(op.position, sym)
        else:
            if not self._b.supports_resize():
                raise ValueError("this backend only supports substitutions")
            if not 1 <= op.position <= n:
                raise IndexError(f"delete position {op.position} out of range 1..{n}")
            self._b.delete_char(op.position)
        self.version += 1
        self._pending = True
        old_n = len(self._b.scan_list(True)) if op.kind != "sub" else self._b.n
        old_view = TextView(self._b, True, old_n, self._counters)
        new_view = TextView(self._b, False, self._b.n, self._counters)
        return DualView(old_view, new_view, self)

    def _check_symbol(self, pos, sym):
        if self.alphabet is not None and sym not in self.alphabet:
            raise SymbolError(pos, sym)

    def commit(self):
        self._b.commit()
        self._pending = False

    # reads on the committed state
    def _quiescent(self):
        if self._pending:
            raise PendingEditError("reads on DynamicString are not allowed during an apply")
        return self.view(False)

    def char_at(self, i):
        return self._quiescent().char_at(i)

    def lcp(self, i, j):
        v = self._quiescent()
        if not (1 <= i <= v.n and 1 <= j <= v.n):
            raise IndexError(f"lcp positions ({i},{j}) out of range 1..{v.n}")
        return v.lcp(i, j)

    def lcs(self, i, j):
        return self._quiescent().lcs(i, j)

    def suffix_cmp(self, i, j):
        v = self._quiescent()
        if not (1 <= i <= v.n and 1 <= j <= v.n):
            raise IndexError(f"suffix positions ({i},{j}) out of range 1..{v.n}")
        return v.suffix_cmp(i, j)

    def snapshot(self):
        raw = self._quiescent().snapshot()
        return raw.decode("latin-1") if self._symtype is str else raw
