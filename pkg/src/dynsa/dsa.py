"""Dynamic suffix array under full edit operations (threshold k = n^(2/3)).

Per edit the text and both k-words trees are maintained incrementally, and
the block decomposition (words of length t = k/2 tiling the text) has its
extension-restricting-selection structures rebuilt from scratch, which is
within the engine's own update budget.  A query walks the k-words tree to
a (node, in-node rank) pair and resolves it through the covering block's
view: SA[i] = ers_select(L, R, r) - L for the block offsets L, R.
"""

from __future__ import annotations

import math
import os

from .counters import Counters
from .dynstr import DynamicString, EditOp
from .ers import SortedOccView
from .occindex import KWordsTree, TreapLedger, extract_por


def _k_for(n):
    if n <= 1:
        return 2
    k = round(n ** (2.0 / 3.0))
    while k * k * k < n * n:
        k += 1
    while k > 2 and (k - 1) ** 3 >= n * n:
        k -= 1
    return max(2, k)


class DynamicSA:
    """Suffix array, BWT, and LCP-array access for a text under edits."""

    def __init__(self, text, alphabet=None, counters=None):
        self.counters = counters if counters is not None else Counters()
        self.ds = DynamicString(text, alphabet=alphabet, backend="treap",
                                counters=self.counters)
        self._policy = os.environ.get("DYNSA_EPOCH_POLICY", "")
        self.k = 0
        self._rebuild_all()

    # --- maintenance -----------------------------------------------------------

    def _rebuild_all(self):
        n = self.ds.n
        self.k = _k_for(n)
        self.t = max(1, self.k // 2)
        raw = self.ds.snapshot()
        self.ledger_k = TreapLedger(n)
        self.ledger_t = TreapLedger(n)
        hk = [self.ledger_k.handle_at(i) for i in range(1, n + 1)]
        ht = [self.ledger_t.handle_at(i) for i in range(1, n + 1)]
        self.tree_k = KWordsTree(self.k, self.ledger_k)
        self.tree_k.build(raw, hk)
        self.tree_t = KWordsTree(self.t, self.ledger_t)
        self.tree_t.build(raw, ht)
        self._rebuild_blocks()

    def _rebuild_blocks(self):
        n = self.ds.n
        t = self.t
        view = self.ds.view()
        self.blocks = [None]
        for x in range(1, n // t + 1):
            s = (x - 1) * t + 1
            e = x * t
            por = extract_por(view, self.tree_t, s)
            self.blocks.append(SortedOccView(view, s, e, por, self.counters))

    def apply_edit(self, op: EditOp):
        dual = self.ds.apply(op)
        n_new = self.ds.n
        if _k_for(n_new) != self.k or self._policy == "aggressive":
            dual.commit()
            self._rebuild_all()
            return
        if op.kind == "sub":
            self.tree_k.apply_substitution(dual.old, dual.new, op.position)
            self.tree_t.apply_substitution(dual.old, dual.new, op.position)
        elif op.kind == "ins":
            self.tree_k.apply_insert(dual.old, dual.new, op.position)
            self.tree_t.apply_insert(dual.old, dual.new, op.position)
        else:
            self.tree_k.apply_delete(dual.old, dual.new, op.position)
            self.tree_t.apply_delete(dual.old, dual.new, op.position)
        dual.commit()
        self._rebuild_blocks()

    @property
    def n(self):
        return self.ds.n

    # --- queries -----------------------------------------------------------------

    def sa(self, i):
        if not 1 <= i <= self.ds.n:
            raise IndexError(f"rank {i} out of range 1..{self.ds.n}")
        node, r = self.tree_k.findvr(i)
        return self._select_in_node(node, r)

    def _select_in_node(self, node, r):
        if len(node.occs) == 1:
            return self.tree_k.occ_at(node, 0)
        i0 = self.tree_k.anchor(node)
        t = self.t
        x = (i0 + t - 2) // t + 1
        s = (x - 1) * t + 1
        left = s - i0
        right = i0 + self.k - 1 - x * t
        return self.blocks[x].ers_select(left, right, r) - left

    def sa_all(self):
        out = []
        for node in self.tree_k.iter_nodes():
            cnt = len(node.occs)
            if cnt == 1:
                out.append(self.tree_k.occ_at(node, 0))
            else:
                for r in range(1, cnt + 1):
                    out.append(self._select_in_node(node, r))
        return out

    def bwt(self, i):
        """Symbol preceding SA[i], cyclically."""
        pos = self.sa(i)
        view = self.ds.view()
        return view.char_at(pos - 1 if pos > 1 else view.n)

    def lcp_entry(self, i):
        if i == 1:
            raise IndexError("LCP[1] is undefined")
        if not 2 <= i <= self.ds.n:
            raise IndexError(f"rank {i} out of range 2..{self.ds.n}")
        a = self.sa(i - 1)
        b = self.sa(i)
        return self.ds.view().lcp(a, b)
