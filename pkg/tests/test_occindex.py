import math
import random

import pytest

from dynsa import oracle
from dynsa.dynstr import DynamicString, EditOp
from dynsa.occindex import (IntLedger, KWordsTree, TreapLedger,
                            cluster_lce_progression, extract_por,
                            is_extremely_periodic, lex_intervals,
                            run_with_period)

from conftest import random_text


def brute_words(text, k):
    d = {}
    for i in range(1, len(text) + 1):
        d.setdefault(text[i - 1:i - 1 + k], []).append(i)
    return d


def assert_tree_matches(tree, view, text, k):
    brute = brute_words(text, k)
    words = sorted(brute)
    nodes = list(tree.iter_nodes())
    assert len(nodes) == len(words)
    for node, w in zip(nodes, words):
        assert tree.occ_positions(node) == brute[w]
    assert tree.total() == len(text)
    sa = oracle.naive_sa(text)
    for i in range(1, len(text) + 1):
        node, left = tree.find_node(view, i)
        w = text[i - 1:i - 1 + k]
        assert left == sum(len(brute[u]) for u in words if u < w)
    for r in (1, len(text)) if len(text) > 1 else (1,):
        node, inner = tree.findvr(r)
        pos = sa[r - 1]
        close = sorted(brute[text[pos - 1:pos - 1 + k]], key=lambda q: text[q - 1:])
        assert close[inner - 1] == pos


def test_build_examples():
    tree = KWordsTree(2, IntLedger())
    tree.build("aaaa", [1, 2, 3, 4])
    nodes = list(tree.iter_nodes())
    assert len(nodes) == 2  # "a" (padded, at 4) below "aa"
    assert tree.occ_positions(nodes[0]) == [4]
    assert tree.occ_positions(nodes[1]) == [1, 2, 3]
    tree = KWordsTree(5, IntLedger())
    tree.build("ab", [1, 2])
    assert [tree.occ_positions(nd) for nd in tree.iter_nodes()] == [[2], [1]]
    tree = KWordsTree(3, IntLedger())
    tree.build("dcba", [1, 2, 3, 4])
    assert all(len(nd.occs) == 1 for nd in tree.iter_nodes())


def test_findvr_small():
    tree = KWordsTree(2, IntLedger())
    tree.build("aaaa", [1, 2, 3, 4])
    node, r = tree.findvr(1)
    assert tree.occ_positions(node) == [4] and r == 1
    with pytest.raises(IndexError):
        tree.findvr(5)


def test_substitution_maintenance(rng):
    for _ in range(20):
        n = rng.randrange(2, 140)
        sigma = rng.choice([1, 2, 3])
        text = random_text(rng, n, sigma, periodic_bias=0.5)
        k = rng.randrange(1, 9)
        ds = DynamicString(text, backend="array")
        tree = KWordsTree(k, IntLedger())
        tree.build(text, list(range(1, n + 1)))
        for _ in range(5):
            x = rng.randrange(1, n + 1)
            c = chr(97 + rng.randrange(sigma + 1))
            if c == text[x - 1]:
                c = chr(ord(c) + 1)
            dual = ds.apply(EditOp("sub", x, c))
            tree.apply_substitution(dual.old, dual.new, x)
            dual.commit()
            text = text[:x - 1] + c + text[x:]
            assert_tree_matches(tree, ds.view(), text, k)


def test_insert_delete_maintenance(rng):
    for _ in range(15):
        n = rng.randrange(2, 90)
        sigma = rng.choice([1, 2, 3])
        text = random_text(rng, n, sigma, periodic_bias=0.4)
        k = rng.randrange(1, 7)
        ds = DynamicString(text, backend="treap")
        ledger = TreapLedger(n)
        tree = KWordsTree(k, ledger)
        tree.build(text, [ledger.handle_at(i) for i in range(1, n + 1)])
        for _ in range(7):
            kind = rng.choice(["sub", "ins", "del"]) if len(text) > 1 else "ins"
            if kind == "sub":
                x = rng.randrange(1, len(text) + 1)
                c = chr(97 + rng.randrange(sigma + 1))
                if c == text[x - 1]:
                    c = chr(ord(c) + 1)
                dual = ds.apply(EditOp("sub", x, c))
                tree.apply_substitution(dual.old, dual.new, x)
                text = text[:x - 1] + c + text[x:]
            elif kind == "ins":
                q = rng.randrange(0, len(text) + 1)
                c = chr(97 + rng.randrange(sigma + 1))
                dual = ds.apply(EditOp("ins", q, c))
                tree.apply_insert(dual.old, dual.new, q)
                text = text[:q] + c + text[q:]
            else:
                d = rng.randrange(1, len(text) + 1)
                dual = ds.apply(EditOp("del", d))
                tree.apply_delete(dual.old, dual.new, d)
                text = text[:d - 1] + text[d:]
            dual.commit()
            assert_tree_matches(tree, ds.view(), text, k)


def test_por_paper_cluster():
    text = "BAABBABBABBABBABBABAB"
    ds = DynamicString(text, backend="array")
    tree = KWordsTree(7, IntLedger())
    tree.build(text, list(range(1, len(text) + 1)))
    por = extract_por(ds.view(), tree, 4)
    assert [(c.a, c.b, c.p) for c in por.clusters] == [(4, 13, 3)]
    assert por.clusters[0].size == 4


def test_por_unary_and_unique():
    text = "a" * 12
    ds = DynamicString(text, backend="array")
    tree = KWordsTree(3, IntLedger())
    tree.build(text, list(range(1, 13)))
    por = extract_por(ds.view(), tree, 1)
    assert [(c.a, c.b, c.p, c.size) for c in por.clusters] == [(1, 10, 1, 10)]
    text = "abcdefg"
    ds = DynamicString(text, backend="array")
    tree = KWordsTree(3, IntLedger())
    tree.build(text, list(range(1, 8)))
    por = extract_por(ds.view(), tree, 2)
    assert [(c.a, c.b, c.size) for c in por.clusters] == [(2, 2, 1)]


def test_por_exactness_and_bound(rng):
    for _ in range(250):
        n = rng.randrange(4, 260)
        sigma = rng.choice([1, 2, 3, 4])
        text = random_text(rng, n, sigma, periodic_bias=0.5)
        k = rng.randrange(1, min(12, n + 1))
        ds = DynamicString(text, backend="array")
        tree = KWordsTree(k, IntLedger())
        tree.build(text, list(range(1, n + 1)))
        s = rng.randrange(1, n + 1)
        por = extract_por(ds.view(), tree, s)
        if s + k - 1 > n:
            assert list(por.occurrences()) == [s]
            continue
        assert sorted(por.occurrences()) == oracle.occurrences(text, s, s + k - 1)
        assert len(por.clusters) <= max(1, 4 * n // k)
        w = text[s - 1:s + k - 1]
        for c in por.clusters:
            assert (c.b - c.a) % c.p == 0 and c.size == (c.b - c.a) // c.p + 1
            # local maximality: no occurrence one step outside the cluster
            assert text[c.a - c.p - 1:c.a - c.p - 1 + k] != w or c.a - c.p < 1
            assert text[c.b + c.p - 1:c.b + c.p - 1 + k] != w or c.b + c.p + k - 1 > n


def test_lex_intervals_and_progression(rng):
    for _ in range(400):
        n = rng.randrange(6, 170)
        sigma = rng.choice([1, 2, 3])
        text = random_text(rng, n, sigma, periodic_bias=0.6)
        k = rng.randrange(1, min(10, n))
        ds = DynamicString(text, backend="array")
        tree = KWordsTree(k, IntLedger())
        tree.build(text, list(range(1, n + 1)))
        s = rng.randrange(1, n - k + 2)
        por = extract_por(ds.view(), tree, s)
        e = s + k - 1
        view = ds.view()
        for c in por.clusters:
            lt, gt = lex_intervals(view, c.a, c.p, c.size, s, e)
            for t in range(c.size):
                st = c.a + t * c.p
                exp = 0 if st == s else (-1 if text[st - 1:] < text[s - 1:] else 1)
                in_lt = lt is not None and lt[0] <= t <= lt[1]
                in_gt = gt is not None and gt[0] <= t <= gt[1]
                assert in_lt == (exp < 0) and in_gt == (exp > 0)
            re = cluster_lce_progression(view, s, e, c)
            for t in range(c.size):
                st = c.a + t * c.p
                if t in re.aligned:
                    continue
                assert min(re.ex_l, re.exc_l + c.p * t) == oracle.naive_lcs(text, s - 1, st - 1)
                e1 = st + k - 1
                exp_r = oracle.naive_lcp(text, e + 1, e1 + 1) if e < n and e1 < n else 0
                assert min(re.ex_r, re.exc_r - c.p * t) == exp_r


def test_runs():
    ds = DynamicString("aaaa", backend="array")
    assert run_with_period(ds.view(), 2, 2, 1) == (1, 4)
    assert not is_extremely_periodic(1, 4, 1)  # 4 < 5*1
    ds = DynamicString("ab" * 10, backend="array")
    r = run_with_period(ds.view(), 3, 4, 2)
    assert r == (1, 20) and is_extremely_periodic(*r, 2)
    ds = DynamicString("aabbaabb", backend="array")
    assert run_with_period(ds.view(), 1, 8, 2) is None  # period 2 does not hold
    r = run_with_period(ds.view(), 1, 8, 4)
    assert r == (1, 8)


def test_periodicity_lemma_property(rng):
    # if p and q are periods with n >= p + q - gcd, then gcd(p, q) is a period
    for _ in range(300):
        n = rng.randrange(2, 60)
        text = random_text(rng, n, 2, periodic_bias=0.7)

        def periods(w):
            return [p for p in range(1, len(w) + 1)
                    if all(w[i] == w[i + p] for i in range(len(w) - p))]

        ps = periods(text)
        for p in ps[:4]:
            for q in ps[:4]:
                if n >= p + q - math.gcd(p, q):
                    assert math.gcd(p, q) in ps


def test_extreme_run_band_bound_small(rng):
    for text in ("a" * 500, oracle.fibonacci_word(600), random_text(rng, 500, 2, 0.8)):
        total, band_max = oracle.extreme_run_coverage(text)
        n = len(text)
        assert band_max <= 2
        if n > 1:
            assert total.max() <= 2 * math.log(n, 1.5)
