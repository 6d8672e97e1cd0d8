import pytest

from dynsa import oracle
from dynsa.dynstr import DynamicString
from dynsa.ers import RankRangeError, SortedOccView
from dynsa.occindex import IntLedger, KWordsTree, extract_por

from conftest import random_text


def build_view(text, s, e):
    x = e - s + 1
    ds = DynamicString(text, backend="array")
    tree = KWordsTree(x, IntLedger())
    tree.build(text, list(range(1, len(text) + 1)))
    por = extract_por(ds.view(), tree, s)
    return SortedOccView(ds.view(), s, e, por)


def test_paper_cluster_ranks():
    text = "BAABBABBABBABBABBABAB"
    view = build_view(text, 4, 10)
    naive = oracle.naive_A_w(text, 4, 10)
    got = [view.select(i) for i in range(1, view.size() + 1)]
    assert [g.pos for g in got] == naive
    # the cluster (4,13,3): occurrence at 4 has period rank 3, at 13 rank 0
    by_pos = {g.pos: g.rank for g in got if g.meta.a == 4}
    assert by_pos[4] == 3 and by_pos[7] == 2 and by_pos[10] == 1 and by_pos[13] == 0


def test_paper_leftover_example():
    text = "bbbababbababbababbababbababaaa"
    w = "ababbababba"
    s = text.find(w) + 1
    view = build_view(text, s, s + len(w) - 1)
    leftovers = [(m.r_l, m.r_r) for side in ("D", "I") for m in view.sides[side].metas]
    assert (2, 3) in leftovers


def test_single_occurrence():
    view = build_view("abcde", 2, 4)
    assert view.size() == 1
    assert view.select(1).pos == 2
    assert view.erc_count(0, 0, 1, 1) == 1
    assert view.ers_select(0, 0, 1) == 2
    with pytest.raises(RankRangeError):
        view.select(2)


def test_unary_text_selection():
    text = "a" * 12
    view = build_view(text, 5, 7)
    naive = oracle.naive_A_w(text, 5, 7)
    assert [view.select(i).pos for i in range(1, view.size() + 1)] == naive


def test_trivial_extension_counts(rng):
    view = build_view("abaababaab", 3, 4)
    total = view.size()
    assert view.erc_count(0, 0, 1, total) == total  # l=r=0 counts everything
    assert view.erc_count(50, 0, 1, total) == 0  # impossible extension
    assert view.erc_count(0, 50, 1, total) == 0
    with pytest.raises(ValueError):
        view.erc_count(0, 0, 2, 1)
    with pytest.raises(ValueError):
        view.erc_count(-1, 0, 1, 1)


def test_differential(rng):
    for trial in range(220):
        n = rng.randrange(8, 230)
        sigma = rng.choice([1, 2, 3])
        text = random_text(rng, n, sigma, periodic_bias=0.65)
        n = len(text)
        x = rng.randrange(1, max(2, n // 2))
        s = rng.randrange(1, n - x + 2)
        e = s + x - 1
        view = build_view(text, s, e)
        naive = oracle.naive_A_w(text, s, e)
        assert view.size() == len(naive)
        # selection equals the sorted occurrence list; the D || I split and
        # bucket ordering are implied by this equality holding on every index
        assert [view.select(i).pos for i in range(1, view.size() + 1)] == naive
        dt = view.d_total
        assert all(view.select(i).meta.cls == "D" for i in range(1, dt + 1))
        assert all(view.select(i).meta.cls == "I" for i in range(dt + 1, view.size() + 1))
        for _ in range(8):
            l = rng.randrange(0, 2 * x + 2)
            r = rng.randrange(0, 2 * x + 2)
            i = rng.randrange(1, view.size() + 1)
            j = rng.randrange(i, view.size() + 1)
            ext = set(oracle.naive_A_lr(text, s, e, l, r))
            assert view.erc_count(l, r, i, j) == sum(1 for q in naive[i - 1:j] if q in ext)
        if view.size() >= 2:
            l = rng.randrange(0, 2 * x)
            r = rng.randrange(0, 2 * x)
            m = rng.randrange(1, view.size())
            assert (view.erc_count(l, r, 1, view.size())
                    == view.erc_count(l, r, 1, m) + view.erc_count(l, r, m + 1, view.size()))
        for _ in range(4):
            l = rng.randrange(0, 2 * x)
            r = rng.randrange(0, 2 * x)
            ext_list = oracle.naive_A_lr(text, s, e, l, r)
            if ext_list:
                i = rng.randrange(1, len(ext_list) + 1)
                assert view.ers_select(l, r, i) == ext_list[i - 1]
            with pytest.raises(RankRangeError) as ei:
                view.ers_select(l, r, len(ext_list) + 1)
            assert ei.value.total == len(ext_list)
