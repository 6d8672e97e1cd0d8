import os
import random

import pytest

from dynsa import oracle
from dynsa.counters import Counters
from dynsa.csr import DynamicISA, _lcp_array, _static_sa

from conftest import flip_char, random_text


def test_static_construction():
    sym = [ord(c) for c in "banana"]
    sa = _static_sa(sym)
    assert sa == [6, 4, 2, 1, 5, 3]
    la = _lcp_array(sym, sa)
    assert la == [0, 1, 3, 0, 0, 2]
    assert _static_sa([]) == []


def test_init_examples():
    eng = DynamicISA("aaaa")
    assert [eng.close_rank(i) for i in range(1, 5)] == [2, 1, 0, 0]
    eng = DynamicISA("abcd")  # all-distinct: every rank 0
    assert [eng.close_rank(i) for i in range(1, 5)] == [0, 0, 0, 0]
    eng = DynamicISA("banana")
    assert eng.isa_all() == [4, 3, 6, 2, 5, 1]
    assert [eng.isa(i) for i in range(1, 7)] == [4, 3, 6, 2, 5, 1]
    assert eng.isa(oracle.naive_sa("banana")[0]) == 1


def test_unsupported_and_errors():
    eng = DynamicISA("abab")
    with pytest.raises(IndexError):
        eng.isa(0)
    with pytest.raises(ValueError):
        eng.substitute(2, "b")  # trivial
    with pytest.raises(IndexError):
        eng.substitute(9, "z")


def _drive(eng, text, rng, sigma, steps, check_every=True):
    for _ in range(steps):
        n = len(text)
        x = rng.randrange(1, n + 1)
        c = flip_char(rng, text, x, sigma)
        eng.substitute(x, c)
        text = text[:x - 1] + c + text[x:]
        if check_every:
            assert eng.isa_all() == oracle.naive_isa(text), (text, x)
            eng.check_invariants()
    return text


def test_differential_random(rng):
    for _ in range(25):
        n = rng.randrange(4, 100)
        sigma = rng.choice([2, 4, 26])
        text = random_text(rng, n, sigma)
        eng = DynamicISA(text)
        assert eng.isa_all() == oracle.naive_isa(text)
        text = _drive(eng, text, rng, sigma, 18)
        for i in rng.sample(range(1, n + 1), min(8, n)):
            assert eng.isa(i) == oracle.naive_isa(text)[i - 1]


def test_differential_periodic_and_unary(rng):
    for _ in range(15):
        n = rng.randrange(20, 200)
        choice = rng.random()
        if choice < 0.4:
            text = "a" * n
        else:
            text = random_text(rng, n, 2, periodic_bias=1.0)
        eng = DynamicISA(text)
        _drive(eng, text, rng, 2, 15)


def test_substitution_to_unary(rng):
    # drive a short text to all-equal; ranks inside the big cluster are n - i
    text = "abab"
    eng = DynamicISA(text)
    for x, c in ((2, "a"), (4, "a")):
        eng.substitute(x, c)
        text = text[:x - 1] + c + text[x:]
    assert text == "aaaa"
    assert eng.isa_all() == oracle.naive_isa("aaaa")
    assert [eng.close_rank(i) for i in range(1, 5)] == [2, 1, 0, 0]


def test_no_stairs_on_large_alphabet(rng):
    # no periodic structure: no run is extremely periodic, so no stairs are
    # routed through the registry
    text = random_text(rng, 300, 26)
    eng = DynamicISA(text)
    _drive(eng, text, rng, 20, check_every=False, sigma=26)
    assert eng.ranks.stairs_routed == 0
    assert len(eng.ranks.registered()) == 0


def test_stairs_engage_on_periodic(rng):
    text = ("ab" * 120) + random_text(rng, 60, 2)
    eng = DynamicISA(text)
    _drive(eng, text, rng, 25, sigma=2)
    assert eng.ranks.stairs_routed > 0


def test_epoch_policy_env(rng, monkeypatch):
    monkeypatch.setenv("DYNSA_EPOCH_POLICY", "aggressive")
    text = "ab" * 60
    eng = DynamicISA(text)
    text = _drive(eng, text, rng, 12, sigma=2)
    # aggressive flushing drains every stairs store after each substitution
    for store in eng.ranks.per_p.values():
        assert store.update_count <= 1


def test_small_texts_exhaustive(rng):
    for n in range(1, 8):
        for sigma in (1, 2):
            text = random_text(rng, n, sigma)
            eng = DynamicISA(text)
            text = _drive(eng, text, rng, 10, sigma=2)


def test_counters_move(rng):
    counters = Counters()
    eng = DynamicISA(random_text(rng, 256, 2), counters=counters)
    counters.reset()
    eng.substitute(100, "c")
    assert counters.lce_calls > 0 and counters.range_visits > 0
