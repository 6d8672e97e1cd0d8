"""Brute-force reference implementations for the differential tests.

Everything here works on a plain ``str``/``bytes`` text and shares no code
with the engine modules.  Positions are 1-based to match the engine APIs.
Performance is a non-goal; the only nod to speed is numpy in the run
enumeration, which the extreme-run coverage checks call on texts up to a
few thousand symbols.
"""

from __future__ import annotations

import numpy as np


def naive_lcp(text, i, j):
    n = len(text)
    ell = 0
    while i + ell <= n and j + ell <= n and text[i + ell - 1] == text[j + ell - 1]:
        ell += 1
    return ell


def naive_lcs(text, i, j):
    ell = 0
    while i - ell >= 1 and j - ell >= 1 and text[i - ell - 1] == text[j - ell - 1]:
        ell += 1
    return ell


def suffix_less(text, i, j):
    return text[i - 1:] < text[j - 1:]


def naive_sa(text):
    """Start positions of suffixes in lexicographic order (1-based)."""
    return sorted(range(1, len(text) + 1), key=lambda i: text[i - 1:])


def naive_isa(text):
    sa = naive_sa(text)
    isa = [0] * (len(text) + 1)
    for r, i in enumerate(sa, start=1):
        isa[i] = r
    return isa[1:]


def naive_lcp_array(text, sa=None):
    """LA[i] = lcp(SA[i-1], SA[i]) for i >= 2; LA[1] = 0."""
    sa = sa or naive_sa(text)
    la = [0] * len(sa)
    for i in range(1, len(sa)):
        la[i] = naive_lcp(text, sa[i - 1], sa[i])
    return la


def naive_close_rank(text, k, i):
    """Rank of suffix i among suffixes j with lcp(i, j) >= k, by direct scan."""
    suf = text[i - 1:]
    r = 0
    for j in range(1, len(text) + 1):
        if j == i:
            continue
        if naive_lcp(text, i, j) >= k and text[j - 1:] < suf:
            r += 1
    return r


def naive_close_rank_all(text, k):
    """All close ranks at once via a sorted-suffix sweep (still engine-free)."""
    n = len(text)
    sa = naive_sa(text)
    r = [0] * (n + 1)
    for idx in range(1, n):
        prev, cur = sa[idx - 1], sa[idx]
        ell = 0
        while (prev + ell <= n and cur + ell <= n and ell < k
               and text[prev + ell - 1] == text[cur + ell - 1]):
            ell += 1
        r[cur] = r[prev] + 1 if ell >= k else 0
    return [r[i] for i in range(1, n + 1)]


def occurrences(text, s, e):
    """Start positions of every occurrence of text[s..e]."""
    w = text[s - 1:e]
    out = []
    start = 0
    while True:
        pos = text.find(w, start)
        if pos < 0:
            break
        out.append(pos + 1)
        start = pos + 1
    return out


def naive_A_w(text, s, e):
    """Occurrence starts of text[s..e] sorted by suffix order."""
    return sorted(occurrences(text, s, e), key=lambda i: text[i - 1:])


def naive_A_lr(text, s, e, l, r):
    """(l,r)-extendable occurrences of text[s..e], sorted by suffix order."""
    out = []
    for i in naive_A_w(text, s, e):
        e1 = i + (e - s)
        if naive_lcs(text, s - 1, i - 1) >= l and naive_lcp(text, e + 1, e1 + 1) >= r:
            out.append(i)
    return out


def naive_period(w):
    """Smallest period by direct scan."""
    x = len(w)
    for p in range(1, x):
        if w[p:] == w[:x - p]:
            return p
    return max(x, 1)


def naive_por(text, s, e):
    """Clusters (a, b, p) grouping consecutive occurrences at distance per(w)."""
    w = text[s - 1:e]
    p = naive_period(w)
    occ = occurrences(text, s, e)
    clusters = []
    idx = 0
    while idx < len(occ):
        a = occ[idx]
        b = a
        while idx + 1 < len(occ) and occ[idx + 1] - occ[idx] == p:
            idx += 1
            b = occ[idx]
        clusters.append((a, b, p))
        idx += 1
    return clusters


# ---------------------------------------------------------------------------
# stairs / interval updates on plain arrays


def apply_interval(arr, i, j, x):
    """arr is 1-based conceptually: arr[0] unused allowed; here arr[k] is index k+1."""
    for a in range(i, j + 1):
        arr[a - 1] += x


def apply_stairs(arr, i, j, p, orient="dec", sign=1):
    """Literal step definition; orient in {'dec','inc'}, sign in {1,-1}."""
    steps = -(-(j - i + 1) // p)
    for t in range(1, steps + 1):
        if orient == "dec":
            lo = max(j - t * p + 1, i)
            hi = j - (t - 1) * p
        else:
            lo = i + (t - 1) * p
            hi = min(i + t * p - 1, j)
        for a in range(lo, hi + 1):
            arr[a - 1] += sign * t


# ---------------------------------------------------------------------------
# runs


def maximal_periodic_intervals(text, p):
    """Maximal intervals [a..b] (1-based) with formal period p and length >= 2p."""
    n = len(text)
    if p < 1 or 2 * p > n:
        return []
    arr = np.frombuffer(text.encode("latin-1") if isinstance(text, str) else bytes(text),
                        dtype=np.uint8)
    eq = arr[:-p] == arr[p:]
    if not eq.any():
        return []
    padded = np.concatenate(([False], eq, [False]))
    d = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1) - 1
    out = []
    for st, en in zip(starts, ends):
        if en - st + 1 >= p:  # interval length (en - st + 1) + p >= 2p
            out.append((int(st) + 1, int(en) + 1 + p, p))
    return out


def _slice_period(text, a, b):
    w = text[a - 1:b]
    m = len(w)
    fail = [0] * m
    k = 0
    for q in range(1, m):
        while k and w[q] != w[k]:
            k = fail[k - 1]
        if w[q] == w[k]:
            k += 1
        fail[q] = k
    return m - fail[-1] if m else 1


def extremely_periodic_runs(text):
    """All runs (a, b, p) with minimal period p <= (b-a+1)/5."""
    n = len(text)
    best = {}
    for p in range(1, n // 5 + 1):
        for a, b, _ in maximal_periodic_intervals(text, p):
            if b - a + 1 >= 5 * p:
                if (a, b) not in best or p < best[(a, b)]:
                    best[(a, b)] = p
    runs = []
    for (a, b), p in best.items():
        if _slice_period(text, a, b) == p:
            runs.append((a, b, p))
    return sorted(runs)


def extreme_run_coverage(text):
    """Per-position count of covering extremely periodic runs, plus per-band counts."""
    import math

    n = len(text)
    runs = extremely_periodic_runs(text)
    cover = np.zeros(n + 2, dtype=np.int64)
    bands = {}
    for a, b, p in runs:
        cover[a] += 1
        cover[b + 1] -= 1
        band = int(math.floor(math.log(p, 1.5) + 1e-12))  # p in [1.5^band, 1.5^(band+1))
        arr = bands.setdefault(band, np.zeros(n + 2, dtype=np.int64))
        arr[a] += 1
        arr[b + 1] -= 1
    total = np.cumsum(cover)[1:n + 1]
    band_max = max((int(np.cumsum(arr)[1:n + 1].max()) for arr in bands.values()), default=0)
    return total, band_max


def fibonacci_word(limit):
    a, b = "b", "a"
    while len(b) < limit:
        a, b = b, b + a
    return b[:limit]
