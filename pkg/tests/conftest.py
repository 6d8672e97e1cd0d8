import random

import pytest


def random_text(rng, n, sigma, periodic_bias=0.0):
    """Random text over the first sigma lowercase letters; optionally built
    from repeated motifs with sprinkled noise to provoke runs/clusters."""
    if rng.random() < periodic_bias:
        parts = []
        while sum(map(len, parts)) < n:
            motif = "".join(chr(97 + rng.randrange(sigma)) for _ in range(rng.randrange(1, 5)))
            parts.append(motif * rng.randrange(2, 25))
        text = "".join(parts)[:n]
        chars = list(text)
        for _ in range(rng.randrange(0, 4)):
            chars[rng.randrange(n)] = chr(97 + rng.randrange(sigma))
        return "".join(chars)
    return "".join(chr(97 + rng.randrange(sigma)) for _ in range(n))


def flip_char(rng, text, x, sigma):
    """A non-trivial replacement symbol for position x."""
    c = chr(97 + rng.randrange(max(sigma, 2)))
    if c == text[x - 1]:
        c = chr(97 + (ord(c) - 97 + 1) % max(sigma, 2))
    return c


@pytest.fixture
def rng():
    return random.Random(0xD5A)
