"""Shared fixtures: the worked-example sequences and cached long series."""

from __future__ import annotations

import pytest

from subdisc import build_sequence, discrepancy_series

# the sequences exercised throughout the suite, keyed by a short name
SEQUENCES = {
    "ones": ((), 1),
    "a122": ((1,), 2),
    "a1134": ((1, 1, 3), 4),
    "a199": ((1,), 9),
    "a311": ((3,), 1),
    "a2422": ((2, 4), 2),
    "a1812": ((1, 8), 12),
    "a1715": ((1, 7), 15),
    "a1327": ((1, 3), 27),
}


@pytest.fixture(scope="session")
def seqs():
    return {name: build_sequence(list(p), t) for name, (p, t) in SEQUENCES.items()}


@pytest.fixture(scope="session")
def long_series(seqs):
    """Memoised discrepancy series up to n = 2000 (expensive, shared)."""
    import time

    cache = {}
    times = {}

    def get(name: str, n_max: int = 2000):
        key = (name, n_max)
        for (cached_name, cached_n), value in cache.items():
            if cached_name == name and cached_n >= n_max:
                return value
        start = time.monotonic()
        cache[key] = discrepancy_series(seqs[name], n_max)
        times[key] = time.monotonic() - start
        return cache[key]

    get.times = times
    return get
