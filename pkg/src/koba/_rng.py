"""Deterministic, order-independent random streams.

Every consumer derives its randomness from a counter-based Philox generator
keyed by (seed, *stream key), so parallel draws are reproducible regardless
of scheduling and two streams never overlap.
"""

from __future__ import annotations

import os

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the (seed, key...) stream."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def worker_count(n_tasks: int) -> int:
    """Thread budget: min(tasks, KOBA_THREADS or cpu count)."""
    cap = os.environ.get("KOBA_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(n_tasks, limit))
