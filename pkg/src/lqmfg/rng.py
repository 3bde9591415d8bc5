"""Deterministic, order-free random substreams for parallel simulation.

Each logical stream is keyed by the experiment seed plus an integer tuple
(for population runs: replication, agent, purpose). Streams are derived
through SeedSequence spawn keys on a counter-based generator, so the draw a
given (key, purpose) produces never depends on scheduling, thread count, or
the order in which other streams were consumed.
"""

from __future__ import annotations

import numpy as np

INITIAL_STATE = 0
PROCESS_NOISE = 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, *key); identical inputs give identical streams."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))
