"""Seed derivation helpers.

All randomness in the package flows from explicit 64-bit seeds.  Derived
streams are split off a root seed with ``numpy.random.SeedSequence`` spawn
keys, so independent stages of a pipeline get decorrelated yet reproducible
generators.
"""

import numpy as np

# Fixed spawn-key labels for the per-stage streams.
STREAM_SESSION = 0
STREAM_COIN = 1
STREAM_PROBES = 2
STREAM_GEN = 3


def derive_rng(seed: int, *labels: int) -> np.random.Generator:
    """Generator for the sub-stream of ``seed`` addressed by ``labels``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=labels))


def derive_seed(seed: int, *labels: int) -> int:
    """64-bit sub-seed of ``seed`` addressed by ``labels``."""
    ss = np.random.SeedSequence(seed, spawn_key=labels)
    return int(ss.generate_state(1, np.uint64)[0])
