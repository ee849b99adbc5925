"""Deterministic random streams keyed by integer tuples (seed, drop, group, round, ...)."""

import numpy as np


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    Build an independent generator for the stream identified by ``(seed, *keys)``.

    Streams for different key tuples are statistically independent, and the same
    tuple always yields the same sequence regardless of which worker draws it.
    """
    entropy = [int(seed), *(int(k) for k in keys)]
    if any(k < 0 for k in entropy):
        raise ValueError(f"RNG keys must be non-negative, got {entropy}")
    return np.random.default_rng(np.random.SeedSequence(entropy))
