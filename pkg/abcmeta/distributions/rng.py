"""
Deterministic random streams.

All randomness flows through numpy SeedSequences derived from a root
seed by explicit integer keys, so any block, replicate or study row can
be regenerated on its own and in any order.
"""

from typing import Optional, Union

import numpy as np


SeedLike = Union[int, np.random.SeedSequence]


def fresh_seed() -> int:
    """Draw a new root seed from OS entropy."""
    return int(np.random.SeedSequence().entropy)


def make_seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def child_sequence(parent: SeedLike, *keys: int) -> np.random.SeedSequence:
    """
    Derive a child stream from a parent and a path of integer keys.

    Unlike SeedSequence.spawn this never mutates the parent, so the same
    keys always give the same child.
    """
    parent = make_seed_sequence(parent)
    return np.random.SeedSequence(
        entropy=parent.entropy,
        spawn_key=tuple(parent.spawn_key) + tuple(int(k) for k in keys),
        pool_size=parent.pool_size,
    )


def derive(seed: SeedLike, *keys: int) -> np.random.SeedSequence:
    """Stream for a cell addressed by keys, e.g. (n, replicate, role)."""
    return child_sequence(seed, *keys)


def make_rng(seed: Optional[SeedLike] = None) -> np.random.Generator:
    """Generator over a seed, a SeedSequence or fresh entropy."""
    if seed is None:
        return np.random.default_rng()
    return np.random.default_rng(make_seed_sequence(seed))
