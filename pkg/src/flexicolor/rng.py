"""Seeded randomness.

All randomness goes through numpy's PCG64 bit generator seeded by a
``SeedSequence``; trial ``t`` of a run with seed ``s`` uses entropy ``[s, t]``,
so trials are independent of scheduling and reproducible across platforms.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int = 0, trial: int | None = None) -> np.random.Generator:
    entropy = [int(seed)] if trial is None else [int(seed), int(trial)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return make_rng(0 if rng is None else rng)
