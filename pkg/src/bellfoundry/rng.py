"""Reproducible parallel random streams.

The repo-wide generator is Philox4x64 as shipped in ``numpy.random``: a
counter-based 64-bit generator whose output is fixed by its 128-bit key,
so golden outputs are portable across platforms and independent of
scheduling.  A trial run is split into fixed-size batches; batch ``k`` of
logical stream ``stream`` under master seed ``seed`` draws from the key
``(seed, stream << 32 | k)``.  Batches can then execute on any number of
threads and their integer counts merge associatively.
"""

from __future__ import annotations

import numpy as np

#: Fixed batch size for parallel trial execution.
BATCH_SIZE = 1 << 16


def substream(seed: int, stream: int = 0, batch: int = 0) -> np.random.Generator:
    """Independent Philox stream for (seed, stream, batch)."""
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must fit in 64 bits")
    if not 0 <= stream < 1 << 32 or not 0 <= batch < 1 << 32:
        raise ValueError("stream and batch must fit in 32 bits")
    key = np.array([seed, (stream << 32) | batch], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def batch_sizes(n: int) -> list:
    """Split n trials into BATCH_SIZE chunks (last one ragged)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    full, rest = divmod(n, BATCH_SIZE)
    sizes = [BATCH_SIZE] * full
    if rest:
        sizes.append(rest)
    return sizes
