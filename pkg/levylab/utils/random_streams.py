"""Deterministic random substreams.

Every replicate draws from its own counter-based generator keyed by
``(master seed, stream name, replicate index)``, so results do not depend on
how replicates are spread over workers.
"""

import zlib

import numpy as np


def stream_id(name: str) -> int:
    """Stable 32-bit identifier of a named stream."""
    return zlib.crc32(name.encode('utf-8'))


def substream(seed: int, stream: str, index: int) -> np.random.Generator:
    """Return the generator for replicate ``index`` of ``stream``.

    Args:
        seed: Master seed (non-negative, up to 64 bits)
        stream: Stream name, e.g. ``"is/x=-6"``
        index: Replicate index

    Returns:
        A Philox-backed ``numpy.random.Generator``
    """
    entropy = [int(seed), stream_id(stream), int(index)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
