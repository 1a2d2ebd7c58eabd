"""Deterministic random streams.

Every stream is a :class:`numpy.random.Generator` built from a
``SeedSequence`` whose spawn key identifies what it is used for, so that a
given (seed, purpose, index) triple always yields the same numbers no
matter how the work is split between processes.
"""

from __future__ import annotations

import zlib

import numpy as np

RandomStream = np.random.Generator


def tag(label: str) -> int:
    """Stable 32-bit integer for a text label (used inside spawn keys)."""
    return zlib.crc32(label.encode("utf-8"))


def make_stream(seed: int, *key: int | str) -> RandomStream:
    """Return the generator for ``seed`` and the spawn ``key``.

    String components are hashed with :func:`tag`.
    """
    spawn_key = tuple(tag(k) if isinstance(k, str) else int(k) for k in key)
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=spawn_key)
    return np.random.Generator(np.random.PCG64(ss))
