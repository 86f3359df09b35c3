"""Seeded random streams.

Every stochastic choice draws from a Philox (counter-based) generator keyed
by the run seed plus a path of integers naming the call site, so adding a
new consumer never shifts the draws of an existing one.
"""

from __future__ import annotations

import zlib

import numpy as np


def _key(part) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode())
    return int(part)


def stream(seed: int, *path) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1)] + [_key(p) for p in path])
    return np.random.Generator(np.random.Philox(ss))
