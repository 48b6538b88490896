"""Reproducible random streams.

Every stream is a Philox4x64 counter-based generator whose 128-bit key
is ``(seed, mix(path))``.  ``mix`` folds an index path through the
SplitMix64 finaliser (increment 0x9E3779B97F4A7C15, multipliers
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB), so a stream depends only on
the seed and its index path, never on draw order elsewhere.
"""
import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix(*path: int) -> int:
    k = 0
    for p in path:
        k = splitmix64(k ^ (int(p) & _MASK))
    return k


def stream(seed: int, *path: int) -> np.random.Generator:
    """Independent generator for ``(seed, path...)``."""
    key = np.array([int(seed) & _MASK, mix(*path)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
