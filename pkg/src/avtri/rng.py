"""Seeded randomness.

Every randomized routine in the repo draws from a Philox counter-based
generator derived from one user seed.  Streams are identified by a path of
labels, so independent tasks (torsion bases for distinct primes, attack
trials, ...) get independent, reproducible streams: same seed + same path =
same bits, on every platform.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _path_key(path: tuple) -> list[int]:
    h = hashlib.sha256(repr(path).encode()).digest()
    return [int.from_bytes(h[i : i + 4], "little") for i in range(0, 16, 4)]


class Stream:
    """A deterministic random stream with small-integer helpers."""

    def __init__(self, seed: int, path: tuple = ()):
        self.seed = int(seed)
        self.path = tuple(path)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=_path_key(self.path))
        self._gen = np.random.Generator(np.random.Philox(ss))

    def child(self, *labels) -> "Stream":
        return Stream(self.seed, self.path + tuple(labels))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return int(self._gen.integers(lo, hi + 1))

    def randrange(self, n: int) -> int:
        return int(self._gen.integers(0, n))

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        # Fisher-Yates over our own integers, so the permutation depends only
        # on the Philox bit stream.
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_nonzero(self, lo: int, hi: int) -> int:
        while True:
            v = self.randint(lo, hi)
            if v != 0:
                return v


def stream(seed: int, *labels) -> Stream:
    return Stream(seed, tuple(labels))
