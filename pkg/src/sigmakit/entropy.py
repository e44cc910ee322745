"""Randomness sources.

Everything that needs randomness takes an explicit source with a single
``read(n) -> bytes`` method. Production code uses :class:`SystemEntropy`;
:class:`SeededEntropy` is a deterministic SHA-256 counter stream for demos,
golden files and tests. Seeded streams are platform-independent: the same
seed yields the same bytes everywhere.
"""

import hashlib
import os


class SystemEntropy:
    """Operating-system CSPRNG."""

    def read(self, n: int) -> bytes:
        return os.urandom(n)


class SeededEntropy:
    """Deterministic byte stream derived from a seed. NOT secure.

    Proofs made from a known seed reveal their randomizers and therefore
    their secrets; use only for reproducible tests and demos.
    """

    def __init__(self, seed):
        if isinstance(seed, int):
            seed = seed.to_bytes((seed.bit_length() + 7) // 8 or 1, "big", signed=False)
        self._seed = bytes(seed)
        self._counter = 0
        self._buffer = b""

    def read(self, n: int) -> bytes:
        while len(self._buffer) < n:
            block = hashlib.sha256(
                self._seed + self._counter.to_bytes(8, "big")
            ).digest()
            self._counter += 1
            self._buffer += block
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return out


class StubEntropy:
    """Replays fixed bytes, then fails. For tests that pin randomizers."""

    def __init__(self, data: bytes):
        self._data = bytes(data)
        self._pos = 0

    def read(self, n: int) -> bytes:
        if self._pos + n > len(self._data):
            raise RuntimeError("stub entropy exhausted")
        out = self._data[self._pos : self._pos + n]
        self._pos += n
        return out
