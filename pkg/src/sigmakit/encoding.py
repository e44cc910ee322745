"""Canonical byte encodings shared by statement identifiers and the proof codec.

Varints are unsigned LEB128 restricted to minimal form, so every value has
exactly one encoding and every encoding parses to at most one value.
"""

from .errors import SerializationError


def write_varint(n: int) -> bytes:
    if n < 0:
        raise ValueError("varint must be non-negative")
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def write_bytes(data: bytes) -> bytes:
    """Length-prefixed byte string."""
    return write_varint(len(data)) + data


class ByteReader:
    """Strict sequential reader; every anomaly raises SerializationError."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0

    def read(self, n: int) -> bytes:
        if self._pos + n > len(self._data):
            raise SerializationError(
                f"truncated input: wanted {n} bytes at offset {self._pos}, "
                f"have {len(self._data) - self._pos}"
            )
        chunk = self._data[self._pos : self._pos + n]
        self._pos += n
        return chunk

    def read_varint(self) -> int:
        result = 0
        shift = 0
        while True:
            byte = self.read(1)[0]
            result |= (byte & 0x7F) << shift
            if not byte & 0x80:
                # reject non-minimal forms like 0x80 0x00
                if byte == 0 and shift != 0:
                    raise SerializationError("non-minimal varint")
                return result
            shift += 7
            if shift > 63:
                raise SerializationError("varint too long")

    def read_bytes(self) -> bytes:
        return self.read(self.read_varint())

    def expect_end(self):
        if self._pos != len(self._data):
            raise SerializationError(
                f"{len(self._data) - self._pos} trailing bytes after message"
            )
