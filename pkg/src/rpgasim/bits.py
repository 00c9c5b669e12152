"""Bit-vector helpers.

Words are tuples of 0/1 with position 0 as the most significant bit, so a
word reads left to right the way a truth-table row is printed.  Integer
encodings follow the same convention.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Bits = tuple[int, ...]


def to_bits(word: int, width: int) -> Bits:
    """Encode ``word`` as a tuple of ``width`` bits, MSB first."""
    return tuple((word >> (width - 1 - i)) & 1 for i in range(width))


def from_bits(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | (b & 1)
    return value


def weight(word: int) -> int:
    """Hamming weight (number of ones)."""
    return bin(word).count("1")


def parity(word: int) -> int:
    return weight(word) & 1


def bitstring(bits: Iterable[int]) -> str:
    return "".join(str(b) for b in bits)


def parse_bitstring(text: str) -> Bits:
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a bit string: {text!r}")
    return tuple(int(c) for c in text)
