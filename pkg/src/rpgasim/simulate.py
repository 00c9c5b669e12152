"""Circuit evaluation: single words, step traces and full truth tables.

Occupied slots are applied in ascending order; gates inside one slot act
on disjoint lines, so their order is immaterial.  Words carry line 0 in
the most significant bit, matching the printed table convention.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .bits import Bits, from_bits, to_bits
from .circuit import Circuit
from .errors import TooWide, WidthError
from .tables import ReversibleTruthTable

FULL_TABLE_CAP = 16


@dataclass(frozen=True)
class Trace:
    """Slot-by-slot snapshots: entry 0 is the input, the rest follow each
    occupied slot in order."""

    snapshots: tuple[tuple[int, Bits], ...]   # (slot index, line values); input slot = -1

    @property
    def final(self) -> Bits:
        return self.snapshots[-1][1]


def _apply_slot(circuit: Circuit, slot: int, word: int) -> int:
    width = circuit.width
    for p in circuit.placements:
        if p.slot != slot:
            continue
        local = 0
        for pin in p.pins:
            local = (local << 1) | ((word >> (width - 1 - pin)) & 1)
        out = p.gate.mapping[local]
        for k, pin in enumerate(reversed(p.pins)):
            bit = (out >> k) & 1
            pos = width - 1 - pin
            word = (word & ~(1 << pos)) | (bit << pos)
    return word


def eval_word(circuit: Circuit, word: int) -> int:
    """Propagate an integer-encoded word through every occupied slot."""
    for slot in circuit.slots():
        word = _apply_slot(circuit, slot, word)
    return word


def eval(circuit: Circuit, input: Sequence[int]) -> Bits:  # noqa: A001 - spec'd name
    if len(input) != circuit.width:
        raise WidthError(f"circuit has {circuit.width} lines, input has {len(input)}")
    return to_bits(eval_word(circuit, from_bits(input)), circuit.width)


def trace(circuit: Circuit, input: Sequence[int]) -> Trace:
    if len(input) != circuit.width:
        raise WidthError(f"circuit has {circuit.width} lines, input has {len(input)}")
    word = from_bits(input)
    snaps = [(-1, to_bits(word, circuit.width))]
    for slot in circuit.slots():
        word = _apply_slot(circuit, slot, word)
        snaps.append((slot, to_bits(word, circuit.width)))
    return Trace(tuple(snaps))


def _check_cap(circuit: Circuit, max_width: int) -> None:
    if circuit.width > max_width:
        raise TooWide(f"{circuit.width} lines exceed the enumeration cap "
                      f"{max_width}; raise max_width explicitly to override")
    if max_width > FULL_TABLE_CAP:
        warnings.warn(f"enumerating 2^{circuit.width} rows above the default "
                      f"cap {FULL_TABLE_CAP}; this may be slow", stacklevel=3)


def full_table(circuit: Circuit, max_width: int = FULL_TABLE_CAP) -> ReversibleTruthTable:
    """Enumerate all 2^n rows in ascending input order."""
    _check_cap(circuit, max_width)
    outputs = tuple(eval_word(circuit, w) for w in range(1 << circuit.width))
    return ReversibleTruthTable(circuit.width, outputs)


@dataclass(frozen=True)
class BijectivityReport:
    bijective: bool
    permutation: tuple[int, ...] | None
    collision: tuple[int, int] | None = None   # two inputs mapping to one word


def check_bijective(circuit: Circuit, max_width: int = FULL_TABLE_CAP) -> BijectivityReport:
    """Exhaustively confirm that the circuit computes a permutation.

    Circuits built from library gates always pass (a composition of
    bijections is a bijection); the scan is the independent confirmation.
    """
    _check_cap(circuit, max_width)
    seen: dict[int, int] = {}
    outputs = []
    for w in range(1 << circuit.width):
        out = eval_word(circuit, w)
        if out in seen:
            return BijectivityReport(False, None, collision=(seen[out], w))
        seen[out] = w
        outputs.append(out)
    return BijectivityReport(True, tuple(outputs))
