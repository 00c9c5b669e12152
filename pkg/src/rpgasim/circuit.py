"""Reversible circuit model: lines crossed by time slots.

A circuit is a fixed set of lines and a list of gate placements.  Each
placement occupies one time slot and binds a gate pin-by-pin to distinct
lines; within a slot no line may be touched twice.  Input lines can be
tied to a constant, output lines can be marked garbage; those annotations
drive the truth-table projection.

Circuits are immutable: the editing operations return updated copies, so
a finished circuit can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import BadWidth, PinClash, SlotConflict
from .gates import GateDef

MAX_LINES = 16


@dataclass(frozen=True)
class Line:
    index: int
    name: str
    constant: int | None = None      # 0/1 when the input is tied off
    garbage: bool = False
    out_name: str | None = None      # label carried by a primary output

    def __post_init__(self):
        if self.constant not in (None, 0, 1):
            raise ValueError(f"line {self.index}: constant must be 0 or 1")


@dataclass(frozen=True)
class Placement:
    slot: int
    gate: GateDef
    pins: tuple[int, ...]

    def __post_init__(self):
        if self.slot < 0:
            raise ValueError("slot index must be non-negative")
        if len(self.pins) != self.gate.arity:
            raise PinClash(f"gate {self.gate.name} needs {self.gate.arity} pins, "
                           f"got {len(self.pins)}")
        if len(set(self.pins)) != len(self.pins):
            raise PinClash(f"duplicate pin in {self.pins}")


@dataclass(frozen=True)
class Circuit:
    lines: tuple[Line, ...]
    placements: tuple[Placement, ...] = ()
    name: str = "circuit"

    def __post_init__(self):
        self.validate()

    # -- structure queries -------------------------------------------------

    @property
    def width(self) -> int:
        return len(self.lines)

    @property
    def depth(self) -> int:
        """Number of distinct occupied time slots (gate levels)."""
        return len({p.slot for p in self.placements})

    def slots(self) -> list[int]:
        return sorted({p.slot for p in self.placements})

    def constants(self) -> dict[int, int]:
        return {ln.index: ln.constant for ln in self.lines if ln.constant is not None}

    def garbage_lines(self) -> frozenset[int]:
        return frozenset(ln.index for ln in self.lines if ln.garbage)

    def primary_outputs(self) -> list[Line]:
        return [ln for ln in self.lines if not ln.garbage]

    def output_names(self) -> list[str]:
        names = []
        for k, ln in enumerate(self.primary_outputs()):
            names.append(ln.out_name or f"out{k + 1}")
        return names

    def validate(self) -> None:
        indices = [ln.index for ln in self.lines]
        if indices != list(range(len(self.lines))):
            raise ValueError("line indices must be dense and unique")
        used: dict[int, set[int]] = {}
        for p in self.placements:
            for pin in p.pins:
                if not 0 <= pin < self.width:
                    raise PinClash(f"pin {pin} outside lines 0..{self.width - 1}")
                busy = used.setdefault(p.slot, set())
                if pin in busy:
                    raise SlotConflict(f"slot {p.slot}: line {pin} already occupied")
                busy.add(pin)

    # -- editing (returns updated copies) ----------------------------------

    def place(self, slot: int, gate: GateDef, pins: Sequence[int]) -> "Circuit":
        placement = Placement(slot, gate, tuple(pins))
        return replace(self, placements=self.placements + (placement,))

    def remove(self, placement_index: int) -> "Circuit":
        kept = tuple(p for i, p in enumerate(self.placements) if i != placement_index)
        return replace(self, placements=kept)

    def with_roles(self, constants: Mapping[int, int] | None = None,
                   garbage: Iterable[int] | None = None) -> "Circuit":
        """Record constant-input values and garbage-output flags."""
        constants = dict(constants or {})
        garbage = set(garbage or ())
        for idx in list(constants) + list(garbage):
            if not 0 <= idx < self.width:
                raise BadWidth(f"no line {idx} in a {self.width}-line circuit")
        lines = tuple(
            replace(ln,
                    constant=constants.get(ln.index, ln.constant),
                    garbage=ln.garbage or ln.index in garbage)
            for ln in self.lines)
        return replace(self, lines=lines)

    def with_names(self, names: Sequence[str] | None = None,
                   out_names: Mapping[int, str] | None = None) -> "Circuit":
        lines = list(self.lines)
        if names is not None:
            if len(names) != self.width:
                raise BadWidth("need one name per line")
            lines = [replace(ln, name=n) for ln, n in zip(lines, names)]
        for idx, out in (out_names or {}).items():
            lines[idx] = replace(lines[idx], out_name=out)
        return replace(self, lines=tuple(lines))

    def renamed(self, name: str) -> "Circuit":
        return replace(self, name=name)

    def free_input_count(self) -> int:
        return self.width - len(self.constants())

    def primary_output_count(self) -> int:
        return self.width - len(self.garbage_lines())


def new_circuit(num_lines: int, name: str = "circuit",
                max_lines: int = MAX_LINES) -> Circuit:
    """A fresh circuit: all lines primary in and out, no placements."""
    if not 1 <= num_lines <= max_lines:
        raise BadWidth(f"line count must be in 1..{max_lines}, got {num_lines}")
    lines = tuple(Line(i, f"x{i + 1}") for i in range(num_lines))
    return Circuit(lines=lines, name=name)
