"""Reversible and irreversible truth tables, projection and design metrics.

The projection step turns the 2n-column reversible table of an annotated
circuit into the function the designer actually cares about: rows whose
constant lines don't carry their declared values are removed, garbage
output columns are dropped, and the remaining free inputs / primary
outputs form the irreversible table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .bits import Bits, from_bits, to_bits
from .circuit import Circuit
from .errors import MalformedTable, NoOutputs

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def default_input_names(n: int) -> tuple[str, ...]:
    if n <= len(_ALPHABET):
        return tuple(_ALPHABET[:n])
    return tuple(f"x{i + 1}" for i in range(n))


def default_output_names(m: int) -> tuple[str, ...]:
    return tuple(f"out{j + 1}" for j in range(m))


@dataclass(frozen=True)
class ReversibleTruthTable:
    """All 2^n rows of a reversible circuit; inputs are implicit (ascending)."""

    width: int
    outputs: tuple[int, ...]    # outputs[i] = output word for input word i

    def __post_init__(self):
        if len(self.outputs) != 1 << self.width:
            raise MalformedTable(f"need {1 << self.width} rows, got {len(self.outputs)}")
        if sorted(self.outputs) != list(range(1 << self.width)):
            raise MalformedTable("output column is not a permutation")

    @property
    def rows(self) -> list[tuple[Bits, Bits]]:
        return [(to_bits(i, self.width), to_bits(o, self.width))
                for i, o in enumerate(self.outputs)]

    @property
    def permutation(self) -> tuple[int, ...]:
        return self.outputs


@dataclass(frozen=True)
class IrreversibleTruthTable:
    """n input columns by m output columns over all 2^n rows."""

    input_names: tuple[str, ...]
    output_names: tuple[str, ...]
    outputs: tuple[int, ...]    # outputs[i] = m-bit output word for input word i

    def __post_init__(self):
        if not self.output_names:
            raise NoOutputs("a truth table needs at least one output column")
        if len(self.outputs) != 1 << self.n:
            raise MalformedTable(f"need {1 << self.n} rows, got {len(self.outputs)}")
        if any(not 0 <= o < (1 << self.m) for o in self.outputs):
            raise MalformedTable("output word out of range")

    @property
    def n(self) -> int:
        return len(self.input_names)

    @property
    def m(self) -> int:
        return len(self.output_names)

    @property
    def rows(self) -> list[tuple[Bits, Bits]]:
        return [(to_bits(i, self.n), to_bits(o, self.m))
                for i, o in enumerate(self.outputs)]

    def output_column(self, j: int) -> tuple[int, ...]:
        shift = self.m - 1 - j
        return tuple((o >> shift) & 1 for o in self.outputs)


def make_table(rows: Sequence[tuple[Sequence[int], Sequence[int]]],
               input_names: Sequence[str] | None = None,
               output_names: Sequence[str] | None = None) -> IrreversibleTruthTable:
    """Direct entry of an irreversible truth table from explicit rows.

    Rows may arrive in any order but must cover every input word exactly
    once; gaps and duplicates raise ``MalformedTable``.
    """
    if not rows:
        raise MalformedTable("empty table")
    n = len(rows[0][0])
    m = len(rows[0][1])
    seen: dict[int, int] = {}
    for ins, outs in rows:
        if len(ins) != n or len(outs) != m:
            raise MalformedTable("ragged row widths")
        word = from_bits(ins)
        if word in seen:
            raise MalformedTable(f"duplicate row for input {''.join(map(str, ins))}")
        seen[word] = from_bits(outs)
    missing = [w for w in range(1 << n) if w not in seen]
    if missing:
        raise MalformedTable(
            f"missing row for input {format(missing[0], f'0{n}b')}")
    return IrreversibleTruthTable(
        tuple(input_names) if input_names else default_input_names(n),
        tuple(output_names) if output_names else default_output_names(m),
        tuple(seen[w] for w in range(1 << n)),
    )


def project(rtt: ReversibleTruthTable, constants: Mapping[int, int],
            garbage: Iterable[int],
            line_names: Sequence[str] | None = None,
            out_names: Sequence[str | None] | None = None) -> IrreversibleTruthTable:
    """Strip constant/garbage columns from a reversible table.

    Keeps only the rows whose constant lines carry their declared values
    (2^(n-CI) of them), drops garbage output columns, and reads the free
    lines in index order as the new inputs.
    """
    n = rtt.width
    garbage = set(garbage)
    free = [i for i in range(n) if i not in constants]
    kept = [i for i in range(n) if i not in garbage]
    if not kept:
        raise NoOutputs("every line is garbage; nothing to project")

    in_names = (tuple(line_names[i] for i in free) if line_names
                else default_input_names(len(free)))
    if out_names:
        names = [out_names[i] for i in kept]
        o_names = tuple(nm if nm else f"out{j + 1}" for j, nm in enumerate(names))
    else:
        o_names = default_output_names(len(kept))

    rows = []
    for word, out in enumerate(rtt.outputs):
        in_bits = to_bits(word, n)
        if any(in_bits[i] != v for i, v in constants.items()):
            continue
        out_bits = to_bits(out, n)
        rows.append(from_bits([out_bits[i] for i in kept]))
    return IrreversibleTruthTable(in_names, o_names, tuple(rows))


def project_circuit(circuit: Circuit, rtt: ReversibleTruthTable) -> IrreversibleTruthTable:
    """Projection using the circuit's own role annotations and names."""
    return project(rtt, circuit.constants(), circuit.garbage_lines(),
                   line_names=[ln.name for ln in circuit.lines],
                   out_names=[ln.out_name for ln in circuit.lines])


# Per-gate cost convention used by the QC metric.  These are plain
# bookkeeping weights for comparing circuits, not derived quantities;
# swap any table in via the ``costs`` argument.
DEFAULT_COSTS: dict[str, int] = {
    "not": 1,
    "feynman": 1,
    "swap": 3,
    "toffoli": 5,
    "fredkin": 5,
    "frg": 5,
    "peres": 4,
    "f2g": 2,
    "nft": 5,
    "kerntopf": 5,
    "picton": 6,
}
MCT_WIDE_COST = 13   # t<k> with 3 or more controls
MCF_WIDE_COST = 15   # f<k> with 2 or more controls


@dataclass(frozen=True)
class Metrics:
    gate_count: int          # N
    constant_inputs: int     # CI
    garbage_outputs: int     # GO
    gate_levels: int         # GL
    quantum_cost: int        # QC
    unknown_cost_gates: tuple[str, ...] = ()   # counted as 1 each, flagged


def _gate_cost(name: str, costs: Mapping[str, int]) -> int | None:
    if name in costs:
        return costs[name]
    base = name.split(":", 1)[0]
    if len(base) > 1 and base[1:].isdigit():
        if base[0] == "t":
            return MCT_WIDE_COST
        if base[0] == "f":
            return MCF_WIDE_COST
    return None


def metrics(circuit: Circuit, costs: Mapping[str, int] | None = None) -> Metrics:
    costs = dict(DEFAULT_COSTS if costs is None else costs)
    qc = 0
    unknown = []
    for p in circuit.placements:
        cost = _gate_cost(p.gate.name, costs)
        if cost is None:
            cost = 1
            unknown.append(p.gate.name)
        qc += cost
    return Metrics(
        gate_count=len(circuit.placements),
        constant_inputs=len(circuit.constants()),
        garbage_outputs=len(circuit.garbage_lines()),
        gate_levels=circuit.depth,
        quantum_cost=qc,
        unknown_cost_gates=tuple(unknown),
    )
