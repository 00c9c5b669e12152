"""The reversible programmable gate-array fabric.

Structure
---------
The fabric has an input plane of n lines, a triangular plane of MAX/MIN
nodes, and an XOR/copy plane of Feynman gates.

The triangle is an adjacent-pair comparator network (the insertion-order
triangle: column i sifts input i+1 into the already-sorted prefix), with
every comparator emitting max on its upper rail and min on its lower
rail.  Sorting the input bits descending leaves rail k-1 carrying the
threshold function T_k = [weight >= k]; the thresholds are pointwise
sorted T_1 >= ... >= T_n.  A column of Feynman gates then folds
neighbouring thresholds into the one-hot single-index functions
S_k = T_k xor T_{k+1} (S_n = T_n), and S_0 = not T_1 covers the
all-zero input as an extension.

Each MAX/MIN node is realized by reversible gates: a Kerntopf gate with
its third input tied to 1 (one constant, one garbage wire per node), or a
cascade of two Picton gates with constants 0 and 1 (two constants, two
garbage wires per node).  Copy gates are Feynman gates with a constant-0
target, used wherever a tap feeds more than one consumer.

Configuring the fabric binds named outputs to weight-index sets: output O
with index set K is accumulated on a fresh constant-0 line as the XOR of
the S_k taps, which equals [weight(input) in K] because the S_k are
disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .bits import Bits, from_bits, to_bits
from .circuit import Circuit, Line, Placement
from .errors import BadWidth, ConfigMismatch, NotSymmetric, WidthError
from .gates import builtin
from .symmetry import SymmetryReport

FABRIC_CAP = 12

KERNTOPF = "kerntopf"
PICTON = "picton"
REALIZATIONS = (KERNTOPF, PICTON)

_kerntopf = builtin("kerntopf")
_picton = builtin("picton")
_feynman = builtin("feynman")
_not = builtin("not")


def maxmin_eval(a: int, b: int, realization: str) -> tuple[int, int, tuple[int, ...]]:
    """Evaluate one MAX/MIN node through its actual gate realization.

    Returns (max, min, garbage bits).  The Kerntopf form applies one gate
    with C = 1; the Picton form cascades two gates seeded with constants
    0 and 1, routing the comparison flags back as selector controls.
    """
    if realization == KERNTOPF:
        p, q, r = to_bits(_kerntopf.apply_word(from_bits((a, b, 1))), 3)
        return p, q, (r,)
    if realization == PICTON:
        _, _, g0, g1 = to_bits(_picton.apply_word(from_bits((a, b, 0, 1))), 4)
        _, _, mx, mn = to_bits(_picton.apply_word(from_bits((g1, g0, a, b))), 4)
        return mx, mn, (g0, g1)
    raise ValueError(f"unknown realization {realization!r}")


@dataclass(frozen=True)
class MaxMinNode:
    id: int
    level: int                      # triangle column = index of the sifted input
    upper: int                      # upper rail index; lower rail is upper + 1
    in_names: tuple[str, str]       # wire segments feeding the node
    max_name: str
    min_name: str
    garbage_names: tuple[str, ...]


@dataclass(frozen=True)
class Fabric:
    n: int
    realization: str
    nodes: tuple[MaxMinNode, ...]

    @property
    def threshold_names(self) -> tuple[str, ...]:
        return tuple(f"T{k}" for k in range(1, self.n + 1))

    @property
    def single_index_names(self) -> tuple[str, ...]:
        return tuple(f"S{k}" for k in range(1, self.n + 1))

    def thresholds(self, input: Sequence[int]) -> tuple[Bits, Bits]:
        """Run the triangle: (T_1..T_n, per-node garbage bits)."""
        if len(input) != self.n:
            raise WidthError(f"fabric has {self.n} inputs, got {len(input)}")
        rails = list(input)
        garbage: list[int] = []
        for node in self.nodes:
            mx, mn, g = maxmin_eval(rails[node.upper], rails[node.upper + 1],
                                    self.realization)
            rails[node.upper] = mx
            rails[node.upper + 1] = mn
            garbage.extend(g)
        return tuple(rails), tuple(garbage)

    def single_index(self, input: Sequence[int]) -> tuple[Bits, Bits]:
        """(S_0..S_n, node garbage); exactly one S entry is 1."""
        t, garbage = self.thresholds(input)
        padded = (1,) + t + (0,)    # T_0 = 1 above, T_{n+1} = 0 below
        s = tuple(padded[k] ^ padded[k + 1] for k in range(self.n + 1))
        return s, garbage


def build(n: int, realization: str = KERNTOPF) -> Fabric:
    """Generate the n-input fabric and self-check its taps.

    The triangle has n(n-1)/2 nodes.  For n <= 8 every threshold tap is
    verified exhaustively against the weight definition at build time.
    """
    if not 1 <= n <= FABRIC_CAP:
        raise BadWidth(f"fabric width must be in 1..{FABRIC_CAP}, got {n}")
    if realization not in REALIZATIONS:
        raise ValueError(f"realization must be one of {REALIZATIONS}")

    rail_names = [f"x{i + 1}" for i in range(n)]
    nodes = []
    gid = 0
    for level in range(1, n):
        for upper in range(level - 1, -1, -1):
            g = (f"n{gid}.g",) if realization == KERNTOPF else (f"n{gid}.g0", f"n{gid}.g1")
            nodes.append(MaxMinNode(
                id=gid, level=level, upper=upper,
                in_names=(rail_names[upper], rail_names[upper + 1]),
                max_name=f"n{gid}.max", min_name=f"n{gid}.min",
                garbage_names=g,
            ))
            rail_names[upper] = f"n{gid}.max"
            rail_names[upper + 1] = f"n{gid}.min"
            gid += 1
    fabric = Fabric(n, realization, tuple(nodes))

    if n <= 8:
        for word in range(1 << n):
            bits = to_bits(word, n)
            t, _ = fabric.thresholds(bits)
            wt = sum(bits)
            expect = tuple(1 if wt >= k else 0 for k in range(1, n + 1))
            if t != expect:
                raise RuntimeError(f"fabric self-check failed on input {bits}")
    return fabric


@dataclass(frozen=True)
class Binding:
    name: str
    indices: frozenset[int]
    line: str                       # XOR accumulation line identifier


@dataclass(frozen=True)
class Configuration:
    fabric: Fabric
    bindings: tuple[Binding, ...]

    @property
    def n(self) -> int:
        return self.fabric.n

    def index_sets(self) -> dict[str, frozenset[int]]:
        return {b.name: b.indices for b in self.bindings}

    def tap_consumers(self) -> dict[int, int]:
        """How many bindings read each single-index tap."""
        uses: dict[int, int] = {}
        for b in self.bindings:
            for k in b.indices:
                uses[k] = uses.get(k, 0) + 1
        return uses

    def uses_index0(self) -> bool:
        return any(0 in b.indices for b in self.bindings)


def configure_sets(fabric: Fabric, sets: Mapping[str, Iterable[int]]) -> Configuration:
    """Bind outputs directly from name -> weight-index-set pairs."""
    bindings = []
    for i, (name, ks) in enumerate(sets.items()):
        indices = frozenset(ks)
        bad = [k for k in indices if not 0 <= k <= fabric.n]
        if bad:
            raise ConfigMismatch(f"output {name}: index {bad[0]} outside 0..{fabric.n}")
        bindings.append(Binding(name, indices, f"acc{i + 1}"))
    return Configuration(fabric, tuple(bindings))


def configure(fabric: Fabric, report: SymmetryReport) -> Configuration:
    """Bind every output of a fully symmetric report onto the fabric."""
    if report.n != fabric.n:
        raise ConfigMismatch(f"report is for {report.n} inputs, fabric has {fabric.n}")
    bad = [o for o in report.outputs if not o.symmetric]
    if bad:
        first = bad[0]
        detail = f" (witness {first.witness.describe(report.n)})" if first.witness else ""
        raise NotSymmetric(
            f"output {first.name} is not totally symmetric{detail}; "
            f"the fabric realizes symmetric functions only")
    return configure_sets(fabric, {o.name: o.index_set for o in report.outputs})


@dataclass(frozen=True)
class FabricEval:
    outputs: dict[str, int]
    stages: tuple[tuple[str, Bits], ...]
    garbage: Bits


def fabric_eval(config: Configuration, input: Sequence[int]) -> FabricEval:
    """Apply one input word: named output bits plus per-stage snapshots."""
    fabric = config.fabric
    if len(input) != fabric.n:
        raise WidthError(f"fabric has {fabric.n} inputs, got {len(input)}")
    bits = tuple(int(b) for b in input)
    t, garbage = fabric.thresholds(bits)
    s, _ = fabric.single_index(bits)
    outs = {b.name: _xor_over(s, b.indices) for b in config.bindings}
    stages = (
        ("inputs", bits),
        ("thresholds", t),
        ("single_index", s[1:]),
        ("outputs", tuple(outs.values())),
    )
    return FabricEval(outs, stages, garbage)


def _xor_over(s: Sequence[int], indices: frozenset[int]) -> int:
    value = 0
    for k in indices:
        value ^= s[k]
    return value


@dataclass(frozen=True)
class ResourceReport:
    nodes: int
    node_constants: int
    node_garbage: int
    feynman_gates: int       # single-index column plus accumulation feeds
    copy_gates: int          # extra Feynman copies for multiply-used taps
    accumulators: int        # one constant-0 line per bound output
    total_constants: int
    total_garbage: int
    index0_extension: bool   # a binding used weight 0 (inverted T_1 copy)


def resource_report(config: Configuration | Fabric) -> ResourceReport:
    if isinstance(config, Fabric):
        config = Configuration(config, ())
    fabric = config.fabric
    n = fabric.n
    nodes = len(fabric.nodes)
    per_node = 1 if fabric.realization == KERNTOPF else 2
    node_constants = nodes * per_node
    node_garbage = nodes * per_node

    uses = config.tap_consumers()
    index0 = config.uses_index0()
    copy_gates = sum(max(0, c - 1) for c in uses.values())
    if index0:
        copy_gates += 1      # T_1 must be copied out before the XOR column eats it
    feeds = sum(len(b.indices) for b in config.bindings)
    accumulators = len(config.bindings)

    total_constants = node_constants + copy_gates + accumulators
    total_wires = n + total_constants
    total_garbage = total_wires - accumulators
    return ResourceReport(
        nodes=nodes,
        node_constants=node_constants,
        node_garbage=node_garbage,
        feynman_gates=(n - 1) + feeds,
        copy_gates=copy_gates,
        accumulators=accumulators,
        total_constants=total_constants,
        total_garbage=total_garbage,
        index0_extension=index0,
    )


def to_circuit(config: Configuration | Fabric, name: str | None = None) -> Circuit:
    """Expand the fabric (and bindings, if configured) into library gates.

    The resulting netlist is an ordinary reversible circuit: rails 0..n-1
    are the inputs, every constant feeding a node, copy or accumulator is
    a dedicated tied-off line, and only accumulation lines are primary
    outputs.  Simulating it and projecting away constants/garbage must
    reproduce the configured functions; that equivalence is the
    cross-check for the direct evaluator.
    """
    if isinstance(config, Fabric):
        config = Configuration(config, ())
    fabric = config.fabric
    n = fabric.n

    lines: list[Line] = [Line(i, f"x{i + 1}", garbage=True) for i in range(n)]
    placements: list[Placement] = []
    slot = 0

    def add_line(name: str, constant: int, out_name: str | None = None) -> int:
        idx = len(lines)
        lines.append(Line(idx, name, constant=constant,
                          garbage=out_name is None, out_name=out_name))
        return idx

    def place(gate, pins) -> None:
        nonlocal slot
        placements.append(Placement(slot, gate, tuple(pins)))
        slot += 1

    # triangular plane
    for node in fabric.nodes:
        j = node.upper
        if fabric.realization == KERNTOPF:
            c = add_line(f"n{node.id}.c", 1)
            place(_kerntopf, (j, j + 1, c))
        else:
            c0 = add_line(f"n{node.id}.c0", 0)
            c1 = add_line(f"n{node.id}.c1", 1)
            place(_picton, (j, j + 1, c0, c1))
            place(_picton, (c1, c0, j, j + 1))

    # weight-0 tap: copy T_1 off rail 0, then invert the copy
    tap_line: dict[int, int] = {}
    if config.uses_index0():
        s0 = add_line("s0", 0)
        place(_feynman, (0, s0))
        place(_not, (s0,))
        tap_line[0] = s0

    # XOR column folds rails into single-index taps: rail k-1 becomes S_k
    for k in range(1, n):
        place(_feynman, (k, k - 1))
    for k in range(1, n + 1):
        tap_line[k] = k - 1

    # copies for taps consumed by more than one binding
    uses = config.tap_consumers()
    feed_wires: dict[int, list[int]] = {}
    for k in sorted(uses):
        wires = [tap_line[k]]
        for extra in range(uses[k] - 1):
            cp = add_line(f"cp{k}.{extra}", 0)
            place(_feynman, (tap_line[k], cp))
            wires.append(cp)
        feed_wires[k] = wires

    # one XOR accumulation line per bound output
    taken: dict[int, int] = {}
    for binding in config.bindings:
        acc = add_line(binding.line, 0, out_name=binding.name)
        for k in sorted(binding.indices):
            use = taken.get(k, 0)
            taken[k] = use + 1
            place(_feynman, (feed_wires[k][use], acc))

    circuit_name = name or f"{fabric.realization}-fabric-{n}"
    return Circuit(tuple(lines), tuple(placements), name=circuit_name)
