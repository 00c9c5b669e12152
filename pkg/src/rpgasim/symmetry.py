"""Symmetry analysis of irreversible truth tables.

A function is totally symmetric when its value depends only on the input
Hamming weight.  The analyzer buckets rows by weight: each output column
is symmetric iff every bucket is constant, and the bucket values form the
weight-indexed value vector A[0..n].  The set K of weights with A[w] = 1
addresses the function on the fabric (S with indices K).

``brute_force_symmetric`` is the independent oracle: total symmetry is
equivalent to invariance under every transposition of two input columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bits import to_bits, weight
from .tables import IrreversibleTruthTable, default_input_names, make_table


@dataclass(frozen=True)
class Witness:
    """Two same-weight rows on which the output disagrees."""

    row_a: int
    row_b: int
    value_a: int
    value_b: int

    def describe(self, n: int) -> str:
        a = format(self.row_a, f"0{n}b")
        b = format(self.row_b, f"0{n}b")
        return f"{a} -> {self.value_a} vs {b} -> {self.value_b}"


@dataclass(frozen=True)
class OutputSymmetry:
    name: str
    symmetric: bool
    value_vector: tuple[int, ...] | None = None   # A[0..n], present iff symmetric
    index_set: frozenset[int] | None = None       # K = {w : A[w] = 1}
    witness: Witness | None = None                # present iff asymmetric

    def index_label(self) -> str:
        if not self.symmetric:
            return "asymmetric"
        ks = sorted(self.index_set or ())
        return "S{" + ",".join(str(k) for k in ks) + "}"


@dataclass(frozen=True)
class SymmetryReport:
    n: int
    outputs: tuple[OutputSymmetry, ...]

    @property
    def all_symmetric(self) -> bool:
        return all(o.symmetric for o in self.outputs)

    def index_sets(self) -> dict[str, frozenset[int]]:
        if not self.all_symmetric:
            raise ValueError("report contains asymmetric outputs")
        return {o.name: o.index_set for o in self.outputs}   # type: ignore[misc]


def analyze(tt: IrreversibleTruthTable) -> SymmetryReport:
    """Per-output verdicts with value vector / index set or a witness."""
    n = tt.n
    results = []
    for j, name in enumerate(tt.output_names):
        column = tt.output_column(j)
        vector: list[int | None] = [None] * (n + 1)
        first_row = [0] * (n + 1)
        verdict: OutputSymmetry | None = None
        for row, value in enumerate(column):
            w = weight(row)
            if vector[w] is None:
                vector[w] = value
                first_row[w] = row
            elif vector[w] != value:
                verdict = OutputSymmetry(
                    name, False,
                    witness=Witness(first_row[w], row, vector[w], value))
                break
        if verdict is None:
            values = tuple(int(v) for v in vector)   # complete table fills all weights
            verdict = OutputSymmetry(
                name, True,
                value_vector=values,
                index_set=frozenset(w for w, v in enumerate(values) if v),
            )
        results.append(verdict)
    return SymmetryReport(n, tuple(results))


def brute_force_symmetric(tt: IrreversibleTruthTable, output_index: int,
                          max_inputs: int = 10) -> bool:
    """Oracle: check invariance of one output under all input transpositions."""
    n = tt.n
    if n > max_inputs:
        raise ValueError(f"brute-force check capped at {max_inputs} inputs")
    column = tt.output_column(output_index)
    for p, q in combinations(range(n), 2):
        pp, qq = n - 1 - p, n - 1 - q
        for row in range(1 << n):
            bp = (row >> pp) & 1
            bq = (row >> qq) & 1
            if bp == bq:
                continue
            swapped = row ^ (1 << pp) ^ (1 << qq)
            if column[row] != column[swapped]:
                return False
    return True


def indices_to_function(n: int, K) -> IrreversibleTruthTable:
    """The symmetric function that is 1 exactly on input weights in K."""
    ks = set(K)
    if any(not 0 <= k <= n for k in ks):
        raise ValueError(f"weight indices must lie in 0..{n}")
    rows = [(to_bits(w, n), (1 if weight(w) in ks else 0,))
            for w in range(1 << n)]
    return make_table(rows, input_names=default_input_names(n),
                      output_names=("out1",))
