"""JSON document builders shared by the CLI and the API server.

Every structured response is produced here so the two front ends can
never drift apart.
"""

from __future__ import annotations

from .bits import bitstring
from .circuit import Circuit
from .fabric import FabricEval
from .session import RenderModel
from .symmetry import SymmetryReport
from .tables import IrreversibleTruthTable, Metrics, ReversibleTruthTable


def circuit_doc(circuit: Circuit) -> dict:
    return {
        "name": circuit.name,
        "width": circuit.width,
        "depth": circuit.depth,
        "lines": [
            {
                "index": ln.index,
                "name": ln.name,
                "constant": ln.constant,
                "garbage": ln.garbage,
                "out_name": ln.out_name,
            }
            for ln in circuit.lines
        ],
        "placements": [
            {"slot": p.slot, "gate": p.gate.name, "arity": p.gate.arity,
             "pins": list(p.pins)}
            for p in circuit.placements
        ],
    }


def reversible_table_doc(rtt: ReversibleTruthTable) -> dict:
    return {
        "width": rtt.width,
        "rows": [{"in": bitstring(i), "out": bitstring(o)} for i, o in rtt.rows],
    }


def irreversible_table_doc(tt: IrreversibleTruthTable) -> dict:
    return {
        "inputs": list(tt.input_names),
        "outputs": list(tt.output_names),
        "rows": [{"in": bitstring(i), "out": bitstring(o)} for i, o in tt.rows],
    }


def symmetry_doc(report: SymmetryReport) -> dict:
    outs = []
    for o in report.outputs:
        entry: dict = {"name": o.name, "symmetric": o.symmetric}
        if o.symmetric:
            entry["value_vector"] = list(o.value_vector or ())
            entry["index_set"] = sorted(o.index_set or ())
            entry["label"] = o.index_label()
        else:
            assert o.witness is not None
            entry["witness"] = {
                "a": {"input": format(o.witness.row_a, f"0{report.n}b"),
                      "value": o.witness.value_a},
                "b": {"input": format(o.witness.row_b, f"0{report.n}b"),
                      "value": o.witness.value_b},
            }
        outs.append(entry)
    return {"n": report.n, "all_symmetric": report.all_symmetric, "outputs": outs}


def metrics_doc(m: Metrics) -> dict:
    doc = {
        "gate_count": m.gate_count,
        "constant_inputs": m.constant_inputs,
        "garbage_outputs": m.garbage_outputs,
        "gate_levels": m.gate_levels,
        "quantum_cost": m.quantum_cost,
    }
    if m.unknown_cost_gates:
        doc["unknown_cost_gates"] = list(m.unknown_cost_gates)
    return doc


def eval_doc(result: FabricEval) -> dict:
    return {
        "outputs": dict(result.outputs),
        "stages": [{"stage": label, "values": list(vals)}
                   for label, vals in result.stages],
        "garbage": list(result.garbage),
    }


def render_model_doc(model: RenderModel) -> dict:
    return {
        "mode": model.mode,
        "n": model.n,
        "nodes": [{"id": i, "state": s} for i, s in model.nodes],
        "taps": [{"name": n, "state": s} for n, s in model.taps],
        "outputs": [{"name": n, "state": s} for n, s in model.outputs],
        "input": bitstring(model.input) if model.input is not None else None,
        "cursor": model.cursor,
    }
