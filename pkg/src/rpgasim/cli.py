"""Command-line front end for the whole flow.

Verbs: ``tt``, ``analyze``, ``metrics``, ``check``, ``fabric``,
``configure``, ``run``, ``serve``.  Exit codes: 0 success, 2 parse
error, 3 domain error (e.g. configuring an asymmetric function).
Report verbs take ``--format text|json`` and ``--figure PATH`` to drop a
rendered figure next to the printed output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import docs
from .bits import bitstring, parse_bitstring, to_bits
from .circuit import Circuit
from .errors import FormatError, RpgaError
from .fabric import (Configuration, build, configure, fabric_eval,
                     resource_report)
from .formats import (emit_fabric_doc, emit_rtab, parse_fabric_doc,
                      parse_rcir, parse_real, parse_rtab, sniff)
from .session import Session
from .simulate import check_bijective, full_table
from .symmetry import analyze
from .tables import IrreversibleTruthTable, metrics, project_circuit

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise FormatError(f"no such file: {path}", 0, 0)
    return p.read_text()


def _load_any(path: str) -> Circuit | IrreversibleTruthTable:
    text = _read(path)
    kind = sniff(text)
    if kind == "rcir":
        return parse_rcir(text)
    if kind == "real":
        return parse_real(text, name=Path(path).stem)
    if kind == "rtab":
        return parse_rtab(text)
    raise FormatError(f"{path}: expected a circuit or truth-table file", 0, 0)


def _load_circuit(path: str) -> Circuit:
    obj = _load_any(path)
    if not isinstance(obj, Circuit):
        raise FormatError(f"{path}: expected a circuit file", 0, 0)
    return obj


def _as_table(obj: Circuit | IrreversibleTruthTable) -> IrreversibleTruthTable:
    if isinstance(obj, Circuit):
        return project_circuit(obj, full_table(obj))
    return obj


def _load_config(path: str) -> Configuration:
    doc = parse_fabric_doc(_read(path))
    if not isinstance(doc, Configuration):
        raise FormatError(f"{path}: document has no bindings; "
                          f"configure the fabric first", 0, 0)
    return doc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _save_figure(fig, path: str) -> None:
    from .render import save_figure
    save_figure(fig, path)
    print(f"figure written to {path}", file=sys.stderr)


# -- verbs ------------------------------------------------------------------

def cmd_tt(args) -> int:
    circuit = _load_circuit(args.circuit)
    rtt = full_table(circuit)
    tt = project_circuit(circuit, rtt)
    if args.format == "json":
        doc = {"circuit": docs.circuit_doc(circuit),
               "reversible": docs.reversible_table_doc(rtt),
               "irreversible": docs.irreversible_table_doc(tt)}
        print(json.dumps(doc, indent=2))
    else:
        print(f"circuit {circuit.name}: {circuit.width} lines, depth {circuit.depth}")
        print("reversible table:")
        for i, o in rtt.rows:
            print(f"  {bitstring(i)} -> {bitstring(o)}")
        print(f"irreversible table "
              f"({' '.join(tt.input_names)} -> {' '.join(tt.output_names)}):")
        for i, o in tt.rows:
            print(f"  {bitstring(i)} -> {bitstring(o)}")
    if args.figure:
        from .render import circuit_figure
        _save_figure(circuit_figure(circuit), args.figure)
    return EXIT_OK


def cmd_analyze(args) -> int:
    table = _as_table(_load_any(args.input))
    report = analyze(table)
    if args.format == "json":
        print(json.dumps(docs.symmetry_doc(report), indent=2))
    else:
        for o in report.outputs:
            if o.symmetric:
                print(f"{o.name}: symmetric {o.index_label()}")
            else:
                assert o.witness is not None
                print(f"{o.name}: asymmetric ({o.witness.describe(report.n)})")
    if args.figure:
        from .render import symmetry_figure
        _save_figure(symmetry_figure(report), args.figure)
    return EXIT_OK


def cmd_metrics(args) -> int:
    circuit = _load_circuit(args.circuit)
    m = metrics(circuit)
    if args.format == "json":
        print(json.dumps(docs.metrics_doc(m), indent=2))
    else:
        print(f"N={m.gate_count} CI={m.constant_inputs} GO={m.garbage_outputs} "
              f"GL={m.gate_levels} QC={m.quantum_cost}")
        if m.unknown_cost_gates:
            print(f"warning: default cost 1 used for "
                  f"{', '.join(sorted(set(m.unknown_cost_gates)))}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    circuit = _load_circuit(args.circuit)
    report = check_bijective(circuit)
    if report.bijective:
        print(f"bijective ({1 << circuit.width} rows checked)")
        return EXIT_OK
    a, b = report.collision or (0, 0)
    print(f"NOT bijective: inputs {a} and {b} collide")
    return EXIT_DOMAIN


def cmd_fabric(args) -> int:
    fabric = build(args.n, args.realization)
    _emit(emit_fabric_doc(fabric), args.output)
    if args.figure:
        from .render import fabric_figure
        _save_figure(fabric_figure(fabric), args.figure)
    return EXIT_OK


def cmd_configure(args) -> int:
    table = _as_table(_load_any(args.input))
    doc = parse_fabric_doc(_read(args.fabric))
    fabric = doc.fabric if isinstance(doc, Configuration) else doc
    report = analyze(table)
    config = configure(fabric, report)
    _emit(emit_fabric_doc(config), args.output)
    if args.report:
        r = resource_report(config)
        print(f"nodes={r.nodes} node_constants={r.node_constants} "
              f"node_garbage={r.node_garbage} feynman={r.feynman_gates} "
              f"copies={r.copy_gates} constants={r.total_constants} "
              f"garbage={r.total_garbage}", file=sys.stderr)
    if args.figure:
        from .render import fabric_figure
        _save_figure(fabric_figure(fabric, config), args.figure)
    return EXIT_OK


def cmd_run(args) -> int:
    config = _load_config(args.config)
    n = config.fabric.n
    if args.input is None and not args.all:
        raise RpgaError("run needs --input <bits> or --all")

    if args.all:
        rows = []
        for w in range(1 << n):
            bits = to_bits(w, n)
            result = fabric_eval(config, bits)
            rows.append((bits, result))
        if args.format == "json":
            print(json.dumps([{"input": bitstring(b), **docs.eval_doc(r)}
                              for b, r in rows], indent=2))
        else:
            for bits, result in rows:
                outs = " ".join(f"{k}={v}" for k, v in result.outputs.items())
                print(f"{bitstring(bits)} {outs}")
        if args.figure:
            from .render import run_grid_figure
            _save_figure(run_grid_figure(config), args.figure)
        return EXIT_OK

    bits = parse_bitstring(args.input)
    result = fabric_eval(config, bits)
    if args.format == "json":
        print(json.dumps(docs.eval_doc(result), indent=2))
    else:
        print(" ".join(f"{k}={v}" for k, v in result.outputs.items()))
        if args.trace:
            for label, values in result.stages:
                print(f"stage {label}: " + " ".join(map(str, values)))
            print("garbage: " + " ".join(map(str, result.garbage)))
    if args.figure:
        from .render import fabric_figure
        session = Session(config.fabric)
        session.load_config(config)
        model = session.apply_input(bits)
        _save_figure(fabric_figure(config.fabric, config, model), args.figure)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpgasim",
        description="Reversible gate-array CAD flow: truth tables, symmetry "
                    "analysis, fabric configuration and simulation.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--figure", metavar="PATH",
                       help="also render a figure to this file")

    p = sub.add_parser("tt", help="print reversible and projected truth tables")
    p.add_argument("circuit")
    fmt(p)
    p.set_defaults(func=cmd_tt)

    p = sub.add_parser("analyze", help="symmetry report for a circuit or table")
    p.add_argument("input")
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("metrics", help="design metrics N/CI/GO/GL/QC")
    p.add_argument("circuit")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("check", help="exhaustive bijectivity check")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fabric", help="generate a fabric document")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--realization", choices=("kerntopf", "picton"),
                   default="kerntopf")
    p.add_argument("-o", "--output", metavar="PATH")
    p.add_argument("--figure", metavar="PATH")
    p.set_defaults(func=cmd_fabric)

    p = sub.add_parser("configure", help="bind a symmetric table onto a fabric")
    p.add_argument("input", help="truth table or circuit file")
    p.add_argument("--fabric", required=True, metavar="DOC")
    p.add_argument("-o", "--output", metavar="PATH")
    p.add_argument("--figure", metavar="PATH")
    p.add_argument("--report", action="store_true",
                   help="print the resource report to stderr")
    p.set_defaults(func=cmd_configure)

    p = sub.add_parser("run", help="evaluate a configured fabric")
    p.add_argument("config")
    p.add_argument("--input", metavar="BITS")
    p.add_argument("--all", action="store_true")
    p.add_argument("--trace", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("serve", help="start the API server")
    p.add_argument("--port", type=int, default=8123)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except RpgaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
