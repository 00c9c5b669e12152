"""Bit-exact parsers and emitters for the toolkit's file formats.

Native circuit text (``.rcir``)::

    lines <n>
    circuit <name>           # optional
    name <line> <ident>      # optional, per line
    constant <line> <0|1>    # optional
    garbage <line>           # optional
    output <line> <ident>    # optional primary-output label
    slot <s> <gate> <pins..> # one placement per line

Benchmark subset (``.real``)::

    .version/.numvars/.variables/.inputs/.outputs/.constants/.garbage
    .begin ... .end with gate tokens t<k> (multi-control Toffoli) and
    f<k> (multi-control Fredkin); pins are variable names.

Truth-table text (``.rtab``)::

    inputs <n> outputs <m>
    names <in..> -> <out..>  # optional
    <bits> -> <bits>         # all 2^n rows, ascending

Fabric documents are JSON with fields n, realization, nodes[], taps{},
bindings[].  All formats treat ``#`` as a line comment and are
whitespace-insensitive; every format is round-trip stable.
"""

from __future__ import annotations

import json
import re
from typing import Iterator

from .bits import bitstring
from .circuit import Circuit, new_circuit
from .errors import FormatError, RpgaError
from .fabric import (Binding, Configuration, Fabric, REALIZATIONS, build)
from .gates import gate_from_token
from .tables import (IrreversibleTruthTable, default_input_names,
                     default_output_names)

_TOKEN = re.compile(r"\S+")


def _lines_with_tokens(text: str) -> Iterator[tuple[int, list[tuple[str, int]]]]:
    """Yield (line number, [(token, column)]) for non-empty lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if tokens:
            yield lineno, tokens


def _int_token(tok: str, lineno: int, col: int, what: str) -> int:
    if not tok.lstrip("-").isdigit():
        raise FormatError(f"{what} must be an integer, got {tok!r}", lineno, col)
    return int(tok)


# --------------------------------------------------------------------------
# native circuit format

def parse_rcir(text: str) -> Circuit:
    circuit: Circuit | None = None
    name = "circuit"
    names: dict[int, str] = {}
    constants: dict[int, int] = {}
    garbage: set[int] = set()
    out_names: dict[int, str] = {}
    placements: list[tuple[int, str, list[int], int, int]] = []

    for lineno, tokens in _lines_with_tokens(text):
        key, col = tokens[0]
        args = tokens[1:]
        if circuit is None:
            if key != "lines":
                raise FormatError(f"got {key!r}", lineno, col, expected="lines <n>")
            if len(args) != 1:
                raise FormatError("lines takes one argument", lineno, col)
            n = _int_token(args[0][0], lineno, args[0][1], "line count")
            try:
                circuit = new_circuit(n)
            except RpgaError as e:
                raise FormatError(str(e), lineno, args[0][1]) from e
            continue
        if key == "circuit" and len(args) == 1:
            name = args[0][0]
        elif key == "name" and len(args) == 2:
            idx = _int_token(args[0][0], lineno, args[0][1], "line index")
            names[idx] = args[1][0]
        elif key == "constant" and len(args) == 2:
            idx = _int_token(args[0][0], lineno, args[0][1], "line index")
            val = _int_token(args[1][0], lineno, args[1][1], "constant value")
            if val not in (0, 1):
                raise FormatError("constant must be 0 or 1", lineno, args[1][1])
            constants[idx] = val
        elif key == "garbage" and len(args) == 1:
            garbage.add(_int_token(args[0][0], lineno, args[0][1], "line index"))
        elif key == "output" and len(args) == 2:
            idx = _int_token(args[0][0], lineno, args[0][1], "line index")
            out_names[idx] = args[1][0]
        elif key == "slot":
            if len(args) < 2:
                raise FormatError("slot needs an index and a gate", lineno, col)
            s = _int_token(args[0][0], lineno, args[0][1], "slot index")
            gate_tok = args[1][0]
            pins = [_int_token(t, lineno, c, "pin") for t, c in args[2:]]
            placements.append((s, gate_tok, pins, lineno, args[1][1]))
        else:
            raise FormatError(f"unknown directive {key!r}", lineno, col)

    if circuit is None:
        raise FormatError("empty circuit file", 0, 0, expected="lines <n>")

    try:
        line_names = [names.get(i, f"x{i + 1}") for i in range(circuit.width)]
        circuit = circuit.with_names(line_names, out_names)
        circuit = circuit.with_roles(constants, garbage).renamed(name)
    except (RpgaError, IndexError) as e:
        raise FormatError(str(e), 0, 0) from e
    for s, gate_tok, pins, lineno, col in placements:
        try:
            gate = gate_from_token(gate_tok)
            circuit = circuit.place(s, gate, pins)
        except FormatError:
            raise
        except RpgaError as e:
            raise FormatError(str(e), lineno, col) from e
    return circuit


def emit_rcir(circuit: Circuit) -> str:
    out = [f"lines {circuit.width}"]
    if circuit.name != "circuit":
        out.append(f"circuit {circuit.name}")
    for ln in circuit.lines:
        if ln.name != f"x{ln.index + 1}":
            out.append(f"name {ln.index} {ln.name}")
    for ln in circuit.lines:
        if ln.constant is not None:
            out.append(f"constant {ln.index} {ln.constant}")
    for ln in circuit.lines:
        if ln.garbage:
            out.append(f"garbage {ln.index}")
    for ln in circuit.lines:
        if ln.out_name is not None:
            out.append(f"output {ln.index} {ln.out_name}")
    for p in circuit.placements:
        pins = " ".join(str(pin) for pin in p.pins)
        out.append(f"slot {p.slot} {p.gate.name} {pins}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# benchmark subset

_REAL_GATE = re.compile(r"^([tf])(\d+)$")


def parse_real(text: str, name: str = "circuit") -> Circuit:
    numvars: int | None = None
    variables: list[str] = []
    outputs: list[str] = []
    constants_str = garbage_str = None
    gates: list[tuple[str, list[str], int, int]] = []
    in_body = ended = False

    for lineno, tokens in _lines_with_tokens(text):
        key, col = tokens[0]
        args = tokens[1:]
        if ended:
            raise FormatError(f"content after .end: {key!r}", lineno, col)
        if key == ".end":
            ended = True
        elif in_body:
            gates.append((key, [t for t, _ in args], lineno, col))
        elif key == ".version":
            pass
        elif key == ".numvars":
            if len(args) != 1:
                raise FormatError(".numvars takes one argument", lineno, col)
            numvars = _int_token(args[0][0], lineno, args[0][1], "variable count")
        elif key == ".variables":
            variables = [t for t, _ in args]
        elif key == ".inputs":
            pass                          # informational; roles come from .constants
        elif key == ".outputs":
            outputs = [t for t, _ in args]
        elif key == ".constants":
            constants_str = args[0][0] if args else ""
        elif key == ".garbage":
            garbage_str = args[0][0] if args else ""
        elif key == ".begin":
            in_body = True
        else:
            raise FormatError(f"unsupported token {key!r}", lineno, col)

    if numvars is None:
        raise FormatError("missing .numvars", 0, 0)
    if not variables:
        variables = [f"x{i + 1}" for i in range(numvars)]
    if len(variables) != numvars:
        raise FormatError(f".variables lists {len(variables)} names, "
                          f".numvars says {numvars}", 0, 0)
    var_index = {v: i for i, v in enumerate(variables)}

    constants: dict[int, int] = {}
    if constants_str:
        if len(constants_str) != numvars:
            raise FormatError(".constants length must equal .numvars", 0, 0)
        for i, c in enumerate(constants_str):
            if c in "01":
                constants[i] = int(c)
            elif c != "-":
                raise FormatError(f"bad .constants character {c!r}", 0, 0)
    garbage: set[int] = set()
    if garbage_str:
        if len(garbage_str) != numvars:
            raise FormatError(".garbage length must equal .numvars", 0, 0)
        for i, c in enumerate(garbage_str):
            if c == "1":
                garbage.add(i)
            elif c != "-":
                raise FormatError(f"bad .garbage character {c!r}", 0, 0)
    out_names: dict[int, str] = {}
    if outputs:
        if len(outputs) != numvars:
            raise FormatError(".outputs must list one name per line", 0, 0)
        for i, o in enumerate(outputs):
            if i not in garbage:
                out_names[i] = o

    circuit = (new_circuit(numvars, name=name)
               .with_names(variables, out_names)
               .with_roles(constants, garbage))
    for slot, (tok, pin_names, lineno, col) in enumerate(gates):
        m = _REAL_GATE.match(tok)
        if not m:
            raise FormatError(f"unsupported token {tok!r}", lineno, col)
        k = int(m.group(2))
        if len(pin_names) != k:
            raise FormatError(f"{tok} needs {k} pins, got {len(pin_names)}",
                              lineno, col)
        try:
            gate = gate_from_token(tok)
            pins = []
            for v in pin_names:
                if v not in var_index:
                    raise FormatError(f"unknown variable {v!r}", lineno, col)
                pins.append(var_index[v])
            circuit = circuit.place(slot, gate, pins)
        except FormatError:
            raise
        except RpgaError as e:
            raise FormatError(str(e), lineno, col) from e
    return circuit


# --------------------------------------------------------------------------
# truth-table text

def parse_rtab(text: str) -> IrreversibleTruthTable:
    n = m = None
    in_names: tuple[str, ...] | None = None
    out_names: tuple[str, ...] | None = None
    rows: list[int] = []

    for lineno, tokens in _lines_with_tokens(text):
        key, col = tokens[0]
        if n is None:
            words = [t for t, _ in tokens]
            if len(words) != 4 or words[0] != "inputs" or words[2] != "outputs":
                raise FormatError("bad header", lineno, col,
                                  expected="inputs <n> outputs <m>")
            n = _int_token(words[1], lineno, tokens[1][1], "input count")
            m = _int_token(words[3], lineno, tokens[3][1], "output count")
            if n < 1 or m < 1:
                raise FormatError("counts must be positive", lineno, col)
            continue
        if key == "names" and in_names is None and not rows:
            words = [t for t, _ in tokens[1:]]
            if "->" not in words:
                raise FormatError("names line needs '->'", lineno, col)
            sep = words.index("->")
            ins, outs = words[:sep], words[sep + 1:]
            if len(ins) != n or len(outs) != m:
                raise FormatError(f"names must list {n} inputs and {m} outputs",
                                  lineno, col)
            in_names, out_names = tuple(ins), tuple(outs)
            continue
        words = [t for t, _ in tokens]
        if len(words) != 3 or words[1] != "->":
            raise FormatError("bad row", lineno, col, expected="<bits> -> <bits>")
        in_tok, out_tok = words[0], words[2]
        if len(in_tok) != n or any(c not in "01" for c in in_tok):
            raise FormatError(f"input must be {n} bits", lineno, col)
        if len(out_tok) != m or any(c not in "01" for c in out_tok):
            raise FormatError(f"output must be {m} bits", lineno, tokens[2][1])
        word = int(in_tok, 2)
        if word != len(rows):
            if word < len(rows):
                raise FormatError(f"row {in_tok} is out of order or duplicated",
                                  lineno, col)
            missing = format(len(rows), f"0{n}b")
            raise FormatError(f"missing row for input {missing}", lineno, col)
        rows.append(int(out_tok, 2))

    if n is None:
        raise FormatError("empty table file", 0, 0, expected="inputs <n> outputs <m>")
    if len(rows) != 1 << n:
        missing = format(len(rows), f"0{n}b")
        raise FormatError(f"missing row for input {missing}", 0, 0)
    return IrreversibleTruthTable(
        in_names or default_input_names(n),
        out_names or default_output_names(m),
        tuple(rows))


def emit_rtab(tt: IrreversibleTruthTable) -> str:
    out = [f"inputs {tt.n} outputs {tt.m}",
           "names " + " ".join(tt.input_names) + " -> " + " ".join(tt.output_names)]
    for ins, outs in tt.rows:
        out.append(f"{bitstring(ins)} -> {bitstring(outs)}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# fabric documents (JSON)

def emit_fabric_doc(obj: Fabric | Configuration) -> str:
    config = obj if isinstance(obj, Configuration) else Configuration(obj, ())
    fabric = config.fabric
    doc = {
        "kind": "configuration" if config.bindings else "fabric",
        "n": fabric.n,
        "realization": fabric.realization,
        "nodes": [
            {
                "id": node.id,
                "level": node.level,
                "in": list(node.in_names),
                "max_out": node.max_name,
                "min_out": node.min_name,
                "garbage": list(node.garbage_names),
            }
            for node in fabric.nodes
        ],
        "taps": {"T": list(fabric.threshold_names),
                 "S": list(fabric.single_index_names)},
        "bindings": [
            {"name": b.name, "K": sorted(b.indices), "line": b.line}
            for b in config.bindings
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_fabric_doc(text: str) -> Fabric | Configuration:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object", 0, 0)

    n = doc.get("n")
    realization = doc.get("realization")
    if not isinstance(n, int):
        raise FormatError("field 'n' must be an integer", 0, 0)
    if realization not in REALIZATIONS:
        raise FormatError(f"realization must be one of {REALIZATIONS}", 0, 0)
    try:
        fabric = build(n, realization)
    except RpgaError as e:
        raise FormatError(str(e), 0, 0) from e

    want_nodes = json.loads(emit_fabric_doc(fabric))["nodes"]
    if "nodes" in doc and doc["nodes"] != want_nodes:
        raise FormatError("node records do not match the generated structure", 0, 0)

    bindings = []
    for i, b in enumerate(doc.get("bindings") or []):
        if not isinstance(b, dict) or "name" not in b or "K" not in b:
            raise FormatError(f"binding {i}: need fields name and K", 0, 0)
        ks = b["K"]
        if (not isinstance(ks, list)
                or any(not isinstance(k, int) for k in ks)):
            raise FormatError(f"binding {b['name']}: K must be a list of integers", 0, 0)
        bad = [k for k in ks if not 0 <= k <= n]
        if bad:
            raise FormatError(
                f"binding {b['name']}: index {bad[0]} out of range 0..{n}", 0, 0)
        bindings.append(Binding(str(b["name"]), frozenset(ks),
                                str(b.get("line") or f"acc{i + 1}")))

    kind = doc.get("kind")
    if kind == "fabric" and bindings:
        raise FormatError("kind 'fabric' must not carry bindings", 0, 0)
    if bindings or kind == "configuration":
        return Configuration(fabric, tuple(bindings))
    return fabric


# --------------------------------------------------------------------------
# sniffing

def sniff(text: str) -> str:
    """Guess the format of a file body: rcir, real, rtab or fabric."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "fabric"
    for _, tokens in _lines_with_tokens(text):
        head = tokens[0][0]
        if head == "lines":
            return "rcir"
        if head.startswith("."):
            return "real"
        if head == "inputs":
            return "rtab"
        break
    raise FormatError("cannot determine file format", 1, 1)
