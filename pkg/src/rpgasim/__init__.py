"""Reversible programmable gate-array toolkit.

Design entry of reversible circuits, truth-table generation and
projection, symmetry analysis, MAX/MIN fabric generation, configuration
and interactive simulation.
"""

from .bits import from_bits, parse_bitstring, to_bits, weight
from .circuit import Circuit, Line, Placement, new_circuit
from .errors import (BadWidth, ConfigMismatch, FormatError, GateTooWide,
                     MalformedTable, NoOutputs, NotSymmetric, PinClash,
                     RpgaError, SlotConflict, TooWide, UnknownGate, WidthError)
from .fabric import (Binding, Configuration, Fabric, MaxMinNode,
                     ResourceReport, build, configure, configure_sets,
                     fabric_eval, maxmin_eval, resource_report, to_circuit)
from .gates import (BUILTIN_NAMES, GateClass, GateDef, apply, builtin,
                    classify, gate_from_token, mcf, mct)
from .session import RenderModel, Session, start
from .simulate import (BijectivityReport, Trace, check_bijective, eval,
                       eval_word, full_table, trace)
from .symmetry import (OutputSymmetry, SymmetryReport, Witness, analyze,
                       brute_force_symmetric, indices_to_function)
from .tables import (IrreversibleTruthTable, Metrics, ReversibleTruthTable,
                     make_table, metrics, project, project_circuit)

__version__ = "0.1.0"
