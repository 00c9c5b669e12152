"""Interactive sessions over a fabric: configuration mode and user mode.

A session starts in Initial mode with everything inactive.  Loading a
configuration activates the fabric elements and marks the bound taps;
applying an input (or stepping with next/previous) enters User mode,
where output lines carry on/off states.  Colors are a presentation
concern; the session exposes semantic states only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import Bits, to_bits
from .errors import ConfigMismatch, WidthError
from .fabric import Configuration, Fabric, FabricEval, fabric_eval

INITIAL = "initial"
CONFIGURED = "configured"
USER = "user"

ACTIVE = "active"
INACTIVE = "inactive"
BOUND = "bound"
UNBOUND = "unbound"
ON = "on"
OFF = "off"
UNDRIVEN = "undriven"


@dataclass(frozen=True)
class RenderModel:
    """Deterministic projection of session state for any front end."""

    mode: str
    n: int
    nodes: tuple[tuple[int, str], ...]        # (node id, active|inactive)
    taps: tuple[tuple[str, str], ...]         # (tap name, bound|unbound)
    outputs: tuple[tuple[str, str], ...]      # (output name, on|off|undriven)
    input: Bits | None                        # current word in User mode
    cursor: int | None


class Session:
    """One fabric, one owner; stepping state lives here."""

    def __init__(self, fabric: Fabric):
        self.fabric = fabric
        self.mode = INITIAL
        self.config: Configuration | None = None
        self.cursor: int | None = None
        self.last_result: FabricEval | None = None

    def load_config(self, config: Configuration) -> RenderModel:
        if config.fabric.n != self.fabric.n:
            raise ConfigMismatch(
                f"configuration is for {config.fabric.n} inputs, "
                f"fabric has {self.fabric.n}")
        self.config = config
        self.mode = CONFIGURED
        self.cursor = None
        self.last_result = None
        return self.snapshot()

    def apply_input(self, word) -> RenderModel:
        if self.config is None:
            raise ConfigMismatch("load a configuration before applying inputs")
        bits = tuple(int(b) for b in word)
        if len(bits) != self.fabric.n:
            raise WidthError(f"fabric has {self.fabric.n} inputs, got {len(bits)}")
        cursor = 0
        for b in bits:
            cursor = (cursor << 1) | b
        return self._step_to(cursor)

    def next(self) -> RenderModel:
        if self.config is None:
            raise ConfigMismatch("load a configuration before stepping")
        if self.cursor is None:
            return self._step_to(0)
        return self._step_to((self.cursor + 1) % (1 << self.fabric.n))

    def prev(self) -> RenderModel:
        if self.config is None:
            raise ConfigMismatch("load a configuration before stepping")
        if self.cursor is None:
            return self._step_to((1 << self.fabric.n) - 1)
        return self._step_to((self.cursor - 1) % (1 << self.fabric.n))

    def reset(self) -> RenderModel:
        self.mode = INITIAL
        self.config = None
        self.cursor = None
        self.last_result = None
        return self.snapshot()

    def _step_to(self, cursor: int) -> RenderModel:
        self.cursor = cursor
        self.mode = USER
        assert self.config is not None
        self.last_result = fabric_eval(self.config, to_bits(cursor, self.fabric.n))
        return self.snapshot()

    def snapshot(self) -> RenderModel:
        n = self.fabric.n
        configured = self.mode != INITIAL and self.config is not None
        node_state = ACTIVE if configured else INACTIVE
        nodes = tuple((node.id, node_state) for node in self.fabric.nodes)

        bound: set[int] = set()
        if configured:
            for b in self.config.bindings:
                bound |= b.indices
        taps = tuple((f"S{k}", BOUND if k in bound else UNBOUND)
                     for k in range(1, n + 1))

        outputs: tuple[tuple[str, str], ...] = ()
        if configured:
            if self.mode == USER and self.last_result is not None:
                outputs = tuple(
                    (name, ON if v else OFF)
                    for name, v in self.last_result.outputs.items())
            else:
                outputs = tuple((b.name, UNDRIVEN) for b in self.config.bindings)

        word = (to_bits(self.cursor, n)
                if self.mode == USER and self.cursor is not None else None)
        return RenderModel(self.mode, n, nodes, taps, outputs, word, self.cursor)


def start(fabric: Fabric) -> Session:
    return Session(fabric)
