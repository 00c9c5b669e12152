"""Reversible gate library.

Every gate is stored as an explicit bijection on k-bit words: entry ``i``
of ``mapping`` is the output word produced by input word ``i``.  Words put
line 0 in the most significant bit, so a mapping entry reads exactly like
a printed truth-table row.

The built-in set covers the classic reversible gates (NOT, Feynman/CNOT,
Toffoli, Fredkin, Peres, swap), the fault-tolerant trio (FRG, F2G, NFT)
and the two MAX/MIN building blocks (Picton, Kerntopf).  Parametric
multi-control Toffoli (``mct``) and multi-control Fredkin (``mcf``)
families generate wider gates on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bits import Bits, from_bits, parity, to_bits, weight
from .errors import GateTooWide, UnknownGate, WidthError

ARITY_CAP = 12

# Output words indexed by input word.  Each tuple is a straight
# transcription of the gate's truth table.

_NOT = (0b1, 0b0)

# A B | P Q          P = A, Q = A xor B
_FEYNMAN = (0b00, 0b01, 0b11, 0b10)

_SWAP = (0b00, 0b10, 0b01, 0b11)

# A B C | P Q R      target C flips when A and B are both 1
_TOFFOLI = (0b000, 0b001, 0b010, 0b011, 0b100, 0b101, 0b111, 0b110)

# A B C | P Q R      B and C swap when A is 1
_FREDKIN = (0b000, 0b001, 0b010, 0b011, 0b100, 0b110, 0b101, 0b111)

# A B C | P Q R      P = A, Q = A xor B, R = AB xor C
_PERES = (0b000, 0b001, 0b010, 0b011, 0b110, 0b111, 0b101, 0b100)

# A B C | P Q R      P = A, Q = A xor B, R = A xor C
_F2G = (0b000, 0b001, 0b010, 0b011, 0b111, 0b110, 0b101, 0b100)

# A B C | P Q R      parity-preserving 3x3 gate
_NFT = (0b000, 0b010, 0b100, 0b101, 0b111, 0b110, 0b011, 0b001)

# A B C | P Q R      P = 1+A+B+C+AB, Q = 1+AB+B+C+BC, R = 1+A+B+AC (xor algebra)
_KERNTOPF = (0b111, 0b001, 0b000, 0b100, 0b010, 0b101, 0b011, 0b110)

# A B C D | P Q R S  P = A, Q = B; C,D pass when A < B, otherwise swap
_PICTON = (
    0b0000, 0b0010, 0b0001, 0b0011,
    0b0100, 0b0101, 0b0110, 0b0111,
    0b1000, 0b1010, 0b1001, 0b1011,
    0b1100, 0b1110, 0b1101, 0b1111,
)

_IN_LETTERS = "ABCDEFGHIJKL"
_OUT_LETTERS = "PQRSTUVWXYZ"


def _pin_labels(arity: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if arity <= len(_OUT_LETTERS):
        return tuple(_IN_LETTERS[:arity]), tuple(_OUT_LETTERS[:arity])
    ins = tuple(f"I{i + 1}" for i in range(arity))
    outs = tuple(f"O{i + 1}" for i in range(arity))
    return ins, outs


@dataclass(frozen=True)
class GateDef:
    """A reversible gate: a named bijection on ``arity``-bit words."""

    name: str
    arity: int
    mapping: tuple[int, ...]
    in_pins: tuple[str, ...] = field(default=())
    out_pins: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("gate arity must be at least 1")
        size = 1 << self.arity
        if len(self.mapping) != size:
            raise ValueError(
                f"mapping for arity {self.arity} needs {size} entries, "
                f"got {len(self.mapping)}")
        if sorted(self.mapping) != list(range(size)):
            raise ValueError(f"mapping of gate {self.name!r} is not a bijection")
        if not self.in_pins:
            ins, outs = _pin_labels(self.arity)
            object.__setattr__(self, "in_pins", ins)
            object.__setattr__(self, "out_pins", outs)

    def apply_word(self, word: int) -> int:
        return self.mapping[word]

    def inverse_word(self, word: int) -> int:
        return self.mapping.index(word)

    def rows(self):
        """Truth-table rows as (input bits, output bits) pairs."""
        for i, out in enumerate(self.mapping):
            yield to_bits(i, self.arity), to_bits(out, self.arity)


@dataclass(frozen=True)
class GateClass:
    """Classification flags computed by exhaustive scan of a mapping."""

    bijective: bool
    conservative: bool
    parity_preserving: bool
    self_inverse: bool


_BUILTINS: dict[str, tuple[int, tuple[int, ...]]] = {
    "not": (1, _NOT),
    "feynman": (2, _FEYNMAN),
    "swap": (2, _SWAP),
    "toffoli": (3, _TOFFOLI),
    "fredkin": (3, _FREDKIN),
    "frg": (3, _FREDKIN),          # fault-tolerant Fredkin, same bijection
    "peres": (3, _PERES),
    "f2g": (3, _F2G),
    "nft": (3, _NFT),
    "kerntopf": (3, _KERNTOPF),
    "picton": (4, _PICTON),
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str) -> GateDef:
    """Look up a built-in gate by its lowercase identifier."""
    try:
        arity, mapping = _BUILTINS[name]
    except KeyError:
        raise UnknownGate(f"unknown gate {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return GateDef(name, arity, mapping)


_MCT_SMALL = {0: "not", 1: "feynman", 2: "toffoli"}
_MCF_SMALL = {0: "swap", 1: "fredkin"}


def mct(num_controls: int, polarity: Sequence[bool] | None = None,
        arity_cap: int = ARITY_CAP) -> GateDef:
    """Multi-control Toffoli: the target (last line) flips when every
    positive control carries 1 and every negative control carries 0.

    ``polarity[i]`` is True for a positive control.  0, 1 and 2 controls
    give NOT, CNOT and Toffoli.
    """
    if num_controls < 0:
        raise ValueError("control count must be non-negative")
    arity = num_controls + 1
    if arity > arity_cap:
        raise GateTooWide(f"mct with {num_controls} controls needs arity "
                          f"{arity} > cap {arity_cap}")
    pol = tuple(polarity) if polarity is not None else (True,) * num_controls
    if len(pol) != num_controls:
        raise ValueError("polarity length must equal the control count")

    mapping = []
    for word in range(1 << arity):
        bits = to_bits(word, arity)
        fire = all(bits[i] == (1 if pol[i] else 0) for i in range(num_controls))
        out = word ^ 1 if fire else word
        mapping.append(out)

    if all(pol) and num_controls in _MCT_SMALL:
        name = _MCT_SMALL[num_controls]
    else:
        name = f"t{arity}"
        if not all(pol):
            name += ":" + "".join("+" if p else "-" for p in pol)
    return GateDef(name, arity, tuple(mapping))


def mcf(num_controls: int, arity_cap: int = ARITY_CAP) -> GateDef:
    """Multi-control Fredkin: the two targets (last lines) swap when all
    controls carry 1.  0 and 1 controls give SWAP and Fredkin.
    """
    if num_controls < 0:
        raise ValueError("control count must be non-negative")
    arity = num_controls + 2
    if num_controls > arity_cap - 2:
        raise GateTooWide(f"mcf with {num_controls} controls needs arity "
                          f"{arity} > cap {arity_cap}")

    mapping = []
    for word in range(1 << arity):
        bits = to_bits(word, arity)
        if all(bits[:num_controls]):
            swapped = bits[:num_controls] + (bits[-1], bits[-2])
            mapping.append(from_bits(swapped))
        else:
            mapping.append(word)

    name = _MCF_SMALL.get(num_controls, f"f{arity}")
    return GateDef(name, arity, tuple(mapping))


def gate_from_token(token: str) -> GateDef:
    """Resolve a gate token: a built-in name, ``t<k>`` (optionally with a
    ``:++-`` polarity suffix) or ``f<k>``.
    """
    if token in _BUILTINS:
        return builtin(token)
    base, _, pols = token.partition(":")
    if len(base) > 1 and base[0] in "tf" and base[1:].isdigit():
        k = int(base[1:])
        if base[0] == "t" and k >= 1:
            polarity = None
            if pols:
                if len(pols) != k - 1 or any(c not in "+-" for c in pols):
                    raise UnknownGate(f"bad polarity suffix in {token!r}")
                polarity = tuple(c == "+" for c in pols)
            return mct(k - 1, polarity)
        if base[0] == "f" and k >= 2 and not pols:
            return mcf(k - 2)
    raise UnknownGate(f"unknown gate token {token!r}")


def apply(gate: GateDef, word: Sequence[int]) -> Bits:
    """Feed a bit-vector through a gate."""
    if len(word) != gate.arity:
        raise WidthError(f"gate {gate.name} has arity {gate.arity}, "
                         f"got {len(word)} bits")
    return to_bits(gate.mapping[from_bits(word)], gate.arity)


def classify(gate: GateDef) -> GateClass:
    """Scan the whole mapping to derive classification flags."""
    conservative = True
    parity_preserving = True
    self_inverse = True
    for i, out in enumerate(gate.mapping):
        if weight(i) != weight(out):
            conservative = False
        if parity(i) != parity(out):
            parity_preserving = False
        if gate.mapping[out] != i:
            self_inverse = False
    return GateClass(
        bijective=True,   # enforced at construction
        conservative=conservative,
        parity_preserving=parity_preserving,
        self_inverse=self_inverse,
    )
