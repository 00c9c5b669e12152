"""Matplotlib rendering: circuit schematics, fabric diagrams, report figures.

Standard glyphs: a filled dot is a positive control, an open dot a
negative control, a crossed circle an XOR target, an X a swap target;
multi-pin named gates draw as labelled boxes.  Fabric diagrams color by
the session's semantic states (active/inactive, on/off, bound/unbound).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle, FancyBboxPatch

from .bits import to_bits
from .circuit import Circuit
from .fabric import Configuration, Fabric, fabric_eval
from .session import BOUND, RenderModel
from .symmetry import SymmetryReport

PALETTE = {
    "active": "#e8983a",      # configured, in use
    "inactive": "#d4d4d4",
    "on": "#3fae56",
    "off": "#d64545",
    "undriven": "#9a9a9a",
    "bound": "#e8983a",
    "unbound": "#d4d4d4",
    "wire": "#444444",
    "constant": "#7a6ff0",
}

_XOR_TOKENS = {"not", "feynman"}


def circuit_figure(circuit: Circuit) -> plt.Figure:
    """Schematic: horizontal lines crossed by one column per time slot."""
    slots = circuit.slots()
    ncols = max(len(slots), 1)
    width = circuit.width
    fig, ax = plt.subplots(figsize=(1.6 + 1.1 * ncols, 0.8 + 0.55 * width))
    xmax = ncols + 1

    for ln in circuit.lines:
        y = width - 1 - ln.index
        ax.plot([0, xmax], [y, y], color=PALETTE["wire"], lw=1.2, zorder=1)
        label = ln.name if ln.constant is None else f"{ln.name}={ln.constant}"
        color = PALETTE["constant"] if ln.constant is not None else "black"
        ax.text(-0.1, y, label, ha="right", va="center", color=color)
        right = "garbage" if ln.garbage else (ln.out_name or "")
        ax.text(xmax + 0.1, y, right, ha="left", va="center",
                color="#888888" if ln.garbage else "black")

    col_of = {s: i + 1 for i, s in enumerate(slots)}
    for p in circuit.placements:
        x = col_of[p.slot]
        ys = [width - 1 - pin for pin in p.pins]
        base = p.gate.name.split(":", 1)[0]
        if base in _XOR_TOKENS or (base[0] == "t" and base[1:].isdigit()):
            _draw_controlled(ax, x, ys, p.gate.name, targets=1)
        elif base in ("swap", "fredkin", "frg") or (base[0] == "f" and base[1:].isdigit()):
            _draw_controlled(ax, x, ys, p.gate.name, targets=2, swap=True)
        else:
            _draw_box(ax, x, ys, p.gate.name)
    for s, x in col_of.items():
        ax.text(x, width - 0.35, f"slot {s}", ha="center", va="bottom",
                fontsize=8, color="#666666")

    ax.set_xlim(-1.2, xmax + 1.4)
    ax.set_ylim(-0.7, width - 0.2 if width > 1 else 0.8)
    ax.set_title(circuit.name)
    ax.axis("off")
    fig.tight_layout()
    return fig


def _polarity(name: str, num_controls: int) -> tuple[bool, ...]:
    _, _, pols = name.partition(":")
    if pols:
        return tuple(c == "+" for c in pols)
    return (True,) * num_controls


def _draw_controlled(ax, x, ys, name, targets, swap=False):
    controls = ys[:len(ys) - targets]
    target_ys = ys[len(ys) - targets:]
    if len(ys) > 1:
        ax.plot([x, x], [min(ys), max(ys)], color=PALETTE["wire"], lw=1.2, zorder=2)
    for c, pos in zip(_polarity(name, len(controls)), controls):
        face = PALETTE["wire"] if c else "white"
        ax.add_patch(Circle((x, pos), 0.09, facecolor=face,
                            edgecolor=PALETTE["wire"], zorder=3))
    for ty in target_ys:
        if swap:
            d = 0.14
            ax.plot([x - d, x + d], [ty - d, ty + d], color=PALETTE["wire"], lw=1.4, zorder=3)
            ax.plot([x - d, x + d], [ty + d, ty - d], color=PALETTE["wire"], lw=1.4, zorder=3)
        else:
            ax.add_patch(Circle((x, ty), 0.16, facecolor="white",
                                edgecolor=PALETTE["wire"], zorder=3))
            ax.plot([x - 0.16, x + 0.16], [ty, ty], color=PALETTE["wire"], lw=1.2, zorder=4)
            ax.plot([x, x], [ty - 0.16, ty + 0.16], color=PALETTE["wire"], lw=1.2, zorder=4)


def _draw_box(ax, x, ys, name):
    top, bottom = max(ys) + 0.3, min(ys) - 0.3
    ax.add_patch(FancyBboxPatch((x - 0.32, bottom), 0.64, top - bottom,
                                boxstyle="round,pad=0.02",
                                facecolor="#f2ede2", edgecolor=PALETTE["wire"],
                                zorder=3))
    ax.text(x, (top + bottom) / 2, name, ha="center", va="center",
            rotation=90, fontsize=8, zorder=4)


def fabric_figure(fabric: Fabric, config: Configuration | None = None,
                  model: RenderModel | None = None) -> plt.Figure:
    """Triangle of MAX/MIN nodes, tap rail and any configured outputs.

    With a render model the elements take its states; with only a
    configuration the bound taps highlight; bare fabrics draw inactive.
    """
    n = fabric.n
    levels = max(n - 1, 1)
    bindings = tuple(config.bindings) if config else ()
    fig, ax = plt.subplots(figsize=(2.4 + 1.3 * levels + 0.9 * max(len(bindings), 1),
                                    1.2 + 0.75 * (n + 1)))

    node_states = dict(model.nodes) if model else {}
    tap_states = dict(model.taps) if model else {}
    out_states = dict(model.outputs) if model else {}
    configured = bool(bindings) or bool(out_states)

    for i in range(n):
        y = n - 1 - i
        ax.plot([0, levels + 0.6], [y, y], color=PALETTE["wire"], lw=1.0, zorder=1)
        label = f"x{i + 1}"
        if model and model.input is not None:
            label += f"={model.input[i]}"
        ax.text(-0.15, y, label, ha="right", va="center")

    for node in fabric.nodes:
        x = node.level - 0.5 + 0.22 * (node.level - 1 - node.upper)
        ytop = n - 1 - node.upper
        state = node_states.get(node.id, "active" if configured else "inactive")
        color = PALETTE.get(state, PALETTE["inactive"])
        ax.add_patch(FancyBboxPatch((x - 0.18, ytop - 1.12), 0.36, 1.24,
                                    boxstyle="round,pad=0.02",
                                    facecolor=color, edgecolor="#555555", zorder=3))
        ax.text(x, ytop - 0.5, "max\nmin", ha="center", va="center",
                fontsize=6.5, zorder=4)

    tap_x = levels + 0.65
    s_vals: tuple[int, ...] | None = None
    if model and model.input is not None:
        s_all, _ = fabric.single_index(model.input)
        s_vals = s_all[1:]
    for k in range(1, n + 1):
        y = n - k
        state = tap_states.get(f"S{k}", "unbound")
        ax.add_patch(Circle((tap_x, y), 0.1, facecolor=PALETTE.get(state),
                            edgecolor="#555555", zorder=3))
        text = f"S{k}" if s_vals is None else f"S{k}={s_vals[k - 1]}"
        style = "bold" if state == BOUND else "normal"
        ax.text(tap_x + 0.2, y, text, ha="left", va="center",
                fontsize=9, fontweight=style)

    for j, binding in enumerate(bindings):
        y = -0.9
        x = tap_x + 1.1 + 0.9 * j
        state = out_states.get(binding.name, "undriven")
        color = PALETTE.get(state, PALETTE["undriven"])
        ks = "{" + ",".join(str(k) for k in sorted(binding.indices)) + "}"
        ax.add_patch(Circle((x, y), 0.16, facecolor=color,
                            edgecolor="#333333", zorder=3))
        suffix = {"on": "=1", "off": "=0"}.get(state, "")
        ax.text(x, y - 0.35, f"{binding.name}{suffix}\nS{ks}",
                ha="center", va="top", fontsize=8)
        for k in sorted(binding.indices):
            if k == 0:
                continue
            ax.plot([tap_x, x], [n - k, y], color=color, lw=0.9,
                    alpha=0.65, zorder=2)

    mode = model.mode if model else ("configured" if bindings else "initial")
    ax.set_title(f"{fabric.realization} fabric, n={n} ({mode} mode)")
    ax.set_xlim(-1.1, tap_x + 1.3 + 0.9 * max(len(bindings), 1))
    ax.set_ylim(-2.1, n - 0.4)
    ax.axis("off")
    fig.tight_layout()
    return fig


def symmetry_figure(report: SymmetryReport) -> plt.Figure:
    """Value-vector grid: one row per output, one cell per input weight."""
    n = report.n
    rows = len(report.outputs)
    fig, ax = plt.subplots(figsize=(1.8 + 0.55 * (n + 1), 0.9 + 0.5 * rows))
    for r, out in enumerate(report.outputs):
        y = rows - 1 - r
        label = f"{out.name}: {out.index_label()}"
        ax.text(-0.4, y, label, ha="right", va="center", fontsize=9)
        for w in range(n + 1):
            if out.symmetric and out.value_vector is not None:
                color = PALETTE["on"] if out.value_vector[w] else PALETTE["inactive"]
            else:
                color = PALETTE["off"]
            ax.add_patch(plt.Rectangle((w, y - 0.35), 0.85, 0.7,
                                       facecolor=color, edgecolor="#555555"))
    for w in range(n + 1):
        ax.text(w + 0.42, rows - 0.3, str(w), ha="center", va="bottom", fontsize=8)
    ax.text(n / 2, rows + 0.25, "input weight", ha="center", fontsize=9)
    ax.set_xlim(-3.5, n + 1.4)
    ax.set_ylim(-0.8, rows + 0.8)
    ax.axis("off")
    fig.tight_layout()
    return fig


def run_grid_figure(config: Configuration) -> plt.Figure:
    """On/off raster over all 2^n inputs for every configured output."""
    n = config.fabric.n
    names = [b.name for b in config.bindings]
    rows = 1 << n
    fig, ax = plt.subplots(figsize=(1.6 + 0.5 * len(names), 0.9 + 0.24 * rows))
    for w in range(rows):
        bits = to_bits(w, n)
        result = fabric_eval(config, bits)
        y = rows - 1 - w
        ax.text(-0.3, y, "".join(map(str, bits)), ha="right", va="center",
                fontsize=7, family="monospace")
        for c, name in enumerate(names):
            color = PALETTE["on"] if result.outputs[name] else PALETTE["off"]
            ax.add_patch(plt.Rectangle((c, y - 0.4), 0.85, 0.8,
                                       facecolor=color, edgecolor="white"))
    for c, name in enumerate(names):
        ax.text(c + 0.42, rows - 0.3, name, ha="center", va="bottom",
                fontsize=8, rotation=45)
    ax.set_xlim(-1.8, len(names) + 0.8)
    ax.set_ylim(-0.8, rows + 1.2)
    ax.axis("off")
    fig.tight_layout()
    return fig


def save_figure(fig: plt.Figure, path: str) -> None:
    fig.savefig(path, dpi=130)
    plt.close(fig)
