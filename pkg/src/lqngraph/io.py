"""File formats and DOT rendering.

Network files are JSON:

    {"version": 1, "n": 3, "statistics": "boson", "mode": "strict",
     "edges": [{"from": 1, "to": 2,
                "amp": {"re": 0.5, "im": 0.0},   # or {"r": ..., "theta": ...}
                "color": "up"}]}

``version`` and ``mode`` may be omitted (mode defaults to strict; theta is
radians). States serialize with kets as 'u'/'d' strings sorted
lexicographically, so files are stable and diffable.

DOT export colors up edges blue and down edges red, matching the drawing
convention used throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import ParseError
from .graphs import (
    BipartiteView,
    DirectedView,
    PMDiagram,
    diagram_of_network,
    enumerate_pms,
    to_directed,
)
from .model import (
    DEFAULT_TOL,
    Color,
    NetworkSpec,
    polar_amplitude,
    to_adjacency,
    to_bipartite,
    validate_network,
)
from .states import NoBunchState


def _parse_amp(obj, where: str) -> complex:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: amp must be an object")
    if set(obj) == {"re", "im"}:
        return complex(float(obj["re"]), float(obj["im"]))
    if set(obj) == {"r", "theta"}:
        return polar_amplitude(float(obj["r"]), float(obj["theta"]))
    raise ParseError(f"{where}: amp needs keys re/im or r/theta, got {sorted(obj)}")


def parse_network(text: str, row_tol: float = DEFAULT_TOL) -> NetworkSpec:
    """Parse and validate a network file; raises ParseError on bad shape."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("n", "statistics", "edges"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    if not isinstance(doc["edges"], list):
        raise ParseError("edges must be a list")

    statistics = str(doc["statistics"])
    if statistics not in ("boson", "fermion"):
        raise ParseError(f"statistics must be boson or fermion, got {statistics!r}")
    mode = str(doc.get("mode", "strict"))
    if mode not in ("strict", "design"):
        raise ParseError(f"mode must be strict or design, got {mode!r}")

    transitions = []
    for i, edge in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(edge, dict):
            raise ParseError(f"{where}: must be an object")
        for key in ("from", "to", "amp", "color"):
            if key not in edge:
                raise ParseError(f"{where}: missing key {key!r}")
        color = str(edge["color"])
        if color not in ("up", "down"):
            raise ParseError(f"{where}: color must be up or down, got {color!r}")
        try:
            a, j = int(edge["from"]), int(edge["to"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{where}: from/to must be integers") from exc
        transitions.append((a, j, _parse_amp(edge["amp"], where), color))

    try:
        n = int(doc["n"])
    except (TypeError, ValueError) as exc:
        raise ParseError("n must be an integer") from exc
    return validate_network(n, statistics, transitions, mode, row_tol=row_tol)


def serialize_network(spec: NetworkSpec) -> str:
    """JSON form of a network; amplitudes in Cartesian form, bit-exact."""
    doc = {
        "version": 1,
        "n": spec.n,
        "statistics": spec.statistics.value,
        "mode": spec.normalization_mode.value,
        "edges": [
            {
                "from": t.source,
                "to": t.detector,
                "amp": {"re": t.amplitude.real, "im": t.amplitude.imag},
                "color": "up" if t.color is Color.UP else "down",
            }
            for t in spec.transitions
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def serialize_state(state: NoBunchState) -> str:
    doc = {
        "n": state.n,
        "normalized": state.normalized,
        "postselect_probability": state.postselect_probability,
        "terms": [
            {"ket": ket, "amp": {"re": amp.real, "im": amp.imag}}
            for ket, amp in state.sorted_terms()
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


class View(Enum):
    BIPARTITE = "bipartite"
    DIRECTED = "directed"
    PM_DIAGRAM = "pm_diagram"


@dataclass(frozen=True)
class DotRenderOptions:
    view: View = View.BIPARTITE
    show_weights: bool = False
    highlight_pm: int | None = None


def format_complex(z: complex, digits: int = 6) -> str:
    """Compact complex formatting: '0.5', '1i', '0.5-0.866i'."""
    re = f"{z.real:.{digits}g}"
    im = f"{abs(z.imag):.{digits}g}"
    if z.imag == 0:
        return re
    sign = "-" if z.imag < 0 else "+"
    if z.real == 0:
        return f"{'-' if z.imag < 0 else ''}{im}i"
    return f"{re}{sign}{im}i"


_DOT_COLOR = {Color.UP: "blue", Color.DOWN: "red"}


def _edge_attrs(color: Color, weight: complex, opts: DotRenderOptions, bold: bool) -> str:
    attrs = [f"color={_DOT_COLOR[color]}"]
    if opts.show_weights:
        attrs.append(f'label="{format_complex(weight)}"')
    if bold:
        attrs.append("penwidth=2.5")
    return ", ".join(attrs)


def _dot_bipartite(bip: BipartiteView, opts: DotRenderOptions, marked: set) -> str:
    lines = ["graph network {", "  rankdir=LR;"]
    lines.append("  { rank=source; " + " ".join(f'"{a}";' for a in range(1, bip.n + 1)) + " }")
    lines.append(
        "  { rank=sink; " + " ".join(f'"X{j}";' for j in range(1, bip.n + 1)) + " }"
    )
    for e in sorted(bip.edges, key=lambda e: (e.particle, e.detector)):
        attrs = _edge_attrs(e.color, e.weight, opts, (e.particle, e.detector) in marked)
        lines.append(f'  "{e.particle}" -- "X{e.detector}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_directed(view: DirectedView, opts: DotRenderOptions, marked: set) -> str:
    lines = ["digraph network {"]
    for v in range(1, view.n + 1):
        lines.append(f'  "w{v}";')
    for e in sorted(view.edges, key=lambda e: (e.tail, e.head)):
        attrs = _edge_attrs(e.color, e.weight, opts, (e.tail, e.head) in marked)
        lines.append(f'  "w{e.tail}" -> "w{e.head}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(
    artifact: NetworkSpec | BipartiteView | DirectedView | PMDiagram,
    opts: DotRenderOptions = DotRenderOptions(),
) -> str:
    """Render an artifact as DOT text; deterministic edge order.

    A NetworkSpec is rendered in the view chosen by ``opts.view``; a view
    object must agree with ``opts.view``. Matching highlighting (by index
    into the lexicographic matching order) needs a NetworkSpec.
    """
    marked: set = set()
    if isinstance(artifact, NetworkSpec):
        if opts.highlight_pm is not None:
            pms = enumerate_pms(to_bipartite(to_adjacency(artifact)))
            if not 0 <= opts.highlight_pm < len(pms):
                raise ValueError(
                    f"matching index {opts.highlight_pm} out of range ({len(pms)} found)"
                )
            marked = {
                (a, j)
                for a, j in enumerate(pms[opts.highlight_pm].assignment, start=1)
            }
        if opts.view is View.BIPARTITE:
            return _dot_bipartite(to_bipartite(to_adjacency(artifact)), opts, marked)
        if opts.view is View.DIRECTED:
            return _dot_directed(to_directed(to_adjacency(artifact)), opts, marked)
        diag = diagram_of_network(artifact)
        relabeled_marked = set()
        if marked:
            slot_of = {d: v for v, d in enumerate(diag.relabeling, start=1)}
            relabeled_marked = {(a, slot_of[j]) for a, j in marked}
        return _dot_directed(diag.view, opts, relabeled_marked)

    if isinstance(artifact, BipartiteView):
        if opts.view is not View.BIPARTITE:
            raise ValueError(f"bipartite artifact cannot render view {opts.view.value}")
        return _dot_bipartite(artifact, opts, marked)
    if isinstance(artifact, DirectedView):
        if opts.view is not View.DIRECTED:
            raise ValueError(f"directed artifact cannot render view {opts.view.value}")
        return _dot_directed(artifact, opts, marked)
    if isinstance(artifact, PMDiagram):
        if opts.view is not View.PM_DIAGRAM:
            raise ValueError(f"diagram artifact cannot render view {opts.view.value}")
        return _dot_directed(artifact.view, opts, marked)
    raise TypeError(f"cannot render {type(artifact).__name__}")
