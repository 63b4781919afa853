"""Graph file formats: DIMACS .col and a labeled whitespace edge list."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .graph import Graph


@dataclass
class GraphDocument:
    """A parsed input graph plus the labeling needed to answer in kind."""

    format: str                      # "dimacs_col" | "edge_list"
    graph: Graph
    labels: dict = field(default_factory=dict)      # vertex id -> display label
    palettes: dict = field(default_factory=dict)    # vertex id -> tuple of colors
    warnings: list = field(default_factory=list)
    source: str = "<memory>"

    def label(self, v) -> str:
        return self.labels.get(v, str(v))


def sniff_format(text: str) -> str:
    """DIMACS files lead with a p/c line; everything else is an edge list."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        head = line.split()[0]
        if head in ("c", "p", "e") and len(head) == 1:
            return "dimacs_col"
        return "edge_list"
    return "edge_list"


def parse_graph(text: str, fmt: str | None = None) -> GraphDocument:
    fmt = fmt or sniff_format(text)
    if fmt == "dimacs_col":
        return parse_dimacs(text)
    if fmt == "edge_list":
        return parse_edge_list(text)
    raise ParseError(f"unknown graph format: {fmt}")


# -- DIMACS col ---------------------------------------------------------------


def parse_dimacs(text: str) -> GraphDocument:
    g = Graph()
    doc = GraphDocument("dimacs_col", g)
    declared = None
    seen_edges = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if declared is not None:
                raise ParseError("duplicate problem line", line_no=line_no)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"malformed problem line: {line!r}", line_no=line_no)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line: {line!r}", line_no=line_no)
            if n < 0 or declared < 0:
                raise ParseError(f"malformed problem line: {line!r}", line_no=line_no)
            for v in range(1, n + 1):
                g.add_vertex(v)
        elif parts[0] == "e":
            if declared is None:
                raise ParseError("edge before problem line", line_no=line_no)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line: {line!r}", line_no=line_no)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed edge line: {line!r}", line_no=line_no)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", line_no=line_no)
            if not (g.has_vertex(u) and g.has_vertex(v)):
                raise ParseError(f"edge endpoint out of range: {line!r}", line_no=line_no)
            if g.has_edge(u, v):
                doc.warnings.append(f"line {line_no}: duplicate edge {u} {v} ignored")
            else:
                g.add_edge(u, v)
                seen_edges += 1
        else:
            raise ParseError(f"unrecognized line: {line!r}", line_no=line_no)
    if declared is None:
        raise ParseError("missing problem line")
    if seen_edges != declared:
        doc.warnings.append(
            f"problem line declares {declared} edges, file has {seen_edges}")
    doc.labels = {v: str(v) for v in g.vertices()}
    return doc


def format_dimacs(g: Graph, comments: tuple = ()) -> str:
    verts = g.vertices()
    index = {v: i + 1 for i, v in enumerate(verts)}
    lines = [f"c {c}" for c in comments]
    edges = list(g.edges())
    lines.append(f"p edge {len(verts)} {len(edges)}")
    for u, v in edges:
        lines.append(f"e {index[u]} {index[v]}")
    return "\n".join(lines) + "\n"


# -- labeled edge list --------------------------------------------------------


def parse_edge_list(text: str) -> GraphDocument:
    g = Graph()
    doc = GraphDocument("edge_list", g)
    by_label: dict[str, int] = {}

    def vertex(label: str) -> int:
        if label not in by_label:
            by_label[label] = g.add_vertex()
            doc.labels[by_label[label]] = label
        return by_label[label]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            # palette annotation: "<label>: <color> <color>..."
            name, _, rest = line.partition(":")
            name = name.strip()
            if not name or len(name.split()) != 1:
                raise ParseError(f"malformed palette line: {raw!r}", line_no=line_no)
            try:
                colors = tuple(sorted({int(t) for t in rest.split()}))
            except ValueError:
                raise ParseError(f"malformed palette line: {raw!r}", line_no=line_no)
            if not colors or any(c not in (1, 2, 3) for c in colors):
                raise ParseError(f"palette outside 1..3: {raw!r}", line_no=line_no)
            doc.palettes[vertex(name)] = colors
            continue
        parts = line.split()
        if len(parts) == 1:
            vertex(parts[0])
        elif len(parts) == 2:
            if parts[0] == parts[1]:
                raise ParseError(f"self-loop at {parts[0]!r}", line_no=line_no)
            u, v = vertex(parts[0]), vertex(parts[1])
            if g.has_edge(u, v):
                doc.warnings.append(
                    f"line {line_no}: duplicate edge {parts[0]} {parts[1]} ignored")
            else:
                g.add_edge(u, v)
        else:
            raise ParseError(f"expected one or two tokens: {raw!r}", line_no=line_no)
    return doc


def format_edge_list(g: Graph, labels: dict | None = None,
                     palettes: dict | None = None) -> str:
    labels = labels or {}

    def name(v):
        return str(labels.get(v, v))

    lines = []
    isolated = [v for v in g.vertices() if not g.neighbors(v)]
    for u, v in g.edges():
        lines.append(f"{name(u)} {name(v)}")
    for v in isolated:
        lines.append(name(v))
    if palettes:
        for v in sorted(palettes):
            lines.append(f"{name(v)}: " + " ".join(str(c) for c in sorted(palettes[v])))
    return "\n".join(lines) + ("\n" if lines else "")
