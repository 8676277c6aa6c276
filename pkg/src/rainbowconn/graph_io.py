"""Edge-list text format and DOT export.

Format: first line "n m", then m lines "u v" with 0-based vertex ids.
The same writer serves multigraphs (duplicate lines, loops as "v v");
the Graph reader collapses duplicates and rejects loops, per build_graph.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .graphs import Graph, Multigraph, build_graph


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise InvalidInputError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise InvalidInputError(f'expected header "n m", got {lines[0]!r}')
    n, m = (int(tok) for tok in head)
    if len(lines) - 1 != m:
        raise InvalidInputError(f"header says m={m} but found {len(lines) - 1} edges")
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise InvalidInputError(f'bad edge line {ln!r}')
        edges.append((int(toks[0]), int(toks[1])))
    return build_graph(n, edges)


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g) -> str:
    """Serialize a Graph or Multigraph to edge-list text."""
    if isinstance(g, Multigraph):
        edges = g.edges
    else:
        edges = g.edge_list
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))


def to_dot(g, edge_colours=None, vertex_colours=None, name="G") -> str:
    """DOT text for visual inspection; colour ids become labels."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if vertex_colours is not None and v in vertex_colours:
            lines.append(f'  {v} [label="{v} c{vertex_colours[v]}"];')
        else:
            lines.append(f"  {v};")
    edges = g.edges if isinstance(g, Multigraph) else g.edge_list
    for e in edges:
        u, v = e
        if edge_colours is not None and (min(u, v), max(u, v)) in edge_colours:
            c = edge_colours[(min(u, v), max(u, v))]
            lines.append(f'  {u} -- {v} [label="c{c}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
