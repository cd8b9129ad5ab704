"""Graph and solution file formats.

Graph files:
    c <comment>            ignored anywhere
    p fvs <n> <m>          header, first significant line
    <u> <v>                exactly m edge lines, 1-based ids in [1, n];
                           parallel edges allowed, self-loops rejected
    s <v>                  optional: marks v as protected (side two)

Solution files:
    YES <size>             followed by <size> vertex ids, one per line,
                           ascending
    NO                     no witness
"""

from __future__ import annotations

from typing import TextIO

from .graph import Graph, VertexSet


class ParseError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def _significant_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        yield number, stripped.split()


def parse_graph(source: str | TextIO) -> tuple[Graph, VertexSet | None]:
    """Parse a graph file; returns the graph and the protected-side marks
    (None when the file carries no `s` records)."""
    text = source if isinstance(source, str) else source.read()
    lines = _significant_lines(text)
    try:
        number, fields = next(lines)
    except StopIteration:
        raise ParseError("missing problem line", 1) from None
    if len(fields) != 4 or fields[0] != "p" or fields[1] != "fvs":
        raise ParseError(f"expected 'p fvs <n> <m>', got {' '.join(fields)!r}",
                         number)
    try:
        n, m = int(fields[2]), int(fields[3])
    except ValueError:
        raise ParseError("non-integer sizes in problem line", number) from None
    if n < 0 or m < 0:
        raise ParseError("negative sizes in problem line", number)
    g = Graph()
    g.add_vertices(n)
    marks: set[int] = set()
    saw_marks = False
    edges = 0
    for number, fields in lines:
        if fields[0] == "s":
            if len(fields) != 2:
                raise ParseError("expected 's <v>'", number)
            v = _vertex_id(fields[1], n, number)
            marks.add(v)
            saw_marks = True
            continue
        if len(fields) != 2:
            raise ParseError(f"expected '<u> <v>', got {' '.join(fields)!r}",
                             number)
        u = _vertex_id(fields[0], n, number)
        v = _vertex_id(fields[1], n, number)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", number)
        if edges == m:
            raise ParseError(f"more than {m} edge lines", number)
        g.add_edge(u, v)
        edges += 1
    if edges != m:
        raise ParseError(f"expected {m} edges, found {edges}",
                         len(text.splitlines()) or 1)
    return g, (marks if saw_marks else None)


def _vertex_id(token: str, n: int, line: int) -> int:
    try:
        v = int(token)
    except ValueError:
        raise ParseError(f"non-integer vertex id {token!r}", line) from None
    if not 1 <= v <= n:
        raise ParseError(f"vertex id {v} out of range [1, {n}]", line)
    return v


def serialize_graph(g: Graph, v2: VertexSet | None = None) -> str:
    """Render a graph file, relabeling vertices to 1..n in ascending id
    order (round-trips up to that relabeling)."""
    order = sorted(g.vertices)
    relabel = {v: i for i, v in enumerate(order, start=1)}
    out = [f"p fvs {len(order)} {g.edge_count}"]
    for eid in sorted(g.edge_ids):
        u, v = g.endpoints(eid)
        out.append(f"{relabel[u]} {relabel[v]}")
    if v2 is not None:
        for v in sorted(v2):
            out.append(f"s {relabel[v]}")
    return "\n".join(out) + "\n"


def write_solution(result: VertexSet | None) -> str:
    """Render a solution: `YES <size>` plus ascending ids, or `NO`."""
    if result is None:
        return "NO\n"
    lines = [f"YES {len(result)}"]
    lines.extend(str(v) for v in sorted(result))
    return "\n".join(lines) + "\n"


def parse_solution(source: str | TextIO) -> VertexSet | None:
    text = source if isinstance(source, str) else source.read()
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("empty solution file", 1)
    number, fields = lines[0]
    if fields[0] == "NO":
        if len(lines) > 1:
            raise ParseError("trailing content after NO", lines[1][0])
        return None
    if fields[0] != "YES" or len(fields) != 2:
        raise ParseError(f"expected 'YES <size>' or 'NO', got "
                         f"{' '.join(fields)!r}", number)
    try:
        size = int(fields[1])
    except ValueError:
        raise ParseError("non-integer solution size", number) from None
    ids: set[int] = set()
    for number, fields in lines[1:]:
        if len(fields) != 1:
            raise ParseError("expected one vertex id per line", number)
        try:
            ids.add(int(fields[0]))
        except ValueError:
            raise ParseError(f"non-integer vertex id {fields[0]!r}",
                             number) from None
    if len(ids) != size:
        raise ParseError(f"declared size {size}, found {len(ids)} ids",
                         lines[0][0])
    return ids
