"""Constraint graphs: which pairs of tuple coordinates must be coprime.

Vertices are numbered 1..v everywhere in the public surface. Edges are
stored as sorted ``(r, s)`` pairs with ``r < s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64
MAX_EDGES = 64


class GraphError(ValueError):
    """Base class for invalid graphs and graph file parse failures."""


class MalformedLineError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class GraphLimitError(GraphError):
    pass


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    v: int
    edges: tuple[Edge, ...]
    degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.v, bool) or not isinstance(self.v, int) or self.v < 1:
            raise VertexRangeError(f"vertex count must be a positive integer, got {self.v!r}")
        if self.v > MAX_VERTICES:
            raise GraphLimitError(f"v={self.v} exceeds the limit of {MAX_VERTICES} vertices")
        canon: list[Edge] = []
        seen: set[Edge] = set()
        for r, s in self.edges:
            edge = _canonical_edge(self.v, r, s)
            if edge in seen:
                raise DuplicateEdgeError(f"duplicate edge {{{edge[0]},{edge[1]}}}")
            seen.add(edge)
            canon.append(edge)
        if len(canon) > MAX_EDGES:
            raise GraphLimitError(f"e={len(canon)} exceeds the limit of {MAX_EDGES} edges")
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))
        deg = [0] * self.v
        for r, s in canon:
            deg[r - 1] += 1
            deg[s - 1] += 1
        object.__setattr__(self, "degrees", tuple(deg))

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def d(self) -> int:
        return max_degree(self)

    def neighbors(self, r: int) -> list[int]:
        """Sorted 1-based neighbours of vertex ``r``."""
        out = []
        for a, b in self.edges:
            if a == r:
                out.append(b)
            elif b == r:
                out.append(a)
        return sorted(out)

    def incident_edges(self, r: int) -> list[int]:
        """0-based indices into ``edges`` of the edges touching vertex ``r``."""
        return [i for i, (a, b) in enumerate(self.edges) if r in (a, b)]

    def graph_id(self) -> str:
        return format_graph(self)

    def relabel(self, perm: dict[int, int]) -> "Graph":
        """Apply the vertex bijection ``perm`` (1-based) and return the image graph."""
        return Graph(self.v, tuple((perm[r], perm[s]) for r, s in self.edges))

    def __str__(self) -> str:
        body = ", ".join(f"{r}-{s}" for r, s in self.edges) or "no edges"
        return f"Graph(v={self.v}: {body})"


def _canonical_edge(v: int, r, s) -> Edge:
    for x in (r, s):
        if isinstance(x, bool) or not isinstance(x, int):
            raise MalformedLineError(f"edge endpoint {x!r} is not an integer")
        if not 1 <= x <= v:
            raise VertexRangeError(f"vertex {x} outside 1..{v}")
    if r == s:
        raise SelfLoopError(f"self-loop at vertex {r}")
    return (r, s) if r < s else (s, r)


def max_degree(g: Graph) -> int:
    return max(g.degrees, default=0)


def parse_graph(text: str) -> Graph:
    """Parse the graph file format.

    The first non-comment line holds the vertex count ``v``; every later
    non-comment line is an edge ``r s``. Blank lines and lines starting
    with ``#`` are skipped.
    """
    v = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if v is None:
            if len(fields) != 1:
                raise MalformedLineError(f"line {lineno}: expected the vertex count, got {line!r}")
            v = _parse_int(fields[0], lineno)
            if v < 1:
                raise VertexRangeError(f"line {lineno}: vertex count must be positive, got {v}")
            if v > MAX_VERTICES:
                raise GraphLimitError(f"line {lineno}: v={v} exceeds the limit of {MAX_VERTICES}")
            continue
        if len(fields) != 2:
            raise MalformedLineError(f"line {lineno}: expected 'r s', got {line!r}")
        r, s = (_parse_int(f, lineno) for f in fields)
        try:
            edge = _canonical_edge(v, r, s)
        except GraphError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
        if edge in seen:
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge {{{edge[0]},{edge[1]}}}")
        seen.add(edge)
        edges.append(edge)
        if len(edges) > MAX_EDGES:
            raise GraphLimitError(f"line {lineno}: more than {MAX_EDGES} edges")
    if v is None:
        raise MalformedLineError("no vertex count found")
    return Graph(v, tuple(edges))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedLineError(f"line {lineno}: {token!r} is not an integer") from None


def format_graph(g: Graph) -> str:
    """Canonical serialization; ``parse_graph(format_graph(g)) == g``."""
    lines = [str(g.v)] + [f"{r} {s}" for r, s in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# Standard families used by the CLI verifier and the tests.

def empty_graph(v: int) -> Graph:
    return Graph(v, ())


def complete_graph(v: int) -> Graph:
    return Graph(v, tuple(combinations(range(1, v + 1), 2)))


def path_graph(v: int) -> Graph:
    return Graph(v, tuple((i, i + 1) for i in range(1, v)))


def star_graph(v: int) -> Graph:
    """Centre 1 joined to leaves 2..v."""
    return Graph(v, tuple((1, i) for i in range(2, v + 1)))


def spanning_subgraphs(v: int) -> Iterator[Graph]:
    """All ``2**(v(v-1)/2)`` edge subsets of the complete graph on ``v`` vertices."""
    all_edges = list(combinations(range(1, v + 1), 2))
    for mask in range(1 << len(all_edges)):
        yield Graph(v, tuple(e for i, e in enumerate(all_edges) if mask >> i & 1))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.v
    edges: Iterable[Edge] = list(g1.edges) + [(r + shift, s + shift) for r, s in g2.edges]
    return Graph(g1.v + g2.v, tuple(edges))
