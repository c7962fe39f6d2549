"""Simple undirected graphs with canonical edge indexing.

Vertices are 0..n-1.  Edges are unordered pairs stored as (u, v) with
u < v, sorted lexicographically, so that edge indices are reproducible
across runs; every module downstream (orientations, transcripts, matrix
columns) relies on that ordering.  Multigraphs and self-loops are
rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple


class GraphError(ValueError):
    """Malformed graph input (self-loop, duplicate edge, bad index, bad JSON)."""


class InstanceError(ValueError):
    """Instance outside the supported parameter window."""


class SparsityParams(NamedTuple):
    """The count-matroid parameter pair; valid iff k >= 1 and 0 <= ell <= 2k-1."""

    k: int
    ell: int


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be >= 0, got {self.n}")
        seen = set()
        prev = None
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{self.n - 1}")
            if u > v:
                raise GraphError(f"edge ({u},{v}) not normalized (expected u < v)")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            if prev is not None and (u, v) < prev:
                raise GraphError("edge list not in canonical sorted order")
            seen.add((u, v))
            prev = (u, v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def index_of(self, u: int, v: int) -> int:
        """Edge index of the pair {u, v}; raises GraphError if absent."""
        key = (u, v) if u < v else (v, u)
        try:
            return self.edge_index[key]
        except KeyError:
            raise GraphError(f"no edge {{{u},{v}}} in graph") from None


def make_graph(n: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Build a Graph from arbitrary-order endpoint pairs, canonicalizing."""
    normalized = []
    for e in edges:
        pair = tuple(e)
        if len(pair) != 2:
            raise GraphError(f"edge {pair!r} is not a 2-element pair")
        u, v = pair
        if not isinstance(u, int) or not isinstance(v, int) or isinstance(u, bool) or isinstance(v, bool):
            raise GraphError(f"edge {pair!r} has non-integer endpoints")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        normalized.append((u, v) if u < v else (v, u))
    normalized.sort()
    for a, b in zip(normalized, normalized[1:]):
        if a == b:
            raise GraphError(f"duplicate edge ({a[0]},{a[1]})")
    return Graph(n, tuple(normalized))


def load_graph(text: str) -> Graph:
    """Parse the graph JSON format {"n": int, "edges": [[u,v], ...]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    if "n" not in doc or "edges" not in doc:
        raise GraphError('graph document needs fields "n" and "edges"')
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError('"n" must be an integer')
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise GraphError('"edges" must be an array of pairs')
    return make_graph(n, edges)


def load_graph_file(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph(fh.read())


def dump_graph(g: Graph) -> str:
    """Inverse of load_graph on canonical graphs (byte-stable)."""
    edges = ", ".join(f"[{u}, {v}]" for u, v in g.edges)
    return f'{{"n": {g.n}, "edges": [{edges}]}}'


def induced_edges(g: Graph, x: Iterable[int]) -> frozenset[int]:
    """Indices of edges of g with both endpoints in the vertex set x."""
    members = frozenset(x)
    for v in members:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    return frozenset(
        i for i, (u, v) in enumerate(g.edges) if u in members and v in members
    )


def validate_instance(g: Graph, p: SparsityParams) -> None:
    """Guard shared by every entry point: n >= 2 and 0 <= ell <= 2k-1."""
    if g.n < 2:
        raise InstanceError(f"n < 2 unsupported (got n={g.n})")
    if p.k < 1 or p.ell < 0 or p.ell > 2 * p.k - 1:
        raise InstanceError(
            f"parameters (k={p.k}, ell={p.ell}) outside 0 <= ell <= 2k-1, k >= 1"
        )
