"""Deciding (k,l)-sparsity and enumerating tight spanning subgraphs.

Two deliberately independent implementations of the sparsity predicate
live here.  ``is_sparse_pebble`` (the production path) runs the standard
(k,l)-pebble game, valid on simple graphs for 0 <= l <= 2k-1.
``is_sparse_bruteforce`` is the exponential test oracle: it checks the
defining counting inequalities by literal enumeration, either over vertex
subsets or over edge subsets, whichever is cheaper for the instance (the
choice rule is documented on the function).  The test suite pins the two
against each other exhaustively on small graphs.

An edge subset F is identified by its sorted tuple of edge indices; a
basis is such a tuple of cardinality max(k*n - l, 0) whose subgraph is
sparse (hence tight and spanning).
"""

from __future__ import annotations

import itertools
import math
import os
from typing import Iterable

from . import _kernels
from .graphs import Graph, SparsityParams, validate_instance

Basis = tuple[int, ...]

DEFAULT_MAX_ENUM = 10**7
MAX_VERTEX_ENUM = 16  # 2^n subset scans beyond this are refused
MAX_EDGE_ENUM = 20  # 2^|F| subset scans beyond this are refused


class EnumerationGuardError(RuntimeError):
    """An enumeration would exceed its configured guard."""


def default_max_enum() -> int:
    """Basis-enumeration guard; SPARSITY_EF_MAX_ENUM overrides the default."""
    raw = os.environ.get("SPARSITY_EF_MAX_ENUM")
    if raw is None:
        return DEFAULT_MAX_ENUM
    try:
        value = int(raw)
    except ValueError:
        raise EnumerationGuardError(f"SPARSITY_EF_MAX_ENUM={raw!r} is not an integer") from None
    if value < 1:
        raise EnumerationGuardError("SPARSITY_EF_MAX_ENUM must be >= 1")
    return value


def _normalize_subset(g: Graph, edge_set: Iterable[int]) -> Basis:
    subset = tuple(sorted(set(edge_set)))
    for i in subset:
        if not (0 <= i < g.edge_count):
            raise ValueError(f"edge index {i} outside 0..{g.edge_count - 1}")
    return subset


def is_sparse_bruteforce(
    g: Graph,
    p: SparsityParams,
    edge_set: Iterable[int],
    *,
    max_vertex_enum: int = MAX_VERTEX_ENUM,
    max_edge_enum: int = MAX_EDGE_ENUM,
) -> bool:
    """Test oracle: decide sparsity by literal subset enumeration.

    Enumeration choice: whichever of the two equivalent forms has the
    smaller exponent is used — the vertex-subset form scans all X with
    |X| >= 2 and checks |F ∩ E(X)| <= max(k|X|-l, 0) (cost 2^n), the
    edge-subset form scans every F' ⊆ F and checks
    |F'| <= max(k|V(F')|-l, 0) (cost 2^|F|).  Ties go to the vertex form.
    Raises EnumerationGuardError when both exceed their guards.
    """
    validate_instance(g, p)
    subset = _normalize_subset(g, edge_set)
    vertex_ok = g.n <= max_vertex_enum
    edge_ok = len(subset) <= max_edge_enum
    if vertex_ok and (not edge_ok or g.n <= len(subset)):
        return _bruteforce_vertex_form(g, p, subset)
    if edge_ok:
        return _bruteforce_edge_form(g, p, subset)
    raise EnumerationGuardError(
        f"brute force refused: n={g.n} > {max_vertex_enum} and |F|={len(subset)} > {max_edge_enum}"
    )


def _bruteforce_vertex_form(g: Graph, p: SparsityParams, subset: Basis) -> bool:
    eu, ev = _kernels.as_edge_arrays([g.edges[i] for i in subset])
    return _kernels.count_violation(eu, ev, g.n, p.k, p.ell) < 0


def _bruteforce_edge_form(g: Graph, p: SparsityParams, subset: Basis) -> bool:
    # vertex incidence of F' grown along a DP over bitmasks of F
    vmasks = [(1 << g.edges[i][0]) | (1 << g.edges[i][1]) for i in subset]
    f = len(subset)
    vertex_mask = [0] * (1 << f)
    for mask in range(1, 1 << f):
        low = mask & -mask
        vertex_mask[mask] = vertex_mask[mask ^ low] | vmasks[low.bit_length() - 1]
    for mask in range(1, 1 << f):
        size = mask.bit_count()
        nverts = vertex_mask[mask].bit_count()
        if size > max(p.k * nverts - p.ell, 0):
            return False
    return True


def is_sparse_pebble(g: Graph, p: SparsityParams, edge_set: Iterable[int]) -> bool:
    """Decide sparsity with the (k,l)-pebble game (production path).

    Every vertex starts with k pebbles.  Edges of F are inserted in
    ascending index order; inserting {u,v} requires l+1 pebbles gathered
    on u and v, where a pebble is fetched by searching the oriented
    inserted edges (BFS, lower vertex index first) for a pebbled vertex
    and reversing the connecting path.  F is sparse iff every edge gets
    inserted.
    """
    validate_instance(g, p)
    subset = _normalize_subset(g, edge_set)
    k, ell = p
    pebbles = [k] * g.n
    out: list[set[int]] = [set() for _ in range(g.n)]
    for i in subset:
        u, v = g.edges[i]
        while pebbles[u] + pebbles[v] < ell + 1:
            if not _fetch_pebble(out, pebbles, u, v):
                return False
        if pebbles[u] > 0:
            pebbles[u] -= 1
            out[u].add(v)
        else:
            pebbles[v] -= 1
            out[v].add(u)
    return True


def _fetch_pebble(out: list[set[int]], pebbles: list[int], u: int, v: int) -> bool:
    """Move one pebble onto u or v by reversing a directed path; False if none reachable."""
    roots = (u, v) if u < v else (v, u)
    parent: dict[int, int | None] = {roots[0]: None, roots[1]: None}
    queue = list(roots)
    head = 0
    target = -1
    while head < len(queue):
        w = queue[head]
        head += 1
        if w != u and w != v and pebbles[w] > 0:
            target = w
            break
        for s in sorted(out[w]):
            if s not in parent:
                parent[s] = w
                queue.append(s)
    if target < 0:
        return False
    # reverse the path root -> target, paying the pebble to the root
    node = target
    while parent[node] is not None:
        prev = parent[node]
        out[prev].discard(node)
        out[node].add(prev)
        node = prev
    pebbles[target] -= 1
    pebbles[node] += 1
    return True


def tight_cardinality(g: Graph, p: SparsityParams) -> int:
    return max(p.k * g.n - p.ell, 0)


def is_tight(g: Graph, p: SparsityParams, edge_set: Iterable[int]) -> bool:
    """Spanning tightness: sparse and |F| = max(k*n - l, 0) with n = |V(G)|."""
    subset = _normalize_subset(g, edge_set)
    if len(subset) != tight_cardinality(g, p):
        return False
    return is_sparse_pebble(g, p, subset)


def enumerate_bases(
    g: Graph, p: SparsityParams, *, max_enum: int | None = None
) -> list[Basis]:
    """All tight spanning edge sets, in lexicographic edge-index order.

    Brute force over the C(|E|, k*n-l) fixed-size subsets, each filtered
    through the pebble game.  Refuses (EnumerationGuardError) when the
    candidate count exceeds the guard; an empty result is a legal outcome
    meaning the base polytope is empty.
    """
    validate_instance(g, p)
    guard = default_max_enum() if max_enum is None else max_enum
    m = tight_cardinality(g, p)
    if m > g.edge_count:
        return []
    candidates = math.comb(g.edge_count, m)
    if candidates > guard:
        raise EnumerationGuardError(
            f"C({g.edge_count},{m}) = {candidates} exceeds enumeration guard {guard}"
        )
    return [
        subset
        for subset in itertools.combinations(range(g.edge_count), m)
        if is_sparse_pebble(g, p, subset)
    ]
