"""Slack matrix of the base polytope and its protocol-induced factorization.

Rows of the slack matrix are the counting inequalities indexed by vertex
sets X with 2 <= |X| <= n-1 (the full-set row is the global equality and
singletons are dominated, so neither appears); columns are the bases in
lexicographic edge-index order.  Entry: k|X| - l - |F ∩ E(X)|, a
non-negative integer.

A transcript is one full protocol round: Alice's announced vertices plus
Bob's announced directed edge.  Transcripts are indexed lexicographically
by (alice vertices, edge index, head flag), where flag 0 points the edge
at its higher endpoint and flag 1 at its lower; there are 2n|E| of them
for variant A and 2n(n-1)|E| for variant B.  The factor matrices are

    T[X][w] = (k n - l) * [alice(w) = alice_choice(X)]
                        * [w's edge enters X]            in {0, k n - l}
    U[w][F] = 1/|F|     * [w's directed edge appears in Bob's
                           orientation of F for alice(w)]  in {0, 1/|F|}

and T @ U recovers the slack matrix exactly; every entry here is a python
int or Fraction, never a float.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .graphs import Graph, SparsityParams, induced_edges, validate_instance
from .protocol import (
    VARIANT_A,
    alice_choice,
    canonical_orientation,
    resolve_variant,
)
from .sparsity import Basis, EnumerationGuardError, enumerate_bases

MAX_ROW_ENUM_N = 16


class Transcript(NamedTuple):
    alice: tuple[int, ...]
    edge: int
    head: int

    def directed(self, g: Graph) -> tuple[int, int]:
        u, v = g.edges[self.edge]
        return (u, v) if self.head == v else (v, u)


def enumerate_rows(g: Graph, p: SparsityParams) -> list[tuple[int, ...]]:
    """All X with 2 <= |X| <= n-1 as sorted tuples, in lexicographic order."""
    validate_instance(g, p)
    if g.n > MAX_ROW_ENUM_N:
        raise EnumerationGuardError(
            f"row enumeration refused for n={g.n} > {MAX_ROW_ENUM_N}"
        )
    rows = []
    for size in range(2, g.n):
        rows.extend(itertools.combinations(range(g.n), size))
    rows.sort()
    return rows


def slack_value(g: Graph, p: SparsityParams, x_set: Iterable[int], basis: Iterable[int]) -> int:
    """k|X| - l - |F ∩ E(X)|; non-negative whenever the basis is sparse."""
    members = frozenset(x_set)
    inside = induced_edges(g, members)
    overlap = len(inside.intersection(basis))
    return p.k * len(members) - p.ell - overlap


@dataclass(frozen=True)
class SlackMatrix:
    rows: tuple[tuple[int, ...], ...]
    cols: tuple[Basis, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))


def slack_matrix(g: Graph, p: SparsityParams, *, max_enum: int | None = None) -> SlackMatrix:
    rows = enumerate_rows(g, p)
    cols = enumerate_bases(g, p, max_enum=max_enum)
    entries = tuple(
        tuple(slack_value(g, p, x, f) for f in cols) for x in rows
    )
    return SlackMatrix(rows=tuple(rows), cols=tuple(cols), entries=entries)


def _alice_parts(g: Graph, variant: str) -> list[tuple[int, ...]]:
    if variant == VARIANT_A:
        return [(x,) for x in range(g.n)]
    return [(x, y) for x in range(g.n) for y in range(g.n) if x != y]


def enumerate_transcripts(g: Graph, variant: str) -> tuple[Transcript, ...]:
    """Lexicographic over (alice vertices, edge index, head flag)."""
    out = []
    for alice in _alice_parts(g, variant):
        for i, (u, v) in enumerate(g.edges):
            out.append(Transcript(alice=alice, edge=i, head=v))  # flag 0: head high
            out.append(Transcript(alice=alice, edge=i, head=u))  # flag 1: head low
    return tuple(out)


def build_T(
    g: Graph,
    p: SparsityParams,
    variant: str,
    rows: Sequence[tuple[int, ...]],
    transcripts: Sequence[Transcript],
) -> tuple[tuple[int, ...], ...]:
    c = p.k * g.n - p.ell
    out = []
    for x in rows:
        members = frozenset(x)
        announce = alice_choice(members, variant)
        row = []
        for w in transcripts:
            if w.alice != announce:
                row.append(0)
                continue
            tail, head = w.directed(g)
            row.append(c if (tail not in members and head in members) else 0)
        out.append(tuple(row))
    return tuple(out)


def build_U(
    g: Graph,
    p: SparsityParams,
    variant: str,
    cols: Sequence[Basis],
    transcripts: Sequence[Transcript],
) -> tuple[tuple[Fraction, ...], ...]:
    index = {w: i for i, w in enumerate(transcripts)}
    alice_parts = _alice_parts(g, variant)
    u_cols: list[dict[int, Fraction]] = []
    for basis in cols:
        weight = Fraction(1, len(basis))
        col: dict[int, Fraction] = {}
        for alice in alice_parts:
            orientation = canonical_orientation(g, p, variant, basis, alice)
            for edge_idx, head in zip(basis, orientation.heads):
                col[index[Transcript(alice=alice, edge=edge_idx, head=head)]] = weight
        u_cols.append(col)
    return tuple(
        tuple(u_cols[j].get(i, Fraction(0)) for j in range(len(cols)))
        for i in range(len(transcripts))
    )


@dataclass(frozen=True)
class Factorization:
    variant: str
    transcripts: tuple[Transcript, ...]
    rows: tuple[tuple[int, ...], ...]
    cols: tuple[Basis, ...]
    T: tuple[tuple[int, ...], ...]
    U: tuple[tuple[Fraction, ...], ...]


def build_factorization(
    g: Graph, p: SparsityParams, variant: str = "auto", *, max_enum: int | None = None
) -> Factorization:
    variant = resolve_variant(p, variant)
    rows = enumerate_rows(g, p)
    cols = enumerate_bases(g, p, max_enum=max_enum)
    transcripts = enumerate_transcripts(g, variant)
    return Factorization(
        variant=variant,
        transcripts=transcripts,
        rows=tuple(rows),
        cols=tuple(cols),
        T=build_T(g, p, variant, rows, transcripts),
        U=build_U(g, p, variant, cols, transcripts),
    )


class FactorizationCheck(NamedTuple):
    ok: bool
    witness: tuple | None
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def verify_factorization(s: SlackMatrix, fac: Factorization) -> FactorizationCheck:
    """Exact check that T and U are nonnegative and T @ U equals the slack matrix.

    The witness names the first offending entry in row-major order:
    ("T", i, j) / ("U", i, j) for a negative factor entry, (i, j) for a
    product mismatch.  Dimension incompatibilities raise instead.
    """
    nrows, ncols = s.shape
    w = len(fac.transcripts)
    if len(fac.T) != nrows or any(len(r) != w for r in fac.T):
        raise ValueError(f"T must be {nrows}x{w}")
    if len(fac.U) != w or any(len(r) != ncols for r in fac.U):
        raise ValueError(f"U must be {w}x{ncols}")
    for i, row in enumerate(fac.T):
        for j, t in enumerate(row):
            if t < 0:
                return FactorizationCheck(False, ("T", i, j), f"T[{i}][{j}] = {t} < 0")
    for i, row in enumerate(fac.U):
        for j, u in enumerate(row):
            if u < 0:
                return FactorizationCheck(False, ("U", i, j), f"U[{i}][{j}] = {u} < 0")
    # column-sparse product: U columns hold at most one nonzero per (alice, basis edge)
    nonzero_cols: list[list[tuple[int, Fraction]]] = [[] for _ in range(ncols)]
    for wi, row in enumerate(fac.U):
        for j, u in enumerate(row):
            if u:
                nonzero_cols[j].append((wi, u))
    for i in range(nrows):
        t_row = fac.T[i]
        for j in range(ncols):
            acc = Fraction(0)
            for wi, u in nonzero_cols[j]:
                t = t_row[wi]
                if t:
                    acc += t * u
            if acc != s.entries[i][j]:
                return FactorizationCheck(
                    False,
                    (i, j),
                    f"(T@U)[{i}][{j}] = {acc} but slack is {s.entries[i][j]}",
                )
    return FactorizationCheck(True, None, "T@U = S exactly; T, U >= 0")


def _label(prefix: str, indices: Iterable[int]) -> str:
    return prefix + "+".join(str(i) for i in indices)


def format_matrix_csv(
    row_labels: Sequence[str], col_labels: Sequence[str], entries
) -> str:
    """Matrix dump: header line of column labels, then one labelled row per line.

    Entries are exact rationals rendered as 'p' or 'p/q'.
    """
    lines = ["," + ",".join(col_labels)]
    for label, row in zip(row_labels, entries):
        lines.append(label + "," + ",".join(str(Fraction(v)) for v in row))
    return "\n".join(lines) + "\n"


def slack_matrix_csv(s: SlackMatrix) -> str:
    return format_matrix_csv(
        [_label("X:", x) for x in s.rows],
        [_label("F:", f) for f in s.cols],
        s.entries,
    )


def factor_csvs(fac: Factorization) -> tuple[str, str]:
    """CSV dumps of (T, U) with transcript labels 'a0[+a1]/e<idx>h<head>'."""
    w_labels = [
        _label("", w.alice) + f"/e{w.edge}h{w.head}" for w in fac.transcripts
    ]
    t_csv = format_matrix_csv(
        [_label("X:", x) for x in fac.rows], w_labels, fac.T
    )
    u_csv = format_matrix_csv(
        w_labels, [_label("F:", f) for f in fac.cols], fac.U
    )
    return t_csv, u_csv
