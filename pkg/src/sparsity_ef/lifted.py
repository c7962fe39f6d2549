"""The lifted polytope implied by the factorization, its emission and checks.

The lift follows the standard slack-covering construction: one equality
per counting row X,

    sum_{e in E(X)} x_e  +  sum_w T[X][w] * y_w  =  k|X| - l,

plus the global equality sum_e x_e = k n - l, with x >= 0 and y >= 0.
Since T >= 0, any point with y >= 0 satisfies
sum_{E(X)} x_e <= k|X| - l row by row, which is the structural half of
projection correctness; the other half is that every basis lifts
feasibly with y set to its U-column.  The inequality count |E| + |W| is
an upper bound on the facet count (the measure the size theorems use);
reports carry both totals, with and without the |E| edge bounds.

Emission uses the cdd/lrs ``.ine`` H-representation layout with equality
rows first and exact integer coefficients, byte-deterministic for a
fixed instance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .factorization import (
    Transcript,
    build_T,
    build_U,
    enumerate_rows,
    enumerate_transcripts,
)
from .graphs import Graph, SparsityParams, induced_edges, validate_instance
from .protocol import VARIANT_A, bit_complexity, resolve_variant
from .sparsity import Basis, enumerate_bases


class EmptyPolytopeError(ValueError):
    """The instance has no basis at all, so there is nothing to lift."""


class InfeasibleLiftedPointError(ValueError):
    """A point claimed to lie in the lifted polytope violates one of its constraints."""


@dataclass(frozen=True)
class LiftedPolytope:
    graph: Graph
    params: SparsityParams
    variant: str
    rows: tuple[tuple[int, ...], ...]
    row_edges: tuple[tuple[int, ...], ...]  # E(X) indices per row
    row_rhs: tuple[int, ...]
    transcripts: tuple[Transcript, ...]
    T: tuple[tuple[int, ...], ...]
    global_rhs: int

    @property
    def x_count(self) -> int:
        return self.graph.edge_count

    @property
    def y_count(self) -> int:
        return len(self.transcripts)

    @property
    def equality_count(self) -> int:
        return len(self.rows) + 1

    @property
    def inequality_count(self) -> int:
        """Nonnegativity bounds on x and y; the formulation's size measure."""
        return self.x_count + self.y_count


class LiftedPoint(NamedTuple):
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]


def build_lifted(
    g: Graph, p: SparsityParams, variant: str = "auto", *, max_enum: int | None = None
) -> LiftedPolytope:
    """Assemble the equality system; refuses instances with an empty basis family."""
    validate_instance(g, p)
    variant = resolve_variant(p, variant)
    if not enumerate_bases(g, p, max_enum=max_enum):
        raise EmptyPolytopeError(
            f"no (k={p.k},l={p.ell})-tight spanning subgraph exists: the polytope is empty"
        )
    rows = enumerate_rows(g, p)
    transcripts = enumerate_transcripts(g, variant)
    return LiftedPolytope(
        graph=g,
        params=p,
        variant=variant,
        rows=tuple(rows),
        row_edges=tuple(tuple(sorted(induced_edges(g, x))) for x in rows),
        row_rhs=tuple(p.k * len(x) - p.ell for x in rows),
        transcripts=transcripts,
        T=build_T(g, p, variant, rows, transcripts),
        global_rhs=p.k * g.n - p.ell,
    )


def lift_vertex(q: LiftedPolytope, basis: Basis) -> LiftedPoint:
    """The canonical lift of a basis: x = its incidence vector, y = its U-column."""
    g, p = q.graph, q.params
    basis = tuple(sorted(basis))
    in_basis = set(basis)
    x = tuple(Fraction(1 if i in in_basis else 0) for i in range(g.edge_count))
    column = build_U(g, p, q.variant, [basis], q.transcripts)
    y = tuple(row[0] for row in column)
    return LiftedPoint(x=x, y=y)


def equality_residuals(q: LiftedPolytope, point: LiftedPoint) -> list[Fraction]:
    """Left-hand side minus right-hand side for each row equality, then the global one."""
    residuals = []
    for edge_idx, t_row, rhs in zip(q.row_edges, q.T, q.row_rhs):
        acc = sum((point.x[i] for i in edge_idx), Fraction(0))
        acc += sum((t * yw for t, yw in zip(t_row, point.y) if t), Fraction(0))
        residuals.append(acc - rhs)
    residuals.append(sum(point.x, Fraction(0)) - q.global_rhs)
    return residuals


def assert_in_lifted(q: LiftedPolytope, point: LiftedPoint) -> None:
    if len(point.x) != q.x_count or len(point.y) != q.y_count:
        raise InfeasibleLiftedPointError(
            f"point has shape ({len(point.x)}, {len(point.y)}), "
            f"expected ({q.x_count}, {q.y_count})"
        )
    for i, xv in enumerate(point.x):
        if xv < 0:
            raise InfeasibleLiftedPointError(f"x[{i}] = {xv} < 0")
    for i, yv in enumerate(point.y):
        if yv < 0:
            raise InfeasibleLiftedPointError(f"y[{i}] = {yv} < 0")
    for idx, res in enumerate(equality_residuals(q, point)):
        if res != 0:
            name = "global" if idx == len(q.rows) else f"X={q.rows[idx]}"
            raise InfeasibleLiftedPointError(f"equality row {name} has residual {res}")


def check_projection(g: Graph, p: SparsityParams, q: LiftedPolytope, point: LiftedPoint) -> bool:
    """Soundness audit: a feasible lifted point must project into the base polytope.

    Raises InfeasibleLiftedPointError when the point is not in the lifted
    polytope (that is an input error, not a projection failure); otherwise
    returns whether the x-part satisfies every counting inequality, the
    global equality and x >= 0.
    """
    assert_in_lifted(q, point)
    x = point.x
    if any(xv < 0 for xv in x):
        return False
    if sum(x, Fraction(0)) != max(p.k * g.n - p.ell, 0):
        return False
    for size in range(2, g.n + 1):
        for members in itertools.combinations(range(g.n), size):
            total = sum((x[i] for i in induced_edges(g, members)), Fraction(0))
            if total > max(p.k * size - p.ell, 0):
                return False
    return True


def _audit_points(
    q: LiftedPolytope, lifts: Sequence[LiftedPoint], samples: int, seed: int
) -> list[LiftedPoint]:
    """Seeded random rational convex combinations of the lifted vertices."""
    rng = random.Random(seed)
    points = []
    for _ in range(samples):
        raw = [rng.randint(0, 10) for _ in lifts]
        if sum(raw) == 0:
            raw[rng.randrange(len(raw))] = 1
        den = sum(raw)
        weights = [Fraction(w, den) for w in raw]
        x = tuple(
            sum((w * lift.x[i] for w, lift in zip(weights, lifts)), Fraction(0))
            for i in range(q.x_count)
        )
        y = tuple(
            sum((w * lift.y[i] for w, lift in zip(weights, lifts)), Fraction(0))
            for i in range(q.y_count)
        )
        points.append(LiftedPoint(x=x, y=y))
    return points


def verify_extension(
    g: Graph,
    p: SparsityParams,
    variant: str = "auto",
    *,
    audit_samples: int = 5,
    seed: int = 0,
    max_enum: int | None = None,
) -> dict:
    """End-to-end verification report for one instance.

    Asserts that every basis lifts with zero residuals, that T is
    entrywise nonnegative (the structural certificate that feasible
    points project into the base polytope), audits seeded convex
    combinations through check_projection, and reconciles all counts
    against the protocol's size bounds.  Raises on any failed assertion;
    returns the report dict on success.
    """
    validate_instance(g, p)
    variant = resolve_variant(p, variant)
    bases = enumerate_bases(g, p, max_enum=max_enum)
    if not bases:
        raise EmptyPolytopeError(
            f"no (k={p.k},l={p.ell})-tight spanning subgraph exists: the polytope is empty"
        )
    q = build_lifted(g, p, variant, max_enum=max_enum)

    lifts = []
    for basis in bases:
        point = lift_vertex(q, basis)
        assert_in_lifted(q, point)  # raises with witness on any residual
        lifts.append(point)

    for i, row in enumerate(q.T):
        for j, t in enumerate(row):
            if t < 0:
                raise AssertionError(f"T[{i}][{j}] = {t} < 0 breaks the projection argument")

    audits = _audit_points(q, lifts, audit_samples, seed)
    audited = [lifts[0], *audits]
    for point in audited:
        if not check_projection(g, p, q, point):
            raise AssertionError("a feasible lifted point projected outside the base polytope")

    n, m = g.n, g.edge_count
    w = q.y_count
    expected_w = 2 * n * m if variant == VARIANT_A else 2 * n * (n - 1) * m
    bits = bit_complexity(g, variant)
    size_bound = 3 * n * m if variant == VARIANT_A else 3 * n * n * m
    counts_ok = (
        w == expected_w
        and q.inequality_count == m + expected_w
        and q.equality_count == len(q.rows) + 1
    )
    if not counts_ok:
        raise AssertionError(
            f"count mismatch: |W|={w} (expected {expected_w}), "
            f"inequalities={q.inequality_count}"
        )
    if w > 2**bits:
        raise AssertionError(f"|W|={w} exceeds the protocol bound 2^{bits}")
    if q.inequality_count > size_bound:
        raise AssertionError(
            f"inequality count {q.inequality_count} exceeds the size bound {size_bound}"
        )

    return {
        "instance": {"n": n, "edge_count": m, "k": p.k, "ell": p.ell},
        "variant": variant,
        "counts": {
            "bases": len(bases),
            "x_vars": q.x_count,
            "y_vars": w,
            "equality_rows": q.equality_count,
            "inequality_count": q.inequality_count,
            "inequality_count_excluding_edge_bounds": w,
            "ine_rows": q.equality_count + q.inequality_count,
        },
        "bounds": {
            "bit_complexity": bits,
            "protocol_size_bound": 2**bits,
            "transcripts_within_protocol_bound": w <= 2**bits,
            "size_bound": size_bound,
            "within_size_bound": q.inequality_count <= size_bound,
        },
        "checks": {
            "basis_lifts_feasible": len(lifts),
            "projection_audits": len(audited),
            "factor_nonnegative": True,
        },
        "note": (
            "size counts inequality constraints, an upper bound on the facet count"
        ),
        "pass": True,
    }


def _render(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_ine(q: LiftedPolytope) -> str:
    """H-representation text: equalities first (listed in `linearity`), then bounds.

    Each row is ``b  -a`` for a constraint a.z <= b (cdd convention
    ``b + a'.z >= 0``); columns are 1 + |E| + |W|.
    """
    d = q.x_count + q.y_count
    rows: list[list] = []
    for edge_idx, t_row, rhs in zip(q.row_edges, q.T, q.row_rhs):
        coeff = [0] * d
        for i in edge_idx:
            coeff[i] = -1
        for j, t in enumerate(t_row):
            if t:
                coeff[q.x_count + j] = -t
        rows.append([rhs, *coeff])
    rows.append([q.global_rhs, *([-1] * q.x_count), *([0] * q.y_count)])
    for i in range(d):
        coeff = [0] * d
        coeff[i] = 1
        rows.append([0, *coeff])

    n_eq = q.equality_count
    lines = ["H-representation"]
    lines.append("linearity " + " ".join([str(n_eq), *[str(i + 1) for i in range(n_eq)]]))
    lines.append("begin")
    lines.append(f"{len(rows)} {d + 1} rational")
    for row in rows:
        lines.append(" ".join(_render(v) for v in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def emit_ine(q: LiftedPolytope, path) -> None:
    """Write the H-representation; byte-identical across runs for a fixed instance."""
    text = format_ine(q)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
