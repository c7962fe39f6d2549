"""Batch command-line front end.

Subcommands: check, bases, orient, protocol, slack, factorize, emit,
verify.  Exit codes form the CI contract:

    0  success (for `check`: oracles agree and the set is sparse; for
       `protocol --mode exact`: expectation matches the slack; for
       `emit --verify` / `verify`: full PASS)
    1  parse/validation errors, inadmissible inputs, negative verdicts
    2  internal cross-check failure (sparsity oracle disagreement,
       expectation/slack mismatch) — a bug trap, not a user error
    3  enumeration guard exceeded
    4  empty polytope (no basis exists)

All numeric output is exact (integers or p/q rationals) except the Monte
Carlo standard error.  The SPARSITY_EF_MAX_ENUM environment variable or
--max-enum override the basis-enumeration guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .factorization import (
    build_factorization,
    factor_csvs,
    slack_matrix,
    slack_matrix_csv,
    slack_value,
    verify_factorization,
)
from .graphs import Graph, GraphError, InstanceError, SparsityParams, load_graph_file, validate_instance
from .lifted import EmptyPolytopeError, build_lifted, emit_ine, verify_extension
from .orientation import InfeasibleOrientationError, orient_with_targets, protocol_targets_A, protocol_targets_B
from .protocol import exact_expectation, monte_carlo, resolve_variant
from .sparsity import EnumerationGuardError, enumerate_bases, is_sparse_bruteforce, is_sparse_pebble, is_tight

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_GUARD = 3
EXIT_EMPTY = 4


def _parse_int_list(text: str, what: str) -> list[int]:
    if text.strip() == "":
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"could not parse {what} list {text!r}: expected comma-separated integers") from None


def _parse_edge_list(g: Graph, text: str) -> list[int]:
    """Edge subsets as comma-separated indices, or u-v endpoint pairs."""
    out = []
    if text.strip() == "":
        return out
    for tok in text.split(","):
        tok = tok.strip()
        if "-" in tok:
            u_str, v_str = tok.split("-", 1)
            out.append(g.index_of(int(u_str), int(v_str)))
        else:
            idx = int(tok)
            if not (0 <= idx < g.edge_count):
                raise ValueError(f"edge index {idx} outside 0..{g.edge_count - 1}")
            out.append(idx)
    return out


def _load_instance(args) -> tuple[Graph, SparsityParams]:
    g = load_graph_file(args.graph)
    p = SparsityParams(args.k, args.l)
    validate_instance(g, p)
    return g, p


def _frac(v) -> str:
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def cmd_check(args) -> int:
    g, p = _load_instance(args)
    subset = _parse_edge_list(g, args.edges) if args.edges is not None else list(range(g.edge_count))
    pebble = is_sparse_pebble(g, p, subset)
    brute = is_sparse_bruteforce(g, p, subset)
    print(f"sparse[pebble]: {'yes' if pebble else 'no'}")
    print(f"sparse[bruteforce]: {'yes' if brute else 'no'}")
    if pebble != brute:
        print("ORACLE DISAGREEMENT")
        return EXIT_MISMATCH
    tight = is_tight(g, p, subset)
    print(f"tight: {'yes' if tight else 'no'}")
    return EXIT_OK if pebble else EXIT_INVALID


def cmd_bases(args) -> int:
    g, p = _load_instance(args)
    bases = enumerate_bases(g, p, max_enum=args.max_enum)
    for basis in bases:
        print(",".join(str(i) for i in basis))
    print(len(bases))
    return EXIT_OK


def cmd_orient(args) -> int:
    g, p = _load_instance(args)
    subset = _parse_edge_list(g, args.edges) if args.edges is not None else list(range(g.edge_count))
    if args.targets is not None:
        targets = _parse_int_list(args.targets, "targets")
    elif args.y is not None:
        if args.x is None:
            raise ValueError("--y needs --x")
        targets = protocol_targets_B(g.n, p, args.x, args.y)
    elif args.x is not None:
        targets = protocol_targets_A(g.n, p, args.x)
    else:
        raise ValueError("need --targets, or --x (variant A), or --x and --y (variant B)")
    orientation = orient_with_targets(g.n, [g.edges[i] for i in sorted(set(subset))], targets)
    for tail, head in orientation.directed_edges():
        print(f"{tail}->{head}")
    print("rho: " + ",".join(str(r) for r in orientation.rho))
    return EXIT_OK


def cmd_protocol(args) -> int:
    g, p = _load_instance(args)
    variant = resolve_variant(p, args.variant)
    x_set = _parse_int_list(args.X, "vertex")
    basis = _parse_edge_list(g, args.F)
    if args.mode == "exact":
        expectation = exact_expectation(g, p, variant, x_set, basis)
        slack = slack_value(g, p, x_set, basis)
        match = expectation == slack
        print(f"expectation: {_frac(expectation)}")
        print(f"slack: {_frac(slack)}")
        print("MATCH" if match else "MISMATCH")
        return EXIT_OK if match else EXIT_MISMATCH
    result = monte_carlo(g, p, variant, x_set, basis, args.samples, args.seed)
    print(f"mean: {_frac(result.mean)}")
    print(f"stderr: {result.stderr!r}")
    print(f"samples: {result.samples}")
    print(f"seed: {args.seed}")
    return EXIT_OK


def cmd_slack(args) -> int:
    g, p = _load_instance(args)
    csv = slack_matrix_csv(slack_matrix(g, p, max_enum=args.max_enum))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def cmd_factorize(args) -> int:
    g, p = _load_instance(args)
    variant = resolve_variant(p, args.variant)
    s = slack_matrix(g, p, max_enum=args.max_enum)
    fac = build_factorization(g, p, variant, max_enum=args.max_enum)
    check = verify_factorization(s, fac)
    print(f"variant: {variant}")
    print(f"slack matrix: {s.shape[0]}x{s.shape[1]}")
    print(f"transcripts: {len(fac.transcripts)}")
    print(f"verified: {'yes' if check.ok else 'no'}")
    if not check.ok:
        print(f"witness: {check.witness} ({check.reason})")
        return EXIT_MISMATCH
    if args.out:
        t_csv, u_csv = factor_csvs(fac)
        for suffix, text in (("S.csv", slack_matrix_csv(s)), ("T.csv", t_csv), ("U.csv", u_csv)):
            path = f"{args.out}.{suffix}"
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            print(f"wrote {path}")
    return EXIT_OK


def cmd_emit(args) -> int:
    g, p = _load_instance(args)
    variant = resolve_variant(p, args.variant)
    q = build_lifted(g, p, variant, max_enum=args.max_enum)
    emit_ine(q, args.out)
    print(f"wrote {args.out} ({q.equality_count} equalities + {q.inequality_count} inequalities)")
    if args.verify:
        report = verify_extension(g, p, variant, seed=args.seed, max_enum=args.max_enum)
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_OK if report["pass"] else EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    g, p = _load_instance(args)
    variant = resolve_variant(p, args.variant)
    report = verify_extension(g, p, variant, seed=args.seed, max_enum=args.max_enum)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    print(text)
    return EXIT_OK if report["pass"] else EXIT_MISMATCH


def _add_instance_args(sp) -> None:
    sp.add_argument("--graph", required=True, help="path to a graph JSON file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--max-enum", type=int, default=None, help="basis enumeration guard override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsity-ef",
        description="Sparsity-matroid base polytopes: oracles, protocols, factorizations, extended formulations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="run both sparsity oracles on an edge subset")
    _add_instance_args(sp)
    sp.add_argument("--edges", default=None, help="edge subset (indices or u-v pairs); default: all edges")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("bases", help="enumerate all tight spanning edge sets")
    _add_instance_args(sp)
    sp.set_defaults(func=cmd_bases)

    sp = sub.add_parser("orient", help="orient an edge subset to prescribed in-degrees")
    _add_instance_args(sp)
    sp.add_argument("--edges", default=None, help="edge subset; default: all edges")
    sp.add_argument("--x", type=int, default=None, help="announced vertex (variant A targets)")
    sp.add_argument("--y", type=int, default=None, help="second announced vertex (variant B targets)")
    sp.add_argument("--targets", default=None, help="explicit in-degree targets, comma-separated")
    sp.set_defaults(func=cmd_orient)

    sp = sub.add_parser("protocol", help="run one protocol cell exactly or by sampling")
    _add_instance_args(sp)
    sp.add_argument("--variant", choices=["auto", "A", "B"], default="auto")
    sp.add_argument("--X", required=True, help="Alice's vertex set, comma-separated")
    sp.add_argument("--F", required=True, help="Bob's basis (edge indices or u-v pairs)")
    sp.add_argument("--mode", choices=["exact", "mc"], default="exact")
    sp.add_argument("--samples", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_protocol)

    sp = sub.add_parser("slack", help="print or save the slack matrix CSV")
    _add_instance_args(sp)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_slack)

    sp = sub.add_parser("factorize", help="build and verify the slack factorization")
    _add_instance_args(sp)
    sp.add_argument("--variant", choices=["auto", "A", "B"], default="auto")
    sp.add_argument("--out", default=None, help="prefix for S/T/U CSV dumps")
    sp.set_defaults(func=cmd_factorize)

    sp = sub.add_parser("emit", help="write the lifted polytope as an .ine file")
    _add_instance_args(sp)
    sp.add_argument("--variant", choices=["auto", "A", "B"], default="auto")
    sp.add_argument("--out", required=True)
    sp.add_argument("--verify", action="store_true", help="also run the full verification report")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_emit)

    sp = sub.add_parser("verify", help="run the extension verification report")
    _add_instance_args(sp)
    sp.add_argument("--variant", choices=["auto", "A", "B"], default="auto")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None, help="write the JSON report here as well")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except EmptyPolytopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except InfeasibleOrientationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"violating vertex set: {sorted(exc.witness)}", file=sys.stderr)
        return EXIT_INVALID
    except (GraphError, InstanceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
