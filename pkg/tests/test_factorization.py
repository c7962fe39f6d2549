import itertools
from dataclasses import replace
from fractions import Fraction

import pytest

from sparsity_ef.graphs import SparsityParams
from sparsity_ef.factorization import (
    build_factorization,
    enumerate_rows,
    enumerate_transcripts,
    slack_matrix,
    slack_matrix_csv,
    slack_value,
    verify_factorization,
)
from sparsity_ef.protocol import exact_expectation
from sparsity_ef.sparsity import enumerate_bases

from conftest import complete_graph, path_graph

K3 = complete_graph(3)
K4 = complete_graph(4)
P11 = SparsityParams(1, 1)
P23 = SparsityParams(2, 3)


def test_enumerate_rows():
    assert enumerate_rows(K3, P11) == [(0, 1), (0, 2), (1, 2)]
    assert enumerate_rows(complete_graph(2), P11) == []
    k4_rows = enumerate_rows(K4, P23)
    assert len(k4_rows) == 10
    assert k4_rows == sorted(k4_rows)
    assert all(2 <= len(x) <= 3 for x in k4_rows)


def test_slack_value_examples():
    assert slack_value(K3, P11, {0, 1}, (1, 2)) == 1
    assert slack_value(K3, P11, {0, 1}, (0, 2)) == 0
    assert slack_value(K4, P23, {0, 1, 2}, (0, 1, 2, 3, 4)) == 0


def test_k3_slack_matrix_pattern():
    s = slack_matrix(K3, P11)
    assert s.shape == (3, 3)
    for i, x in enumerate(s.rows):
        x_edge = K3.index_of(*x)
        for j, basis in enumerate(s.cols):
            assert s.entries[i][j] == (0 if x_edge in basis else 1)


def test_k4_slack_matrix_zero_one():
    s = slack_matrix(K4, P23)
    assert s.shape == (10, 6)
    assert {e for row in s.entries for e in row} == {0, 1}
    assert all(e >= 0 for row in s.entries for e in row)


def test_empty_family_gives_zero_columns():
    s = slack_matrix(path_graph(3), P23)
    assert s.shape == (3, 0)
    fac = build_factorization(path_graph(3), P23, "B")
    assert verify_factorization(s, fac).ok


def test_transcript_counts_and_order():
    ws = enumerate_transcripts(K3, "A")
    assert len(ws) == 2 * 3 * 3
    assert [w.alice for w in ws[:6]] == [(0,)] * 6
    assert [(w.edge, w.head) for w in ws[:4]] == [(0, 1), (0, 0), (1, 2), (1, 0)]
    wb = enumerate_transcripts(K4, "B")
    assert len(wb) == 4 * 3 * 2 * 6 == 144
    assert wb[0].alice == (0, 1)


def test_factorization_dimensions_and_entry_domains():
    fac = build_factorization(K3, P11, "A")
    assert len(fac.T) == 3 and all(len(r) == 18 for r in fac.T)
    assert len(fac.U) == 18 and all(len(r) == 3 for r in fac.U)
    assert {t for row in fac.T for t in row} <= {0, 2}
    assert {u for row in fac.U for u in row} <= {Fraction(0), Fraction(1, 2)}


def test_u_column_sums_equal_n_variant_a():
    for g, p in [(K3, P11), (K4, P11)]:
        fac = build_factorization(g, p, "A")
        for j in range(len(fac.cols)):
            assert sum(fac.U[i][j] for i in range(len(fac.U))) == g.n


def test_verify_factorization_small_instances():
    for g, p, variant in [
        (K3, P11, "A"),
        (K3, P11, "B"),
        (K4, P11, "A"),
        (K4, P23, "B"),
        (K4, SparsityParams(2, 2), "A"),
        (K4, SparsityParams(1, 0), "A"),
    ]:
        s = slack_matrix(g, p)
        fac = build_factorization(g, p, variant)
        check = verify_factorization(s, fac)
        assert check.ok, (variant, check)


def test_fault_injection_detected():
    s = slack_matrix(K3, P11)
    fac = build_factorization(K3, P11, "A")
    u_rows = [list(row) for row in fac.U]
    u_rows[4][1] += 1
    broken = replace(fac, U=tuple(tuple(r) for r in u_rows))
    check = verify_factorization(s, broken)
    assert not check.ok
    assert check.witness is not None


def test_negative_entry_detected():
    s = slack_matrix(K3, P11)
    fac = build_factorization(K3, P11, "A")
    u_rows = [list(row) for row in fac.U]
    u_rows[2][0] -= 1
    broken = replace(fac, U=tuple(tuple(r) for r in u_rows))
    check = verify_factorization(s, broken)
    assert not check.ok and check.witness == ("U", 2, 0)


def test_dimension_mismatch_raises():
    s = slack_matrix(K3, P11)
    fac = build_factorization(K3, P11, "A")
    with pytest.raises(ValueError):
        verify_factorization(s, replace(fac, T=fac.T[:-1]))


def test_product_matches_protocol_expectation():
    """T @ U recomputes the exact protocol expectation, route by route."""
    for g, p, variant in [(K4, P11, "A"), (K4, P23, "B")]:
        fac = build_factorization(g, p, variant)
        for i, x in enumerate(fac.rows):
            for j, basis in enumerate(fac.cols):
                cell = sum(
                    fac.T[i][w] * fac.U[w][j]
                    for w in range(len(fac.transcripts))
                    if fac.T[i][w]
                )
                assert cell == exact_expectation(g, p, variant, x, basis)


def test_slack_entries_nonnegative_integers(corpus_cells):
    for name, g, p, bases in corpus_cells:
        s = slack_matrix(g, p)
        assert s.cols == tuple(bases)
        for row in s.entries:
            for e in row:
                assert isinstance(e, int) and e >= 0, (name, p)


def test_slack_csv_golden():
    expected = (
        ",F:0+1,F:0+2,F:1+2\n"
        "X:0+1,0,0,1\n"
        "X:0+2,0,1,0\n"
        "X:1+2,1,0,0\n"
    )
    assert slack_matrix_csv(slack_matrix(K3, P11)) == expected
