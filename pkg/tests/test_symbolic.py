import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import REFERENCE_GRAPHS, weighted_graphs
from wmk.graph import WeightedGraph, bundled_graph, strata
from wmk.symbolic import (
    BlockMatrix,
    DimensionMismatch,
    EmptySource,
    IndexOutOfRange,
    Letter,
    ReductionRuleSet,
    StarPolynomial,
    block,
    build_A,
    epsilon,
    reduce,
    star_transpose,
    verify_identity,
    verify_theorem_witnesses,
)

V = StarPolynomial.vertex


def E(g, eid, i, star=False):
    return StarPolynomial.edge(g.edge(eid), i, star)


def test_build_A_rose():
    g = bundled_graph("rose_3333")
    A = build_A(g, "v")
    assert (A.rows, A.cols) == (3, 4)
    assert all(A[i, j] for i in range(3) for j in range(4))
    assert A[1, 2] == E(g, g.edges[2].id, 2)


def test_build_A_lprime():
    g = bundled_graph("fork_12")
    A = build_A(g, "v")
    assert A.entries == ((E(g, "e", 1), E(g, "f", 1)), (StarPolynomial(), E(g, "f", 2)))
    with pytest.raises(EmptySource):
        build_A(g, "u")


def test_blocks():
    g = bundled_graph("fork_12")
    assert block(g, "v", 0, 2, 0, 2) == build_A(g, "v")
    assert block(g, "v", 0, 1, 0, 1).entries == ((E(g, "e", 1),),)
    r = bundled_graph("rose_2333")
    b = block(r, "v", 1, 2, 1, 2)
    es = strata(r, "v").ordered_edges
    assert (b.rows, b.cols) == (1, 3)
    assert b.entries == (tuple(StarPolynomial.edge(e, 3) for e in es[1:]),)
    with pytest.raises(IndexOutOfRange):
        block(g, "v", 1, 1, 0, 1)
    with pytest.raises(IndexOutOfRange):
        block(g, "v", 0, 3, 0, 1)


def test_star_transpose():
    g = bundled_graph("fork_12")
    A = build_A(g, "v")
    S = star_transpose(A)
    assert S.entries == ((E(g, "e", 1, True), StarPolynomial()), (E(g, "f", 1, True), E(g, "f", 2, True)))
    assert star_transpose(S) == A
    single = BlockMatrix.of([[V("v")]])
    assert star_transpose(single) == single


def test_zero_padding():
    g = bundled_graph("fork_12")
    assert E(g, "e", 2).is_zero()
    padded = StarPolynomial({(Letter("e", "e", 2), Letter("v", "u")): 1})
    assert reduce(padded, ReductionRuleSet(g)).is_zero()


def test_relation_iii_on_rose():
    g = bundled_graph("rose_3333")
    rules = ReductionRuleSet(g)
    s = StarPolynomial()
    for e in g.edges:
        s = s + StarPolynomial.edge(e, 1) * StarPolynomial.edge(e, 1, True)
    assert reduce(s, rules) == V("v")
    off = StarPolynomial()
    for e in g.edges:
        off = off + StarPolynomial.edge(e, 1) * StarPolynomial.edge(e, 2, True)
    assert reduce(off, rules).is_zero()
    partial = StarPolynomial.edge(g.edges[0], 1) * StarPolynomial.edge(g.edges[0], 1, True)
    assert reduce(partial, rules) == partial


def test_relation_iv_on_rose():
    g = bundled_graph("rose_3333")
    e, f = g.edges[0], g.edges[1]
    s = sum(
        (StarPolynomial.edge(e, h, True) * StarPolynomial.edge(f, h) for h in (1, 2, 3)), StarPolynomial()
    )
    assert reduce(s, ReductionRuleSet(g)).is_zero()
    same = sum((StarPolynomial.edge(e, h, True) * StarPolynomial.edge(e, h) for h in (1, 2, 3)), StarPolynomial())
    assert reduce(same, ReductionRuleSet(g)) == V("v")


def test_vertex_rules():
    g = bundled_graph("fork_22")
    rules = ReductionRuleSet(g)
    assert reduce(V("u") * V("v"), rules).is_zero()
    assert reduce(V("v") * V("v"), rules) == V("v")
    assert reduce(V("v") * E(g, "e", 1) * V("u"), rules) == E(g, "e", 1)
    assert reduce(V("u") * E(g, "e", 1), rules).is_zero()
    assert reduce(E(g, "e", 1, True) * E(g, "f", 1, True), rules).is_zero()


def test_verify_identity():
    g = bundled_graph("rose_3333")
    A = build_A(g, "v")
    diag = BlockMatrix.diag([V("v")] * 3)
    assert verify_identity(A @ A.star(), diag, ReductionRuleSet(g))
    bad = verify_identity(A @ A.star(), diag, ReductionRuleSet(g, {"iii"}))
    assert not bad and bad.position == (0, 0) and not bad.residual.is_zero()
    gp = bundled_graph("fork_12")
    Ap = build_A(gp, "v")
    assert verify_identity(Ap.star() @ Ap, BlockMatrix.diag([V("u"), V("x")]), ReductionRuleSet(gp))
    with pytest.raises(DimensionMismatch):
        verify_identity(A, diag, ReductionRuleSet(g))


@pytest.mark.parametrize("name", REFERENCE_GRAPHS)
def test_witnesses_reference_graphs(name):
    g = bundled_graph(name)
    for v in g.emitting_vertices():
        rep = verify_theorem_witnesses(g, v)
        assert rep.all_verified, rep.failures()
        k = strata(g, v).k
        assert len(rep.results) == 2 + 6 * (k - 1) + 2 * k


def test_witness_report_json():
    g = bundled_graph("rose_2333")
    rows = verify_theorem_witnesses(g, "v").to_json()
    assert json.loads(json.dumps(rows)) == rows
    assert {(r["vertex"], r["l"], r["identity"]) for r in rows} >= {("v", 1, "eps^2=eps"), ("v", 2, "XY=diag(eps',v)")}
    assert all(r["verdict"] == "Verified" for r in rows)


def test_rose_k1_only_whole_matrix_and_one_pair():
    rep = verify_theorem_witnesses(bundled_graph("rose_3333"), "v")
    assert {name for (_, _, name) in rep.results} == {"AA*=diag(v)", "A*A=diag(r)", "XY=diag(eps',v)", "YX=diag(eps,r)"}


def test_epsilon_2x2_for_rose_2333():
    g = bundled_graph("rose_2333")
    eps = epsilon(g, "v", 1, ReductionRuleSet(g))
    assert (eps.rows, eps.cols) == (2, 2)
    assert epsilon(g, "v", 0).rows == 0 and epsilon(g, "v", 2).rows == 0


@pytest.mark.parametrize("family", ["iii", "iv"])
@pytest.mark.parametrize("name", ["rose_2333", "fork_12"])
def test_negative_control(name, family):
    g = bundled_graph(name)
    rep = verify_theorem_witnesses(g, "v", ReductionRuleSet(g, {family}))
    assert not rep.all_verified
    assert all(r.residual is not None for r in rep.failures().values())


def test_witnesses_sink_raises():
    with pytest.raises(EmptySource):
        verify_theorem_witnesses(bundled_graph("fork_22"), "u")


def _corpus():
    """Entries of every witness product before reduction."""
    for name in REFERENCE_GRAPHS:
        g = bundled_graph(name)
        for v in g.emitting_vertices():
            A = build_A(g, v)
            k = strata(g, v).k
            mats = [A @ A.star(), A.star() @ A]
            for l in range(1, k):
                e = epsilon(g, v, l)
                mats += [e @ e, e @ block(g, v, 0, l, l - 1, l)]
            for m in mats:
                for row in m.entries:
                    for p in row:
                        yield g, p


def test_reduce_idempotent_star_compatible_order_independent():
    for g, p in _corpus():
        rules = ReductionRuleSet(g)
        r = reduce(p, rules)
        assert reduce(r, rules) == r
        assert reduce(p.star(), rules) == r.star()
        assert reduce(p, rules, order="reverse") == r


@pytest.mark.parametrize("name", REFERENCE_GRAPHS)
def test_epsilon_independent_of_tie_break(name):
    g = bundled_graph(name)
    rng = random.Random(3)
    for v in g.emitting_vertices():
        st_ = strata(g, v)
        rules = ReductionRuleSet(g)
        for l in range(1, st_.k):
            cols = list(range(st_.counts[l]))
            groups = [cols[st_.counts[i - 1]:st_.counts[i]] for i in range(1, l + 1)]
            for grp in groups:
                rng.shuffle(grp)
            order = [c for grp in groups for c in grp]
            B = block(g, v, 0, l, 0, l)
            Bp = BlockMatrix.of([[row[c] for c in order] for row in B.entries], B.rows, B.cols)
            alt = BlockMatrix.diag([V(v)] * st_.weights[l]) - Bp @ Bp.star()
            assert verify_identity(alt, epsilon(g, v, l), rules)


@settings(max_examples=25)
@given(weighted_graphs(max_vertices=3, max_edges=5, max_weight=3))
def test_witnesses_random_graphs(g):
    for v in g.emitting_vertices():
        assert verify_theorem_witnesses(g, v).all_verified
