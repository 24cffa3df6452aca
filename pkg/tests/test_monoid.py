import random
import threading

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import REFERENCE_GRAPHS, weighted_graphs
from wmk.graph import bundled_graph, strata
from wmk.monoid import (
    Bounds,
    CongruenceEngine,
    Inconclusive,
    Verdict,
    ZeroElement,
    bfs_decide,
    class_enumerate,
    equal,
    fingerprint,
    infinite_certificate,
    is_atom,
    module_type,
    refinement_check,
)
from wmk.presentations import Element, MonoidPresentation, auto_simplify, build_v_monoid, compose_log
from wmk.sampling import random_presentation, random_vector

TOEPLITZ = MonoidPresentation.from_strings(["v", "q"], [("v=1", "q=1,v=1")])
L_MONOID = MonoidPresentation.from_strings(["u", "v", "x"], [("v=2", "u=1,x=1")])
FREE1 = MonoidPresentation.from_strings(["v"], [])
FREE2 = MonoidPresentation.from_strings(["u", "q"], [])


def test_toeplitz_equal_with_replayable_trace():
    eng = CongruenceEngine(TOEPLITZ)
    res = equal(eng, (1, 0), (1, 5))
    assert res.verdict is Verdict.EQUAL
    assert res.replay()
    assert len(res.trace()) >= 5


def test_toeplitz_not_equal():
    eng = CongruenceEngine(TOEPLITZ)
    res = equal(eng, (0, 1), (0, 2))
    assert res.verdict is Verdict.NOT_EQUAL
    assert class_enumerate(eng, (0, 1)).elements == {(0, 1)}


def test_reflexive_empty_trace():
    eng = CongruenceEngine(L_MONOID)
    res = equal(eng, (1, 2, 3), (1, 2, 3))
    assert res.equal and res.trace() == [] and res.replay()


def test_lattice_certificate():
    eng = CongruenceEngine(L_MONOID)
    res = equal(eng, "v=1", "u=1")
    assert res.verdict is Verdict.NOT_EQUAL
    assert res.certificate["stage"] == "lattice"
    assert res.check_separation()


def test_class_enumerate():
    eng = CongruenceEngine(L_MONOID)
    assert class_enumerate(eng, "v=2").elements == {(0, 2, 0), (1, 0, 1)}
    assert class_enumerate(CongruenceEngine(FREE2), (3, 1)).elements == {(3, 1)}
    with pytest.raises(ValueError):
        class_enumerate(eng, "v=1", 0)


def test_class_of_q_multiples_in_rose_2333():
    eng = CongruenceEngine(build_v_monoid(bundled_graph("rose_2333")))
    for n in range(11):
        res = class_enumerate(eng, Element({"q:v:1": n}))
        assert res.complete and len(res.elements) == 1


def test_atoms():
    eng = CongruenceEngine(L_MONOID)
    assert is_atom(eng, "v=1").verdict == "Yes"
    assert is_atom(eng, "v=2").verdict == "No"
    assert is_atom(CongruenceEngine(FREE1), "v=1").verdict == "Yes"
    with pytest.raises(ZeroElement):
        is_atom(eng, "0")


def test_atom_in_simplified_coordinates():
    p = build_v_monoid(bundled_graph("fork_12"))
    s, log = auto_simplify(p)
    images = compose_log(p.generators, log)
    v_img = images[next(g for g in p.generators if str(g) == "v")]
    res = is_atom(CongruenceEngine(s), v_img)
    assert res.verdict == "No"
    b, c = res.witness
    eng = CongruenceEngine(s)
    assert {eng.element(b), eng.element(c)} == {Element.parse("q:v:1=1"), Element.parse("u=1")}


def test_module_types():
    assert module_type(CongruenceEngine(MonoidPresentation.from_strings(["v"], [("v=3", "v=4")])), "v") == (3, 1)
    p = MonoidPresentation.from_strings(["v", "q"], [("v=2", "q=1,v=1"), ("q=1,v=1", "v=3")])
    assert module_type(CongruenceEngine(p), "v") == (2, 1)
    assert module_type(CongruenceEngine(FREE1), "v") is None


def test_module_type_minimal():
    eng = CongruenceEngine(build_v_monoid(bundled_graph("rose_2333")))
    n, k = module_type(eng, "v")
    for n2 in range(1, n + 1):
        for k2 in range(1, 11):
            if (n2, k2) < (n, k):
                assert not equal(eng, Element({"v": n2}), Element({"v": n2 + k2})).equal


def test_module_type_inconclusive():
    p = MonoidPresentation.from_strings(["a", "b"], [("a=1", "a=1,b=1"), ("a=2", "b=3")])
    eng = CongruenceEngine(p, Bounds(nodes=5, pairs=1))
    with pytest.raises(Inconclusive):
        module_type(eng, "a", 3, 3)


@pytest.mark.parametrize("name", ["rose_2333", "loops_12", "double_edge_12", "fork_12"])
def test_infinite_certificate(name):
    g = bundled_graph(name)
    cert = infinite_certificate(g, CongruenceEngine(build_v_monoid(g)), 10)
    assert len(set(cert.classes)) == 11
    assert cert.classes == tuple(Element({str(cert.generator): n}) for n in range(11))


def test_infinite_certificate_not_applicable():
    for name in ("fork_22", "rose_3333"):
        g = bundled_graph(name)
        assert infinite_certificate(g, CongruenceEngine(build_v_monoid(g))) is None


def test_refinement():
    res = refinement_check(CongruenceEngine(L_MONOID), 4)
    assert res.verdict == "Fails"
    a1, a2, b1, b2 = res.witness
    assert {a1, a2, b1, b2} == {(0, 1, 0), (1, 0, 0), (0, 0, 1)}
    assert refinement_check(CongruenceEngine(FREE2), 5).verdict == "Satisfied"
    assert refinement_check(CongruenceEngine(TOEPLITZ), 5).verdict == "Inapplicable"


def test_fingerprints():
    fl = fingerprint(CongruenceEngine(L_MONOID), Bounds(degree=6))
    assert fl.atom_count == 3 and fl.refinement.verdict == "Fails"
    assert (fl.group.free_rank, fl.group.torsion) == (2, ())
    fp = fingerprint(CongruenceEngine(build_v_monoid(bundled_graph("fork_12"))), Bounds(degree=6))
    assert fp.atom_count == 2 and fp.refinement.verdict == "Satisfied"
    f1 = fingerprint(CongruenceEngine(FREE1))
    assert f1.atom_count == 1 and f1.group.free_rank == 1
    assert fingerprint(CongruenceEngine(L_MONOID)).to_json() == fingerprint(CongruenceEngine(L_MONOID)).to_json()


@pytest.mark.parametrize("name", REFERENCE_GRAPHS)
def test_atoms_survive_elimination(name):
    p = build_v_monoid(bundled_graph(name)).normalized()
    s, log = auto_simplify(p)
    big, small = CongruenceEngine(p), CongruenceEngine(s)
    images = compose_log(p.generators, log)
    for g in p.generators:
        if equal(big, Element.unit(g), "0").equal:
            continue
        a = is_atom(big, Element.unit(g)).verdict
        b = is_atom(small, images[g]).verdict
        if "Unknown" not in (a, b):
            assert a == b, g


def test_bounds_from_env(monkeypatch):
    monkeypatch.setenv("WMK_DEFAULT_BOUNDS", "degree=6,nodes=5000")
    b = Bounds.from_env()
    assert (b.degree, b.nodes, b.pairs) == (6, 5000, Bounds().pairs)
    monkeypatch.setenv("WMK_DEFAULT_BOUNDS", "colour=3")
    with pytest.raises(ValueError):
        Bounds.from_env()


def test_concurrent_queries_match_sequential():
    p = MonoidPresentation.from_strings(["a", "b", "c"], [("a=2", "b=1,c=1"), ("b=2", "a=1,c=1")])
    rng = random.Random(7)
    pairs = [(random_vector(rng, 3, rng.randint(0, 6)), random_vector(rng, 3, rng.randint(0, 6))) for _ in range(60)]
    sequential = [equal(CongruenceEngine(p), a, b).verdict for a, b in pairs]
    shared = CongruenceEngine(p)
    out = [None] * len(pairs)

    def work(i):
        out[i] = equal(shared, *pairs[i]).verdict

    threads = [threading.Thread(target=work, args=(i,)) for i in range(len(pairs))]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert out == sequential


# property tests -------------------------------------------------------------

presentations = st.builds(random_presentation, st.randoms(use_true_random=False))


def _vec(data, n):
    return tuple(data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))


@given(presentations, st.data())
def test_congruence_laws(p, data):
    eng = CongruenceEngine(p, Bounds(nodes=2000, pairs=2000))
    n = len(p.generators)
    a, b, c = (_vec(data, n) for _ in range(3))
    ab = equal(eng, a, b)
    assert equal(eng, a, a).equal
    assert equal(eng, b, a).verdict is ab.verdict
    bc = equal(eng, b, c)
    ac = equal(eng, a, c)
    if ab.equal and bc.equal:
        assert ac.verdict is not Verdict.NOT_EQUAL
    if ab.equal:
        assert ab.replay()
        plus = equal(eng, tuple(x + y for x, y in zip(a, c)), tuple(x + y for x, y in zip(b, c)))
        assert plus.verdict is not Verdict.NOT_EQUAL
    if ab.verdict is Verdict.NOT_EQUAL and ab.certificate["stage"] == "lattice":
        assert ab.check_separation()


@given(presentations, st.data())
def test_engine_agrees_with_bfs(p, data):
    eng = CongruenceEngine(p, Bounds(nodes=2000, pairs=2000))
    n = len(p.generators)
    a, b = _vec(data, n), _vec(data, n)
    e = equal(eng, a, b).verdict
    o = bfs_decide(eng, a, b, 400)
    assume(Verdict.UNKNOWN not in (e, o))
    assert e is o


@given(weighted_graphs(max_vertices=3, max_edges=4, max_weight=3))
def test_infinite_certificate_when_some_vertex_has_two_weights(g):
    assume(any(strata(g, v).k > 1 for v in g.vertices))
    cert = infinite_certificate(g, CongruenceEngine(build_v_monoid(g), Bounds(nodes=2000)), 6)
    assert len(set(cert.classes)) == 7
