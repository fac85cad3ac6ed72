import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehdf.detect import (
    DiamondWitness,
    canonical_cycle,
    chordless_paths,
    enumerate_chordless_cycles,
    find_diamond,
    find_even_hole,
    find_simplicial_extremes,
    is_chordal,
    is_chordless_path,
    is_diamond,
    is_hole,
    is_in_class_G,
    is_perfect_elimination_order,
)
from ehdf.geodetic import petersen
from ehdf.graph import Graph, GuardExceeded, complete_graph, cycle_graph, path_graph
from ehdf.menagerie import BirdcageSpec, build_birdcage
from oracles import graphs, has_diamond_bruteforce, in_class_bruteforce, induced_cycles_bruteforce

TWO_TRIANGLES = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


# -- holes --------------------------------------------------------------------------

def test_c5_has_one_hole():
    holes = enumerate_chordless_cycles(cycle_graph(5))
    assert [h.cycle for h in holes] == [(0, 1, 2, 3, 4)]


def test_k4_has_no_hole():
    assert enumerate_chordless_cycles(complete_graph(4)) == []


def test_petersen_hole_counts_match_bruteforce():
    P = petersen()
    by_len = Counter(len(h) for h in enumerate_chordless_cycles(P))
    oracle = Counter(len(s) for s in induced_cycles_bruteforce(P))
    # frozen after the subset oracle above was run once: 12 five-cycles, 10 six-cycles
    assert oracle == Counter({5: 12, 6: 10})
    assert by_len == oracle


def test_canonical_form():
    assert canonical_cycle([3, 0, 4, 1]) == (0, 3, 1, 4)
    assert canonical_cycle([2, 1, 0, 5]) == (0, 1, 2, 5)
    for h in enumerate_chordless_cycles(petersen()):
        c = h.cycle
        assert c[0] == min(c) and c[1] < c[-1]


def test_max_count_truncates():
    assert len(enumerate_chordless_cycles(petersen(), max_count=3)) == 3


def test_guard_refuses_large_graph():
    with pytest.raises(GuardExceeded):
        enumerate_chordless_cycles(cycle_graph(70))
    assert len(enumerate_chordless_cycles(cycle_graph(70), guard=None)) == 1


def test_even_hole_examples():
    assert find_even_hole(cycle_graph(4)).cycle == (0, 1, 2, 3)
    assert find_even_hole(cycle_graph(5)) is None
    w = find_even_hole(petersen())
    assert w is not None and len(w) == 6 and is_hole(petersen(), w.cycle)


def test_hole_json():
    w = find_even_hole(cycle_graph(4))
    assert json.loads(json.dumps(w.to_json())) == {"kind": "even_hole", "cycle": [0, 1, 2, 3]}


# -- diamonds ------------------------------------------------------------------------

def test_diamond_examples(diamond):
    w = find_diamond(diamond)
    assert w is not None and is_diamond(diamond, w)
    assert set(w.missing) == {2, 3}
    assert find_diamond(cycle_graph(6)) is None
    assert find_diamond(petersen()) is None


def test_diamond_json(diamond):
    d = find_diamond(diamond).to_json()
    assert d["kind"] == "diamond"
    assert sorted(d["vertices"]) == [0, 1, 2, 3]
    assert sorted(d["missing"]) == [2, 3]


def test_is_diamond_rejects_k4():
    assert not is_diamond(complete_graph(4), DiamondWitness((0, 1, 2, 3), (2, 3)))


# -- chordality ------------------------------------------------------------------------

def test_chordal_examples():
    ok, peo = is_chordal(complete_graph(5))
    assert ok and is_perfect_elimination_order(complete_graph(5), peo)
    ok, w = is_chordal(cycle_graph(4))
    assert not ok and sorted(w.cycle) == [0, 1, 2, 3]
    ok, peo = is_chordal(TWO_TRIANGLES)
    assert ok and is_perfect_elimination_order(TWO_TRIANGLES, peo)


# -- chordless paths ----------------------------------------------------------------------

def test_chordless_paths_examples():
    assert chordless_paths(cycle_graph(5), [0], [2]) == [(0, 1, 2), (0, 4, 3, 2)]
    assert chordless_paths(complete_graph(3), [0], [1]) == [(0, 1)]
    assert chordless_paths(path_graph(4), [0], [3]) == [(0, 1, 2, 3)]


def test_chordless_paths_avoid_other_endpoints():
    # the path may not pass through a second vertex of C1 or C2
    g = path_graph(4)
    assert chordless_paths(g, [0, 1], [3]) == [(1, 2, 3)]


def test_chordless_paths_limit():
    with pytest.raises(GuardExceeded):
        chordless_paths(petersen(), [0], [1], limit=2)


def test_chordless_paths_reject_overlap():
    with pytest.raises(ValueError):
        chordless_paths(cycle_graph(5), [0, 1], [1])


# -- simplicial extremes -------------------------------------------------------------------

def test_simplicial_examples():
    assert find_simplicial_extremes(complete_graph(4)).kind == "clique"
    r = find_simplicial_extremes(cycle_graph(5))
    assert r.kind == "pair" and r.pair == (0, 2)
    # C4 is not in the class; any outcome is legal, but it must be well-formed
    r = find_simplicial_extremes(cycle_graph(4))
    assert r.kind in ("pair", "counterexample")


def test_simplicial_counterexample_outside_class():
    # in the 5-wheel every rim vertex has degree 3 with a non-clique neighbourhood
    # and the hub sees everything, so no extreme exists at all
    wheel = Graph(6, [(0, k) for k in range(1, 6)] + [(k, k % 5 + 1) for k in range(1, 6)])
    r = find_simplicial_extremes(wheel)
    assert r.kind == "counterexample"
    assert not is_in_class_G(wheel)


def test_simplicial_requires_connected():
    with pytest.raises(ValueError):
        find_simplicial_extremes(Graph(3, [(0, 1)]))


# -- class membership -------------------------------------------------------------------------

def test_class_examples():
    assert is_in_class_G(cycle_graph(5)).member
    v = is_in_class_G(cycle_graph(6))
    assert not v.member and v.witness.is_even


def test_birdcage_is_member():
    assert is_in_class_G(build_birdcage(BirdcageSpec(3, (3, 3, 3))).graph)


def test_diamond_reported_before_hole(diamond):
    v = is_in_class_G(diamond)
    assert not v and isinstance(v.witness, DiamondWitness)


# -- properties ---------------------------------------------------------------------------------

@settings(max_examples=150)
@given(graphs(max_n=9))
def test_enumeration_matches_bruteforce(g):
    found = [h.cycle for h in enumerate_chordless_cycles(g)]
    assert len(found) == len(set(found))
    assert {frozenset(c) for c in found} == induced_cycles_bruteforce(g)
    for c in found:
        assert is_hole(g, c)
        assert canonical_cycle(c) == c


@settings(max_examples=150)
@given(graphs(max_n=10))
def test_chordal_agrees_with_enumeration(g):
    ok, cert = is_chordal(g)
    assert ok == (enumerate_chordless_cycles(g) == [])
    if ok:
        assert is_perfect_elimination_order(g, cert)
    else:
        assert is_hole(g, cert.cycle)


@settings(max_examples=150)
@given(graphs(max_n=9))
def test_even_hole_agrees_with_parity_filter(g):
    w = find_even_hole(g)
    evens = [h for h in enumerate_chordless_cycles(g) if h.is_even]
    assert (w is None) == (not evens)
    if w is not None:
        assert is_hole(g, w.cycle) and w.is_even


@settings(max_examples=150)
@given(graphs(max_n=8))
def test_diamond_matches_bruteforce(g):
    w = find_diamond(g)
    assert (w is not None) == has_diamond_bruteforce(g)
    if w is not None:
        assert is_diamond(g, w)


@settings(max_examples=150)
@given(graphs(max_n=9))
def test_class_matches_bruteforce(g):
    assert is_in_class_G(g).member == in_class_bruteforce(g)


@settings(max_examples=100)
@given(graphs(max_n=8), st.data())
def test_chordless_paths_are_induced_and_complete(g, data):
    a = data.draw(st.integers(0, g.n - 1))
    b = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != a) if g.n > 1 else st.nothing())
    found = chordless_paths(g, [a], [b])
    for p in found:
        assert p[0] == a and p[-1] == b and is_chordless_path(g, p)
    # brute force: every induced path a..b over all vertex subsets
    from itertools import permutations

    others = [v for v in g.vertices() if v not in (a, b)]
    expected = set()
    for k in range(len(others) + 1):
        for mid in permutations(others, k):
            p = (a, *mid, b)
            if is_chordless_path(g, p):
                expected.add(p)
    assert set(found) == expected


def test_class_corpus_nonadjacent_simplicial_extremes(members):
    for it in members:
        r = find_simplicial_extremes(it.graph)
        assert r.kind in ("clique", "pair"), it.name
        if r.kind == "pair":
            a, b = r.pair
            assert not it.graph.has_edge(a, b)
