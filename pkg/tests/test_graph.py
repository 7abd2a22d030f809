import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tridecomp.graph import (
    Graph,
    Graph6Error,
    GraphError,
    canonical_form,
    complete,
    enumerate_unlabeled,
    is_isomorphic,
    is_triangle_divisible,
    make_named,
    parse_edge_list,
    parse_graph6,
    read_graph,
    t2,
    to_edge_list,
    to_graph6,
    triangles,
    turan2,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@pytest.mark.parametrize(
    "text, n, e",
    [("Bw", 3, 3), ("@", 1, 0), ("A_", 2, 1), ("?", 0, 0), ("C~", 4, 6), ("F~~~w", 7, 21)],
)
def test_parse_graph6_known(text, n, e):
    g = parse_graph6(text)
    assert (g.n, g.num_edges) == (n, e)
    assert to_graph6(g) == text


def test_to_graph6_hand_encodings():
    assert to_graph6(complete(3)) == "Bw"
    assert to_graph6(complete(2)) == "A_"
    assert to_graph6(Graph.empty(0)) == "?"


@given(graphs(max_n=12))
def test_graph6_round_trip(g):
    assert parse_graph6(to_graph6(g)) == g


def test_graph6_long_form_round_trip():
    for n in (63, 64):
        g = Graph.from_edges(n, [(i, (i * 7 + 3) % n) for i in range(n) if (i * 7 + 3) % n != i])
        text = to_graph6(g)
        assert text.startswith("~")
        assert parse_graph6(text) == g


@pytest.mark.parametrize(
    "bad, offset",
    [("", 0), ("B", 1), ("Bw\x7f", 2), ("B\x10", 1), ("B~", 1)],
)
def test_graph6_errors_carry_offset(bad, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(bad)
    assert info.value.offset == offset


def test_edge_list_io():
    g = read_graph("4\n0 1\n1 2\n2 0\n3 0\n")
    assert g.num_edges == 4 and g.has_edge(0, 3)
    assert parse_edge_list(to_edge_list(g)) == g
    assert read_graph("Bw\n") == complete(3)
    with pytest.raises(GraphError):
        read_graph("3\n0 0\n")
    with pytest.raises(GraphError):
        read_graph("3\n0 5\n")


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(GraphError):
        Graph(1, (0b1,))  # loop
    with pytest.raises(GraphError):
        Graph.empty(65)


def test_named_generators():
    k34 = make_named("turan2", 7)
    assert k34.num_edges == 12 and k34.num_edges == t2(7)
    assert make_named("complete", 5).num_edges == 10
    assert make_named("complete_minus_matching", 13, 2).num_edges == 76
    assert make_named("complete_minus_edge", 6).num_edges == 14
    assert is_isomorphic(turan2(7), Graph.from_edges(7, [(u, v) for u in range(3, 7) for v in range(3)]))
    with pytest.raises(GraphError):
        make_named("complete_minus_matching", 5, 3)
    with pytest.raises(GraphError):
        make_named("petersen", 10)


def test_triangles_examples():
    assert len(triangles(complete(4))) == 4
    assert triangles(turan2(7)) == []
    assert len(triangles(complete(7))) == 35


@given(graphs(max_n=9))
def test_triangles_match_triple_iteration(g):
    brute = [
        t for t in itertools.combinations(range(g.n), 3)
        if g.has_edge(t[0], t[1]) and g.has_edge(t[0], t[2]) and g.has_edge(t[1], t[2])
    ]
    assert triangles(g) == brute


def test_triangle_divisibility():
    assert is_triangle_divisible(complete(7))
    assert not is_triangle_divisible(complete(6))
    assert is_triangle_divisible(complete(9))


def test_canonical_path_labelings():
    p1 = Graph.from_edges(3, [(0, 1), (1, 2)])
    p2 = Graph.from_edges(3, [(0, 2), (2, 1)])
    assert canonical_form(p1) == canonical_form(p2)
    assert canonical_form(p1) != canonical_form(complete(3))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabeling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


def test_canonical_form_many_permutations_n7():
    import random

    rnd = random.Random(11)
    for g in enumerate_unlabeled(7)[::97]:
        cf = canonical_form(g)
        for _ in range(100):
            perm = list(range(7))
            rnd.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == cf


def test_canonical_form_order_guard():
    with pytest.raises(GraphError):
        canonical_form(complete(11))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_enumeration_counts(n, count):
    assert len(enumerate_unlabeled(n)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_labeled_dedup(n):
    pairs = list(itertools.combinations(range(n), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        forms.add(canonical_form(Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])))
    assert {canonical_form(g) for g in enumerate_unlabeled(n)} == forms


def test_enumeration_is_ordered_and_distinct():
    gs = enumerate_unlabeled(6)
    forms = [canonical_form(g) for g in gs]
    assert len(set(forms)) == len(forms)
    assert forms == sorted(forms, key=lambda f: f.sort_key())
    assert [g.num_edges for g in gs] == sorted(g.num_edges for g in gs)


def test_enumeration_range():
    with pytest.raises(GraphError):
        enumerate_unlabeled(8)
    with pytest.raises(GraphError):
        enumerate_unlabeled(0)
