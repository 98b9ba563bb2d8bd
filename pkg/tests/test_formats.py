import networkx as nx
import pytest
from hypothesis import given, settings

from stable_kneser.formats import FormatError, from_dimacs, from_graph6, to_dimacs, to_graph6
from stable_kneser.generators import Params, build_g_definitional, build_stable_kneser, cycle_power
from stable_kneser.graph import Graph, complete_graph

from strategies import graphs


def test_dimacs_header_7_2_3():
    text = to_dimacs(build_stable_kneser(Params(7, 2, 3)))
    assert text.splitlines()[0] == "p edge 7 14"


def test_dimacs_k3():
    assert to_dimacs(build_stable_kneser(Params(6, 2, 3))) == "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n"


def test_graph6_known_strings():
    # reference encodings from the graph6 format description
    assert to_graph6(complete_graph(3)) == b"Bw"
    assert to_graph6(Graph.from_edges(0, [])) == b"?"
    assert to_graph6(complete_graph(4)) == b"C~"


def test_graph6_via_networkx():
    g = build_g_definitional(Params(10, 2, 3))
    h = nx.from_graph6_bytes(to_graph6(g))
    assert sorted(tuple(sorted(e)) for e in h.edges()) == g.edges()
    assert g == cycle_power(10, 2)


def test_graph6_large_header_matches_networkx():
    g = build_stable_kneser(Params(13, 3, 3))
    assert g.num_vertices == 65
    h = nx.empty_graph(65)
    h.add_edges_from(g.edges())
    expected = nx.to_graph6_bytes(h, header=False).strip()
    assert to_graph6(g) == expected
    assert from_graph6(expected) == g


@settings(max_examples=80)
@given(graphs(max_vertices=20))
def test_roundtrips(g):
    assert from_graph6(to_graph6(g)) == g
    assert from_dimacs(to_dimacs(g)) == g


@settings(max_examples=40)
@given(graphs(min_vertices=1, max_vertices=12))
def test_graph6_agrees_with_networkx(g):
    h = nx.empty_graph(g.num_vertices)
    h.add_edges_from(g.edges())
    assert to_graph6(g) == nx.to_graph6_bytes(h, header=False).strip()


def test_dimacs_rejects_garbage():
    with pytest.raises(FormatError):
        from_dimacs("x 1 2\n")
    with pytest.raises(FormatError):
        from_dimacs("e 1 2\n")
    with pytest.raises(FormatError):
        from_dimacs("p edge 3 2\ne 1 2\n")


def test_graph6_rejects_wrong_length():
    with pytest.raises(FormatError):
        from_graph6(b"Bww")
