import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cayleyrep.cayley import Graph, cayley_graph, inverse_closed_subsets
from cayleyrep.constructions import prop1_certificate, thm2_certificate
from cayleyrep.errors import ParseError
from cayleyrep.formats import (
    certificate_from_dict,
    certificate_to_dict,
    export_graph,
    from_graph6,
    graph_from_json,
    parse_group_spec,
    to_dot,
    to_graph6,
)
from cayleyrep.groups import build_group, parse_tokens
from cayleyrep.oracle import verify_certificate


def reference_graph6(g):
    """networkx as the independent encoder."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return nx.to_graph6_bytes(G, header=False).decode().strip()


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 20))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_graph6_k4():
    assert to_graph6(Graph.complete(4)) == "C~"


def test_graph6_single_vertex():
    assert to_graph6(Graph.empty(1)) == "@"


def test_graph6_six_cycle_golden():
    G = build_group("cyclic:6")
    g = cayley_graph(G, parse_tokens(G, "1,5"))
    assert to_graph6(g) == reference_graph6(g) == "EhEG"


@settings(max_examples=80)
@given(graphs())
def test_graph6_matches_networkx(g):
    assert to_graph6(g) == reference_graph6(g)
    assert from_graph6(to_graph6(g)) == g


def test_graph6_size_limit():
    with pytest.raises(ValueError):
        to_graph6(Graph.empty(63))


def test_export_bytes():
    assert export_graph(Graph.complete(4), "graph6") == b"C~\n"
    with pytest.raises(ValueError):
        export_graph(Graph.complete(4), "png")


def test_dot_labels():
    D = build_group("gendih:3")
    dot = to_dot(cayley_graph(D, parse_tokens(D, "x:0")))
    assert dot.startswith("graph G {")
    assert '3 [label="x:0"];' in dot
    assert "0 -- 3;" in dot


def test_json_roundtrip_all_small_cayley():
    for spec in ("cyclic:6", "gendih:4", "abelian:4x2"):
        G = build_group(spec)
        for S in inverse_closed_subsets(G):
            g = cayley_graph(G, S)
            back = graph_from_json(export_graph(g, "json").decode())
            assert back.adjacency == g.adjacency
            d = json.loads(export_graph(g, "json"))
            assert d["edges"] == sorted(d["edges"])
            assert d["group_spec"] == spec


@given(graphs())
def test_json_roundtrip_raw(g):
    assert graph_from_json(export_graph(g, "json").decode()).adjacency == g.adjacency


def test_parse_group_spec():
    assert parse_group_spec("cyclic:12").order == 12
    assert parse_group_spec("gendih:4x2").order == 16
    with pytest.raises(ParseError) as info:
        parse_group_spec("abelian:0")
    assert "column" in str(info.value)


def test_certificate_roundtrip():
    D = build_group("gendih:4")
    g = cayley_graph(D, parse_tokens(D, "1,3,x:0"))
    cert = thm2_certificate(g, D.x)
    back = certificate_from_dict(json.loads(json.dumps(certificate_to_dict(cert))))
    assert back.perms.elements == cert.perms.elements
    assert back.witness == D.x
    assert verify_certificate(back).ok
