import random

import pytest

from cayleyrep.cayley import (
    Graph,
    build_cayley_graph,
    cayley_graph,
    inverse_closed_subsets,
    inverse_orbits,
    right_translation,
    right_translations,
    validate_connection_set,
)
from cayleyrep.errors import ConnectionSetError
from cayleyrep.groups import GroupElement as E, build_group, find_isomorphism
from cayleyrep.perm import Permutation, is_regular

from conftest import SMALL_GROUPS


def sampled_sets(G, k=6, seed=1):
    rng = random.Random(seed)
    orbits = inverse_orbits(G)
    out = []
    for _ in range(k):
        S = set()
        for orb in orbits:
            if rng.random() < 0.5:
                S.update(orb)
        out.append(S)
    return out


def components(graph):
    seen, count = set(), 0
    for s in range(graph.n):
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for v in graph.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return count


def test_validate_examples():
    Z6 = build_group("cyclic:6")
    S = validate_connection_set(Z6, [E(0, (1,)), E(0, (5,))])
    assert len(S) == 2
    with pytest.raises(ConnectionSetError, match="inverse"):
        validate_connection_set(Z6, [E(0, (1,))])
    with pytest.raises(ConnectionSetError, match="identity in connection set"):
        validate_connection_set(Z6, [E(0, (0,)), E(0, (1,)), E(0, (5,))])


def test_validate_names_offender():
    Z6 = build_group("cyclic:6")
    with pytest.raises(ConnectionSetError, match="inverse 4 missing"):
        validate_connection_set(Z6, [E(0, (1,)), E(0, (5,)), E(0, (2,))])


def test_six_cycle():
    g = cayley_graph(build_group("cyclic:6"), [E(0, (1,)), E(0, (5,))])
    assert g.plain() == Graph.cycle(6)


def test_complete_graph():
    g = cayley_graph(build_group("cyclic:4"), [E(0, (i,)) for i in (1, 2, 3)])
    assert g.plain() == Graph.complete(4)


def test_dihedral_prism():
    D = build_group("gendih:4")
    g = cayley_graph(D, [E(0, (1,)), E(0, (3,)), D.x])
    idx = D.index
    # two 4-cycles on A and xA, joined by z <-> x z
    for z in D.elements:
        u = idx[z]
        assert idx[D.mul(D.x, z)] in g.adjacency[u]
        same_coset = [v for v in g.adjacency[u] if D.elements[v].flip == z.flip]
        assert len(same_coset) == 2
    assert len(g.edges()) == 12


def test_edge_rule(small_group):
    G = small_group
    for S in sampled_sets(G, 3):
        g = cayley_graph(G, S)
        for i, u in enumerate(G.elements):
            for j, v in enumerate(G.elements):
                assert g.has_edge(i, j) == (G.mul(v, G.inv(u)) in S)
        assert all(g.degree(v) == len(S) for v in range(g.n))


def test_right_translations_examples():
    C2 = build_group("cyclic:2")
    assert [p.images for p in right_translations(C2).elements] == [(0, 1), (1, 0)]
    Z6 = build_group("cyclic:6")
    assert right_translation(Z6, E(0, (2,))) == Permutation.from_cycles(6, [(0, 2, 4), (1, 3, 5)])
    assert is_regular(right_translations(build_group("gendih:4")), 8)


def test_right_translations_are_automorphisms(small_group):
    G = small_group
    P = right_translations(G)
    assert P.order == G.order and is_regular(P, G.order)
    assert find_isomorphism(P, G) is not None
    for S in sampled_sets(G, 4):
        g = cayley_graph(G, S)
        assert all(g.preserves(p) for p in P.elements)


def subgroup_closure(G, S):
    elems = {G.identity}
    frontier = [G.identity]
    while frontier:
        z = frontier.pop()
        for s in S:
            w = G.mul(s, z)
            if w not in elems:
                elems.add(w)
                frontier.append(w)
    return elems


def test_connected_iff_generating(small_group):
    G = small_group
    for S in sampled_sets(G, 6, seed=7):
        g = cayley_graph(G, S)
        assert (components(g) == 1) == (len(subgroup_closure(G, S)) == G.order)


def test_empty_connection_set_is_edgeless():
    g = cayley_graph(build_group("gendih:3"), [])
    assert g.edges() == []


def test_inverse_closed_subsets_count():
    Z6 = build_group("cyclic:6")
    subsets = list(inverse_closed_subsets(Z6))
    assert len(subsets) == 8
    assert len(set(subsets)) == 8
    for S in subsets:
        validate_connection_set(Z6, S)


def test_connection_set_group_mismatch():
    S = validate_connection_set(build_group("cyclic:4"), [])
    with pytest.raises(ConnectionSetError):
        build_cayley_graph(build_group("cyclic:6"), S)


def test_graph_helpers():
    assert Graph.complete(5).complement() == Graph.empty(5)
    assert len(Graph.path(4).edges()) == 3
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
