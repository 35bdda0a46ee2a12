"""Connection sets, Cayley graphs and right-translation groups."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import ConnectionSetError
from .groups import FiniteGroup, GroupElement, format_token
from .perm import PermGroup, Permutation, generate_group


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted neighbor lists."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, ((),) * n)

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    @property
    def _sets(self) -> tuple[frozenset, ...]:
        try:
            return self.__dict__["_set_cache"]
        except KeyError:
            s = tuple(frozenset(a) for a in self.adjacency)
            object.__setattr__(self, "_set_cache", s)
            return s

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def complement(self) -> Graph:
        return Graph.from_edges(
            self.n,
            ((u, v) for u, v in combinations(range(self.n), 2) if not self.has_edge(u, v)),
        )

    def preserves(self, p: Permutation) -> bool:
        return broken_edge(self, p) is None

    def plain(self) -> Graph:
        return Graph(self.n, self.adjacency)


def broken_edge(graph: Graph, p: Permutation) -> tuple[int, int] | None:
    """An edge {u, v} whose image under p is not an edge, or None."""
    if p.degree != graph.n:
        raise ValueError(f"permutation degree {p.degree} != graph order {graph.n}")
    img = p.images
    # a bijection that maps edges to edges preserves non-edges too (finite counts)
    for u, v in graph.edges():
        if not graph.has_edge(img[u], img[v]):
            return (u, v)
    return None


@dataclass(frozen=True)
class ConnectionSet:
    group: FiniteGroup
    elements: frozenset[GroupElement]

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.sorted())

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def sorted(self) -> list[GroupElement]:
        return sorted(self.elements, key=self.group.index.__getitem__)

    def tokens(self) -> list[str]:
        return [format_token(g) for g in self.sorted()]

    def coset_part(self) -> list[GroupElement]:
        """S intersected with xA."""
        return [g for g in self.sorted() if g.flip]


def validate_connection_set(G: FiniteGroup, raw: Iterable[GroupElement]) -> ConnectionSet:
    elems = frozenset(GroupElement(g[0], tuple(g[1])) for g in raw)
    for g in elems:
        G.check(g)
    if G.identity in elems:
        raise ConnectionSetError("identity in connection set")
    for g in sorted(elems, key=G.index.__getitem__):
        if G.inv(g) not in elems:
            raise ConnectionSetError(
                f"connection set not inverse-closed: {format_token(g)} present, "
                f"inverse {format_token(G.inv(g))} missing"
            )
    return ConnectionSet(G, elems)


@dataclass(frozen=True)
class CayleyGraph(Graph):
    group: FiniteGroup = None
    connection: ConnectionSet = None


def build_cayley_graph(G: FiniteGroup, S: ConnectionSet) -> CayleyGraph:
    """Cay(G, S): u ~ v iff v = s*u for some s in S."""
    if S.group != G:
        raise ConnectionSetError(f"connection set is over {S.group.label}, not {G.label}")
    idx = G.index
    adjacency = tuple(
        tuple(sorted(idx[G.mul(s, u)] for s in S.elements)) for u in G.elements
    )
    return CayleyGraph(G.order, adjacency, G, S)


def cayley_graph(G: FiniteGroup, raw: Iterable[GroupElement]) -> CayleyGraph:
    return build_cayley_graph(G, validate_connection_set(G, raw))


def right_translation(G: FiniteGroup, g: GroupElement) -> Permutation:
    idx = G.index
    return Permutation(tuple(idx[G.mul(z, g)] for z in G.elements))


def left_translation(G: FiniteGroup, g: GroupElement) -> Permutation:
    idx = G.index
    return Permutation(tuple(idx[G.mul(g, z)] for z in G.elements))


def right_translations(G: FiniteGroup) -> PermGroup:
    gens = [right_translation(G, g) for g in G.standard_generators]
    return generate_group(gens, cap=G.order, degree=G.order)


def inverse_orbits(G: FiniteGroup, elements: Iterable[GroupElement] | None = None):
    """Partition non-identity elements into {g, g^-1} classes, canonical order."""
    pool = G.elements if elements is None else sorted(elements, key=G.index.__getitem__)
    seen = set()
    orbits = []
    for g in pool:
        if g == G.identity or g in seen:
            continue
        orb = (g,) if G.inv(g) == g else (g, G.inv(g))
        seen.update(orb)
        orbits.append(orb)
    return orbits


def inverse_closed_subsets(
    G: FiniteGroup, elements: Iterable[GroupElement] | None = None
) -> Iterator[frozenset[GroupElement]]:
    """All inverse-closed identity-free subsets (of ``elements``, if given).

    Ordered by the binary counter over inverse orbits, orbit 0 least significant.
    """
    orbits = inverse_orbits(G, elements)
    for mask in range(1 << len(orbits)):
        yield subset_from_mask(orbits, mask)


def subset_from_mask(orbits, mask: int) -> frozenset[GroupElement]:
    out = []
    for i, orb in enumerate(orbits):
        if mask >> i & 1:
            out.extend(orb)
    return frozenset(out)
