"""Explicit regular subgroups for two families of multiply-Cayley graphs.

* Even circulants: Cay(C_2k, S) admits the dihedral group D_k acting
  regularly, generated by ``z -> z c^2`` and ``z -> z^-1 c^-1``.
* Cay(Dih(A, x), S) admits A x C_2 acting regularly whenever some y in xA
  has ``y a in S  <=>  y a^-1 in S`` for all a in A. The group is generated
  by right multiplications ``z -> z a`` and the left multiplication
  ``z -> y z``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .cayley import (
    CayleyGraph,
    ConnectionSet,
    inverse_closed_subsets,
    left_translation,
    right_translation,
    right_translations,
    validate_connection_set,
)
from .errors import ConstructionError
from .groups import FiniteGroup, GroupElement, format_token
from .perm import PermGroup, Permutation, compose, generate_group, invert, is_regular, power

CONSTRUCTIONS = ("prop1", "thm2", "translations")


@dataclass(frozen=True)
class RegularCertificate:
    graph: CayleyGraph
    claimed_type: FiniteGroup
    perms: PermGroup
    construction: str
    witness: Optional[GroupElement] = None


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConstructionError(f"relation check failed: {what}")


def is_even_circulant(G: FiniteGroup) -> bool:
    return not G.dihedral and len(G.factors) == 1 and G.order % 2 == 0 and G.order >= 4


def prop1_maps(G: FiniteGroup) -> tuple[Permutation, Permutation]:
    """(alpha, beta) on C_n with c = 1: alpha(z) = z + 2, beta(z) = -z - 1."""
    c = G.unit(0)
    c2 = G.mul(c, c)
    c_inv = G.inv(c)
    idx = G.index
    alpha = right_translation(G, c2)
    beta = Permutation(tuple(idx[G.mul(G.inv(z), c_inv)] for z in G.elements))
    return alpha, beta


def prop1_certificate(graph: CayleyGraph) -> RegularCertificate:
    G = graph.group
    if G is None or not is_even_circulant(G):
        raise ConstructionError("proposition requires even circulant")
    n = G.order
    k = n // 2
    alpha, beta = prop1_maps(G)
    ident = Permutation.identity(n)
    _require(power(alpha, k) == ident, "alpha^k = id")
    _require(all(not power(alpha, j).is_identity() for j in range(1, k)), "alpha has order k")
    _require(compose(beta, beta) == ident, "beta^2 = id")
    _require(
        compose(invert(beta), compose(alpha, beta)) == invert(alpha),
        "beta^-1 alpha beta = alpha^-1",
    )
    perms = generate_group([alpha, beta], cap=n)
    return RegularCertificate(graph, FiniteGroup.gendih(k), perms, "prop1")


def witness_violation(S: ConnectionSet, y: GroupElement) -> GroupElement | None:
    """First a in A with (y a in S) != (y a^-1 in S), or None if y is a witness."""
    G = S.group
    for a in G.abelian_elements:
        if (G.mul(y, a) in S) != (G.mul(y, G.inv(a)) in S):
            return a
    return None


def find_witnesses(G: FiniteGroup, S: ConnectionSet) -> list[GroupElement]:
    if not G.dihedral:
        raise ConstructionError(f"witness search needs a gendih group, got {G.label}")
    return [y for y in G.coset_xA if witness_violation(S, y) is None]


def find_witness_y(
    G: FiniteGroup, S: ConnectionSet, all_witnesses: bool = False
) -> GroupElement | list[GroupElement] | None:
    """First witness in canonical order (or every witness with ``all_witnesses``)."""
    if not G.dihedral:
        raise ConstructionError(f"witness search needs a gendih group, got {G.label}")
    if all_witnesses:
        return find_witnesses(G, S)
    for y in G.coset_xA:
        if witness_violation(S, y) is None:
            return y
    return None


def thm2_certificate(graph: CayleyGraph, y: GroupElement) -> RegularCertificate:
    G = graph.group
    if G is None or not G.dihedral:
        raise ConstructionError("theorem requires a Cayley graph on a gendih group")
    G.check(y)
    if not y.flip:
        raise ConstructionError(f"invalid witness {format_token(y)}: not in xA")
    bad = witness_violation(graph.connection, y)
    if bad is not None:
        raise ConstructionError(
            f"invalid witness {format_token(y)}: fails at a = {format_token(bad)}"
        )
    n = G.order
    alphas = [right_translation(G, a) for a in G.abelian_elements]
    beta = left_translation(G, y)
    _require(compose(beta, beta) == Permutation.identity(n), "beta^2 = id")
    _require(
        all(compose(beta, a) == compose(a, beta) for a in alphas),
        "beta commutes with every alpha_a",
    )
    perms = generate_group(alphas + [beta], cap=n)
    _require(perms.order == n, f"|H| = 2|A| = {n}")
    _require(is_regular(perms, n), "H regular")
    _require(perms.is_abelian(), "H abelian")
    claimed = FiniteGroup.abelian(*G.factors, 2)
    return RegularCertificate(graph, claimed, perms, "thm2", witness=y)


def translations_certificate(graph: CayleyGraph) -> RegularCertificate:
    G = graph.group
    return RegularCertificate(graph, G, right_translations(G), "translations")


def single_xA_sets(
    G: FiniteGroup, abelian_part_sets: Iterable[Iterable[GroupElement]] | None = None
) -> Iterator[ConnectionSet]:
    """Connection sets meeting xA in exactly one element; each admits that element as witness."""
    if not G.dihedral:
        raise ConstructionError(f"single_xA_sets needs a gendih group, got {G.label}")
    if abelian_part_sets is None:
        abelian_part_sets = inverse_closed_subsets(G, G.abelian_elements)
    for part in abelian_part_sets:
        part = frozenset(part)
        for y in G.coset_xA:
            yield validate_connection_set(G, part | {y})
