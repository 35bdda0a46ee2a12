"""Finite abelian groups and their generalised dihedral extensions.

An element is a pair ``(flip, vector)`` standing for ``x**flip * a`` where
``a`` has exponent vector ``vector`` over the cyclic factors of A. The
relations ``x*x = 1`` and ``x^-1 a x = a^-1`` give

    (e1, a1) * (e2, a2) = (e1 ^ e2, (-1)**e2 * a1 + a2).
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import prod
from typing import NamedTuple, Sequence, Union

from .errors import ParseError, ResourceLimitError
from .perm import PermGroup, compose, greedy_generators

ISO_CAP = 5000


@dataclass(frozen=True)
class AbelianSpec:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if not factors:
            raise ValueError("abelian spec needs at least one factor")
        if any(f < 2 for f in factors):
            raise ValueError(f"cyclic factors must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def is_elementary_2(self) -> bool:
        return all(f == 2 for f in self.factors)


class GroupElement(NamedTuple):
    flip: int
    vector: tuple[int, ...]

    def __str__(self):
        return format_token(self)


@dataclass(frozen=True)
class FiniteGroup:
    abelian_part: AbelianSpec
    dihedral: bool = False

    @classmethod
    def abelian(cls, *factors: int) -> FiniteGroup:
        return cls(AbelianSpec(tuple(factors)), False)

    @classmethod
    def gendih(cls, *factors: int) -> FiniteGroup:
        return cls(AbelianSpec(tuple(factors)), True)

    @property
    def factors(self) -> tuple[int, ...]:
        return self.abelian_part.factors

    @property
    def order(self) -> int:
        return self.abelian_part.order * (2 if self.dihedral else 1)

    @property
    def label(self) -> str:
        dims = "x".join(map(str, self.factors))
        if self.dihedral:
            return f"gendih:{dims}"
        if len(self.factors) == 1:
            return f"cyclic:{dims}"
        return f"abelian:{dims}"

    def __str__(self):
        return self.label

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        """Canonical enumeration, lexicographic on (flip, vector)."""
        flips = (0, 1) if self.dihedral else (0,)
        vecs = list(product(*(range(f) for f in self.factors)))
        return tuple(GroupElement(e, v) for e in flips for v in vecs)

    @cached_property
    def index(self) -> dict[GroupElement, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, (0,) * len(self.factors))

    @property
    def x(self) -> GroupElement:
        if not self.dihedral:
            raise ValueError(f"{self.label} has no flip element")
        return GroupElement(1, (0,) * len(self.factors))

    def unit(self, i: int) -> GroupElement:
        v = [0] * len(self.factors)
        v[i] = 1
        return GroupElement(0, tuple(v))

    @property
    def standard_generators(self) -> tuple[GroupElement, ...]:
        gens = tuple(self.unit(i) for i in range(len(self.factors)))
        return gens + ((self.x,) if self.dihedral else ())

    @property
    def abelian_elements(self) -> tuple[GroupElement, ...]:
        """The subgroup A (flip 0 slice)."""
        return self.elements[: self.abelian_part.order]

    @property
    def coset_xA(self) -> tuple[GroupElement, ...]:
        if not self.dihedral:
            raise ValueError(f"{self.label} has no coset xA")
        return self.elements[self.abelian_part.order :]

    def is_abelian(self) -> bool:
        return not self.dihedral or self.abelian_part.is_elementary_2()

    def check(self, g: GroupElement) -> None:
        if len(g.vector) != len(self.factors):
            raise ValueError(f"element {tuple(g)} has wrong shape for {self.label}")
        if g.flip not in ((0, 1) if self.dihedral else (0,)):
            raise ValueError(f"element {tuple(g)} has invalid flip for {self.label}")
        if any(not 0 <= v < f for v, f in zip(g.vector, self.factors)):
            raise ValueError(f"element {tuple(g)} out of range for {self.label}")

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return elem_mul(self, g, h)

    def inv(self, g: GroupElement) -> GroupElement:
        return elem_inv(self, g)


def elem_mul(G: FiniteGroup, g: GroupElement, h: GroupElement) -> GroupElement:
    if len(g.vector) != len(G.factors) or len(h.vector) != len(G.factors):
        raise ValueError(f"element shape mismatch for {G.label}")
    sign = -1 if h.flip else 1
    vec = tuple((sign * a + b) % n for a, b, n in zip(g.vector, h.vector, G.factors))
    return GroupElement(g.flip ^ h.flip, vec)


def elem_inv(G: FiniteGroup, g: GroupElement) -> GroupElement:
    if len(g.vector) != len(G.factors):
        raise ValueError(f"element shape mismatch for {G.label}")
    if g.flip:
        return g
    return GroupElement(0, tuple(-a % n for a, n in zip(g.vector, G.factors)))


def elem_pow(G: FiniteGroup, g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        g, k = elem_inv(G, g), -k
    out = G.identity
    for _ in range(k):
        out = elem_mul(G, out, g)
    return out


def element_order(G: FiniteGroup, g: GroupElement) -> int:
    e = G.identity
    m, cur = 1, g
    while cur != e:
        cur = elem_mul(G, cur, g)
        m += 1
    return m


# -- group specs -------------------------------------------------------------

_SPEC_RE = re.compile(r"(cyclic|abelian|dihedral|gendih):(.*)\Z")


def build_group(spec: str) -> FiniteGroup:
    """Parse ``cyclic:n``, ``abelian:n1xn2..``, ``dihedral:k`` or ``gendih:n1x..``."""
    spec = spec.strip()
    m = _SPEC_RE.match(spec)
    if not m:
        raise ParseError(
            f"bad group spec {spec!r}: expected cyclic:|abelian:|dihedral:|gendih:",
            position=0,
        )
    kind, body = m.group(1), m.group(2)
    pos = m.start(2)
    factors = []
    for part in body.split("x"):
        if not part.isdigit() or not part.isascii():
            raise ParseError(f"bad factor {part!r} in {spec!r}", position=pos)
        if int(part) < 2:
            raise ParseError(f"factor {part} < 2 in {spec!r}", position=pos)
        factors.append(int(part))
        pos += len(part) + 1
    if kind in ("cyclic", "dihedral") and len(factors) != 1:
        raise ParseError(f"{kind} takes a single integer, got {body!r}", position=m.start(2))
    return FiniteGroup(AbelianSpec(tuple(factors)), kind in ("dihedral", "gendih"))


def format_token(g: GroupElement) -> str:
    body = ".".join(map(str, g.vector))
    return f"x:{body}" if g.flip else body


def parse_token(G: FiniteGroup, token: str) -> GroupElement:
    tok = token.strip()
    flip = 0
    if tok.startswith("x:"):
        if not G.dihedral:
            raise ParseError(f"token {token!r}: x: only valid in gendih groups")
        flip, tok = 1, tok[2:]
    parts = tok.split(".")
    if len(parts) != len(G.factors) or not all(p.isdigit() for p in parts):
        raise ParseError(
            f"token {token!r} needs {len(G.factors)} dot-separated residues for {G.label}"
        )
    vec = tuple(int(p) for p in parts)
    for v, n in zip(vec, G.factors):
        if v >= n:
            raise ParseError(f"token {token!r}: residue {v} out of range 0..{n - 1}")
    return GroupElement(flip, vec)


def parse_tokens(G: FiniteGroup, text: str) -> list[GroupElement]:
    text = text.strip()
    if not text:
        return []
    return [parse_token(G, t) for t in text.split(",")]


def abelian_shapes(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists (n1 >= n2 >= ..., each dividing the previous)."""
    out = []

    def rec(remaining, bound, acc):
        if remaining == 1:
            if acc:
                out.append(tuple(acc))
            return
        for f in range(min(bound, remaining), 1, -1):
            if remaining % f == 0 and (not acc or acc[-1] % f == 0):
                rec(remaining // f, f, acc + [f])

    rec(order, order, [])
    return sorted(out, key=lambda t: (len(t), [-f for f in t]))


# -- isomorphism -------------------------------------------------------------

AnyGroup = Union[FiniteGroup, PermGroup]


class _Table:
    """Uniform index-level view of a FiniteGroup or PermGroup."""

    def __init__(self, G: AnyGroup):
        if isinstance(G, FiniteGroup):
            elems = list(G.elements)
            mul = G.mul
            gens = G.standard_generators
            self.orders = [element_order(G, g) for g in elems]
        else:
            elems = list(G.elements)
            mul = compose
            gens = greedy_generators(elems)
            self.orders = [p.order() for p in elems]
        self.elements = elems
        self.idx = {g: i for i, g in enumerate(elems)}
        self._mul = mul
        self._cache: dict[tuple[int, int], int] = {}
        self.gens = [self.idx[g] for g in gens]
        self.n = len(elems)
        ident = [i for i, o in enumerate(self.orders) if o == 1]
        if len(ident) != 1:
            raise ValueError("element list does not contain exactly one identity")
        self.identity = ident[0]

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._cache.get(key)
        if r is None:
            r = self.idx[self._mul(self.elements[i], self.elements[j])]
            self._cache[key] = r
        return r


def order_multiset(G: AnyGroup) -> tuple[tuple[int, int], ...]:
    """Sorted ``(element order, count)`` pairs."""
    if isinstance(G, FiniteGroup):
        c = Counter(element_order(G, g) for g in G.elements)
    else:
        c = Counter(p.order() for p in G.elements)
    return tuple(sorted(c.items()))


def find_isomorphism(G: AnyGroup, H: AnyGroup, cap: int = ISO_CAP) -> dict | None:
    """Return an isomorphism G -> H as an element dict, or None."""
    if max(G.order, H.order) > cap:
        raise ResourceLimitError(
            f"isomorphism search on groups of order {max(G.order, H.order)} exceeds cap {cap}",
            count=max(G.order, H.order),
        )
    return _find_isomorphism(G, H)


@lru_cache(maxsize=4096)
def _find_isomorphism(G: AnyGroup, H: AnyGroup):
    if G.order != H.order:
        return None
    tg, th = _Table(G), _Table(H)
    if sorted(tg.orders) != sorted(th.orders):
        return None

    by_order: dict[int, list[int]] = {}
    for i, o in enumerate(th.orders):
        by_order.setdefault(o, []).append(i)
    gens = sorted(tg.gens, key=lambda i: -tg.orders[i])

    def extend(phi, used, j):
        # close the partial map under gens[:j+1]; None on inconsistency
        active = gens[: j + 1]
        phi = dict(phi)
        used = dict(used)
        queue = list(phi)
        k = 0
        while k < len(queue):
            w = queue[k]
            k += 1
            for s in active:
                sw = tg.mul(s, w)
                img = th.mul(phi[s], phi[w])
                have = phi.get(sw)
                if have is not None:
                    if have != img:
                        return None
                    continue
                if img in used:
                    return None
                phi[sw] = img
                used[img] = sw
                queue.append(sw)
        return phi, used

    def search(phi, used, j):
        if j == len(gens):
            return phi if len(phi) == tg.n else None
        g = gens[j]
        if g in phi:
            res = extend(phi, used, j)
            return search(*res, j + 1) if res else None
        for h in by_order[tg.orders[g]]:
            if h in used:
                continue
            trial = dict(phi)
            trial[g] = h
            tu = dict(used)
            tu[h] = g
            res = extend(trial, tu, j)
            if res is None:
                continue
            out = search(*res, j + 1)
            if out is not None:
                return out
        return None

    phi0 = {tg.identity: th.identity}
    found = search(phi0, {th.identity: tg.identity}, 0)
    if found is None:
        return None
    return {tg.elements[i]: th.elements[j] for i, j in found.items()}


def is_homomorphism(G: AnyGroup, H: AnyGroup, phi: dict) -> bool:
    """Brute-force check over all pairs; used to audit find_isomorphism."""
    mg = G.mul if isinstance(G, FiniteGroup) else compose
    mh = H.mul if isinstance(H, FiniteGroup) else compose
    return all(
        phi[mg(a, b)] == mh(phi[a], phi[b]) for a in G.elements for b in G.elements
    )
