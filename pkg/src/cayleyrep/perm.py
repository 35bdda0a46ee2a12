"""Permutations of {0, ..., n-1} and closure of permutation groups.

Composition convention throughout: ``compose(p, q)(v) == p(q(v))``, i.e. q
is applied first.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Sequence

from .errors import ResourceLimitError

DEFAULT_CAP = 10**6


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __len__(self):
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(n))
        for cyc in cycles:
            for i, v in enumerate(cyc):
                images[v] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            v = start
            while not seen[v]:
                seen[v] = True
                cyc.append(v)
                v = self.images[v]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def fixed_points(self) -> list[int]:
        return [i for i, v in enumerate(self.images) if i == v]

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p after q: ``result(v) = p(q(v))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[v] for v in q.images))


def invert(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, v in enumerate(p.images):
        inv[v] = i
    return Permutation(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = invert(p), -k
    result = Permutation.identity(p.degree)
    for _ in range(k):
        result = compose(p, result)
    return result


@dataclass(frozen=True)
class PermGroup:
    """A permutation group with its full, sorted element list."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._image_set

    @property
    def _image_set(self) -> frozenset:
        # cached lazily on the frozen instance
        try:
            return self.__dict__["_images_cache"]
        except KeyError:
            s = frozenset(e.images for e in self.elements)
            object.__setattr__(self, "_images_cache", s)
            return s

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def orbit(self, v: int) -> set[int]:
        return {g.images[v] for g in self.elements}


def closure_images(
    gens: Sequence[tuple[int, ...]], degree: int, cap: int = DEFAULT_CAP
) -> set[tuple[int, ...]]:
    """Breadth-first closure on raw image tuples (no validation)."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for g in gens:
            prod = tuple(g[v] for v in e)
            if prod not in seen:
                seen.add(prod)
                if len(seen) > cap:
                    raise ResourceLimitError(
                        f"group closure exceeded cap {cap}", count=len(seen)
                    )
                queue.append(prod)
    return seen


def generate_group(
    gens: Iterable[Permutation], cap: int = DEFAULT_CAP, degree: int | None = None
) -> PermGroup:
    """Close ``gens`` under composition.

    ``degree`` is required only when ``gens`` is empty.
    """
    gens = tuple(gens)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    degrees = {g.degree for g in gens}
    if len(degrees) > 1:
        raise ValueError(f"generators have mixed degrees {sorted(degrees)}")
    if degrees:
        (n,) = degrees
        if degree is not None and degree != n:
            raise ValueError(f"degree {degree} does not match generators ({n})")
    elif degree is None:
        raise ValueError("degree required for an empty generator list")
    else:
        n = degree
    imgs = closure_images([g.images for g in gens], n, cap)
    elements = tuple(Permutation(t) for t in sorted(imgs))
    return PermGroup(n, gens, elements)


def is_transitive(P: PermGroup) -> bool:
    return len(P.orbit(0)) == P.degree if P.degree else True


def is_regular(P: PermGroup, n: int) -> bool:
    """Sharply transitive on n points."""
    if P.degree != n:
        raise ValueError(f"group degree {P.degree} != {n}")
    return P.order == n and is_transitive(P)


def greedy_generators(elements: Sequence[Permutation]) -> tuple[Permutation, ...]:
    """A small generating subset: take high-order elements first, skip redundant ones."""
    if not elements:
        return ()
    n = elements[0].degree
    ranked = sorted(elements, key=lambda p: (-p.order(), p.images))
    target = len(elements)
    gens: list[Permutation] = []
    span = {tuple(range(n))}
    for p in ranked:
        if len(span) == target:
            break
        if p.images in span:
            continue
        gens.append(p)
        span = closure_images([g.images for g in gens], n)
    return tuple(gens)
