"""Brute-force ground truth: automorphism groups, regular subgroups, certificate checks."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .cayley import Graph, broken_edge
from .constructions import RegularCertificate
from .errors import ResourceLimitError
from .groups import FiniteGroup, abelian_shapes, find_isomorphism, order_multiset
from .perm import PermGroup, Permutation, closure_images, generate_group, greedy_generators

AUT_CAP = 10**5
ENUM_MAX_N = 16
FACTORIAL_MAX_N = 8


@dataclass(frozen=True)
class AutResult:
    graph_n: int
    generators: tuple[Permutation, ...]
    order: int
    elements: Optional[tuple[Permutation, ...]] = field(default=None, repr=False)


# -- colour refinement -------------------------------------------------------

def _refine_pair(adj, ca, cb):
    """Refine two colourings in lockstep; None if they stop matching."""
    ncolors = len(set(ca))
    while True:
        sa = [(ca[v], tuple(sorted(ca[u] for u in adj[v]))) for v in range(len(adj))]
        if cb is ca:
            sb = sa
        else:
            sb = [(cb[v], tuple(sorted(cb[u] for u in adj[v]))) for v in range(len(adj))]
            if Counter(sa) != Counter(sb):
                return None
        rank = {s: i for i, s in enumerate(sorted(set(sa)))}
        ca = tuple(rank[s] for s in sa)
        cb = ca if sb is sa else tuple(rank[s] for s in sb)
        if len(rank) == ncolors:
            return ca, cb
        ncolors = len(rank)


def equitable_partition(graph: Graph) -> tuple[int, ...]:
    """Coarsest equitable colouring reachable from the uniform one."""
    c0 = (0,) * graph.n
    return _refine_pair(graph.adjacency, c0, c0)[0]


def _individualize(adj, ca, v, cb, w):
    fresh = max(ca) + 1
    na = list(ca)
    na[v] = fresh
    nb = list(cb)
    nb[w] = fresh
    na, nb = tuple(na), tuple(nb)
    if ca is cb and v == w:
        nb = na
    return _refine_pair(adj, na, nb)


def _target_cell(colors):
    """Smallest non-singleton cell (ties: smallest colour); None when discrete."""
    cells = defaultdict(list)
    for v, c in enumerate(colors):
        cells[c].append(v)
    best = None
    for c, members in cells.items():
        if len(members) > 1 and (best is None or (len(members), c) < best[0]):
            best = ((len(members), c), members)
    return None if best is None else best[1]


def _first_automorphism(graph, ca, cb):
    adj = graph.adjacency
    cell = _target_cell(ca)
    if cell is None:
        where = {c: w for w, c in enumerate(cb)}
        p = Permutation(tuple(where[c] for c in ca))
        return p if broken_edge(graph, p) is None else None
    v = min(cell)
    color = ca[v]
    for w in range(graph.n):
        if cb[w] != color:
            continue
        pair = _individualize(adj, ca, v, cb, w)
        if pair is None:
            continue
        found = _first_automorphism(graph, *pair)
        if found is not None:
            return found
    return None


def _orbit(v, gens):
    orb = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for g in gens:
            w = g.images[u]
            if w not in orb:
                orb.add(w)
                stack.append(w)
    return orb


def _refined(graph: Graph):
    adj = graph.adjacency
    c = equitable_partition(graph)
    base, levels = [], []
    while (cell := _target_cell(c)) is not None:
        v = min(cell)
        base.append(v)
        levels.append(c)
        c = _individualize(adj, c, v, c, v)[0]

    gens: list[Permutation] = []
    order = 1
    for i in reversed(range(len(base))):
        v, pre = base[i], levels[i]
        orbit = _orbit(v, gens)
        for w in range(graph.n):
            if pre[w] != pre[v] or w in orbit:
                continue
            pair = _individualize(adj, pre, v, pre, w)
            if pair is None:
                continue
            p = _first_automorphism(graph, *pair)
            if p is not None:
                gens.append(p)
                orbit = _orbit(v, gens)
        order *= len(orbit)
    return tuple(gens), order


def _factorial(graph: Graph):
    n = graph.n
    edges = graph.edges()
    adjsets = [set(a) for a in graph.adjacency]
    out = []
    for img in permutations(range(n)):
        if all(img[v] in adjsets[img[u]] for u, v in edges):
            out.append(Permutation(img))
    return out


def automorphism_group(
    graph: Graph,
    mode: str = "refined",
    cap: int = AUT_CAP,
    want_elements: bool = True,
) -> AutResult:
    """Aut(graph) by individualisation-refinement (``refined``) or by filtering S_n (``factorial``).

    With ``want_elements`` and an order above ``cap``, raises ResourceLimitError;
    the error carries the exact order in ``count`` and the generators in ``generators``.
    """
    n = graph.n
    if mode == "factorial":
        if n > FACTORIAL_MAX_N:
            raise ValueError(f"factorial mode needs n <= {FACTORIAL_MAX_N}, got {n}")
        elems = _factorial(graph)
        if len(elems) > cap and want_elements:
            raise ResourceLimitError(f"|Aut| = {len(elems)} exceeds cap {cap}", len(elems))
        return AutResult(
            n, greedy_generators(elems), len(elems), tuple(elems) if len(elems) <= cap else None
        )
    if mode != "refined":
        raise ValueError(f"unknown mode {mode!r}")
    gens, order = _refined(graph)
    elements = None
    if order <= cap:
        group = generate_group(gens, cap=order, degree=n)
        assert group.order == order, (group.order, order)
        elements = group.elements
    elif want_elements:
        err = ResourceLimitError(
            f"|Aut| = {order} exceeds cap {cap}; raise --max-aut to list elements", order
        )
        err.generators = gens
        raise err
    return AutResult(n, gens, order, elements)


# -- regular subgroups -------------------------------------------------------

@dataclass(frozen=True)
class RegularClass:
    label: str
    order_multiset: tuple[tuple[int, int], ...]
    representative: PermGroup = field(repr=False)
    count: int = 1


@dataclass(frozen=True)
class RegularClassReport:
    graph_n: int
    classes: tuple[RegularClass, ...]
    total_regular_subgroups: int

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]


@lru_cache(maxsize=None)
def catalog(n: int) -> tuple[FiniteGroup, ...]:
    """Pairwise non-isomorphic constructible groups of order n (abelian first)."""
    cands = [FiniteGroup.abelian(*s) for s in abelian_shapes(n)]
    if n % 2 == 0 and n >= 4:
        cands += [FiniteGroup.gendih(*s) for s in abelian_shapes(n // 2)]
    kept: list[FiniteGroup] = []
    for G in cands:
        if not any(find_isomorphism(G, K) for K in kept):
            kept.append(G)
    return tuple(kept)


def _semiregular_closure(gens, n):
    """Closure of gens if every non-identity element is fixed-point-free, else None."""
    ident = tuple(range(n))
    seen = {ident}
    queue = [ident]
    for e in queue:
        for g in gens:
            prod = tuple(g[v] for v in e)
            if prod in seen:
                continue
            if prod != ident and any(prod[v] == v for v in range(n)):
                return None
            seen.add(prod)
            if len(seen) > n:
                return None
            queue.append(prod)
    return frozenset(seen)


def regular_subgroups(aut: AutResult) -> list[frozenset]:
    """Every regular subgroup of ``aut`` as a frozenset of image tuples."""
    n = aut.graph_n
    if aut.elements is None:
        raise ResourceLimitError(
            f"automorphism group of order {aut.order} not materialised; increase --max-aut",
            aut.order,
        )
    by0 = defaultdict(list)
    for p in aut.elements:
        t = p.images
        if all(t[v] != v for v in range(n)):
            by0[t[0]].append(t)
    found: set[frozenset] = set()
    visited: set[frozenset] = set()

    def search(elems, gens):
        if len(elems) == n:
            found.add(elems)
            return
        if elems in visited:
            return
        visited.add(elems)
        covered = {t[0] for t in elems}
        v = next(u for u in range(n) if u not in covered)
        for g in by0[v]:
            new = _semiregular_closure(gens + (g,), n)
            if new is not None:
                search(new, gens + (g,))

    if n == 1:
        return [frozenset({(0,)})]
    search(frozenset({tuple(range(n))}), ())
    return sorted(found, key=lambda s: sorted(s))


def enumerate_regular_subgroups(
    graph: Graph, aut: AutResult | None = None, max_n: int = ENUM_MAX_N
) -> RegularClassReport:
    n = graph.n
    if n > max_n:
        raise ResourceLimitError(f"regular subgroup enumeration limited to n <= {max_n}", n)
    if aut is None:
        aut = automorphism_group(graph)
    subs = regular_subgroups(aut)
    groups = []
    for s in subs:
        elems = tuple(Permutation(t) for t in sorted(s))
        groups.append(PermGroup(n, greedy_generators(elems), elems))

    known = catalog(n)
    classes: dict[str, list] = {}
    unknown_reps: list[tuple[str, PermGroup]] = []
    for P in groups:
        label = next((G.label for G in known if find_isomorphism(P, G)), None)
        if label is None:
            for lab, rep in unknown_reps:
                if find_isomorphism(P, rep):
                    label = lab
                    break
            else:
                om = order_multiset(P)
                label = "unrecognized[" + ",".join(f"{o}^{c}" for o, c in om) + "]"
                if any(lab == label for lab, _ in unknown_reps):
                    label += f"#{len(unknown_reps)}"
                unknown_reps.append((label, P))
        classes.setdefault(label, []).append(P)

    out = tuple(
        RegularClass(lab, order_multiset(ps[0]), ps[0], len(ps))
        for lab, ps in sorted(classes.items())
    )
    return RegularClassReport(n, out, len(groups))


# -- certificate verification -----------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


def verify_certificate(cert: RegularCertificate) -> VerificationReport:
    """Re-check a certificate from its raw permutations; never raises on bad content."""
    graph, perms = cert.graph, cert.perms
    n = graph.n
    checks = []

    bad = next(
        (
            (i, p, e)
            for i, p in enumerate(perms.elements)
            if p.degree == n and (e := broken_edge(graph, p)) is not None
        ),
        None,
    )
    wrong_degree = [i for i, p in enumerate(perms.elements) if p.degree != n]
    if wrong_degree:
        checks.append(CheckResult("automorphisms", False, f"element #{wrong_degree[0]} has wrong degree"))
    elif bad is not None:
        i, p, (u, v) = bad
        checks.append(
            CheckResult(
                "automorphisms",
                False,
                f"element #{i} maps edge ({u}, {v}) to non-edge ({p(u)}, {p(v)})",
            )
        )
    else:
        checks.append(CheckResult("automorphisms", True, f"{perms.order} elements preserve all edges"))

    listed = [p.images for p in perms.elements]
    try:
        closed = closure_images([g.images for g in perms.generators], n, cap=max(len(listed), 1))
    except (ResourceLimitError, IndexError, ValueError):
        closed = None
    if len(set(listed)) != len(listed):
        checks.append(CheckResult("closure", False, "duplicate elements listed"))
    elif closed is None or closed != set(listed):
        checks.append(CheckResult("closure", False, "generators do not generate the listed elements"))
    else:
        ok = all(tuple(a[v] for v in b) in closed for a in listed for b in listed)
        checks.append(
            CheckResult("closure", ok, f"order {len(listed)}" if ok else "listed set not closed")
        )

    hits = Counter(t[0] for t in listed if len(t) == n)
    miss = next((v for v in range(n) if hits[v] != 1), None)
    if len(listed) != n:
        checks.append(CheckResult("regular", False, f"order {len(listed)} != {n} vertices"))
    elif miss is not None:
        checks.append(CheckResult("regular", False, f"{hits[miss]} elements map 0 to {miss}"))
    else:
        checks.append(CheckResult("regular", True, "sharply transitive"))

    try:
        iso = find_isomorphism(perms, cert.claimed_type)
    except (KeyError, ValueError, ResourceLimitError) as exc:
        iso, why = None, f"isomorphism search failed: {exc}"
    else:
        why = f"not isomorphic to {cert.claimed_type.label}"
    checks.append(
        CheckResult(
            "isomorphism",
            iso is not None,
            f"isomorphic to {cert.claimed_type.label}" if iso is not None else why,
        )
    )
    return VerificationReport(tuple(checks))
