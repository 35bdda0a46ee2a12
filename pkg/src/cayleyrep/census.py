"""Bulk sweeps of both constructions over connection sets, streamed as JSON Lines."""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import IO, Iterator, Optional

from .cayley import build_cayley_graph, inverse_orbits, subset_from_mask, validate_connection_set
from .constructions import (
    find_witnesses,
    is_even_circulant,
    prop1_certificate,
    thm2_certificate,
)
from .errors import ConstructionError, ResourceLimitError
from .groups import (
    FiniteGroup,
    abelian_shapes,
    build_group,
    find_isomorphism,
    format_token,
    parse_token,
)
from .oracle import AUT_CAP, ENUM_MAX_N, automorphism_group, enumerate_regular_subgroups, verify_certificate

FAMILIES = ("prop1", "thm2")
EXHAUSTIVE_MAX_ORDER = 16


@dataclass
class CensusRecord:
    group_spec: str
    connection_set: list[str]
    n: int
    construction: str
    witness: Optional[str] = None
    witness_count: Optional[int] = None
    # None when no certificate was attempted (thm2 row without a witness)
    certificate_ok: Optional[bool] = None
    oracle_checked: bool = False
    regular_classes: Optional[list[str]] = None
    abelian_without_witness: Optional[bool] = None
    degenerate: bool = False
    edgeless: bool = False
    elapsed_ms: int = 0
    failure: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass
class CensusSummary:
    family: str
    total: int = 0
    certificates: int = 0
    witness_rows: int = 0
    oracle_rows: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def witness_rate(self) -> float:
        return self.witness_rows / self.total if self.total else 0.0

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "total": self.total,
            "certificates": self.certificates,
            "witness_rows": self.witness_rows,
            "witness_rate": round(self.witness_rate, 6),
            "oracle_rows": self.oracle_rows,
            "failures": len(self.failures),
        }


def family_groups(family: str, lo: int, hi: int) -> list[FiniteGroup]:
    """Constructible groups of order lo..hi the family applies to."""
    out = []
    for n in range(lo, hi + 1):
        if family == "prop1":
            if n % 2 == 0 and n >= 4:
                out.append(FiniteGroup.abelian(n))
        elif n % 2 == 0 and n >= 4:
            out.extend(FiniteGroup.gendih(*s) for s in abelian_shapes(n // 2))
    return out


def check_family(family: str, G: FiniteGroup) -> None:
    if family == "prop1" and not is_even_circulant(G):
        raise ConstructionError(f"prop1 census needs an even cyclic group of order >= 4, got {G.label}")
    if family == "thm2" and not G.dihedral:
        raise ConstructionError(f"thm2 census needs a gendih group, got {G.label}")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")


def connection_masks(G: FiniteGroup, sampling: str, seed: int = 0, samples: int = 100) -> list[int]:
    m = len(inverse_orbits(G))
    if sampling == "exhaustive":
        return list(range(1 << m))
    rng = random.Random(seed)
    if samples <= 1 << m:
        return rng.sample(range(1 << m), samples)
    return [rng.randrange(1 << m) for _ in range(samples)]


@lru_cache(maxsize=64)
def _group(spec: str) -> FiniteGroup:
    return build_group(spec)


def evaluate_row(
    family: str,
    spec: str,
    tokens: tuple[str, ...],
    oracle: bool = False,
    max_aut: int = AUT_CAP,
    timing: bool = False,
) -> CensusRecord:
    t0 = time.perf_counter()
    G = _group(spec)
    S = validate_connection_set(G, [parse_token(G, t) for t in tokens])
    graph = build_cayley_graph(G, S)
    rec = CensusRecord(spec, S.tokens(), G.order, family, edgeless=not S.elements)

    cert = None
    if family == "prop1":
        cert = prop1_certificate(graph)
    else:
        rec.degenerate = G.abelian_part.is_elementary_2()
        witnesses = find_witnesses(G, S)
        rec.witness_count = len(witnesses)
        if witnesses:
            rec.witness = format_token(witnesses[0])
            cert = thm2_certificate(graph, witnesses[0])
        elif len(S.coset_part()) == 1:
            rec.failure = "single xA element but no witness"

    if cert is not None:
        report = verify_certificate(cert)
        rec.certificate_ok = report.ok
        if not report.ok:
            rec.failure = "; ".join(f"{c.name}: {c.detail}" for c in report.failed())

    if oracle and G.order <= ENUM_MAX_N:
        try:
            aut = automorphism_group(graph, cap=max_aut)
        except ResourceLimitError:
            aut = None
        if aut is not None:
            classes = enumerate_regular_subgroups(graph, aut)
            rec.oracle_checked = True
            rec.regular_classes = classes.labels
            if cert is not None and cert.claimed_type.label not in rec.regular_classes:
                if not any(find_isomorphism(cert.claimed_type, c.representative) for c in classes.classes):
                    rec.failure = f"oracle found no regular subgroup of type {cert.claimed_type.label}"
            if family == "thm2" and cert is None:
                rec.abelian_without_witness = any(
                    c.representative.is_abelian() for c in classes.classes
                )
    if timing:
        rec.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rec


def _row_star(args):
    return evaluate_row(*args)


def iter_census(
    family: str,
    groups: list[FiniteGroup],
    sampling: str = "exhaustive",
    seed: int = 0,
    samples: int = 100,
    oracle: bool = False,
    max_order: int = EXHAUSTIVE_MAX_ORDER,
    max_aut: int = AUT_CAP,
    timing: bool = False,
    jobs: int = 1,
) -> Iterator[CensusRecord]:
    if sampling not in ("exhaustive", "random"):
        raise ValueError(f"unknown sampling {sampling!r}")
    for G in groups:
        check_family(family, G)
        if sampling == "exhaustive" and G.order > max_order:
            raise ResourceLimitError(
                f"exhaustive census limited to order <= {max_order}; {G.label} has order {G.order}",
                G.order,
            )

    def work():
        for G in groups:
            orbits = inverse_orbits(G)
            for mask in connection_masks(G, sampling, seed, samples):
                S = validate_connection_set(G, subset_from_mask(orbits, mask))
                yield (family, G.label, tuple(S.tokens()), oracle, max_aut, timing)

    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            # map() yields in submission order, so output stays deterministic
            yield from pool.map(_row_star, work(), chunksize=32)
    else:
        for item in work():
            yield evaluate_row(*item)


def run_census(family: str, groups: list[FiniteGroup], sink: IO[str] | None = None, **kw) -> CensusSummary:
    summary = CensusSummary(family)
    for rec in iter_census(family, groups, **kw):
        summary.total += 1
        if rec.certificate_ok is not None:
            summary.certificates += 1
        if family == "prop1" or rec.witness is not None:
            summary.witness_rows += 1
        if rec.oracle_checked:
            summary.oracle_rows += 1
        if rec.failure or rec.certificate_ok is False:
            summary.failures.append(f"{rec.group_spec} {rec.connection_set}: {rec.failure}")
        if sink is not None:
            sink.write(rec.to_json() + "\n")
            sink.flush()
    return summary
