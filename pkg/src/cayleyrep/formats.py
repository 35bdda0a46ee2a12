"""Graph export (graph6, DOT, JSON) and certificate serialisation."""
from __future__ import annotations

import json

from .cayley import CayleyGraph, Graph, validate_connection_set
from .constructions import RegularCertificate
from .errors import ParseError
from .groups import FiniteGroup, build_group, format_token, parse_token, parse_tokens
from .perm import PermGroup, Permutation

GRAPH6_MAX_N = 62


def parse_group_spec(s: str) -> FiniteGroup:
    """CLI-facing group parser; errors carry the column of the offending text."""
    try:
        return build_group(s)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), position=0) from exc


def to_graph6(graph: Graph) -> str:
    n = graph.n
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {n}")
    bits = [1 if graph.has_edge(i, j) else 0 for j in range(n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    data = text.strip()
    n = ord(data[0]) - 63
    if not 0 <= n <= GRAPH6_MAX_N:
        raise ValueError("only short-form graph6 is supported")
    bits = []
    for ch in data[1:]:
        val = ord(ch) - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    return Graph.from_edges(n, (p for p, b in zip(pairs, bits) if b))


def _vertex_tokens(graph: Graph) -> list[str]:
    if isinstance(graph, CayleyGraph) and graph.group is not None:
        return [format_token(g) for g in graph.group.elements]
    return [str(i) for i in range(graph.n)]


def to_dot(graph: Graph) -> str:
    lines = ["graph G {"]
    for i, tok in enumerate(_vertex_tokens(graph)):
        lines.append(f'  {i} [label="{tok}"];')
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: Graph) -> dict:
    d = {"n": graph.n, "edges": [list(e) for e in graph.edges()], "vertices": _vertex_tokens(graph)}
    if isinstance(graph, CayleyGraph) and graph.group is not None:
        d["group_spec"] = graph.group.label
        d["connection_set"] = graph.connection.tokens()
    else:
        d["group_spec"] = None
        d["connection_set"] = None
    return d


def to_json(graph: Graph) -> str:
    return json.dumps(graph_to_dict(graph), sort_keys=True)


def graph_from_json(text: str) -> Graph:
    d = json.loads(text)
    if d.get("group_spec"):
        from .cayley import build_cayley_graph

        G = build_group(d["group_spec"])
        S = validate_connection_set(G, [parse_token(G, t) for t in d["connection_set"]])
        g = build_cayley_graph(G, S)
        if sorted(map(tuple, d["edges"])) != g.edges():
            raise ValueError("edge list disagrees with group_spec/connection_set")
        return g
    return Graph.from_edges(d["n"], (tuple(e) for e in d["edges"]))


def export_graph(graph: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return (to_graph6(graph) + "\n").encode("ascii")
    if fmt == "dot":
        return to_dot(graph).encode()
    if fmt == "json":
        return (to_json(graph) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def certificate_to_dict(cert: RegularCertificate) -> dict:
    g = cert.graph
    return {
        "construction": cert.construction,
        "group_spec": g.group.label,
        "connection_set": g.connection.tokens(),
        "claimed_type": cert.claimed_type.label,
        "witness": format_token(cert.witness) if cert.witness is not None else None,
        "generators": [list(p.images) for p in cert.perms.generators],
        "elements": [list(p.images) for p in cert.perms.elements],
    }


def certificate_from_dict(d: dict) -> RegularCertificate:
    """Rebuild a certificate as written; content is not checked here."""
    from .cayley import build_cayley_graph

    G = build_group(d["group_spec"])
    S = validate_connection_set(G, parse_tokens(G, ",".join(d["connection_set"])))
    graph = build_cayley_graph(G, S)
    n = len(d["elements"][0]) if d["elements"] else G.order
    perms = PermGroup(
        n,
        tuple(Permutation(tuple(p)) for p in d["generators"]),
        tuple(Permutation(tuple(p)) for p in d["elements"]),
    )
    witness = parse_token(G, d["witness"]) if d.get("witness") else None
    return RegularCertificate(graph, build_group(d["claimed_type"]), perms, d["construction"], witness)
