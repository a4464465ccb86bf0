"""graph6 and JSON edge-list serialization.

graph6 follows the standard byte encoding: a size header (single byte
``n+63`` for n <= 62, or ``~`` plus three bytes for larger n), then the
upper triangle of the adjacency matrix in column order, packed six bits
per byte with an offset of 63.
"""

from __future__ import annotations

import json
from typing import Iterable

from .exceptions import MalformedHeaderError, TruncatedBitsError
from .graphs import Graph, WeightScheme

_HEADER_PREFIX = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError(f"graph too large for this encoder: n={n}")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, header length)."""
    if not data:
        raise MalformedHeaderError("empty graph6 string")
    b0 = data[0]
    if b0 == 126:
        if len(data) >= 2 and data[1] == 126:
            raise MalformedHeaderError("graphs with n > 258047 are not supported")
        if len(data) < 4:
            raise MalformedHeaderError("truncated size header")
        parts = data[1:4]
        if any(not 63 <= b <= 126 for b in parts):
            raise MalformedHeaderError("size header bytes out of range")
        n = ((parts[0] - 63) << 12) | ((parts[1] - 63) << 6) | (parts[2] - 63)
        return n, 4
    if not 63 <= b0 <= 126:
        raise MalformedHeaderError(f"header byte {b0} out of range")
    return b0 - 63, 1


def emit_graph6(g: Graph) -> str:
    """graph6 string of the graph (vertex order preserved)."""
    n = g.n
    bits: list[int] = []
    for j in range(1, n):
        aj = set(g.adj[j])
        for i in range(j):
            bits.append(1 if i in aj else 0)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_encode_n(n))
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k : k + 6]:
            word = (word << 1) | b
        out.append(word + 63)
    return out.decode("ascii")


def parse_graph6(
    text: str | bytes, scheme: WeightScheme = WeightScheme.COMBINATORIAL
) -> Graph:
    """Decode a graph6 string; accepts the optional ``>>graph6<<`` prefix."""
    if isinstance(text, str):
        text = text.strip()
        if text.startswith(_HEADER_PREFIX):
            text = text[len(_HEADER_PREFIX):]
        data = text.encode("ascii", errors="replace")
    else:
        data = bytes(text).strip()
        if data.startswith(_HEADER_PREFIX.encode()):
            data = data[len(_HEADER_PREFIX):]
    n, off = _decode_n(data)
    body = data[off:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise TruncatedBitsError(
            f"expected {expected} body bytes for n={n}, got {len(body)}"
        )
    if any(not 63 <= b <= 126 for b in body):
        raise TruncatedBitsError("body byte out of range")
    bits: list[int] = []
    for b in body:
        w = b - 63
        bits.extend(((w >> s) & 1) for s in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise TruncatedBitsError("nonzero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges, scheme)


def emit_edge_json(g: Graph) -> str:
    """JSON object {"n":..., "edges":[[u,v],...], "scheme":...}."""
    return json.dumps(
        {"n": g.n, "edges": [list(e) for e in g.edges()], "scheme": g.scheme.value},
        separators=(",", ":"),
    )


def parse_edge_json(text: str) -> Graph:
    obj = json.loads(text)
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
        scheme = WeightScheme(obj.get("scheme", "combinatorial"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad edge-list JSON: {exc}") from exc
    if scheme is WeightScheme.GENERAL:
        raise ValueError("general-weighted graphs are not part of the JSON interface")
    return Graph(n, edges, scheme)


def parse_graph_file(text: str) -> Graph:
    """Auto-detect: JSON object or one graph6 line."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return parse_edge_json(stripped)
    return parse_graph6(stripped.splitlines()[0] if stripped else "")


def emit_graph6_lines(graphs: Iterable[Graph]) -> str:
    return "".join(emit_graph6(g) + "\n" for g in graphs)
