"""graph6 and DIMACS edge-format readers and writers."""

from __future__ import annotations

from .graph import Graph, GraphError


class FormatError(ValueError):
    pass


def _size_header(m: int) -> bytes:
    if m < 63:
        return bytes([m + 63])
    if m < 258048:
        return bytes([126] + [((m >> sh) & 63) + 63 for sh in (12, 6, 0)])
    if m < 1 << 36:
        return bytes([126, 126] + [((m >> sh) & 63) + 63 for sh in (30, 24, 18, 12, 6, 0)])
    raise FormatError("graph too large for graph6")


def to_graph6(g: Graph) -> bytes:
    """graph6 encoding (no ``>>graph6<<`` header, no trailing newline)."""
    m = g.num_vertices
    bits = [g.rows[i] >> j & 1 for j in range(1, m) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[t:t + 6])), 2) for t in range(0, len(bits), 6))
    return _size_header(m) + body


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data or any(not 63 <= c <= 126 for c in data):
        raise FormatError("not a graph6 string")
    vals = [c - 63 for c in data]
    if vals[0] < 63:
        m, rest = vals[0], vals[1:]
    elif len(vals) > 1 and vals[1] < 63:
        m, rest = _decode_int(vals[1:4]), vals[4:]
    else:
        m, rest = _decode_int(vals[2:8]), vals[8:]
    need = (m * (m - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise FormatError(f"expected {need} data bytes for {m} vertices, got {len(rest)}")
    bits = [(v >> (5 - b)) & 1 for v in rest for b in range(6)]
    edges, t = [], 0
    for j in range(1, m):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return Graph.from_edges(m, edges)


def _decode_int(vals: list[int]) -> int:
    x = 0
    for v in vals:
        x = (x << 6) | v
    return x


def to_dimacs(g: Graph) -> str:
    """``p edge V E`` then ``e i j`` lines, 1-indexed with i < j, ascending."""
    lines = [f"p edge {g.num_vertices} {g.num_edges}"]
    lines += [f"e {i + 1} {j + 1}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Graph:
    m = declared = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise FormatError(f"line {lineno}: bad problem line {line!r}")
            m, declared = int(tok[2]), int(tok[3])
        elif tok[0] == "e":
            if m is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(tok) != 3:
                raise FormatError(f"line {lineno}: bad edge line {line!r}")
            edges.append((int(tok[1]) - 1, int(tok[2]) - 1))
        else:
            raise FormatError(f"line {lineno}: unknown line type {tok[0]!r}")
    if m is None:
        raise FormatError("missing problem line")
    try:
        g = Graph.from_edges(m, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    if g.num_edges != declared:
        raise FormatError(f"declared {declared} edges, found {g.num_edges}")
    return g
