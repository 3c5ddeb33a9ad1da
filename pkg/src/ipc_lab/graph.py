"""Immutable simple undirected graphs, edge-list parsing, and BFS metric.

Vertices are 0-based contiguous integers.  Multi-edges and self-loops are
hard errors everywhere: research inputs that violate the format should fail
loudly, not get silently repaired.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .rng import mix64

#: Sentinel distance for vertices in another component.  Never combined
#: arithmetically with real distances.
UNREACHABLE = -1


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GraphError):
    """Edge-list input rejected; carries the offending 1-based line."""

    def __init__(self, message: str, line_no: int | None = None, line: str | None = None):
        self.line_no = line_no
        self.line = line
        if line_no is not None:
            message = f"line {line_no}: {message}" + (f" ({line!r})" if line is not None else "")
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class IdOutOfRange(ParseError):
    pass


class MissingVertexId(ParseError):
    """A vertex id in [0, max_id] never appears and no header declared n."""


class Disconnected(GraphError):
    pass


class NotAPath(GraphError):
    pass


class Unreachable(GraphError):
    pass


class TooLarge(GraphError):
    """A resource cap was hit; pass the documented override to proceed."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph in adjacency form.

    Invariants (enforced by :meth:`from_edges`): no self-loops, no duplicate
    edges, symmetric adjacency, neighbor lists sorted ascending, and
    ``m == sum(len(adj)) / 2``.  Instances are immutable and safe to share
    across threads.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    m: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IdOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return cls(n=n, adjacency=tuple(tuple(sorted(a)) for a in adj), m=len(seen))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once, as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """(m, 2) int32 array of the edges, u < v, ascending."""
        if self.m == 0:
            return np.zeros((0, 2), dtype=np.int32)
        return np.array(list(self.edges()), dtype=np.int32)


@dataclass(frozen=True)
class DistanceRow:
    """Exact hop distances from one source; UNREACHABLE off-component."""

    source: int
    dist: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.dist[v]


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense all-pairs distances (one DistanceRow per vertex)."""

    rows: tuple[DistanceRow, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, u: int) -> DistanceRow:
        return self.rows[u]

    def d(self, u: int, v: int) -> int:
        return self.rows[u].dist[v]

    @cached_property
    def as_array(self) -> np.ndarray:
        """(n, n) int32 view used by the vectorized kernels."""
        return np.array([r.dist for r in self.rows], dtype=np.int32)


def bfs_distances(g: Graph, source: int) -> DistanceRow:
    """Exact hop distances from ``source`` by breadth-first search."""
    if not (0 <= source < g.n):
        raise GraphError(f"source {source} outside [0, {g.n})")
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adjacency = g.adjacency
    while queue:
        u = queue.popleft()
        du1 = dist[u] + 1
        for w in adjacency[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du1
                queue.append(w)
    return DistanceRow(source=source, dist=tuple(dist))


def bfs_parents(g: Graph, source: int) -> tuple[DistanceRow, tuple[int, ...]]:
    """Distances plus deterministic parent pointers (-1 at the source and
    off-component); each vertex's parent is its first discoverer, which is
    the smallest-id candidate because adjacency lists are sorted."""
    dist = [UNREACHABLE] * g.n
    parent = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du1 = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du1
                parent[w] = u
                queue.append(w)
    return DistanceRow(source=source, dist=tuple(dist)), tuple(parent)


def shortest_path(g: Graph, u: int, v: int) -> list[int]:
    """One shortest (u, v)-path, deterministic (smallest-parent BFS tree)."""
    row, parent = bfs_parents(g, u)
    if row[v] == UNREACHABLE:
        raise Unreachable(f"no path from {u} to {v}")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """n BFS runs; O(n·m) total."""
    return DistanceMatrix(rows=tuple(bfs_distances(g, s) for s in range(g.n)))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return UNREACHABLE not in bfs_distances(g, 0).dist


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the components, each ascending, ordered by minimum id."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def induced_subgraph(g: Graph, vertices: list[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``; returns it plus the new->old id map."""
    order = sorted(vertices)
    index = {v: i for i, v in enumerate(order)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges()
        if u in index and v in index
    ]
    return Graph.from_edges(len(order), edges), order


def is_isometric_path(g: Graph, dm: DistanceMatrix, seq: list[int] | tuple[int, ...]) -> bool:
    """True iff ``seq`` is a path whose length equals the distance between
    its endpoints.  A single vertex counts (zero-length path).  Raises
    :class:`NotAPath` when the sequence is not a path at all (repeated
    vertices or non-adjacent consecutive vertices)."""
    if not seq:
        raise NotAPath("empty vertex sequence")
    if len(set(seq)) != len(seq):
        raise NotAPath(f"repeated vertex in {list(seq)}")
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            raise NotAPath(f"vertices {a} and {b} are consecutive but not adjacent")
    return len(seq) - 1 == dm.d(seq[0], seq[-1])


# ---------------------------------------------------------------------------
# Edge-list text format
#
#   - optional first line:  p <n> <m>
#   - one edge per line:    <u> <v>     (0-based; --one-based shifts ids)
#   - lines starting with '#' are comments; blank lines ignored
# ---------------------------------------------------------------------------


def parse_edge_list(text: str | Iterable[str], one_based: bool = False) -> Graph:
    """Parse the edge-list format into a Graph.

    Without a header, n is max id + 1 and every id in [0, n) must occur
    (gaps rejected); with a ``p n m`` header, isolated vertices are legal
    but the declared edge count must match.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    shift = 1 if one_based else 0

    declared_n: int | None = None
    declared_m: int | None = None
    header_line_no: int | None = None
    edges: list[tuple[int, int]] = []
    edge_keys: set[tuple[int, int]] = set()
    seen_ids: set[int] = set()
    max_id = -1
    saw_content = False

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if not saw_content and parts[0] == "p":
            saw_content = True
            if len(parts) != 3:
                raise MalformedLine("header must be 'p <n> <m>'", line_no, raw)
            try:
                declared_n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedLine("header must be 'p <n> <m>'", line_no, raw) from None
            if declared_n < 0 or declared_m < 0:
                raise MalformedLine("header counts must be non-negative", line_no, raw)
            header_line_no = line_no
            continue
        saw_content = True
        if len(parts) != 2:
            raise MalformedLine("expected '<u> <v>'", line_no, raw)
        try:
            u, v = int(parts[0]) - shift, int(parts[1]) - shift
        except ValueError:
            raise MalformedLine("vertex ids must be integers", line_no, raw) from None
        if u < 0 or v < 0:
            raise IdOutOfRange(f"negative vertex id after shift: ({u}, {v})", line_no, raw)
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise IdOutOfRange(f"vertex id >= declared n={declared_n}", line_no, raw)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}", line_no, raw)
        key = (u, v) if u < v else (v, u)
        if key in edge_keys:
            raise DuplicateEdge(f"edge ({key[0]}, {key[1]}) repeated", line_no, raw)
        edge_keys.add(key)
        edges.append(key)
        seen_ids.add(u)
        seen_ids.add(v)
        max_id = max(max_id, u, v)

    if declared_n is None:
        n = max_id + 1
        missing = [i for i in range(n) if i not in seen_ids]
        if missing:
            raise MissingVertexId(
                f"vertex id {missing[0]} never appears; declare n with a 'p <n> <m>' "
                "header to allow isolated vertices"
            )
    else:
        n = declared_n
        if declared_m is not None and declared_m != len(edges):
            raise MalformedLine(
                f"header declares m={declared_m} but {len(edges)} edges found",
                header_line_no,
            )
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph, one_based: bool = False, header: bool = True) -> str:
    """Serialize in the same format; stable output (ascending edges)."""
    shift = 1 if one_based else 0
    out = []
    if header:
        out.append(f"p {g.n} {g.m}")
    for u, v in g.edges():
        out.append(f"{u + shift} {v + shift}")
    return "\n".join(out) + "\n"


def graph_fingerprint(g: Graph) -> int:
    """64-bit content fingerprint: mixes n, m, and an order-independent XOR
    over per-edge hashes.  Stable across runs and platforms."""
    acc = mix64(g.n) ^ mix64(g.m + 0x9E3779B9)
    for u, v in g.edges():
        acc ^= mix64((u << 32) | v)
    return acc
