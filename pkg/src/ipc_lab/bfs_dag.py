"""Level-oriented acyclic graph of a rooted BFS, and its antichain machinery.

For a root r, equal-level edges of the graph are dropped and every remaining
edge is oriented toward the root (each arc decreases the level by exactly 1,
so the digraph is acyclic).  Vertex sets that are pairwise unreachable in
this digraph are antichains; maximum antichains are computed through a
minimum chain partition (bipartite matching over the comparability pairs)
and the two quantities agree by Dilworth's theorem.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .graph import (
    DistanceMatrix,
    DistanceRow,
    Disconnected,
    Graph,
    GraphError,
    UNREACHABLE,
    bfs_distances,
)


class NotIsometric(GraphError):
    pass


@dataclass(frozen=True)
class BfsDag:
    """Oriented BFS structure for one root.

    ``arcs[y]`` lists the out-neighbors x of y, i.e. the neighbors with
    ``level[x] == level[y] - 1``.  Immutable; the reachability closure is
    built lazily once and then shared read-only.
    """

    root: int
    level: DistanceRow
    arcs: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.arcs)

    @cached_property
    def descendants(self) -> tuple[frozenset[int], ...]:
        """descendants[v] = vertices reachable from v by directed paths,
        including v itself.  Computed bottom-up by level."""
        n = self.n
        desc: list[frozenset[int]] = [frozenset()] * n
        for v in sorted(range(n), key=lambda u: self.level[u]):
            acc: set[int] = {v}
            for x in self.arcs[v]:
                acc |= desc[x]
            desc[v] = frozenset(acc)
        return tuple(desc)

    def reaches(self, y: int, x: int) -> bool:
        """True iff a directed path y -> ... -> x exists (y == x counts)."""
        return x in self.descendants[y]


@dataclass(frozen=True)
class AntichainWitness:
    """A certified antichain: pairwise mutually unreachable in the dag."""

    vertices: frozenset[int]
    root: int
    context: tuple[int, ...] | None = None


def build_bfs_dag(g: Graph, r: int) -> BfsDag:
    """O(n + m); requires a connected graph."""
    level = bfs_distances(g, r)
    if UNREACHABLE in level.dist:
        raise Disconnected(f"root {r} does not reach every vertex")
    arcs = tuple(
        tuple(x for x in g.adjacency[y] if level[x] == level[y] - 1)
        for y in range(g.n)
    )
    return BfsDag(root=r, level=level, arcs=arcs)


def topological_order(dag: BfsDag) -> list[int]:
    """Ascending (level, id); every arc goes from later to earlier."""
    return sorted(range(dag.n), key=lambda v: (dag.level[v], v))


def reachability_closure(
    dag: BfsDag, restrict: Iterable[int] | None = None
) -> frozenset[tuple[int, int]]:
    """Comparability relation: (y, x) present iff a directed path y -> x
    exists.  With ``restrict``, only pairs inside the set are reported, but
    the connecting paths may pass through any vertex.  (v, v) is always in
    the relation."""
    verts = range(dag.n) if restrict is None else sorted(set(restrict))
    inside = None if restrict is None else set(verts)
    desc = dag.descendants
    pairs = set()
    for y in verts:
        targets = desc[y] if inside is None else (desc[y] & inside)
        for x in targets:
            pairs.add((y, x))
    return frozenset(pairs)


def is_antichain(dag: BfsDag, s: Iterable[int]) -> bool:
    verts = sorted(set(s))
    desc = dag.descendants
    for i, y in enumerate(verts):
        for x in verts[i + 1:]:
            if x in desc[y] or y in desc[x]:
                return False
    return True


def max_antichain(dag: BfsDag, s: Iterable[int]) -> AntichainWitness:
    """Maximum antichain inside ``s``, by Dilworth duality: a minimum chain
    partition of the restricted poset comes from a maximum matching over the
    strict comparability pairs, and the antichain is read off the matching's
    canonical vertex cover.  |antichain| = |s| - |matching|.  Deterministic
    (ascending-id processing); ties between maximum antichains resolve to
    the one this canonical cover yields."""
    verts = sorted(set(s))
    if not verts:
        raise GraphError("max_antichain needs a non-empty vertex set")
    index = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    desc = dag.descendants
    adj: list[list[int]] = [[] for _ in range(k)]
    for y in verts:
        iy = index[y]
        for x in verts:
            if x != y and x in desc[y]:
                adj[iy].append(index[x])

    from .matching import alternating_reachable, hopcroft_karp

    size, match_l, match_r = hopcroft_karp(k, k, adj)
    z_left, z_right = alternating_reachable(k, k, adj, match_l, match_r)
    chosen = frozenset(
        verts[i] for i in range(k) if i in z_left and i not in z_right
    )
    assert len(chosen) == k - size, "Dilworth extraction out of step with matching"
    return AntichainWitness(vertices=chosen, root=dag.root)


def chain_partition(dag: BfsDag, s: Iterable[int]) -> list[list[int]]:
    """Partition of ``s`` into |max antichain| chains (Dilworth direction
    used by rooted covers).  Each chain is sorted by decreasing level, i.e.
    from the vertex farthest from the root downward."""
    verts = sorted(set(s))
    index = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    desc = dag.descendants
    adj: list[list[int]] = [[] for _ in range(k)]
    for y in verts:
        iy = index[y]
        for x in verts:
            if x != y and x in desc[y]:
                adj[iy].append(index[x])

    from .matching import hopcroft_karp

    _, match_l, _ = hopcroft_karp(k, k, adj)
    # successor in the chain: matched pair y -> x means x comes after y
    # (x is closer to the root since the relation follows arcs downward)
    is_head = [True] * k
    for y in range(k):
        if match_l[y] != -1:
            is_head[match_l[y]] = False
    chains: list[list[int]] = []
    for y in range(k):
        if not is_head[y]:
            continue
        chain = [verts[y]]
        cur = y
        while match_l[cur] != -1:
            cur = match_l[cur]
            chain.append(verts[cur])
        chains.append(chain)
    return chains


def directed_path(dag: BfsDag, a: int, b: int) -> list[int]:
    """One directed a -> b path in the dag, deterministic (BFS over sorted
    arc lists, smallest-id first discoverer)."""
    if a == b:
        return [a]
    parent = {a: -1}
    queue = deque([a])
    while queue:
        y = queue.popleft()
        for x in dag.arcs[y]:
            if x not in parent:
                parent[x] = y
                if x == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(x)
    raise GraphError(f"no directed path {a} -> {b} in the dag")


def descend_to_root(dag: BfsDag, v: int) -> list[int]:
    """Directed path from v down to the root, always taking the smallest
    out-neighbor.  Exists for every vertex of a connected graph's dag."""
    path = [v]
    while dag.level[path[-1]] > 0:
        path.append(dag.arcs[path[-1]][0])
    return path


def single_rooted_coverable(
    dag: BfsDag, dm: DistanceMatrix, p: list[int] | tuple[int, ...]
) -> bool:
    """True iff one root-anchored isometric path can cover all of ``p``.

    ``p`` must itself be an isometric path (checked against the distance
    matrix; raises :class:`NotIsometric` otherwise).  The criterion: walking
    from its lower end, the level must increase by exactly 1 per step.
    """
    if not p:
        raise NotIsometric("empty vertex sequence")
    seq = list(p)
    if len(set(seq)) != len(seq):
        raise NotIsometric(f"repeated vertex in {seq}")
    for a, b in zip(seq, seq[1:]):
        if dm.d(a, b) != 1:
            raise NotIsometric(f"vertices {a} and {b} are consecutive but not adjacent")
    if dm.d(seq[0], seq[-1]) != len(seq) - 1:
        raise NotIsometric(f"{seq} is not a shortest path between its endpoints")
    level = dag.level
    if level[seq[0]] > level[seq[-1]]:
        seq.reverse()
    return all(level[b] == level[a] + 1 for a, b in zip(seq, seq[1:]))
