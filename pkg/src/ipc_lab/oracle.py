"""Brute-force ground truth at desk scale.

Everything here trades time for independence: isometric paths are found by
exhaustive depth-first extension, rooted-cover numbers by exact set cover
over chains, and optimal covers by branch and bound.  These are the oracles
the fast algorithms are checked against, so none of them may share a code
path with what they verify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .bfs_dag import BfsDag, build_bfs_dag, max_antichain
from .cover import PathCover
from .graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    TooLarge,
    all_pairs_distances,
    is_connected,
)

DEFAULT_PATH_CAP = 1_000_000
DEFAULT_EXACT_COVER_LIMIT = 12
DEFAULT_SET_LIMIT = 20


class Truncated(GraphError):
    """The enumeration cap was hit, so the answer would be unsound."""


@dataclass(frozen=True)
class IsometricPathSet:
    """All isometric paths of a graph (two or more vertices, each path once,
    oriented so the smaller endpoint id comes first), with the inclusion-
    maximal members flagged."""

    paths: tuple[tuple[int, ...], ...]
    maximal: tuple[bool, ...]
    truncated: bool

    def maximal_paths(self) -> list[tuple[int, ...]]:
        return [p for p, m in zip(self.paths, self.maximal) if m]


def enumerate_isometric_paths(
    g: Graph, dm: DistanceMatrix, cap: int = DEFAULT_PATH_CAP
) -> IsometricPathSet:
    """Depth-first extension: a partial path v0..vk grows by neighbors w of
    vk with d(v0, w) = k + 1, which yields exactly the isometric paths.
    Singleton sequences are excluded from the output (covers may still use
    them).  Sets ``truncated`` instead of raising when the cap is hit."""
    paths: list[tuple[int, ...]] = []
    flags: list[bool] = []
    truncated = False

    adjacency = g.adjacency
    for v0 in range(g.n):
        if truncated:
            break
        dist0 = dm.rows[v0].dist
        stack: list[list[int]] = [[v0]]
        while stack:
            path = stack.pop()
            last = path[-1]
            k = len(path) - 1
            extensions = [w for w in adjacency[last] if dist0[w] == k + 1]
            if k >= 1 and v0 < last:
                if len(paths) >= cap:
                    truncated = True
                    break
                start_ext = any(dm.d(w, last) == k + 1 for w in adjacency[v0])
                paths.append(tuple(path))
                flags.append(not extensions and not start_ext)
            for w in reversed(extensions):
                stack.append(path + [w])
    return IsometricPathSet(
        paths=tuple(paths), maximal=tuple(flags), truncated=truncated
    )


def ipcor_bruteforce(
    g: Graph,
    r: int,
    dm: DistanceMatrix | None = None,
    path_set: IsometricPathSet | None = None,
    dag: BfsDag | None = None,
) -> int:
    """max over maximal isometric paths P of |max antichain of V(P)| in the
    root's orientation.  Maximal paths suffice: an antichain inside a
    subpath is an antichain inside every superpath."""
    if not is_connected(g):
        raise GraphError("brute-force complexity requires a connected graph")
    if g.n == 1:
        return 1
    if dm is None:
        dm = all_pairs_distances(g)
    if path_set is None:
        path_set = enumerate_isometric_paths(g, dm)
    if path_set.truncated:
        raise Truncated("isometric path enumeration hit its cap")
    if dag is None:
        dag = build_bfs_dag(g, r)
    best = 1
    for p in path_set.maximal_paths():
        size = len(max_antichain(dag, p).vertices)
        if size > best:
            best = size
    return best


def ipco_bruteforce(g: Graph, dm: DistanceMatrix | None = None) -> int:
    if dm is None:
        dm = all_pairs_distances(g)
    path_set = enumerate_isometric_paths(g, dm)
    return min(
        ipcor_bruteforce(g, r, dm=dm, path_set=path_set) for r in range(g.n)
    )


# ---------------------------------------------------------------------------
# Exact set cover (bitmask branch and bound), shared by the rooted-cover
# brute force and the optimal isometric path cover.
# ---------------------------------------------------------------------------


def exact_min_set_cover(universe: int, masks: list[int]) -> list[int]:
    """Indices of a minimum subfamily of ``masks`` whose union covers the
    ``universe`` bitmask.  Branch and bound: greedy upper bound, branching
    on the uncovered element with fewest candidate sets, lower bound from
    the largest set size."""
    if universe == 0:
        return []
    coverable = 0
    for m in masks:
        coverable |= m
    if universe & ~coverable:
        raise GraphError("set cover infeasible: an element is in no set")

    greedy: list[int] = []
    left = universe
    while left:
        idx = max(range(len(masks)), key=lambda i: ((masks[i] & left).bit_count(), -i))
        greedy.append(idx)
        left &= ~masks[idx]
    best_count = len(greedy)
    best_sol = list(greedy)

    max_size = max(m.bit_count() for m in masks)
    by_element: dict[int, list[int]] = {}
    pos = 0
    bit = 1
    while bit <= universe:
        if universe & bit:
            by_element[pos] = [i for i, m in enumerate(masks) if m & bit]
        bit <<= 1
        pos += 1

    def branch(left: int, chosen: list[int]) -> None:
        nonlocal best_count, best_sol
        if not left:
            if len(chosen) < best_count:
                best_count = len(chosen)
                best_sol = list(chosen)
            return
        if len(chosen) + (left.bit_count() + max_size - 1) // max_size >= best_count:
            return
        pick: list[int] | None = None
        probe = left
        while probe:
            low = probe & -probe
            cands = [i for i in by_element[low.bit_length() - 1] if masks[i] & left]
            if pick is None or len(cands) < len(pick):
                pick = cands
                if len(cands) <= 1:
                    break
            probe ^= low
        if not pick:
            return
        for i in pick:
            chosen.append(i)
            branch(left & ~masks[i], chosen)
            chosen.pop()

    branch(universe, [])
    return best_sol


def _maximal_chains(dag: BfsDag, verts: list[int]) -> list[int]:
    """Bitmasks of the inclusion-maximal chains of the poset restricted to
    ``verts`` (reachability through the whole dag, pairs inside the set).

    Chains are totally ordered, so each maximal chain is exactly one
    maximal path of the restricted poset's Hasse diagram: start at a
    maximal element, step through immediate successors, stop at a minimal
    element.  That enumerates each maximal chain once, with no dominated
    output."""
    k = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    desc = dag.descendants
    below = [0] * k  # strictly below: reachable from i
    above = [0] * k
    for i, y in enumerate(verts):
        for x in desc[y]:
            j = idx.get(x)
            if j is not None and j != i:
                below[i] |= 1 << j
                above[j] |= 1 << i
    imm = [0] * k  # immediate successors downward (Hasse edges)
    for i in range(k):
        dominated = 0
        probe = below[i]
        while probe:
            low = probe & -probe
            dominated |= below[low.bit_length() - 1]
            probe ^= low
        imm[i] = below[i] & ~dominated

    chains: list[int] = []

    def walk(i: int, mask: int) -> None:
        if imm[i] == 0:
            chains.append(mask)
            return
        probe = imm[i]
        while probe:
            low = probe & -probe
            j = low.bit_length() - 1
            walk(j, mask | low)
            probe ^= low

    for i in range(k):
        if above[i] == 0:
            walk(i, 1 << i)
    return chains


def min_rooted_cover_of_set_bruteforce(
    g: Graph,
    r: int,
    s: list[int] | set[int] | frozenset[int] | tuple[int, ...],
    dag: BfsDag | None = None,
    limit: int = DEFAULT_SET_LIMIT,
) -> int:
    """Minimum number of r-rooted isometric paths covering the vertex set
    ``s``, by exhaustive set cover over maximal chains (a set of vertices
    fits on one r-rooted isometric path iff it is a chain)."""
    verts = sorted(set(s))
    if not verts:
        return 0
    if len(verts) > limit:
        raise TooLarge(f"|s|={len(verts)} exceeds the brute-force limit {limit}")
    if dag is None:
        dag = build_bfs_dag(g, r)
    chains = _maximal_chains(dag, verts)
    universe = (1 << len(verts)) - 1
    return len(exact_min_set_cover(universe, chains))


def exact_min_isometric_path_cover(
    g: Graph,
    dm: DistanceMatrix | None = None,
    limit: int = DEFAULT_EXACT_COVER_LIMIT,
) -> PathCover:
    """Optimal isometric path cover by branch and bound over the maximal
    isometric paths.  Desk scale only (default n <= 12)."""
    if g.n > limit:
        raise TooLarge(f"n={g.n} exceeds the exact-cover limit {limit}")
    if not is_connected(g):
        raise GraphError("exact cover requires a connected graph")
    if g.n == 1:
        return PathCover(paths=((0,),), kind="explicit", root=None)
    if dm is None:
        dm = all_pairs_distances(g)
    candidates = enumerate_isometric_paths(g, dm).maximal_paths()
    masks = []
    for p in candidates:
        mask = 0
        for v in p:
            mask |= 1 << v
        masks.append(mask)
    chosen = exact_min_set_cover((1 << g.n) - 1, masks)
    return PathCover(
        paths=tuple(candidates[i] for i in sorted(chosen)),
        kind="explicit",
        root=None,
    )


# ---------------------------------------------------------------------------
# Labeled graph enumeration (exhaustive oracle substrate)
# ---------------------------------------------------------------------------


def connected_graphs_exhaustive(n: int) -> Iterator[Graph]:
    """Every connected labeled graph on n vertices, by edge bitmask.
    Labeled enumeration is sufficient for oracle sweeps and much simpler
    than isomorphism-free generation."""
    if n <= 0:
        return
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            probe = frontier
            while probe:
                low = probe & -probe
                nxt |= adj[low.bit_length() - 1]
                probe ^= low
            frontier = nxt & ~seen
            seen |= frontier
        if seen == (1 << n) - 1:
            yield Graph.from_edges(
                n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            )
