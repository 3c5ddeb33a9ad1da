"""Maximum bipartite matching (layered augmenting search) and the
alternating-reachability sets behind minimum vertex covers.

Determinism: callers pass adjacency lists sorted ascending and vertices are
processed in ascending id, so the matching (not just its size) is a pure
function of the input.
"""

from __future__ import annotations

from collections import deque

_INF = float("inf")


def hopcroft_karp(
    n_left: int, n_right: int, adj: list[list[int]]
) -> tuple[int, list[int], list[int]]:
    """Maximum matching; returns (size, match_left, match_right) with -1 for
    unmatched vertices.  ``adj[u]`` lists right-neighbors of left vertex u."""
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist: list[float] = [0.0] * n_left

    def bfs() -> bool:
        queue: deque[int] = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = _INF
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, match_l, match_r


def alternating_reachable(
    n_left: int,
    n_right: int,
    adj: list[list[int]],
    match_l: list[int],
    match_r: list[int],
) -> tuple[set[int], set[int]]:
    """Vertices reachable from unmatched left vertices by alternating paths
    (non-matching edges left->right, matching edges right->left).  These are
    the Z-sets of the standard minimum-vertex-cover construction."""
    z_left: set[int] = {u for u in range(n_left) if match_l[u] == -1}
    z_right: set[int] = set()
    queue = deque(z_left)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in z_right or match_l[u] == v:
                continue
            z_right.add(v)
            w = match_r[v]
            if w != -1 and w not in z_left:
                z_left.add(w)
                queue.append(w)
    return z_left, z_right
