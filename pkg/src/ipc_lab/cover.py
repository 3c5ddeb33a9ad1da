"""Isometric path covers: the min-over-roots approximation, exact rooted
covers via Dilworth chain partitions, and cover validation/serialization.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .bfs_dag import (
    BfsDag,
    build_bfs_dag,
    chain_partition,
    descend_to_root,
    directed_path,
    max_antichain,
)
from .graph import (
    DistanceMatrix,
    Disconnected,
    Graph,
    GraphError,
    all_pairs_distances,
    is_connected,
    is_isometric_path,
    NotAPath,
)
from .matching import hopcroft_karp

KINDS = ("dag_disjoint", "rooted", "explicit")


@dataclass(frozen=True)
class PathCover:
    """A set of vertex sequences covering V(G), each one isometric.

    ``dag_disjoint`` covers are pairwise vertex-disjoint directed paths of
    the root's BFS orientation (written in arc direction, levels descending
    toward the root).  ``rooted`` covers consist of paths starting at the
    root.  Single-vertex paths are legal members.
    """

    paths: tuple[tuple[int, ...], ...]
    kind: str
    root: int | None = None

    def size(self) -> int:
        return len(self.paths)

    def covered(self) -> set[int]:
        return {v for p in self.paths for v in p}


@dataclass(frozen=True)
class CoverValidation:
    ok: bool
    missing: tuple[int, ...] = ()
    not_paths: tuple[int, ...] = ()  # indices of members that are not paths
    not_isometric: tuple[int, ...] = ()
    kind_violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def min_dag_path_cover(dag: BfsDag) -> PathCover:
    """Minimum number of pairwise vertex-disjoint directed paths covering
    the dag's vertices: n minus a maximum matching over the arc set, with
    the paths reconstructed from the matched arcs.  Deterministic."""
    n = dag.n
    adj = [list(dag.arcs[v]) for v in range(n)]
    _, match_l, match_r = hopcroft_karp(n, n, adj)
    paths = []
    for start in range(n):
        if match_r[start] != -1:  # some arc ends here; not a path head
            continue
        seq = [start]
        while match_l[seq[-1]] != -1:
            seq.append(match_l[seq[-1]])
        paths.append(tuple(seq))
    return PathCover(paths=tuple(paths), kind="dag_disjoint", root=dag.root)


def approx_isometric_path_cover(
    g: Graph,
    dm: DistanceMatrix | None = None,
    threads: int | None = None,
) -> PathCover:
    """Smallest cover among the per-root disjoint-path covers; ties on size
    break to the smallest root.  Every reported path is re-validated against
    the distance matrix (a dag-directed path descends levels by 1 per step,
    hence is isometric; the check guards the reconstruction)."""
    if not is_connected(g):
        raise Disconnected("approximation requires a connected graph")
    if dm is None:
        dm = all_pairs_distances(g)

    def candidate(r: int) -> tuple[int, int, PathCover]:
        c = min_dag_path_cover(build_bfs_dag(g, r))
        return (c.size(), r, c)

    roots = list(range(g.n))
    workers = 1 if threads is None else max(1, threads)
    if workers == 1:
        results = [candidate(r) for r in roots]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(candidate, roots))
    best = min(results, key=lambda t: (t[0], t[1]))  # deterministic min-reduction
    cover = best[2]
    for p in cover.paths:
        if not is_isometric_path(g, dm, p):
            raise GraphError("internal error: reconstructed cover path not isometric")
    return cover


def min_rooted_cover(g: Graph, r: int, dm: DistanceMatrix | None = None) -> PathCover:
    """Minimum number of r-rooted isometric paths covering V(G).

    A vertex set fits on one r-rooted isometric path exactly when it is a
    chain of the root's orientation, so the optimum is a minimum chain
    partition of the full reachability poset = the maximum antichain of V
    (Dilworth).  Each chain, sorted by level, is extended through directed
    paths and down to the root to realize an actual r-rooted path.
    """
    if not is_connected(g):
        raise Disconnected("rooted covers require a connected graph")
    if dm is None:
        dm = all_pairs_distances(g)
    dag = build_bfs_dag(g, r)
    chains = chain_partition(dag, range(g.n))
    width = len(max_antichain(dag, range(g.n)).vertices)
    if len(chains) != width:
        raise GraphError("internal error: chain partition size != antichain size")
    paths = []
    for chain in chains:
        seq = [chain[0]]
        for nxt in chain[1:]:
            seq.extend(directed_path(dag, seq[-1], nxt)[1:])
        seq.extend(descend_to_root(dag, seq[-1])[1:])
        seq.reverse()  # now starts at the root, levels ascend by 1
        if not is_isometric_path(g, dm, seq):
            raise GraphError("internal error: realized chain path not isometric")
        paths.append(tuple(seq))
    return PathCover(paths=tuple(paths), kind="rooted", root=r)


def validate_cover(g: Graph, dm: DistanceMatrix, c: PathCover) -> CoverValidation:
    """Full validation report: coverage, per-path isometry, and the
    kind-specific invariants.  Failures are report content, not errors."""
    missing = tuple(sorted(set(range(g.n)) - c.covered()))
    not_paths = []
    not_isometric = []
    for i, p in enumerate(c.paths):
        try:
            if not is_isometric_path(g, dm, p):
                not_isometric.append(i)
        except NotAPath:
            not_paths.append(i)
    violations: list[str] = []
    if c.kind not in KINDS:
        violations.append(f"unknown kind {c.kind!r}")
    if c.kind == "rooted":
        if c.root is None:
            violations.append("rooted cover with no root")
        else:
            for i, p in enumerate(c.paths):
                if p and p[0] != c.root:
                    violations.append(f"path {i} does not start at root {c.root}")
    if c.kind == "dag_disjoint":
        if c.root is None:
            violations.append("dag_disjoint cover with no root")
        else:
            level = dm.rows[c.root].dist
            seen: set[int] = set()
            for i, p in enumerate(c.paths):
                if any(v in seen for v in p):
                    violations.append(f"path {i} shares vertices with an earlier path")
                seen.update(p)
                if any(level[a] - 1 != level[b] for a, b in zip(p, p[1:])):
                    violations.append(f"path {i} is not a directed dag path")
    ok = not (missing or not_paths or not_isometric or violations)
    return CoverValidation(
        ok=ok,
        missing=missing,
        not_paths=tuple(not_paths),
        not_isometric=tuple(not_isometric),
        kind_violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Serialization: one path per line, ids space-separated; '# root <r>' and
# '# kind <kind>' comment headers carry the metadata.
# ---------------------------------------------------------------------------


def format_cover(c: PathCover, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    out = [f"# kind {c.kind}"]
    if c.root is not None:
        out.append(f"# root {c.root + shift}")
    for p in c.paths:
        out.append(" ".join(str(v + shift) for v in p))
    return "\n".join(out) + "\n"


def parse_cover(text: str, one_based: bool = False) -> PathCover:
    shift = 1 if one_based else 0
    root: int | None = None
    kind = "explicit"
    paths: list[tuple[int, ...]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "root":
                root = int(parts[1]) - shift
            elif len(parts) == 2 and parts[0] == "kind":
                kind = parts[1]
            continue
        paths.append(tuple(int(tok) - shift for tok in line.split()))
    if kind == "rooted" and root is None:
        raise GraphError("rooted cover text without a '# root' header")
    return PathCover(paths=tuple(paths), kind=kind, root=root)
