"""Isometric path complexity: exact computation in O(n^2 m).

For a root r, ``ipco_for_root`` is the least k such that every isometric
path of the graph can be covered by k isometric paths anchored at r; the
graph-level value minimizes over roots.  The computation runs a layered
dynamic program per (root, source) pair: processing vertices v by
increasing distance from the source x, it maintains, per vertex, the worst
cover demand over all isometric (x, v)-paths, split by how the last step of
the path moves relative to the root's BFS levels (toward, flat, away).

Two interchangeable engines produce bit-identical results: a plain-Python
reference used at small sizes and for table/witness extraction, and a
vectorized engine that batches all roots per source for the O(n^2 m) runs.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import (
    DistanceMatrix,
    DistanceRow,
    Disconnected,
    Graph,
    GraphError,
    UNREACHABLE,
    all_pairs_distances,
    bfs_distances,
    is_isometric_path,
)

#: Engine "auto" switches to the vectorized path at this vertex count.
_NUMPY_THRESHOLD = 10


@dataclass(frozen=True)
class GammaTable:
    """Per-(root, source) DP values, one entry per vertex v.

    ``gamma[v]``: maximum over all isometric (source, v)-paths P of the
    minimum number of root-anchored isometric paths covering V(P).  The
    three ``gamma_*`` components restrict the maximum to paths whose final
    step arrives from a vertex one level closer to the root (``down``), on
    the same level (``flat``), or one level farther (``up``); a component is
    0 exactly when its path set is empty.  ``beta_down``/``beta_up`` are the
    analogous maxima with the terminal vertex v excluded from the covering
    requirement.  At the source: gamma values 1, beta values 0.
    """

    root: int
    source: int
    gamma: tuple[int, ...]
    gamma_down: tuple[int, ...]
    gamma_flat: tuple[int, ...]
    gamma_up: tuple[int, ...]
    beta_down: tuple[int, ...]
    beta_up: tuple[int, ...]


class RootIpco(NamedTuple):
    value: int
    source: int
    terminal: int


@dataclass(frozen=True)
class ComplexityWitness:
    """A (root, source, terminal, path) tuple attaining the reported value:
    the path is an isometric (source, terminal)-path whose maximum antichain
    with respect to the best root equals the value."""

    root: int
    source: int
    terminal: int
    path: tuple[int, ...]


@dataclass(frozen=True)
class ComplexityReport:
    value: int
    best_root: int
    per_root: dict[int, int]
    witness: ComplexityWitness


def _require_connected(dm: DistanceMatrix) -> None:
    if dm.n and UNREACHABLE in dm.rows[0].dist:
        raise Disconnected("isometric path complexity requires a connected graph")


def _source_layout(g: Graph, dist_x: DistanceRow) -> tuple[list[int], list[list[int]]]:
    """Vertices ordered by (distance from source, id), source excluded, plus
    per-vertex predecessor lists {u in N(v) : d(x,u) = d(x,v) - 1}."""
    order = sorted(
        (v for v in range(g.n) if v != dist_x.source),
        key=lambda v: (dist_x[v], v),
    )
    dist = dist_x.dist
    preds = [
        [u for u in g.adjacency[v] if dist[u] == dist[v] - 1]
        for v in range(g.n)
    ]
    return order, preds


def _gamma_arrays(
    g: Graph,
    dist_r: tuple[int, ...],
    x: int,
    order: list[int],
    preds: list[list[int]],
) -> tuple[list[int], list[int], list[int], list[int], list[int], list[int]]:
    """Reference DP for one (root, source) pair; O(m)."""
    n = g.n
    ga = [0] * n
    gd = [0] * n
    gf = [0] * n
    gu = [0] * n
    bd = [0] * n
    bu = [0] * n
    ga[x] = gd[x] = gf[x] = gu[x] = 1
    for v in order:
        drv = dist_r[v]
        vgd = vgf = vgu = vbd = vbu = 0
        for u in preds[v]:
            diff = dist_r[u] - drv
            if diff == -1:
                if ga[u] > vbd:
                    vbd = ga[u]
                cand = max(gd[u], gf[u], bu[u] + 1)
                if cand > vgd:
                    vgd = cand
            elif diff == 0:
                cand = ga[u] + 1
                if cand > vgf:
                    vgf = cand
            else:
                if ga[u] > vbu:
                    vbu = ga[u]
                cand = max(gu[u], gf[u], bd[u] + 1)
                if cand > vgu:
                    vgu = cand
        gd[v] = vgd
        gf[v] = vgf
        gu[v] = vgu
        bd[v] = vbd
        bu[v] = vbu
        ga[v] = max(vgd, vgf, vgu)
    return ga, gd, gf, gu, bd, bu


def gamma_table(g: Graph, dist_r: DistanceRow, dist_x: DistanceRow) -> GammaTable:
    """Full table for one (root, source) pair, O(m) after the BFS rows."""
    if UNREACHABLE in dist_r.dist or UNREACHABLE in dist_x.dist:
        raise Disconnected("gamma_table requires a connected graph")
    order, preds = _source_layout(g, dist_x)
    ga, gd, gf, gu, bd, bu = _gamma_arrays(g, dist_r.dist, dist_x.source, order, preds)
    return GammaTable(
        root=dist_r.source,
        source=dist_x.source,
        gamma=tuple(ga),
        gamma_down=tuple(gd),
        gamma_flat=tuple(gf),
        gamma_up=tuple(gu),
        beta_down=tuple(bd),
        beta_up=tuple(bu),
    )


# ---------------------------------------------------------------------------
# Vectorized engine: for one source, run the DP for many roots at once.
# ---------------------------------------------------------------------------


class _SourcePlan(NamedTuple):
    """Arcs of the source's BFS orientation, sorted by (layer, head)."""

    tails: np.ndarray
    heads: np.ndarray
    head_layer: np.ndarray
    max_layer: int


def _plan_source(g: Graph, dx: np.ndarray) -> _SourcePlan:
    e = g.edge_array
    a, b = e[:, 0], e[:, 1]
    da, db = dx[a], dx[b]
    fwd = db == da + 1
    rev = da == db + 1
    tails = np.concatenate([a[fwd], b[rev]])
    heads = np.concatenate([b[fwd], a[rev]])
    key = dx[heads].astype(np.int64) * (g.n + 1) + heads
    order = np.argsort(key, kind="stable")
    tails, heads = tails[order], heads[order]
    hl = dx[heads]
    return _SourcePlan(tails, heads, hl, int(hl[-1]) if len(hl) else 0)


def _numpy_gamma_max(
    dr_block: np.ndarray, x: int, plan: _SourcePlan, n: int
) -> np.ndarray:
    """gamma values for one source and a block of roots; returns (R, n)."""
    r_count = dr_block.shape[0]
    shape = (r_count, n)
    ga = np.zeros(shape, dtype=np.int64)
    gd = np.zeros(shape, dtype=np.int64)
    gf = np.zeros(shape, dtype=np.int64)
    gu = np.zeros(shape, dtype=np.int64)
    bd = np.zeros(shape, dtype=np.int64)
    bu = np.zeros(shape, dtype=np.int64)
    ga[:, x] = gd[:, x] = gf[:, x] = gu[:, x] = 1

    tails, heads, hl = plan.tails, plan.heads, plan.head_layer
    for layer in range(1, plan.max_layer + 1):
        lo = np.searchsorted(hl, layer, side="left")
        hi = np.searchsorted(hl, layer + 1, side="left")
        if lo == hi:
            continue
        t, h = tails[lo:hi], heads[lo:hi]
        diff = dr_block[:, t] - dr_block[:, h]
        down = diff == -1
        up = diff == 1
        ga_t = ga[:, t]
        cand_bd = np.where(down, ga_t, 0)
        cand_bu = np.where(up, ga_t, 0)
        cand_gf = np.where(~(down | up), ga_t + 1, 0)
        m3d = np.maximum(np.maximum(gd[:, t], gf[:, t]), bu[:, t] + 1)
        cand_gd = np.where(down, m3d, 0)
        m3u = np.maximum(np.maximum(gu[:, t], gf[:, t]), bd[:, t] + 1)
        cand_gu = np.where(up, m3u, 0)
        uniq, starts = np.unique(h, return_index=True)
        bd[:, uniq] = np.maximum.reduceat(cand_bd, starts, axis=1)
        bu[:, uniq] = np.maximum.reduceat(cand_bu, starts, axis=1)
        gf[:, uniq] = np.maximum.reduceat(cand_gf, starts, axis=1)
        gd[:, uniq] = np.maximum.reduceat(cand_gd, starts, axis=1)
        gu[:, uniq] = np.maximum.reduceat(cand_gu, starts, axis=1)
        ga[:, uniq] = np.maximum(np.maximum(gd[:, uniq], gf[:, uniq]), gu[:, uniq])
    return ga


def _resolve_engine(g: Graph, engine: str) -> str:
    if engine == "auto":
        return "numpy" if g.n >= _NUMPY_THRESHOLD else "python"
    if engine not in ("python", "numpy"):
        raise GraphError(f"unknown engine {engine!r}")
    return engine


def _per_root_maxima(
    g: Graph,
    dm: DistanceMatrix,
    roots: list[int],
    engine: str,
    threads: int | None = None,
    sources: list[int] | None = None,
) -> list[int]:
    """max over (source, v) of gamma per root; the core O(n^2 m) loop."""
    xs = list(range(g.n)) if sources is None else sources
    if engine == "python":
        best = [0] * len(roots)
        for x in xs:
            order, preds = _source_layout(g, dm.rows[x])
            for i, r in enumerate(roots):
                ga, *_ = _gamma_arrays(g, dm.rows[r].dist, x, order, preds)
                mx = max(ga)
                if mx > best[i]:
                    best[i] = mx
        return best

    dr_block = dm.as_array[roots].astype(np.int64)

    def run(chunk: list[int]) -> np.ndarray:
        acc = np.zeros(len(roots), dtype=np.int64)
        dx_all = dm.as_array
        for x in chunk:
            plan = _plan_source(g, dx_all[x])
            ga = _numpy_gamma_max(dr_block, x, plan, g.n)
            np.maximum(acc, ga.max(axis=1), out=acc)
        return acc

    workers = 1 if threads is None else max(1, threads)
    if workers == 1 or len(xs) <= 1:
        return run(xs).tolist()
    chunks = [xs[i::workers] for i in range(workers)]
    chunks = [c for c in chunks if c]
    acc = np.zeros(len(roots), dtype=np.int64)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        for part in pool.map(run, chunks):
            np.maximum(acc, part, out=acc)  # max-merge: order-independent
    return acc.tolist()


def _argmax_source_terminal(
    g: Graph, dm: DistanceMatrix, root: int, target: int, engine: str
) -> tuple[int, int]:
    """Smallest (source, terminal) pair whose gamma equals ``target``."""
    dr = dm.rows[root]
    for x in range(g.n):
        if engine == "python":
            order, preds = _source_layout(g, dm.rows[x])
            ga, *_ = _gamma_arrays(g, dr.dist, x, order, preds)
            if max(ga) == target:
                return x, min(v for v in range(g.n) if ga[v] == target)
        else:
            plan = _plan_source(g, dm.as_array[x])
            ga = _numpy_gamma_max(
                dm.as_array[root:root + 1].astype(np.int64), x, plan, g.n
            )[0]
            if ga.max() == target:
                return x, int(np.nonzero(ga == target)[0][0])
    raise GraphError("no source attains the reported maximum")  # unreachable


def ipco_for_root(
    g: Graph,
    r: int,
    dm: DistanceMatrix | None = None,
    engine: str = "auto",
) -> RootIpco:
    """max over sources x and vertices v of gamma; O(n·m).  Returns the
    value plus the smallest (source, terminal) pair attaining it."""
    if dm is None:
        dm = all_pairs_distances(g)
    _require_connected(dm)
    eng = _resolve_engine(g, engine)
    value = _per_root_maxima(g, dm, [r], eng)[0]
    x, v = _argmax_source_terminal(g, dm, r, value, eng)
    return RootIpco(value=value, source=x, terminal=v)


def ipco(
    g: Graph,
    dm: DistanceMatrix | None = None,
    engine: str = "auto",
    threads: int | None = None,
) -> ComplexityReport:
    """Isometric path complexity with a verified witness; O(n^2 m).

    Ties between optimal roots break to the smallest id; the witness is the
    smallest (source, terminal) pair at that root, its path reconstructed by
    DP backtracking and re-checked to be isometric.  Results are identical
    for any thread count.
    """
    if dm is None:
        dm = all_pairs_distances(g)
    _require_connected(dm)
    if g.n == 0:
        raise GraphError("ipco of the empty graph is undefined")
    eng = _resolve_engine(g, engine)
    per_root = _per_root_maxima(g, dm, list(range(g.n)), eng, threads=threads)
    value = min(per_root)
    best_root = per_root.index(value)
    x, v = _argmax_source_terminal(g, dm, best_root, value, eng)
    table = gamma_table(g, dm.rows[best_root], dm.rows[x])
    path = witness_path(g, table, v)
    if not is_isometric_path(g, dm, path):
        raise GraphError("internal error: witness path failed the isometric check")
    return ComplexityReport(
        value=value,
        best_root=best_root,
        per_root={r: m for r, m in enumerate(per_root)},
        witness=ComplexityWitness(
            root=best_root, source=x, terminal=v, path=tuple(path)
        ),
    )


def ipco_per_component(
    g: Graph, engine: str = "auto", threads: int | None = None
) -> list[tuple[list[int], ComplexityReport]]:
    """Reports per connected component (original vertex ids attached).
    Extension beyond the connected-graph contract, surfaced by the CLI."""
    from .graph import connected_components, induced_subgraph

    out = []
    for comp in connected_components(g):
        sub, mapping = induced_subgraph(g, comp)
        rep = ipco(sub, engine=engine, threads=threads)
        out.append((mapping, rep))
    return out


# ---------------------------------------------------------------------------
# Witness reconstruction
# ---------------------------------------------------------------------------

#: Fixed branch priority on value ties (vertex-id ties resolve first
#: within a branch; between branches the level-raising one wins).
_BRANCH_ORDER = ("up", "flat", "down")


def witness_path(g: Graph, table: GammaTable, v: int) -> list[int]:
    """An isometric (source, v)-path attaining gamma[v], by walking the
    arg-max branch of the DP backwards.  Ties resolve to the smallest
    predecessor id, then to a fixed branch order, so the result is
    deterministic.  Raises :class:`Unreachable` if v is not reachable."""
    from .graph import Unreachable

    dist_x = bfs_distances(g, table.source)
    if dist_x[v] == UNREACHABLE:
        raise Unreachable(f"vertex {v} not reachable from source {table.source}")
    dist_r = bfs_distances(g, table.root).dist
    dist = dist_x.dist
    ga, gd, gf, gu = table.gamma, table.gamma_down, table.gamma_flat, table.gamma_up
    bd, bu = table.beta_down, table.beta_up

    def preds_of(w: int, rel: int) -> list[int]:
        return [
            u
            for u in g.adjacency[w]
            if dist[u] == dist[w] - 1 and dist_r[u] - dist_r[w] == rel
        ]

    path = [v]
    mode = "gamma"
    cur = v
    while cur != table.source:
        if mode == "gamma":
            by_branch = {"down": gd[cur], "flat": gf[cur], "up": gu[cur]}
            best = max(by_branch.values())
            mode = next(b for b in _BRANCH_ORDER if by_branch[b] == best)
            continue
        if mode == "flat":
            cands = [(ga[u] + 1, u) for u in preds_of(cur, 0)]
            _, nxt = max(cands, key=lambda c: (c[0], -c[1]))
            mode = "gamma"
        elif mode == "down":
            nxt, mode = _step_skew(preds_of(cur, -1), gd, gf, bu, "down")
        elif mode == "up":
            nxt, mode = _step_skew(preds_of(cur, +1), gu, gf, bd, "up")
        elif mode == "beta_down":
            cands = [(ga[u], u) for u in preds_of(cur, -1)]
            _, nxt = max(cands, key=lambda c: (c[0], -c[1]))
            mode = "gamma"
        else:  # beta_up
            cands = [(ga[u], u) for u in preds_of(cur, +1)]
            _, nxt = max(cands, key=lambda c: (c[0], -c[1]))
            mode = "gamma"
        path.append(nxt)
        cur = nxt
    path.reverse()
    return path


def _step_skew(
    pred: list[int],
    g_same: tuple[int, ...],
    g_flat: tuple[int, ...],
    beta_opp: tuple[int, ...],
    same_name: str,
) -> tuple[int, str]:
    """Resolve one skew-branch step: the branch value is the max, over the
    level-skewed predecessors, of (same-branch, flat-branch, opposite-beta
    plus one); returns the chosen predecessor and the mode to continue in."""
    beta_name = "beta_up" if same_name == "down" else "beta_down"
    best: tuple[int, int, int] | None = None  # (value, -u, branch_rank)
    choice: tuple[int, str] | None = None
    for u in pred:
        for rank, (val, nxt_mode) in enumerate(
            ((g_same[u], same_name), (g_flat[u], "flat"), (beta_opp[u] + 1, beta_name))
        ):
            key = (val, -u, -rank)
            if best is None or key > best:
                best = key
                choice = (u, nxt_mode)
    if choice is None:
        raise GraphError("internal error: skew branch chosen with no predecessors")
    return choice
