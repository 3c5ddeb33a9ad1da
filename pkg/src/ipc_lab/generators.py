"""Deterministic graph constructors: basic families, the spoked apex
families used for lower bounds, fat turtles with certified witnesses, and
the three-path configurations (theta / prism / pyramid).

Labelings are frozen and documented per family so serialized outputs are
stable byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import PathCover
from .graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    is_isometric_path,
)
from .rng import SplitMix64


class InvalidParam(GraphError):
    pass


class WitnessInvalid(GraphError):
    pass


class CertificationError(GraphError):
    """A constructed object failed its own certification check."""


# ---------------------------------------------------------------------------
# Basic families
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    """Vertices 0..n-1 in a line."""
    if n < 1:
        raise InvalidParam("path_graph needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """Vertices 0..n-1 around a cycle; n >= 3."""
    if n < 3:
        raise InvalidParam("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParam("complete needs n >= 1")
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(n: int) -> Graph:
    """n vertices total: center 0, leaves 1..n-1."""
    if n < 1:
        raise InvalidParam("star needs n >= 1")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def grid(w: int, h: int) -> Graph:
    """w columns by h rows, row-major ids (vertex (r, c) is r*w + c)."""
    if w < 1 or h < 1:
        raise InvalidParam("grid needs w, h >= 1")
    edges = []
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if c + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h:
                edges.append((v, v + w))
    return Graph.from_edges(w * h, edges)


def random_connected(n: int, edge_prob: float, seed: int, max_attempts: int = 1000) -> Graph:
    """Uniform edge probability, resampled (continuing the same splitmix64
    stream) until connected.  Pairs are drawn in ascending (u, v) order, one
    draw per pair per attempt, so the output is a pure function of
    (n, edge_prob, seed)."""
    if n < 1:
        raise InvalidParam("random_connected needs n >= 1")
    if n > 1 and not 0.0 < edge_prob <= 1.0:
        raise InvalidParam("edge_prob must be in (0, 1]")
    rng = SplitMix64(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    from .graph import is_connected

    for _ in range(max_attempts):
        edges = [e for e in pairs if rng.chance(edge_prob)]
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g
    raise InvalidParam(
        f"no connected sample in {max_attempts} attempts (n={n}, p={edge_prob})"
    )


def random_tree(n: int, seed: int) -> Graph:
    """Random attachment: vertex i (i >= 1) connects to a uniform earlier
    vertex drawn from the splitmix64 stream."""
    if n < 1:
        raise InvalidParam("random_tree needs n >= 1")
    rng = SplitMix64(seed)
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


# ---------------------------------------------------------------------------
# Spoked apex families (lower-bound constructions)
#
# Labeling: apex = 0.  Spoke i (1-based, i = 1..k+1) occupies the contiguous
# block [1+(i-1)k, ik]: the vertex adjacent to the apex first, the rim
# vertex b_i = i*k last.  Extra vertices (w_graph) follow the spokes.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ApexGraph:
    """A graph with a designated apex vertex."""

    graph: Graph
    apex: int


def _spoke_first(i: int, k: int) -> int:
    return 1 + (i - 1) * k


def _spoke_rim(i: int, k: int) -> int:
    return i * k


def _spoke_edges(k: int) -> list[tuple[int, int]]:
    edges = []
    for i in range(1, k + 2):
        lo = _spoke_first(i, k)
        edges.append((0, lo))
        edges.extend((v, v + 1) for v in range(lo, _spoke_rim(i, k)))
    return edges


def x_graph(k: int) -> ApexGraph:
    """k+1 spokes of length k from the apex, rim path b_1..b_{k+1}."""
    if k < 4:
        raise InvalidParam("x_graph needs k >= 4")
    edges = _spoke_edges(k)
    edges.extend((_spoke_rim(i, k), _spoke_rim(i + 1, k)) for i in range(1, k + 1))
    return ApexGraph(graph=Graph.from_edges(1 + k * (k + 1), edges), apex=0)


def y_graph(k: int) -> ApexGraph:
    """x_graph plus the skew rim edges b_i -- b'_{i+1}."""
    if k < 4:
        raise InvalidParam("y_graph needs k >= 4")
    base = x_graph(k).graph
    edges = list(base.edges())
    edges.extend(
        (_spoke_rim(i, k), _spoke_rim(i + 1, k) - 1) for i in range(1, k + 1)
    )
    return ApexGraph(graph=Graph.from_edges(base.n, edges), apex=0)


def z_graph(k: int, clique_all: bool = False) -> ApexGraph:
    """y_graph plus a clique on the apex-adjacent spoke vertices a'_i.

    By default the clique spans i in [1, k]; ``clique_all`` extends it to
    all k+1 spokes (the two variants differ in the construction sources and
    both are shipped rather than guessing one as canonical)."""
    if k < 4:
        raise InvalidParam("z_graph needs k >= 4")
    base = y_graph(k).graph
    edges = list(base.edges())
    top = k + 1 if clique_all else k
    firsts = [_spoke_first(i, k) for i in range(1, top + 1)]
    edges.extend(
        (a, b) for idx, a in enumerate(firsts) for b in firsts[idx + 1:]
    )
    return ApexGraph(graph=Graph.from_edges(base.n, edges), apex=0)


def _w_extra_base(k: int) -> int:
    return 1 + k * (k + 1)


def _w_extra(i: int, j: int, k: int) -> int:
    """j-th new vertex (1-based) in the gap between b_i and b_{i+1}."""
    return _w_extra_base(k) + (i - 1) * k + (j - 1)


def w_graph(k: int) -> ApexGraph:
    """x_graph with each rim edge replaced by k new degree-2 vertices."""
    if k < 4:
        raise InvalidParam("w_graph needs k >= 4")
    edges = _spoke_edges(k)
    for i in range(1, k + 1):
        bi, bnext = _spoke_rim(i, k), _spoke_rim(i + 1, k)
        for j in range(1, k + 1):
            wij = _w_extra(i, j, k)
            edges.append((bi, wij))
            edges.append((wij, bnext))
    return ApexGraph(graph=Graph.from_edges(_w_extra_base(k) + k * k, edges), apex=0)


def glue(a: ApexGraph, b: ApexGraph) -> ApexGraph:
    """Disjoint union with the two apexes identified.  First copy keeps its
    ids; vertex v of the second copy maps to n_1 + rank(v) where rank counts
    the non-apex vertices of the second copy below v."""
    g1, g2 = a.graph, b.graph

    def relabel(v: int) -> int:
        if v == b.apex:
            return a.apex
        return g1.n + (v if v < b.apex else v - 1)

    edges = list(g1.edges())
    edges.extend((relabel(u), relabel(v)) for u, v in g2.edges())
    return ApexGraph(graph=Graph.from_edges(g1.n + g2.n - 1, edges), apex=a.apex)


def w_cover_3kplus1(k: int) -> PathCover:
    """Explicit isometric path cover of glue(w_graph(k), w_graph(k)) with
    3k+1 paths: k+1 rim-to-rim paths through the apex plus, per copy, k
    zigzag paths alternating rim and gap vertices.  Every path is certified
    against BFS distances at construction time."""
    if k < 4:
        raise InvalidParam("w_cover_3kplus1 needs k >= 4")
    glued = glue(w_graph(k), w_graph(k))
    g = glued.graph
    n1 = _w_extra_base(k) + k * k

    def copy2(v: int) -> int:
        return v if v == 0 else n1 + v - 1

    paths: list[tuple[int, ...]] = []
    for i in range(1, k + 2):
        down = list(range(_spoke_rim(i, k), _spoke_first(i, k) - 1, -1))
        up = [copy2(v) for v in range(_spoke_first(i, k), _spoke_rim(i, k) + 1)]
        paths.append(tuple(down + [0] + up))
    for mapper in (lambda v: v, copy2):
        for j in range(1, k + 1):
            zig: list[int] = []
            for i in range(1, k + 1):
                zig.append(_spoke_rim(i, k))
                zig.append(_w_extra(i, j, k))
            zig.append(_spoke_rim(k + 1, k))
            paths.append(tuple(mapper(v) for v in zig))

    dm = all_pairs_distances(g)
    for p in paths:
        if not is_isometric_path(g, dm, p):
            raise CertificationError(f"constructed cover path is not isometric: {p}")
    return PathCover(paths=tuple(paths), kind="explicit", root=None)


# ---------------------------------------------------------------------------
# Fat turtles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FatTurtleWitness:
    """Certified structure: an induced cycle plus an induced (u, v)-path
    attached to it, with separation parameter t.  ``path`` runs from u to v;
    ``c``/``c_prime`` are the cycle vertices whose removal separates the
    u-attachments from the v-attachments."""

    t: int
    cycle: tuple[int, ...]
    path: tuple[int, ...]
    c: int
    c_prime: int


@dataclass(frozen=True)
class TurtleCheck:
    ok: bool
    clause: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _induced_cycle_ok(g: Graph, cyc: tuple[int, ...]) -> bool:
    n = len(cyc)
    if n < 3 or len(set(cyc)) != n:
        return False
    pos = {v: i for i, v in enumerate(cyc)}
    for i, v in enumerate(cyc):
        for w in g.adjacency[v]:
            j = pos.get(w)
            if j is not None and (j - i) % n not in (1, n - 1):
                return False
        if not g.has_edge(v, cyc[(i + 1) % n]):
            return False
    return True


def _induced_path_ok(g: Graph, path: tuple[int, ...]) -> bool:
    if len(set(path)) != len(path) or not path:
        return False
    for i, a in enumerate(path):
        for j in range(i + 1, len(path)):
            adjacent = g.has_edge(a, path[j])
            if adjacent != (j == i + 1):
                return False
    return True


def verify_fat_turtle(g: Graph, w: FatTurtleWitness) -> TurtleCheck:
    """Checks each defining condition independently, reporting the first
    violated clause: cycle/path structure, then (a) disjointness,
    (b) attachment containment, (c) cycle-distance between attachments,
    (d) two-component separation by {c, c'}, and (e) path length."""
    cyc, path, t = w.cycle, w.path, w.t
    if t < 1:
        return TurtleCheck(False, "parameter: t must be >= 1")
    if not _induced_cycle_ok(g, cyc):
        return TurtleCheck(False, "structure: cycle is not an induced cycle")
    if not _induced_path_ok(g, path) or len(path) < 2:
        return TurtleCheck(False, "structure: path is not an induced path")

    cyc_set = set(cyc)
    if cyc_set & set(path):
        return TurtleCheck(False, "(a) cycle and path share vertices")

    u, v = path[0], path[-1]
    att_u = [x for x in g.adjacency[u] if x in cyc_set]
    att_v = [x for x in g.adjacency[v] if x in cyc_set]
    for internal in path[1:-1]:
        if any(x in cyc_set for x in g.adjacency[internal]):
            return TurtleCheck(False, "(b) internal path vertex touches the cycle")
    if not att_u or not att_v:
        return TurtleCheck(False, "(b) an endpoint has no neighbor on the cycle")

    n = len(cyc)
    pos = {x: i for i, x in enumerate(cyc)}

    def cyc_dist(a: int, b: int) -> int:
        d = abs(pos[a] - pos[b])
        return min(d, n - d)

    if min(cyc_dist(a, b) for a in att_u for b in att_v) < t:
        return TurtleCheck(False, "(c) attachment distance below t")

    if w.c not in cyc_set or w.c_prime not in cyc_set or w.c == w.c_prime:
        return TurtleCheck(False, "(d) separators must be two distinct cycle vertices")
    ci, cpi = pos[w.c], pos[w.c_prime]
    arc1 = {cyc[(ci + s) % n] for s in range(1, (cpi - ci) % n)}
    arc2 = {cyc[(cpi + s) % n] for s in range(1, (ci - cpi) % n)}
    u_in_1 = all(x in arc1 for x in att_u)
    u_in_2 = all(x in arc2 for x in att_u)
    v_in_1 = all(x in arc1 for x in att_v)
    v_in_2 = all(x in arc2 for x in att_v)
    if not ((u_in_1 and v_in_2) or (u_in_2 and v_in_1)):
        return TurtleCheck(False, "(d) separators do not split the attachments")

    if len(path) - 1 < t:
        return TurtleCheck(False, "(e) path shorter than t")
    return TurtleCheck(True)


_PATTERNS = {"single": (0,), "adjacent": (0, 1), "spread": (0, 2)}
_PATTERN_WIDTH = {"single": 1, "adjacent": 2, "spread": 3}


def fat_turtle(
    t: int,
    arc_gaps: tuple[int, int] | None = None,
    path_len: int | None = None,
    patterns: tuple[str, str] = ("single", "single"),
) -> tuple[Graph, FatTurtleWitness]:
    """Construct a t-parameter turtle: a cycle with u attached on one side
    and v on the other (attachment patterns single / adjacent / spread),
    separated by two arcs of the given lengths, plus an induced (u, v)-path.

    ``arc_gaps`` are the two cycle-distances between the closest attachment
    pairs around either side (default (max(t,2), max(t,2)), the minimum);
    ``path_len`` is the path's edge count (default t).  The result is
    checked by :func:`verify_fat_turtle` before being returned.
    """
    if t < 1:
        raise InvalidParam("fat_turtle needs t >= 1")
    d_top, d_bot = arc_gaps if arc_gaps is not None else (max(t, 2), max(t, 2))
    length = t if path_len is None else path_len
    if length < t:
        raise InvalidParam(f"path_len {length} below t={t}")
    if min(d_top, d_bot) < max(t, 2):
        raise InvalidParam(f"arc gaps must be >= max(t, 2) = {max(t, 2)}")
    pu, pv = patterns
    if pu not in _PATTERNS or pv not in _PATTERNS:
        raise InvalidParam(f"unknown attachment pattern in {patterns}")

    wu, wv = _PATTERN_WIDTH[pu], _PATTERN_WIDTH[pv]
    a_hi = wu - 1
    b_lo = a_hi + d_top
    b_hi = b_lo + wv - 1
    n_cycle = b_hi + d_bot
    u = n_cycle
    v = n_cycle + length
    edges = [(i, (i + 1) % n_cycle) for i in range(n_cycle)]
    edges.extend((u + i, u + i + 1) for i in range(length))
    edges.extend((u, off) for off in _PATTERNS[pu])
    edges.extend((v, b_lo + off) for off in _PATTERNS[pv])
    g = Graph.from_edges(n_cycle + length + 1, edges)

    c_prime = a_hi + (d_top + 1) // 2
    c = b_hi + (d_bot + 1) // 2
    witness = FatTurtleWitness(
        t=t,
        cycle=tuple(range(n_cycle)),
        path=tuple(range(u, v + 1)),
        c=c,
        c_prime=c_prime,
    )
    check = verify_fat_turtle(g, witness)
    if not check:
        raise InvalidParam(f"parameters yield an invalid witness: {check.clause}")
    return g, witness


def example_fat_turtle() -> tuple[Graph, FatTurtleWitness]:
    """The bundled hand-drawn instance: a 13-cycle, u attached at two cycle
    vertices two apart, v attached at three consecutive ones, joined by a
    path of length 4.  Tight at t = 4 (closest attachment pair is exactly 4
    apart)."""
    n_cycle = 13
    edges = [(i, (i + 1) % n_cycle) for i in range(n_cycle)]
    u, v = 13, 17
    edges.extend([(13, 14), (14, 15), (15, 16), (16, 17)])
    edges.extend([(u, 1), (u, 12)])
    edges.extend([(v, 5), (v, 6), (v, 7)])
    g = Graph.from_edges(18, edges)
    witness = FatTurtleWitness(
        t=4, cycle=tuple(range(13)), path=(13, 14, 15, 16, 17), c=11, c_prime=2
    )
    check = verify_fat_turtle(g, witness)
    if not check:
        raise CertificationError(f"bundled turtle failed verification: {check.clause}")
    return g, witness


# ---------------------------------------------------------------------------
# Three-path configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreePathConfig:
    """A theta / prism / pyramid witness with length parameter t.

    anchors: theta -> (a, b); pyramid -> (apex, (b1, b2, b3));
    prism -> ((a1, a2, a3), (b1, b2, b3)), path i running a_i to b_i.
    """

    kind: str
    t: int
    paths: tuple[tuple[int, ...], ...]
    anchors: tuple


@dataclass(frozen=True)
class ConfigCheck:
    ok: bool
    clause: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _cross_edges_ok(
    g: Graph,
    parts: list[list[int]],
    allowed: set[frozenset[int]],
) -> bool:
    """No edges between distinct parts except the whitelisted pairs."""
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            for a in parts[i]:
                for b in parts[j]:
                    if g.has_edge(a, b) and frozenset((a, b)) not in allowed:
                        return False
    return True


def verify_three_path_configuration(g: Graph, c: ThreePathConfig) -> ConfigCheck:
    """Checks the defining constraints of the claimed kind: endpoint shape,
    length lower bounds for parameter t, per-path inducedness, disjointness,
    and the exact cross-edge whitelist."""
    if c.kind not in ("theta", "prism", "pyramid"):
        return ConfigCheck(False, f"unknown kind {c.kind!r}")
    if c.t < 1:
        return ConfigCheck(False, "parameter: t must be >= 1")
    if len(c.paths) != 3:
        return ConfigCheck(False, "exactly three paths required")
    for p in c.paths:
        if not _induced_path_ok(g, tuple(p)):
            return ConfigCheck(False, "a path is not an induced path")
    p1, p2, p3 = [list(p) for p in c.paths]
    lengths = [len(p) - 1 for p in (p1, p2, p3)]

    if c.kind == "theta":
        a, b = c.anchors
        if any(p[0] != a or p[-1] != b for p in (p1, p2, p3)):
            return ConfigCheck(False, "theta paths must run between the two anchors")
        if any(L < c.t + 1 for L in lengths):
            return ConfigCheck(False, f"theta path shorter than t+1={c.t + 1}")
        internals = [p[1:-1] for p in (p1, p2, p3)]
        seen: set[int] = set()
        for part in internals:
            if seen & set(part):
                return ConfigCheck(False, "theta paths share an internal vertex")
            seen |= set(part)
        if not _cross_edges_ok(g, internals, set()):
            return ConfigCheck(False, "edge between two theta paths")
        return ConfigCheck(True)

    if c.kind == "prism":
        tri_a, tri_b = c.anchors
        if tuple(p[0] for p in (p1, p2, p3)) != tuple(tri_a) or tuple(
            p[-1] for p in (p1, p2, p3)
        ) != tuple(tri_b):
            return ConfigCheck(False, "prism anchors must match the path endpoints")
        if any(L < c.t for L in lengths):
            return ConfigCheck(False, f"prism path shorter than t={c.t}")
        sets = [set(p) for p in (p1, p2, p3)]
        if sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2]:
            return ConfigCheck(False, "prism paths must be vertex-disjoint")
        for tri in (tri_a, tri_b):
            if not all(
                g.has_edge(x, y) for i, x in enumerate(tri) for y in tri[i + 1:]
            ):
                return ConfigCheck(False, "prism anchor triple is not a triangle")
        allowed = {
            frozenset((tri_a[i], tri_a[j])) for i in range(3) for j in range(i + 1, 3)
        } | {frozenset((tri_b[i], tri_b[j])) for i in range(3) for j in range(i + 1, 3)}
        if not _cross_edges_ok(g, [p1, p2, p3], allowed):
            return ConfigCheck(False, "edge between prism paths outside the triangles")
        return ConfigCheck(True)

    apex, tri = c.anchors
    if any(p[0] != apex for p in (p1, p2, p3)):
        return ConfigCheck(False, "pyramid paths must start at the apex")
    if tuple(p[-1] for p in (p1, p2, p3)) != tuple(tri):
        return ConfigCheck(False, "pyramid anchors must match the path endpoints")
    if any(L < c.t for L in lengths) or sum(L >= c.t + 1 for L in lengths) < 2:
        return ConfigCheck(
            False, f"pyramid needs all lengths >= {c.t} and two >= {c.t + 1}"
        )
    tails = [p[1:] for p in (p1, p2, p3)]
    if set(tails[0]) & set(tails[1]) or set(tails[0]) & set(tails[2]) or set(
        tails[1]
    ) & set(tails[2]):
        return ConfigCheck(False, "pyramid paths may share only the apex")
    if not all(g.has_edge(x, y) for i, x in enumerate(tri) for y in tri[i + 1:]):
        return ConfigCheck(False, "pyramid anchor triple is not a triangle")
    allowed = {frozenset((tri[i], tri[j])) for i in range(3) for j in range(i + 1, 3)}
    if not _cross_edges_ok(g, tails, allowed):
        return ConfigCheck(False, "edge between pyramid paths outside the triangle")
    return ConfigCheck(True)


def t_theta(t: int) -> tuple[Graph, ThreePathConfig]:
    """Minimal instance: anchors 0 and 1, three disjoint paths of length
    t+1 between them (t internal vertices each)."""
    if t < 1:
        raise InvalidParam("t_theta needs t >= 1")
    edges = []
    paths = []
    for i in range(3):
        internals = [2 + i * t + j for j in range(t)]
        seq = [0, *internals, 1]
        paths.append(tuple(seq))
        edges.extend(zip(seq, seq[1:]))
    g = Graph.from_edges(2 + 3 * t, edges)
    config = ThreePathConfig(kind="theta", t=t, paths=tuple(paths), anchors=(0, 1))
    _certify_config(g, config)
    return g, config


def t_prism(t: int) -> tuple[Graph, ThreePathConfig]:
    """Minimal instance: triangles (0,1,2) and (3,4,5) joined by three
    disjoint paths of length t."""
    if t < 1:
        raise InvalidParam("t_prism needs t >= 1")
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    paths = []
    nxt = 6
    for i in range(3):
        internals = list(range(nxt, nxt + t - 1))
        nxt += t - 1
        seq = [i, *internals, 3 + i]
        paths.append(tuple(seq))
        edges.extend(zip(seq, seq[1:]))
    g = Graph.from_edges(nxt, edges)
    config = ThreePathConfig(
        kind="prism", t=t, paths=tuple(paths), anchors=((0, 1, 2), (3, 4, 5))
    )
    _certify_config(g, config)
    return g, config


def t_pyramid(t: int) -> tuple[Graph, ThreePathConfig]:
    """Minimal instance: apex 0, triangle (1,2,3); the path to 1 has length
    t, the paths to 2 and 3 have length t+1."""
    if t < 1:
        raise InvalidParam("t_pyramid needs t >= 1")
    edges = [(1, 2), (1, 3), (2, 3)]
    paths = []
    nxt = 4
    for i, extra in enumerate((t - 1, t, t)):
        internals = list(range(nxt, nxt + extra))
        nxt += extra
        seq = [0, *internals, 1 + i]
        paths.append(tuple(seq))
        edges.extend(zip(seq, seq[1:]))
    g = Graph.from_edges(nxt, edges)
    config = ThreePathConfig(
        kind="pyramid", t=t, paths=tuple(paths), anchors=(0, (1, 2, 3))
    )
    _certify_config(g, config)
    return g, config


def _certify_config(g: Graph, config: ThreePathConfig) -> None:
    check = verify_three_path_configuration(g, config)
    if not check:
        raise CertificationError(f"constructed configuration invalid: {check.clause}")


def _attachment_pattern(lo: int, hi: int) -> str:
    if lo == hi:
        return "single"
    if hi == lo + 1:
        return "adjacent"
    return "spread"


def extract_three_path_configuration(g: Graph, w: FatTurtleWitness) -> ThreePathConfig:
    """From a turtle verified at parameter t, build a verified (t-1)-theta,
    -prism, or -pyramid.

    Walking the cycle from c toward the u side, take the two arcs that join
    the extreme u-attachments to the extreme v-attachments around either
    side; together with the turtle path they form the three paths.  The
    kind is decided by the attachment patterns: theta when both sides are
    single-or-spread, prism when both are adjacent pairs, pyramid otherwise
    (the adjacent side supplies the triangle).
    """
    check = verify_fat_turtle(g, w)
    if not check:
        raise WitnessInvalid(f"turtle witness invalid: {check.clause}")
    if w.t < 2:
        raise WitnessInvalid("extraction needs a turtle with t >= 2")
    t_out = w.t - 1

    cyc = list(w.cycle)
    n = len(cyc)
    pos = {x: i for i, x in enumerate(cyc)}
    u, v = w.path[0], w.path[-1]
    cyc_set = set(cyc)
    att_u = {pos[x] for x in g.adjacency[u] if x in cyc_set}
    att_v = {pos[x] for x in g.adjacency[v] if x in cyc_set}

    ci, cpi = pos[w.c], pos[w.c_prime]
    plus_side = {(ci + s) % n for s in range(1, (cpi - ci) % n)}
    direction = 1 if att_u <= plus_side else -1

    def a_seq(i: int) -> int:
        """Vertex at walk-position i (position 0 is c, walking toward u's arc)."""
        return cyc[(ci + direction * i) % n]

    walk_of = {(ci + direction * i) % n: i for i in range(n)}
    iu = sorted(walk_of[p] for p in att_u)
    iv = sorted(walk_of[p] for p in att_v)
    i_minus, i_plus = iu[0], iu[-1]
    j_minus, j_plus = iv[0], iv[-1]

    # arc through c joins a[i_minus] to a[j_plus]; arc through c' joins
    # a[i_plus] to a[j_minus]
    arc_c = [a_seq((i_minus - s) % n) for s in range((i_minus - j_plus) % n + 1)]
    arc_cp = [a_seq(i) for i in range(i_plus, j_minus + 1)]
    path = list(w.path)

    pat_u = _attachment_pattern(i_minus, i_plus)
    pat_v = _attachment_pattern(j_minus, j_plus)
    a_im, a_ip = a_seq(i_minus), a_seq(i_plus)
    a_jm, a_jp = a_seq(j_minus), a_seq(j_plus)

    if pat_u != "adjacent" and pat_v != "adjacent":
        kind = "theta"
        if pat_u == "single" and pat_v == "single":
            trio = ([a_im] + path + [a_jm], arc_c, arc_cp)
            anchors: tuple = (a_im, a_jm)
        elif pat_u == "single":
            trio = ([a_im] + path, arc_c + [v], arc_cp + [v])
            anchors = (a_im, v)
        elif pat_v == "single":
            trio = (path + [a_jm], [u] + arc_c, [u] + arc_cp)
            anchors = (u, a_jm)
        else:
            trio = (path, [u] + arc_c + [v], [u] + arc_cp + [v])
            anchors = (u, v)
    elif pat_u == "adjacent" and pat_v == "adjacent":
        kind = "prism"
        trio = (path, arc_c, arc_cp)
        anchors = ((u, a_im, a_ip), (v, a_jp, a_jm))
    else:
        kind = "pyramid"
        if pat_u == "adjacent":
            triangle = (u, a_im, a_ip)
            if pat_v == "single":
                apex = a_jm
                trio = ([a_jm, *reversed(path)], arc_c[::-1], arc_cp[::-1])
            else:
                apex = v
                trio = (path[::-1], [v] + arc_c[::-1], [v] + arc_cp[::-1])
        else:
            triangle = (v, a_jp, a_jm)
            if pat_u == "single":
                apex = a_im
                trio = ([a_im, *path], arc_c, arc_cp)
            else:
                apex = u
                trio = (path, [u] + arc_c, [u] + arc_cp)
        anchors = (apex, triangle)

    config = ThreePathConfig(
        kind=kind,
        t=t_out,
        paths=tuple(tuple(p) for p in trio),
        anchors=anchors,
    )
    final = verify_three_path_configuration(g, config)
    if not final:
        raise WitnessInvalid(
            f"extraction produced an invalid {kind} configuration: {final.clause}"
        )
    return config
