"""Verification suites: seeded, deterministic PASS/FAIL checks of the
package's structural claims against brute-force oracles and generated
families.  Shared between the CLI ``verify`` subcommand and the acceptance
tests; every suite is a pure function of its parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .bfs_dag import build_bfs_dag, max_antichain
from .complexity import _per_root_maxima, ipco
from .cover import approx_isometric_path_cover, min_rooted_cover, validate_cover
from .generators import (
    example_fat_turtle,
    extract_three_path_configuration,
    fat_turtle,
    glue,
    random_connected,
    verify_fat_turtle,
    verify_three_path_configuration,
    w_cover_3kplus1,
    w_graph,
    x_graph,
    y_graph,
    z_graph,
)
from .graph import Graph, all_pairs_distances
from .metric import hyperbolicity
from .oracle import (
    connected_graphs_exhaustive,
    enumerate_isometric_paths,
    exact_min_isometric_path_cover,
    min_rooted_cover_of_set_bruteforce,
)
from .rng import SplitMix64

_MAX_RECORDED_FAILURES = 5


@dataclass
class SuiteCheck:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list[SuiteCheck] = field(default_factory=list)
    counterexamples: list[tuple[str, Graph]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, detail: str = "") -> None:
        self.checks.append(SuiteCheck(label, passed, detail))

    def table(self) -> str:
        width = max((len(c.label) for c in self.checks), default=10)
        lines = [f"suite {self.name}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            detail = f"  {c.detail}" if c.detail else ""
            lines.append(f"  {c.label.ljust(width)}  {mark}{detail}")
        lines.append(f"  => {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Graph populations
# ---------------------------------------------------------------------------


def seeded_random_graphs(
    trials: int,
    seed: int,
    n_range: tuple[int, int],
    p_range: tuple[float, float] = (0.15, 0.60),
) -> Iterator[Graph]:
    """Deterministic stream of connected graphs: per trial, n uniform in
    ``n_range``, edge probability uniform over hundredths of ``p_range``,
    and a derived sub-seed, all from one splitmix64 stream."""
    rng = SplitMix64(seed)
    lo, hi = n_range
    p_lo, p_hi = int(round(p_range[0] * 100)), int(round(p_range[1] * 100))
    for _ in range(trials):
        n = lo + rng.randrange(hi - lo + 1)
        p = (p_lo + rng.randrange(p_hi - p_lo + 1)) / 100
        yield random_connected(n, p, rng.next_u64())


def suite1_population(
    max_exhaustive_n: int = 6,
    trials: int = 200,
    seed: int = 1,
    random_n: tuple[int, int] = (7, 9),
) -> Iterator[Graph]:
    """Every connected labeled graph up to ``max_exhaustive_n`` vertices,
    then seeded random connected graphs in ``random_n``."""
    for n in range(1, max_exhaustive_n + 1):
        yield from connected_graphs_exhaustive(n)
    yield from seeded_random_graphs(trials, seed, random_n)


# ---------------------------------------------------------------------------
# Structural sweep: oracle equivalence + Dilworth duality + the
# antichain-length inequality, in one pass over a graph population.
# ---------------------------------------------------------------------------


@dataclass
class SweepOutcome:
    graphs: int = 0
    roots: int = 0
    paths_checked: int = 0
    equivalence_failures: list[str] = field(default_factory=list)
    duality_failures: list[str] = field(default_factory=list)
    antichain_failures: list[str] = field(default_factory=list)
    counterexamples: list[tuple[str, Graph]] = field(default_factory=list)


def run_structural_sweep(
    graphs: Iterable[Graph],
    check_equivalence: bool = True,
    check_duality: bool = True,
    check_antichain_length: bool = True,
) -> SweepOutcome:
    out = SweepOutcome()
    for g in graphs:
        out.graphs += 1
        gid = out.graphs - 1
        dm = all_pairs_distances(g)
        pset = enumerate_isometric_paths(g, dm)
        dp_per_root = (
            _per_root_maxima(g, dm, list(range(g.n)), "python")
            if check_equivalence
            else None
        )
        for r in range(g.n):
            out.roots += 1
            dag = build_bfs_dag(g, r)
            level = dag.level
            memo: dict[frozenset[int], tuple[int, int]] = {}
            brute_best = 1
            for p, is_maximal in zip(pset.paths, pset.maximal):
                out.paths_checked += 1
                key = frozenset(p)
                if key not in memo:
                    a = len(max_antichain(dag, key).vertices)
                    c = (
                        min_rooted_cover_of_set_bruteforce(g, r, key, dag=dag)
                        if check_duality
                        else a
                    )
                    memo[key] = (a, c)
                a, c = memo[key]
                if check_duality and a != c:
                    _record(
                        out.duality_failures,
                        out,
                        f"graph#{gid} root {r} path {p}: antichain {a} != cover {c}",
                        g,
                    )
                if check_antichain_length:
                    lhs = len(p) - 1
                    rhs = abs(level[p[0]] - level[p[-1]]) + a - 1
                    if lhs < rhs:
                        _record(
                            out.antichain_failures,
                            out,
                            f"graph#{gid} root {r} path {p}: |P|={lhs} < {rhs}",
                            g,
                        )
                if is_maximal and a > brute_best:
                    brute_best = a
            if check_equivalence and dp_per_root is not None:
                if dp_per_root[r] != brute_best:
                    _record(
                        out.equivalence_failures,
                        out,
                        f"graph#{gid} root {r}: DP {dp_per_root[r]} != brute {brute_best}",
                        g,
                    )
    return out


def _record(bucket: list[str], out: SweepOutcome, message: str, g: Graph) -> None:
    bucket.append(message)
    if len(out.counterexamples) < _MAX_RECORDED_FAILURES:
        out.counterexamples.append((message, g))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_oracle_equivalence(
    max_n: int = 6,
    trials: int = 200,
    seed: int = 1,
    random_n: tuple[int, int] = (7, 9),
) -> SuiteResult:
    """DP complexity per root == brute-force value, over every connected
    labeled graph up to max_n vertices plus seeded random graphs."""
    res = SuiteResult("oracle-equivalence")
    sweep = run_structural_sweep(
        suite1_population(max_n, trials, seed, random_n),
        check_equivalence=True,
        check_duality=False,
        check_antichain_length=False,
    )
    res.counterexamples = sweep.counterexamples
    detail = f"{sweep.graphs} graphs, {sweep.roots} rooted instances"
    res.add(
        "dp-equals-bruteforce",
        not sweep.equivalence_failures,
        detail if not sweep.equivalence_failures else sweep.equivalence_failures[0],
    )
    return res


def suite_duality(
    max_n: int = 5,
    trials: int = 100,
    seed: int = 1,
    random_n: tuple[int, int] = (6, 8),
) -> SuiteResult:
    """Per isometric path: minimum rooted cover of its vertex set equals its
    maximum antichain, and the length inequality
    |P| >= |level(x) - level(y)| + antichain - 1 holds."""
    res = SuiteResult("duality")
    sweep = run_structural_sweep(
        suite1_population(max_n, trials, seed, random_n),
        check_equivalence=False,
        check_duality=True,
        check_antichain_length=True,
    )
    res.counterexamples = sweep.counterexamples
    detail = f"{sweep.paths_checked} path-root pairs over {sweep.graphs} graphs"
    res.add(
        "rooted-cover-equals-antichain",
        not sweep.duality_failures,
        detail if not sweep.duality_failures else sweep.duality_failures[0],
    )
    res.add(
        "antichain-length-inequality",
        not sweep.antichain_failures,
        detail if not sweep.antichain_failures else sweep.antichain_failures[0],
    )
    return res


def suite_hyperbolicity_bound(
    trials: int = 500, seed: int = 1, max_n: int = 40
) -> SuiteResult:
    """Exact check of value <= 4*delta + 3 on seeded random graphs."""
    res = SuiteResult("hyperbolicity-bound")
    failures = []
    count = 0
    for g in seeded_random_graphs(trials, seed, (4, max_n)):
        count += 1
        dm = all_pairs_distances(g)
        delta = hyperbolicity(dm)
        value = ipco(g, dm=dm).value
        if value > 2 * delta.doubled + 3:  # doubled = 2*delta, so rhs = 4*delta+3
            failures.append(f"graph#{count - 1}: value {value} > 4*{delta}+3")
            if len(res.counterexamples) < _MAX_RECORDED_FAILURES:
                res.counterexamples.append((failures[-1], g))
    res.add(
        "value-at-most-4delta-plus-3",
        not failures,
        failures[0] if failures else f"{count} graphs, zero violations",
    )
    return res


def suite_lower_bounds(
    ks: tuple[int, ...] = (4, 5, 6),
    hyperbolicity_ks: tuple[int, ...] = (4, 5),
    rooted_k: int | None = 4,
) -> SuiteResult:
    """Glued spoked families: complexity at least k for the x/y/z variants,
    exact hyperbolicity at least ceil(k/2) - 1 for the glued x family, and
    the rooted-cover gap on the glued w family."""
    res = SuiteResult("lower-bounds")
    for k in ks:
        for name, fam in (("x", x_graph), ("y", y_graph), ("z", z_graph)):
            glued = glue(fam(k), fam(k))
            value = ipco(glued.graph).value
            res.add(
                f"glued-{name}{k}-complexity>={k}",
                value >= k,
                f"value={value}, n={glued.graph.n}",
            )
            if value < k and len(res.counterexamples) < _MAX_RECORDED_FAILURES:
                res.counterexamples.append((f"glued-{name}{k}", glued.graph))
    for k in hyperbolicity_ks:
        glued = glue(x_graph(k), x_graph(k))
        delta = hyperbolicity(all_pairs_distances(glued.graph))
        bound = -(-k // 2) - 1
        res.add(
            f"glued-x{k}-hyperbolicity>={bound}",
            delta >= bound,
            f"delta={delta}",
        )
    if rooted_k is not None:
        gap = suite_rooted_gap(rooted_k)
        res.checks.extend(gap.checks)
        res.counterexamples.extend(gap.counterexamples)
    return res


def suite_rooted_gap(k: int = 4) -> SuiteResult:
    """The glued gap family: every rooted cover needs at least k^2 paths
    while an explicit (3k+1)-path cover exists, so the min-over-roots
    approximation is at least k^2 on this instance."""
    res = SuiteResult("rooted-gap")
    glued = glue(w_graph(k), w_graph(k))
    g = glued.graph
    dm = all_pairs_distances(g)
    worst_root = min(min_rooted_cover(g, r, dm=dm).size() for r in range(g.n))
    res.add(
        f"every-rooted-cover>={k * k}",
        worst_root >= k * k,
        f"min over roots = {worst_root}, n={g.n}",
    )
    cover = w_cover_3kplus1(k)
    report = validate_cover(g, dm, cover)
    res.add(
        f"explicit-cover-{3 * k + 1}-valid",
        bool(report) and cover.size() == 3 * k + 1,
        f"size={cover.size()}",
    )
    approx = approx_isometric_path_cover(g, dm=dm)
    res.add(
        f"approx>={k * k}",
        approx.size() >= k * k,
        f"approx={approx.size()} vs explicit {3 * k + 1}",
    )
    if not res.passed and len(res.counterexamples) < _MAX_RECORDED_FAILURES:
        res.counterexamples.append((f"glued-w{k}", g))
    return res


def suite_approx_ratio(
    trials: int = 300, seed: int = 1, max_n: int = 8
) -> SuiteResult:
    """On small graphs with a computable optimum: the approximation returns
    between OPT and value * OPT paths."""
    res = SuiteResult("approx-ratio")
    failures = []
    count = 0
    for g in seeded_random_graphs(trials, seed, (3, max_n), p_range=(0.25, 0.65)):
        count += 1
        dm = all_pairs_distances(g)
        opt = exact_min_isometric_path_cover(g, dm=dm).size()
        approx = approx_isometric_path_cover(g, dm=dm).size()
        value = ipco(g, dm=dm).value
        if not opt <= approx <= value * opt:
            failures.append(
                f"graph#{count - 1}: opt={opt} approx={approx} value={value}"
            )
            if len(res.counterexamples) < _MAX_RECORDED_FAILURES:
                res.counterexamples.append((failures[-1], g))
    res.add(
        "opt<=approx<=value*opt",
        not failures,
        failures[0] if failures else f"{count} graphs, zero violations",
    )
    return res


_EXPECTED_KIND = {
    ("single", "single"): "theta",
    ("single", "spread"): "theta",
    ("spread", "single"): "theta",
    ("spread", "spread"): "theta",
    ("adjacent", "adjacent"): "prism",
    ("adjacent", "single"): "pyramid",
    ("adjacent", "spread"): "pyramid",
    ("single", "adjacent"): "pyramid",
    ("spread", "adjacent"): "pyramid",
}


def suite_turtle(ts: tuple[int, ...] = (1, 2, 3)) -> SuiteResult:
    """Constructive extraction: from every verified (t+1)-parameter turtle
    over all attachment patterns, a verified t-configuration of the
    predicted kind comes out; includes the bundled drawn instance."""
    res = SuiteResult("turtle")
    for t in ts:
        for (pu, pv), expected in _EXPECTED_KIND.items():
            label = f"t={t}-{pu}-{pv}"
            try:
                g, w = fat_turtle(t + 1, patterns=(pu, pv))
                ok_turtle = bool(verify_fat_turtle(g, w))
                cfg = extract_three_path_configuration(g, w)
                ok = (
                    ok_turtle
                    and cfg.t == t
                    and cfg.kind == expected
                    and bool(verify_three_path_configuration(g, cfg))
                )
                res.add(label, ok, f"kind={cfg.kind}")
            except Exception as exc:  # surfaced as a FAIL row, not a crash
                res.add(label, False, f"{type(exc).__name__}: {exc}")
    g, w = example_fat_turtle()
    ok = bool(verify_fat_turtle(g, w))
    cfg = extract_three_path_configuration(g, w)
    res.add(
        "drawn-instance",
        ok and cfg.t == w.t - 1 and bool(verify_three_path_configuration(g, cfg)),
        f"kind={cfg.kind}",
    )
    return res


SUITES = {
    "oracle-equivalence": suite_oracle_equivalence,
    "duality": suite_duality,
    "hyperbolicity-bound": suite_hyperbolicity_bound,
    "lower-bounds": suite_lower_bounds,
    "approx-ratio": suite_approx_ratio,
    "turtle": suite_turtle,
}
