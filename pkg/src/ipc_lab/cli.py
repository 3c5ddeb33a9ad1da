"""Command-line surface: compute, cover, measure, generate, verify, bench.

Exit codes: 0 success / all checks PASS, 1 a verify suite FAILed (with
counterexamples written as replayable edge-list files), 2 input parse
error, 3 precondition violation (disconnected input, bad parameters),
4 resource cap hit.

Result payloads are deterministic: byte-identical across repeated runs and
across ``--threads`` settings, except for the ``timing_ms`` field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .complexity import gamma_table, ipco, ipco_for_root, ipco_per_component, witness_path
from .cover import format_cover, validate_cover
from .generators import (
    ApexGraph,
    InvalidParam,
    complete,
    cycle,
    example_fat_turtle,
    fat_turtle,
    glue,
    grid,
    path_graph,
    random_connected,
    random_tree,
    star,
    t_prism,
    t_pyramid,
    t_theta,
    w_graph,
    x_graph,
    y_graph,
    z_graph,
)
from .graph import (
    Disconnected,
    Graph,
    GraphError,
    ParseError,
    TooLarge,
    all_pairs_distances,
    format_edge_list,
    graph_fingerprint,
    is_connected,
    parse_edge_list,
)
from .metric import hyperbolicity
from .oracle import Truncated
from .verify import SUITES

_EXIT_OK = 0
_EXIT_FAIL = 1
_EXIT_PARSE = 2
_EXIT_PRECONDITION = 3
_EXIT_CAP = 4


def _default_threads() -> int:
    env = os.environ.get("IPC_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _read_graph(path: str, one_based: bool) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(text, one_based=one_based)


def _report(command: str, g: Graph | None, results: dict, started: float) -> dict:
    payload: dict = {"command": command, "version": __version__}
    if g is not None:
        payload["input"] = {
            "n": g.n,
            "m": g.m,
            "fingerprint": f"{graph_fingerprint(g):016x}",
        }
    payload["results"] = results
    payload["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return payload


def _emit(payload: dict, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_ipco(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    g = _read_graph(args.graph, args.one_based)
    if args.root is not None:
        result = ipco_for_root(g, args.root, engine=args.engine)
        results: dict = {
            "root": args.root,
            "value": result.value,
            "source": result.source,
            "terminal": result.terminal,
        }
        human = f"root {args.root}: value {result.value} " \
                f"(source {result.source}, terminal {result.terminal})"
        if args.witness:
            dm = all_pairs_distances(g)
            table = gamma_table(g, dm.rows[args.root], dm.rows[result.source])
            path = witness_path(g, table, result.terminal)
            results["witness_path"] = path
            human += f"\nwitness path: {' '.join(map(str, path))}"
        _emit(_report("ipco", g, results, started), args.json, human)
        return _EXIT_OK

    if not is_connected(g):
        if not args.per_component:
            print("error: graph is disconnected (use --per-component)", file=sys.stderr)
            return _EXIT_PRECONDITION
        parts = ipco_per_component(g, engine=args.engine, threads=args.threads)
        comps = [
            {
                "vertices": mapping,
                "value": rep.value,
                "best_root": mapping[rep.best_root],
            }
            for mapping, rep in parts
        ]
        value = max(c["value"] for c in comps)
        results = {"value": value, "components": comps}
        human = "\n".join(
            [f"value {value} (max over {len(comps)} components)"]
            + [f"  component {c['vertices']}: value {c['value']}" for c in comps]
        )
        _emit(_report("ipco", g, results, started), args.json, human)
        return _EXIT_OK

    rep = ipco(g, engine=args.engine, threads=args.threads)
    results = {
        "value": rep.value,
        "best_root": rep.best_root,
        "per_root": {str(r): v for r, v in rep.per_root.items()},
        "witness": {
            "root": rep.witness.root,
            "source": rep.witness.source,
            "terminal": rep.witness.terminal,
            "path": list(rep.witness.path),
        },
    }
    human = f"value {rep.value} (best root {rep.best_root})"
    if args.witness:
        human += (
            f"\nwitness: source {rep.witness.source}, terminal {rep.witness.terminal}"
            f"\nwitness path: {' '.join(map(str, rep.witness.path))}"
        )
    _emit(_report("ipco", g, results, started), args.json, human)
    return _EXIT_OK


def _cmd_cover(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    g = _read_graph(args.graph, args.one_based)
    dm = all_pairs_distances(g)
    if args.mode == "approx":
        from .cover import approx_isometric_path_cover

        cover = approx_isometric_path_cover(g, dm=dm, threads=args.threads)
    elif args.mode == "rooted":
        if args.root is None:
            print("error: --mode rooted requires --root", file=sys.stderr)
            return _EXIT_PRECONDITION
        from .cover import min_rooted_cover

        cover = min_rooted_cover(g, args.root, dm=dm)
    else:
        from .oracle import exact_min_isometric_path_cover

        cover = exact_min_isometric_path_cover(g, dm=dm, limit=args.limit)
    report = validate_cover(g, dm, cover)
    text = format_cover(cover, one_based=args.one_based)
    if args.output:
        Path(args.output).write_text(text)
    results = {
        "mode": args.mode,
        "size": cover.size(),
        "kind": cover.kind,
        "root": cover.root,
        "paths": [list(p) for p in cover.paths],
        "valid": bool(report),
    }
    human = f"{args.mode} cover: {cover.size()} paths, validation " + (
        "ok" if report else "FAILED"
    )
    if not args.output and not args.json:
        human += "\n" + text.rstrip("\n")
    _emit(_report("cover", g, results, started), args.json, human)
    return _EXIT_OK if report else _EXIT_FAIL


def _cmd_hyperbolicity(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    g = _read_graph(args.graph, args.one_based)
    dm = all_pairs_distances(g)
    delta = hyperbolicity(dm, force=args.force, threads=args.threads)
    results = {"delta": str(delta), "delta_doubled": delta.doubled}
    _emit(_report("hyperbolicity", g, results, started), args.json, f"delta {delta}")
    return _EXIT_OK


_GEN_WITNESS_FAMILIES = ("theta", "prism", "pyramid", "turtle", "turtle-drawn")


def _build_family(args: argparse.Namespace) -> tuple[Graph, dict | None, int | None]:
    """Returns (graph, witness-dict-or-None, apex-or-None)."""
    fam = args.family
    p = args.params

    def need(count: int) -> list[int]:
        if len(p) != count:
            raise InvalidParam(f"family {fam!r} takes {count} parameter(s)")
        return [int(tok) for tok in p]

    if fam == "path":
        return path_graph(*need(1)), None, None
    if fam == "cycle":
        return cycle(*need(1)), None, None
    if fam == "complete":
        return complete(*need(1)), None, None
    if fam == "star":
        return star(*need(1)), None, None
    if fam == "grid":
        return grid(*need(2)), None, None
    if fam == "random":
        if len(p) != 2:
            raise InvalidParam("family 'random' takes <n> <edge_prob>")
        return random_connected(int(p[0]), float(p[1]), args.seed), None, None
    if fam == "tree":
        return random_tree(*need(1), seed=args.seed), None, None
    if fam in ("x", "y", "w"):
        builder = {"x": x_graph, "y": y_graph, "w": w_graph}[fam]
        ag = builder(*need(1))
        return ag.graph, None, ag.apex
    if fam == "z":
        ag = z_graph(*need(1), clique_all=args.z_clique_all)
        return ag.graph, None, ag.apex
    if fam.startswith("glued-"):
        sub = fam[len("glued-"):]
        builders = {"x": x_graph, "y": y_graph, "w": w_graph}
        (k,) = need(1)
        if sub == "z":
            ag = glue(
                z_graph(k, clique_all=args.z_clique_all),
                z_graph(k, clique_all=args.z_clique_all),
            )
        elif sub in builders:
            ag = glue(builders[sub](k), builders[sub](k))
        else:
            raise InvalidParam(f"unknown family {fam!r}")
        return ag.graph, None, ag.apex
    if fam in ("theta", "prism", "pyramid"):
        builder = {"theta": t_theta, "prism": t_prism, "pyramid": t_pyramid}[fam]
        g, cfg = builder(*need(1))
        witness = {
            "kind": cfg.kind,
            "t": cfg.t,
            "paths": [list(q) for q in cfg.paths],
            "anchors": json.loads(json.dumps(cfg.anchors)),
        }
        return g, witness, None
    if fam == "turtle":
        if len(p) not in (1, 3, 4):
            raise InvalidParam("family 'turtle' takes <t> [<gap1> <gap2> [<path_len>]]")
        t = int(p[0])
        gaps = (int(p[1]), int(p[2])) if len(p) >= 3 else None
        length = int(p[3]) if len(p) == 4 else None
        g, w = fat_turtle(
            t, arc_gaps=gaps, path_len=length,
            patterns=(args.pattern_u, args.pattern_v),
        )
    elif fam == "turtle-drawn":
        g, w = example_fat_turtle()
    else:
        raise InvalidParam(f"unknown family {fam!r}")
    witness = {
        "t": w.t,
        "cycle": list(w.cycle),
        "path": list(w.path),
        "c": w.c,
        "c_prime": w.c_prime,
    }
    return g, witness, None


def _cmd_gen(args: argparse.Namespace) -> int:
    g, witness, apex = _build_family(args)
    text = format_edge_list(g, one_based=args.one_based)
    if apex is not None:
        text = f"# apex {apex + (1 if args.one_based else 0)}\n" + text
    if args.output:
        Path(args.output).write_text(text)
        if args.witness and witness is not None:
            Path(args.output + ".witness.json").write_text(
                json.dumps(witness, sort_keys=True, indent=2) + "\n"
            )
        print(f"wrote {g.n} vertices, {g.m} edges to {args.output}")
    else:
        out = text
        if args.witness and witness is not None:
            out += "# witness: " + json.dumps(witness, sort_keys=True) + "\n"
        sys.stdout.write(out)
    if args.witness and witness is None:
        print(f"note: family {args.family!r} has no structural witness", file=sys.stderr)
    return _EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    suite_fn = SUITES[args.suite]
    kwargs: dict = {}
    if args.suite in ("oracle-equivalence", "duality"):
        if args.max_n is not None:
            kwargs["max_n"] = args.max_n
        if args.trials is not None:
            kwargs["trials"] = args.trials
        kwargs["seed"] = args.seed
    elif args.suite in ("hyperbolicity-bound", "approx-ratio"):
        if args.max_n is not None:
            kwargs["max_n"] = args.max_n
        if args.trials is not None:
            kwargs["trials"] = args.trials
        kwargs["seed"] = args.seed
    elif args.suite == "lower-bounds":
        if args.k is not None:
            kwargs["ks"] = (args.k,)
            kwargs["hyperbolicity_ks"] = tuple(x for x in (args.k,) if x in (4, 5))
            kwargs["rooted_k"] = args.k if args.k == 4 else None
    result = suite_fn(**kwargs)
    if args.json:
        payload = {
            "command": "verify",
            "version": __version__,
            "results": {
                "suite": result.name,
                "passed": result.passed,
                "checks": [asdict(c) for c in result.checks],
            },
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(result.table())
    if not result.passed and result.counterexamples:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, (label, g) in enumerate(result.counterexamples):
            path = out_dir / f"counterexample-{result.name}-{i}.edges"
            path.write_text(f"# {label}\n" + format_edge_list(g))
            print(f"counterexample written to {path}", file=sys.stderr)
    return _EXIT_OK if result.passed else _EXIT_FAIL


def _cmd_bench(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    target = args.target
    if ":" in target and not Path(target).exists():
        parts = target.split(":")
        ns = argparse.Namespace(
            family=parts[0],
            params=parts[1:],
            seed=args.seed,
            z_clique_all=False,
            pattern_u="single",
            pattern_v="single",
        )
        g, _, _ = _build_family(ns)
    else:
        g = _read_graph(target, args.one_based)
    t0 = time.perf_counter()
    rep = ipco(g, threads=args.threads)
    elapsed = (time.perf_counter() - t0) * 1000.0
    results = {
        "value": rep.value,
        "best_root": rep.best_root,
        "threads": args.threads,
        "compute_ms": round(elapsed, 3),
    }
    human = (
        f"n={g.n} m={g.m}: value {rep.value} (best root {rep.best_root}) "
        f"in {elapsed:.1f} ms with {args.threads} thread(s)"
    )
    _emit(_report("bench", g, results, started), args.json, human)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ipc-lab",
        description="Isometric path complexity toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, graph_arg: bool = True) -> None:
        if graph_arg:
            p.add_argument("graph", help="edge-list file, or - for stdin")
        p.add_argument("--one-based", action="store_true", help="shift ids on input/output")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--threads", type=int, default=_default_threads(),
            help="worker pool size for per-root loops (default: IPC_LAB_THREADS or cores)",
        )

    p = sub.add_parser("ipco", help="compute the isometric path complexity")
    common(p)
    p.add_argument("--root", type=int, help="fix the root instead of minimizing")
    p.add_argument("--per-component", action="store_true",
                   help="handle disconnected input per component (reports the max)")
    p.add_argument("--witness", action="store_true", help="show the witness path")
    p.add_argument("--engine", choices=("auto", "python", "numpy"), default="auto")
    p.set_defaults(fn=_cmd_ipco)

    p = sub.add_parser("cover", help="isometric path covers")
    common(p)
    p.add_argument("--mode", choices=("approx", "rooted", "exact"), required=True)
    p.add_argument("--root", type=int, help="root for --mode rooted")
    p.add_argument("--limit", type=int, default=12, help="vertex cap for --mode exact")
    p.add_argument("-o", "--output", help="write the cover to a file")
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("hyperbolicity", help="exact four-point hyperbolicity")
    common(p)
    p.add_argument("--force", action="store_true", help="override the O(n^4) size cap")
    p.set_defaults(fn=_cmd_hyperbolicity)

    p = sub.add_parser("gen", help="emit a generated graph family")
    p.add_argument("family", help=(
        "path|cycle|complete|star|grid|random|tree|x|y|z|w|glued-x|glued-y|"
        "glued-z|glued-w|theta|prism|pyramid|turtle|turtle-drawn"
    ))
    p.add_argument("params", nargs="*", help="family parameters")
    p.add_argument("--seed", type=int, default=1, help="seed for random families")
    p.add_argument("--one-based", action="store_true")
    p.add_argument("--witness", action="store_true", help="emit the structural witness")
    p.add_argument("--z-clique-all", action="store_true",
                   help="z family: clique over all k+1 spokes instead of the first k")
    p.add_argument("--pattern-u", choices=("single", "adjacent", "spread"),
                   default="single", help="turtle: u-side attachment pattern")
    p.add_argument("--pattern-v", choices=("single", "adjacent", "spread"),
                   default="single", help="turtle: v-side attachment pattern")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, help="number of random graphs")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-n", type=int, help="size bound for sampled/enumerated graphs")
    p.add_argument("--k", type=int, help="lower-bounds: run a single k")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out-dir", default=".", help="where counterexamples are written")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("bench", help="time the main computation")
    p.add_argument("target", help="edge-list file or family spec like random:300:0.0335")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--one-based", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_PARSE
    except (TooLarge, Truncated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CAP
    except (Disconnected, InvalidParam) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_PRECONDITION
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_PRECONDITION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
