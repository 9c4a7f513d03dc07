"""Command-line front end: ``cdgp <command> [options]``.

Exit codes for ``solve`` and ``oracle``: 0 feasible, 1 infeasible, 2 timed
out. Usage errors exit 3, unreadable or malformed input files exit 4.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import os
import sys
import warnings
from pathlib import Path

from . import bench
from .errors import CDGPError, DisconnectedGraphWarning, GenerationFailed, InstanceSyntaxError
from .generate import RNG_ID, CensusRow, GenConfig, GraphClass, census, classify, generate, generate_of_class
from .graph import ConstraintOp, Objective
from .instance_io import emit_stats_csv, fmt_seconds, read_instance, serialize_instance, span_cell, write_instance
from .oracle import DEFAULT_LIMIT, oracle_solve
from .outcome import SearchStats, Status
from .recognizers import bipartite_check
from .reductions import PartitionInstance, embedding_to_partition, partition_to_cdgp
from .solver import Strategy, backend, solve

EXIT = {Status.FEASIBLE: 0, Status.INFEASIBLE: 1, Status.TIMED_OUT: 2}
EXIT_USAGE = 3
EXIT_INPUT = 4

MODES = {"decision": Objective.DECISION, "optimize": Objective.MINIMIZE_SPAN}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class InputError(Exception):
    pass


def _positive_float(s):
    v = float(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {s}")
    return v


def _seed(s):
    v = int(s, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's unset flag from clobbering one given before it
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=_seed, help="RNG seed (unsigned 64-bit)")
    g.add_argument("--time-limit", type=_positive_float, help="seconds per solve (default: $CDGP_TIME_LIMIT or none)")
    g.add_argument("--output", "-o", help="output file (directory for multi-file commands)")
    g.add_argument("--format", choices=("human", "csv"), help="report format (default human)")
    return p


def _opt(args, name, default=None):
    return getattr(args, name, default)


def _time_limit(args):
    t = _opt(args, "time_limit")
    if t is not None:
        return t
    env = os.environ.get("CDGP_TIME_LIMIT")
    if env:
        try:
            t = float(env)
        except ValueError:
            raise InputError(f"CDGP_TIME_LIMIT is not a number: {env!r}") from None
        return t if t > 0 else None
    return None


@contextlib.contextmanager
def _out(args):
    path = _opt(args, "output")
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as f:
            yield f


def _load(path, objective=Objective.DECISION):
    try:
        return read_instance(path, objective)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    except (CDGPError, UnicodeDecodeError) as e:
        raise InputError(f"{path}: {e}") from None


def _stats_lines(stats: SearchStats) -> list[str]:
    return [
        f"nodes     {stats.nodes}",
        f"prunes    {stats.prunes}",
        f"bounds    {stats.bounds}",
        f"solutions {stats.solutions}",
        f"time      {fmt_seconds(stats.time_total)} s (first {fmt_seconds(stats.time_to_first) or '-'})",
    ]


def _result_line(outcome) -> str:
    if outcome.status is Status.FEASIBLE:
        return f"span {outcome.span}"
    if outcome.status is Status.INFEASIBLE:
        return "infeasible"
    return "timeout" + (f" (best span {outcome.span})" if outcome.embedding is not None else "")


def cmd_solve(args) -> int:
    mode = MODES[args.mode]
    inst = _load(args.instance, mode)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DisconnectedGraphWarning)
        outcome, stats = solve(
            inst, Strategy(args.strategy), mode,
            time_limit=_time_limit(args), node_limit=args.node_limit,
            seed_vertex=None if args.seed_vertex is None else args.seed_vertex - 1,
            ub=args.ub, backend_name=args.backend,
        )
    with _out(args) as f:
        if _opt(args, "format", "human") == "csv":
            f.write(emit_stats_csv([(Path(args.instance).stem, Strategy(args.strategy).label, outcome, stats)]))
        else:
            lines = [
                f"instance  {args.instance}",
                f"model     {inst.model_name or '-'}",
                f"strategy  {Strategy(args.strategy).label} ({args.mode})",
                _result_line(outcome),
            ]
            if outcome.embedding is not None:
                lines.append("colors    " + " ".join(map(str, outcome.embedding.as_list())))
            lines += _stats_lines(stats)
            f.write("\n".join(lines) + "\n")
    return EXIT[outcome.status]


def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    res = oracle_solve(inst, span_cap=args.span_cap, limit=args.limit)
    with _out(args) as f:
        if _opt(args, "format", "human") == "csv":
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["instance", "span", "explored", "span_cap", "definitive"])
            w.writerow([Path(args.instance).stem, span_cell(res.outcome), res.explored, res.span_cap,
                        int(res.definitive)])
        else:
            lines = [f"instance  {args.instance}", _result_line(res.outcome)]
            if res.outcome.embedding is not None:
                lines.append("colors    " + " ".join(map(str, res.outcome.embedding.as_list())))
            if not res.definitive and not res.is_feasible:
                lines.append(f"note      only spans <= {res.span_cap} were tried")
            lines.append(f"explored  {res.explored}")
            f.write("\n".join(lines) + "\n")
    return EXIT[res.outcome.status]


def _gen_config(args, seed) -> GenConfig:
    lo, hi = args.weights
    return GenConfig(
        n=args.n, m="random" if args.m is None else args.m, weight_range=(lo, hi),
        uniform_phi=args.phi, rng_seed=seed, op=ConstraintOp(args.op),
    )


def cmd_gen(args) -> int:
    seed = _opt(args, "seed", 0)
    out = _opt(args, "output")
    if args.count > 1 and out is None:
        raise InputError("--count > 1 needs --output DIR")
    made = []
    for idx in range(1, args.count + 1):
        sub = seed if args.count == 1 else bench.hash_seed(seed, "gen", idx)
        cfg = _gen_config(args, sub)
        if args.type == "any":
            inst = generate(cfg)
            name = f"g{args.n}_{idx}"
        else:
            inst = generate_of_class(cfg, args.type, args.max_attempts)
            name = bench.instance_name(args.type, args.n, idx)
        made.append((name, inst, sub))
    comments = lambda s: [f"rng {RNG_ID}", f"seed {s}"]
    if out is None:
        name, inst, sub = made[0]
        sys.stdout.write("".join(f"# {c}\n" for c in comments(sub)) + serialize_instance(inst))
    elif args.count == 1 and not Path(out).is_dir():
        write_instance(out, made[0][1], comments(made[0][2]))
    else:
        Path(out).mkdir(parents=True, exist_ok=True)
        for name, inst, sub in made:
            write_instance(Path(out) / f"{name}.cdgp", inst, comments(sub))
    return 0


def cmd_census(args) -> int:
    seed = _opt(args, "seed", 0)
    rows = [census(n, args.count, seed) for n in args.n]
    with _out(args) as f:
        if _opt(args, "format", "csv") == "human":
            for r in rows:
                f.write(
                    f"n={r.n} graphs={r.graphs_generated} avg_edges={r.avg_edges:.2f} "
                    f"density={r.avg_density:.4f} odd={r.odd_cycle_count} even={r.even_cycle_count} "
                    f"trees={r.tree_count} bipartite={r.bipartite_count} cpu={r.cpu_seconds:.3f}s\n"
                )
        else:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(CensusRow.HEADER)
            for r in rows:
                w.writerow(r.as_row())
    return 0


def cmd_classify(args) -> int:
    with _out(args) as f:
        as_csv = _opt(args, "format", "human") == "csv"
        w = csv.writer(f, lineterminator="\n")
        if as_csv:
            w.writerow(["instance", "n", "m", "class", "odd_cycle"])
        for path in args.instances:
            inst = _load(path)
            g = inst.graph
            try:
                cls = classify(g).value
            except CDGPError:
                cls = "disconnected"
            res = bipartite_check(g)
            cyc = " ".join(str(v + 1) for v in res.odd_cycle) if res.odd_cycle else ""
            if as_csv:
                w.writerow([Path(path).stem, g.n, g.m, cls, cyc])
            else:
                f.write(f"{path}: {cls} (n={g.n}, m={g.m})" + (f" odd cycle {cyc}" if cyc else "") + "\n")
    return 0


def _read_lists(args) -> list[list[int]]:
    lines = list(args.values)
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as f:
                lines += [ln for ln in f if ln.strip() and not ln.lstrip().startswith("#")]
        except OSError as e:
            raise InputError(f"{args.input}: {e.strerror or e}") from None
    if not lines:
        raise InputError("no value lists given")
    out = []
    for ln in lines:
        try:
            out.append([int(t) for t in ln.split()])
        except ValueError:
            raise InputError(f"not a list of integers: {ln.strip()!r}") from None
    return out


def cmd_reduce(args) -> int:
    lists = _read_lists(args)
    out = _opt(args, "output")
    insts = []
    for vals in lists:
        try:
            p = PartitionInstance(tuple(vals))
            insts.append((vals, p, partition_to_cdgp(p)))
        except CDGPError as e:
            raise InputError(f"{' '.join(map(str, vals))}: {e}") from None
        except ValueError as e:
            raise InputError(str(e)) from None
    if args.solve:
        for vals, p, inst in insts:
            # Prev is complete on equality cycles; Select can miss a split
            outcome, _ = solve(inst, Strategy.PREV, Objective.DECISION, time_limit=_time_limit(args))
            if outcome.status is Status.FEASIBLE:
                s1, s2 = embedding_to_partition(p, outcome.embedding)
                print(f"{' '.join(map(str, vals))}: yes {s1} {s2} (sum {sum(s1)})")
            else:
                print(f"{' '.join(map(str, vals))}: {span_cell(outcome) if outcome.status is Status.TIMED_OUT else 'no'}")
    if out is None:
        if not args.solve:
            sys.stdout.write("".join(serialize_instance(inst) for _, _, inst in insts))
        return 0
    if len(insts) == 1 and not Path(out).is_dir():
        vals, _, inst = insts[0]
        write_instance(out, inst, [f"partition {' '.join(map(str, vals))}"])
        return 0
    Path(out).mkdir(parents=True, exist_ok=True)
    for idx, (vals, _, inst) in enumerate(insts, 1):
        write_instance(Path(out) / f"partition{len(vals)}_{idx}.cdgp", inst,
                       [f"partition {' '.join(map(str, vals))}"])
    return 0


def cmd_bench(args) -> int:
    if args.instances:
        suite = [(Path(p).stem, _load(p)) for p in args.instances]
    else:
        suite = bench.generated_suite(
            args.classes, args.sizes, args.per_class, _opt(args, "seed", 0),
            weight_range=tuple(args.weights), op=ConstraintOp(args.op),
        )
        if args.save_suite:
            bench.write_suite(suite, args.save_suite, _opt(args, "seed", 0))
    plan = bench.BenchPlan(
        instances=suite,
        strategies=[Strategy(s) for s in args.strategies],
        modes=[MODES[m] for m in args.modes],
        time_limit=_time_limit(args), node_limit=args.node_limit,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DisconnectedGraphWarning)
        with _out(args) as f:
            bench.run_bench(plan, f, jobs=args.jobs)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    p = _Parser(prog="cdgp", description="Distance-constrained graph embedding tools.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    strategies = [s.value for s in Strategy]

    s = sub.add_parser("solve", parents=[common], help="branch-prune-and-bound search on one instance")
    s.add_argument("instance")
    s.add_argument("--strategy", choices=strategies, default="prev")
    s.add_argument("--mode", choices=sorted(MODES), default="decision")
    s.add_argument("--node-limit", type=int)
    s.add_argument("--seed-vertex", type=int, help="1-based start vertex (default: try all)")
    s.add_argument("--ub", type=int, help="largest span to search (default 1 + total weight)")
    s.add_argument("--backend", choices=sorted(backend.AVAILABLE))
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", parents=[common], help="exhaustive minimum-span solver (small n)")
    s.add_argument("instance")
    s.add_argument("--span-cap", type=int)
    s.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="largest n accepted")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", parents=[common], help="generate random instances")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, help="edge count (default: uniform in [n-1, n(n-1)/2])")
    s.add_argument("--type", choices=["any"] + [c.value for c in GraphClass], default="any")
    s.add_argument("--weights", type=int, nargs=2, metavar=("LO", "HI"), default=[1, 30])
    s.add_argument("--phi", type=int, help="uniform weight (overrides --weights)")
    s.add_argument("--op", choices=[o.value for o in ConstraintOp], default="eq")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--max-attempts", type=int, default=10_000)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("census", parents=[common], help="structural census of random graphs (CSV)")
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.add_argument("--count", type=int, default=1000)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("classify", parents=[common], help="tree / even cycles only / odd cycle")
    s.add_argument("instances", nargs="+")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reduce", parents=[common], help="partition value lists to cycle instances")
    s.add_argument("values", nargs="*", help='value lists, e.g. "1 4 5 6 7 9"')
    s.add_argument("--input", help="file with one whitespace-separated list per line")
    s.add_argument("--solve", action="store_true", help="also solve and print the two halves")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bench", parents=[common], help="run strategies over a suite, write CSV")
    s.add_argument("instances", nargs="*", help="instance files (default: generate a suite)")
    s.add_argument("--strategies", nargs="+", choices=strategies, default=strategies)
    s.add_argument("--modes", nargs="+", choices=sorted(MODES), default=["optimize"])
    s.add_argument("--classes", nargs="+", choices=[c.value for c in GraphClass],
                   default=[c.value for c in GraphClass])
    s.add_argument("--sizes", type=int, nargs="+", default=[4, 5, 6, 7, 8, 9])
    s.add_argument("--per-class", type=int, default=4)
    s.add_argument("--weights", type=int, nargs=2, metavar=("LO", "HI"), default=[1, 30])
    s.add_argument("--op", choices=[o.value for o in ConstraintOp], default="eq")
    s.add_argument("--node-limit", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--save-suite", metavar="DIR", help="write generated instances here")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"cdgp: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (GenerationFailed, CDGPError, ValueError) as e:
        print(f"cdgp: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("cdgp: interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
