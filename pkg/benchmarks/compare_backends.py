"""Time the compiled and pure-Python search kernels on the same suite.

    python benchmarks/compare_backends.py --sizes 6 7 8 --per-class 2

Also checks that both kernels report identical counters on every cell.
"""

import argparse
import time

from cdgp.bench import generated_suite
from cdgp.graph import Objective
from cdgp.solver import Strategy, backend, solve


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 7, 8])
    ap.add_argument("--per-class", type=int, default=2)
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if "compiled" not in backend.AVAILABLE:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    suite = generated_suite(["tree", "evencycle", "oddcycle"], args.sizes, args.per_class, args.seed)
    totals = {"python": 0.0, "compiled": 0.0}
    print(f"{'instance':<16}{'strategy':<26}{'nodes':>10}{'python s':>11}{'compiled s':>12}{'ratio':>8}")
    for name, inst in suite:
        for strat in Strategy:
            cell = {}
            for be in ("python", "compiled"):
                best = float("inf")
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    out, st = solve(inst, strat, Objective.MINIMIZE_SPAN, backend_name=be)
                    best = min(best, time.perf_counter() - t0)
                cell[be] = (best, (out.status, out.span, st.nodes, st.prunes, st.bounds, st.solutions))
                totals[be] += best
            if cell["python"][1] != cell["compiled"][1]:
                raise SystemExit(f"kernels disagree on {name} {strat.label}: {cell}")
            tp, tc = cell["python"][0], cell["compiled"][0]
            print(f"{name:<16}{strat.label:<26}{cell['python'][1][2]:>10}{tp:>11.4f}{tc:>12.4f}{tp / tc:>8.1f}")
    print(f"\ntotal python {totals['python']:.3f} s, compiled {totals['compiled']:.3f} s, "
          f"speedup {totals['python'] / totals['compiled']:.1f}x")


if __name__ == "__main__":
    main()
