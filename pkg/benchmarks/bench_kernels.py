"""Time the disparity LPs with the compiled and the numpy tableau kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--sizes 50 100 200 500]
"""
import argparse
import time

from minimax_owa.lp import have_compiled, solve_lp
from minimax_owa.lp.kernels import BACKENDS
from minimax_owa.models import build_alpha_model, build_weight_model


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 500])
    ap.add_argument("--eta", type=float, default=0.3)
    args = ap.parse_args(argv)
    if not have_compiled():
        print("compiled kernels not built; only the python backend is timed")

    cases = []
    for n in args.sizes:
        cases.append((f"weights n={n}", build_weight_model(n, args.eta)))
        cases.append((f"alpha k=3 n={n}", build_alpha_model(n, args.eta, 3)))

    names = sorted(BACKENDS)
    print(f"{'model':<18}" + "".join(f"{b:>12}" for b in names) + f"{'iters':>8}{'speedup':>10}")
    for label, lp in cases:
        row, secs = f"{label:<18}", {}
        for b in names:
            secs[b], out = best_of(args.repeat, lambda: solve_lp(lp, backend=b))
            row += f"{secs[b]:>11.4f}s"
        row += f"{out.iterations:>8}"
        if "cython" in secs:
            row += f"{secs['python'] / secs['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
