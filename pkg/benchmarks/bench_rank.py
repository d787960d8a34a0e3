"""Compare the compiled and pure-Python Bareiss rank kernels.

    python benchmarks/bench_rank.py [--sizes 10 30 60] [--repeat 5]
"""

import argparse
import random
import timeit

from adedefect import _kernels_py

try:
    from adedefect import _kernels
except ImportError:
    _kernels = None


def random_matrix(rng, n, rank, bound=20):
    a = [[rng.randint(-bound, bound) for _ in range(rank)] for _ in range(n)]
    b = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(rank)]
    return [[sum(a[i][k] * b[k][j] for k in range(rank)) for j in range(n)]
            for i in range(n)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 30, 60])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    backends = [("python", _kernels_py.bareiss_rank)]
    if _kernels is not None:
        backends.append(("cython", _kernels.bareiss_rank))
    else:
        print("compiled kernel not built; timing the Python fallback only")

    print(f"{'size':>6} {'rank':>6} " + " ".join(f"{n:>12}" for n, _ in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for n in args.sizes:
        m = random_matrix(rng, n, max(1, 3 * n // 4))
        ranks = {fn(m) for _, fn in backends}
        assert len(ranks) == 1, "backends disagree"
        times = [min(timeit.repeat(lambda fn=fn: fn(m), number=1,
                                   repeat=args.repeat)) for _, fn in backends]
        line = f"{n:>6} {ranks.pop():>6} " + " ".join(f"{t * 1e3:>10.2f}ms"
                                                      for t in times)
        if len(times) == 2:
            line += f"   {times[0] / times[1]:>6.2f}x"
        print(line)


if __name__ == "__main__":
    main()
