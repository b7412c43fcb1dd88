"""Compare the compiled and pure-Python diffusion kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from compdiff import _pure
from compdiff.graph import WeightedGraph

try:
    from compdiff import _kernels
except ImportError:
    _kernels = None


def _workloads(rng: random.Random):
    path = WeightedGraph.path([rng.randint(-3, 3) for _ in range(60)])
    n = 80
    edges = {(min(u, v), max(u, v)) for u, v in ((rng.randrange(n), rng.randrange(n)) for _ in range(240)) if u != v}
    sparse = WeightedGraph.from_edges(n, sorted(edges), [rng.randint(0, 5) for _ in range(n)])
    return [
        ("path60/k4", path, tuple(rng.randrange(path.n) for _ in range(4))),
        ("gnm80/k5", sparse, tuple(rng.randrange(n) for _ in range(5))),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install --no-build-isolation -e .`", file=sys.stderr)
        return 1
    rng = random.Random(0)
    print(f"{'workload':<12} {'operation':<18} {'pure s':>9} {'compiled s':>11} {'speedup':>8}")
    for name, graph, prof in _workloads(rng):
        csr = graph.csr
        ops = {
            "simulate x200": lambda m: [m.simulate(*csr, prof) for _ in range(200)],
            "first_improvement": lambda m: m.first_improvement(*csr, prof),
            "extra_potential": lambda m: m.extra_potential(*csr, prof),
        }
        for op, fn in ops.items():
            # identical answers first, then timing
            a, b = fn(_pure), fn(_kernels)
            if op == "simulate x200":
                assert all((x == y).all() for x, y in zip(a[0], b[0]))
            else:
                assert a == b, (op, a, b)
            tp = min(timeit.repeat(lambda: fn(_pure), number=1, repeat=args.repeat))
            tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
            print(f"{name:<12} {op:<18} {tp:>9.4f} {tc:>11.5f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
