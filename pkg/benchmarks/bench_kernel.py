"""Compiled vs pure-Python refinement kernel.

Times full automorphism searches (refinement dominates) and bare refinement
from the unit partition after individualizing one vertex.

    python benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import statistics
import time

from vdgraph.auteng import _backend, automorphism_generators
from vdgraph.auteng.refine import csr, partition_from_colors
from vdgraph.families import build
from vdgraph.graph import bipartite_double

CASES = [
    ("johnson:7,3", lambda: build("johnson:7,3")),
    ("B(J(7,2))", lambda: bipartite_double(build("johnson:7,2"))),
    ("grassmann:2,4,2", lambda: build("grassmann:2,4,2")),
    ("doubled-grassmann:2,4,1", lambda: build("doubled-grassmann:2,4,1")),
    ("doubled-grassmann:2,5,2", lambda: build("doubled-grassmann:2,5,2")),
    ("grassmann:3,4,2", lambda: build("grassmann:3,4,2")),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def refine_all_vertices(g, kernel):
    off, nbr = csr(g)
    for v in range(g.n):
        lab, cell, size, starts = partition_from_colors([0] * g.n)
        s = kernel.individualize(lab, cell, size, v)
        kernel.refine(off, nbr, lab, cell, size, [s])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    kernels = [("python", _backend.python_kernel)]
    if _backend.compiled_kernel is None:
        print("compiled kernel not built; only the fallback is timed")
    else:
        kernels.append(("cython", _backend.compiled_kernel))

    header = f"{'instance':26} {'n':>5} {'task':8}" + "".join(f" {name + ' s':>10}" for name, _ in kernels) + "  speedup"
    print(header)
    print("-" * len(header))
    for name, make in CASES:
        g = make()
        for task, fn in (
            ("search", lambda k: automorphism_generators(g, kernel=k)),
            ("refine", lambda k: refine_all_vertices(g, k)),
        ):
            results = [best_of(lambda: fn(k), args.repeat)[0] for _, k in kernels]
            row = f"{name:26} {g.n:5d} {task:8}" + "".join(f" {t:10.4f}" for t in results)
            if len(results) == 2:
                row += f"  {results[0] / results[1]:6.1f}x"
            print(row)


if __name__ == "__main__":
    main()
