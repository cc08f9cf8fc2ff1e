"""Time the compiled and numpy kernels on the shapes the library produces.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row checks that both backends return identical arrays before timing.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from okrank import kernels
from okrank.counting import rank_table


def _cases(rng: np.random.Generator):
    for q, z, a in ((200, 1, 1), (60, 21, 1), (40, 15, 15)):
        x = rng.integers(-50, 50, size=(q, z, a), dtype=np.int64)
        y = rng.integers(-50, 50, size=(q, z, a), dtype=np.int64)
        yield f"conv3 {q}x{z}x{a}", (lambda b, x=x, y=y, q=q: kernels.conv3(x, y, q, backend=b))
    for q, z, dq, dz in ((400, 1, 1, 0), (80, 41, 1, 1)):
        s = rng.integers(-50, 50, size=(q, z, 1), dtype=np.int64)
        yield f"geom {q}x{z} dq={dq} dz={dz}", (
            lambda b, s=s, dq=dq, dz=dz: kernels.geom(s, 1, dq, dz, 0, backend=b))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    header = f"{'kernel':28}" + "".join(f"{b + ' ms':>14}" for b in backends)
    print(header)
    rng = np.random.default_rng(0)
    for name, fn in _cases(rng):
        ref = fn("python")
        for b in backends:
            if not np.array_equal(np.asarray(fn(b), dtype=object), np.asarray(ref, dtype=object)):
                raise SystemExit(f"{name}: {b} disagrees with the numpy kernel")
        times = [min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) * 1e3
                 for b in backends]
        print(f"{name:28}" + "".join(f"{t:14.3f}" for t in times))

    # end to end: a table whose cost is dominated by series products
    t = min(timeit.repeat(lambda: rank_table("Nbar_k", "gf", 40, 3), number=1,
                          repeat=args.repeat)) * 1e3
    print(f"{'Nbar_3 gf table, n <= 40':28}{t:14.3f}  (default backend)")


if __name__ == "__main__":
    main()
