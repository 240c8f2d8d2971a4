"""Time the compiled and pure-Python RREF kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Both kernels must return the same reduced rows and pivots; the script exits
non-zero if they ever disagree.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from qhecke import _pykernel
from qhecke.coalg import a_shape, delta, graded_coalgebra
from qhecke.exactmath import ParamSpec

try:
    from qhecke import _ckernel
except ImportError:  # pragma: no cover
    _ckernel = None


def random_rows(rng: random.Random, m: int, n: int, density: float, rank_deficit: int):
    base = []
    for _ in range(m - rank_deficit):
        row = {}
        for j in range(n):
            if rng.random() < density:
                row[j] = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        base.append(row)
    rows = list(base)
    for _ in range(rank_deficit):
        a, b = rng.sample(base, 2)
        s, t = Fraction(rng.randint(1, 5), rng.randint(1, 5)), Fraction(rng.randint(-5, -1))
        comb = {}
        for src, c in ((a, s), (b, t)):
            for j, v in src.items():
                comb[j] = comb.get(j, 0) + c * v
        rows.append(comb)
    rng.shuffle(rows)
    return rows


def coproduct_rows(n: int, b, r: int, params: ParamSpec):
    """Structure-constant rows of Delta on A(b;r), a typical workload."""
    C = graded_coalgebra(n, b, r, params)
    return [{k1 * C.dim + k2: c for (k1, k2), c in C.delta[k].items()} for k in range(C.dim)]


def workloads(seed: int):
    rng = random.Random(seed)
    yield "random 40x40 dense", random_rows(rng, 40, 40, 0.6, 5)
    yield "random 120x100 sparse", random_rows(rng, 120, 100, 0.08, 20)
    yield "random 80x80 dense", random_rows(rng, 80, 80, 0.5, 10)
    yield "coproduct A(a[1];3) n=3", coproduct_rows(3, a_shape(3, 1), 3, ParamSpec(2, 3))
    yield "coproduct A(delta;2) n=4", coproduct_rows(4, delta(4), 2, ParamSpec(2, Fraction(1, 2)))


def best_of(fn, rows, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(rows)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _ckernel is None:
        print("compiled kernel not built; nothing to compare")
        return 1
    print(f"{'workload':30} {'rows':>5} {'rank':>5} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    ok = True
    for name, rows in workloads(args.seed):
        tp, outp = best_of(_pykernel.rref, rows, args.repeat)
        tc, outc = best_of(_ckernel.rref, rows, args.repeat)
        same = outp == outc
        ok &= same
        print(f"{name:30} {len(rows):5d} {len(outp[1]):5d} {tp:10.4f} {tc:11.4f} {tp / tc:7.2f}x" + ("" if same else "  MISMATCH"))
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
