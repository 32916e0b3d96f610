"""Compare the compiled and pure-Python exact kernels.

Run ``python3 benchmarks/bench_kernels.py``; the compiled column is skipped
when the extension is not built.
"""

from __future__ import annotations

import argparse
import random
import time

from orbiquant.exact import _kernels_py
from orbiquant.exact.rational import QQ

try:
    from orbiquant.exact import _ckernels
except ImportError:
    _ckernels = None


def random_rows(rng: random.Random, n: int, density: float) -> list[dict]:
    return [
        {c: QQ(rng.randint(-9, 9), rng.randint(1, 4)) for c in range(n) if rng.random() < density}
        for _ in range(n)
    ]


def cyclotomic_table(order: int):
    from orbiquant.exact.cyclotomic import _field

    return _field(order)


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=120)
    parser.add_argument("--density", type=float, default=0.15)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    rows = random_rows(rng, args.size, args.density)
    phi, table = cyclotomic_table(32)
    polys = [([rng.randint(-5, 5) for _ in range(phi)], [rng.randint(-5, 5) for _ in range(phi)]) for _ in range(2000)]

    backends = [("python", _kernels_py)] + ([("cython", _ckernels)] if _ckernels else [])
    results = {}
    for name, k in backends:
        ech = timed(lambda: k.back_substitute(k.sparse_echelon([dict(r) for r in rows])), args.repeat)
        conv = timed(lambda: [k.conv_reduce(a, b, table, phi) for a, b in polys], args.repeat)
        results[name] = (ech, conv)

    ref = _kernels_py.back_substitute(_kernels_py.sparse_echelon([dict(r) for r in rows]))
    if _ckernels:
        assert _ckernels.back_substitute(_ckernels.sparse_echelon([dict(r) for r in rows])) == ref

    print(f"{'kernel':<24}" + "".join(f"{n:>12}" for n, _ in backends))
    for i, label in enumerate([f"rref {args.size}x{args.size}", "cyclotomic mul x2000"]):
        print(f"{label:<24}" + "".join(f"{results[n][i]:>11.4f}s" for n, _ in backends))
    if _ckernels:
        for i, label in enumerate(["rref speedup", "cyclotomic speedup"]):
            print(f"{label:<24}{results['python'][i] / results['cython'][i]:>23.2f}x")


if __name__ == "__main__":
    main()
