"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from graphorder.kernels import available_backends


def cases(rng):
    n = 300
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < 6 / n
    u, v = iu[keep].astype(np.int64), ju[keep].astype(np.int64)
    perms = np.stack([rng.permutation(n) for _ in range(2000)]).astype(np.int64)
    seqs = rng.integers(0, 4, size=(200_000, 25)).astype(np.int64)
    x = np.ascontiguousarray(rng.normal(size=(2000, 4)))
    start = x[rng.choice(len(x), 5, replace=False)]
    return {
        "null_flip_histogram(10, 5)": lambda b: b.null_flip_histogram(10, 5),
        "h2_batch 2000 x N=300": lambda b: b.h2_batch(perms, u, v),
        "adjacent_equal_counts 2e5 x 25": lambda b: b.adjacent_equal_counts(seqs),
        "lloyd N=2000 k=5": lambda b: b.lloyd(x, start.copy(), 300, 1e-8),
    }


def _same(a, b):
    if isinstance(a, (tuple, list)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return np.allclose(np.asarray(a, dtype=float), np.asarray(b, dtype=float), rtol=1e-10)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = available_backends()
    rows = []
    for name, fn in cases(np.random.default_rng(args.seed)).items():
        t = {b: min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
             for b, impl in backends.items()}
        outs = [fn(impl) for impl in backends.values()]
        rows.append((name, t, all(_same(outs[0], o) for o in outs[1:])))
    print(f"{'kernel':34s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup  agree")
    for name, t, agree in rows:
        speed = t["python"] / t["cython"] if "cython" in t else float("nan")
        print(f"{name:34s}" + "".join(f"{t[b]:11.4f}s" for b in backends) + f"{speed:11.1f}x  {'yes' if agree else 'NO'}")


if __name__ == "__main__":
    main()
