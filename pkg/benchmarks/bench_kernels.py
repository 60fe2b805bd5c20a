"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--jacobi-n 300]

Both implementations are called directly, so one process covers both paths;
the outputs are compared before timing.  Numba compile time is excluded (one
warm-up call per kernel).
"""

import argparse
import time

import numpy as np

from tangentlab import kernels
from tangentlab.diagnostics import _round_robin


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def jacobi_sweeps(round_fn, g, sweeps, with_vectors):
    def run():
        a = g.copy()
        v = np.eye(g.shape[0]) if with_vectors else None
        for _ in range(sweeps):
            for ps, qs in _round_robin(g.shape[0]):
                round_fn(a, v, ps, qs)
        return a
    return run


def cases(args):
    rng = np.random.default_rng(0)
    # conv input like LeNet conv2 on a 64-example batch: 6 channels, 14x14, 5x5 kernel
    xpad = rng.normal(size=(64, 6, 14, 14))
    yield ("im2col 64x6x14x14 k5",
           lambda: kernels._im2col_np(xpad, 5, 5, 1, 10, 10),
           lambda: kernels._im2col_nb(xpad, 5, 5, 1, 10, 10))
    cols = kernels._im2col_np(xpad, 5, 5, 1, 10, 10)
    yield ("col2im 64x6x14x14 k5",
           lambda: kernels._col2im_np(cols, 6, 14, 14, 5, 5, 1, 10, 10),
           lambda: kernels._col2im_nb(np.ascontiguousarray(cols), 6, 14, 14, 5, 5, 1, 10, 10))
    x = rng.normal(size=(256, 6, 28, 28))
    yield ("maxpool2 256x6x28x28", lambda: kernels._maxpool2_np(x), lambda: kernels._maxpool2_nb(x))
    _, idx = kernels._maxpool2_np(x)
    g = rng.normal(size=idx.shape)
    yield ("pool_scatter 256x6x14x14", lambda: kernels._pool_scatter_np(g, idx), lambda: kernels._pool_scatter_nb(g, idx))
    n = args.jacobi_n
    b = rng.normal(size=(n, 2 * n))
    gm = b @ b.T
    tiny = 1e-15
    yield (f"jacobi 2 sweeps n={n}",
           jacobi_sweeps(lambda a, v, ps, qs: kernels._jacobi_round_np(a, v, ps, qs, tiny), gm, 2, False),
           jacobi_sweeps(lambda a, v, ps, qs: kernels._jacobi_round_nb(a, np.zeros((1, 1)), ps, qs, tiny, False),
                         gm, 2, False))
    count = args.rng_count

    def fill(fn):
        def run():
            out = np.empty(count, dtype=np.uint64)
            fn(np.array([1, 2, 3, 4], dtype=np.uint64), out)
            return out
        return run
    yield (f"xoshiro256** {count} draws", fill(kernels._xoshiro_fill_py), fill(kernels._xoshiro_fill_nb))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--jacobi-n", type=int, default=300)
    parser.add_argument("--rng-count", type=int, default=200_000)
    args = parser.parse_args()
    if kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}  max |diff|")
    for name, np_fn, nb_fn in cases(args):
        ref, got = np_fn(), nb_fn()  # also warms up the jit
        ref = ref if isinstance(ref, tuple) else (ref,)
        got = got if isinstance(got, tuple) else (got,)
        diff = max(float(np.max(np.abs(r.astype(np.float64) - q.astype(np.float64)))) for r, q in zip(ref, got))
        t_np = best_of(np_fn, args.repeat)
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{name:32s} {1e3 * t_np:11.2f} {1e3 * t_nb:11.2f} {t_np / t_nb:7.1f}x  {diff:.1e}")


if __name__ == "__main__":
    main()
