"""Compare the numba kernels against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Times the pairwise Holder supremum and the 1D squared distance transform on
identical inputs through both backends and prints a small table. The two
backends must agree bit-for-bit; the benchmark asserts that along the way.
"""

import argparse
import time

import numpy as np

from interplab.kernels import _numpy as np_backend

try:
    from interplab.kernels import _numba as nb_backend
except ImportError:
    nb_backend = None


def timeit(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_pairwise(backend, coords, vals, repeat):
    return timeit(lambda: backend.pairwise_holder_sup(coords, vals, 0.5), repeat)


def bench_edt(backend, rows, repeat):
    def run():
        acc = 0.0
        for row in rows:
            acc += backend.edt_1d_sq(row.copy())[0]
        return acc

    return timeit(run, repeat)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--nodes", type=int, default=4096,
                    help="node count for the pairwise kernel")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    side = int(round(args.nodes**0.5))
    xs = 0.1 * np.arange(side)
    xx, yy = np.meshgrid(xs, xs, indexing="ij")
    coords = np.ascontiguousarray(
        np.stack([xx.ravel(), yy.ravel()], axis=-1))
    vals = np.ascontiguousarray(
        np.exp(-(xx**2 + yy**2)).ravel().reshape(-1, 1))

    rows = [np.where(rng.random(2048) < 0.05, 0.0, 1e30) for _ in range(64)]
    for row in rows:
        row[0] = 0.0

    print(f"pairwise Holder sup: {coords.shape[0]} nodes | "
          f"EDT: {len(rows)} rows x {rows[0].size}")
    print(f"{'kernel':<22}{'numpy':>12}{'numba':>12}{'speedup':>10}")

    t_np, ref = bench_pairwise(np_backend, coords, vals, args.repeat)
    if nb_backend is not None:
        bench_pairwise(nb_backend, coords, vals, 1)  # compile
        t_nb, got = bench_pairwise(nb_backend, coords, vals, args.repeat)
        assert got[0] == ref[0], "backends disagree on the pairwise sup"
        print(f"{'pairwise_holder_sup':<22}{t_np:>11.4f}s{t_nb:>11.4f}s"
              f"{t_np / t_nb:>9.1f}x")
    else:
        print(f"{'pairwise_holder_sup':<22}{t_np:>11.4f}s{'n/a':>12}{'':>10}")

    t_np, ref = bench_edt(np_backend, rows, args.repeat)
    if nb_backend is not None:
        bench_edt(nb_backend, rows, 1)  # compile
        t_nb, got = bench_edt(nb_backend, rows, args.repeat)
        assert got == ref, "backends disagree on the distance transform"
        print(f"{'edt_1d_sq':<22}{t_np:>11.4f}s{t_nb:>11.4f}s"
              f"{t_np / t_nb:>9.1f}x")
    else:
        print(f"{'edt_1d_sq':<22}{t_np:>11.4f}s{'n/a':>12}{'':>10}")

    if nb_backend is None:
        print("numba backend unavailable (not installed or disabled)")


if __name__ == "__main__":
    main()
