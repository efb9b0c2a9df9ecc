"""Compare the numba and pure-numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported from the same module; the numpy functions are
always present, the numba ones only when numba imports.
"""

import argparse
import time

import numpy as np

from omegalib import _kernels as K


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng):
    q = 3
    for d in (2, 4, 6):
        table = rng.integers(0, q, q ** d)
        word = rng.integers(0, q, 1_000_000)
        yield f"apply_rule q={q} d={d} n=1e6", (
            lambda t=table, w=word, d=d: K._apply_rule_np(t, w, d, q),
            lambda t=table, w=word, d=d: K._apply_rule_nb(t, w, d, q))
    for d1, d2 in ((3, 3), (4, 5), (6, 6)):
        outer = rng.integers(0, q, q ** d1)
        inner = rng.integers(0, q, q ** d2)
        yield f"compose_table q={q} d={d1}+{d2}", (
            lambda o=outer, i=inner, a=d1, b=d2: K._compose_table_np(o, a, i, b, q),
            lambda o=outer, i=inner, a=d1, b=d2: K._compose_table_nb(o, a, i, b, q))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba unavailable (or OMEGALIB_NO_NUMBA set); nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'case':34s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, (f_np, f_nb) in cases(rng):
        # warm the jit and check agreement before timing
        assert np.array_equal(f_np(), f_nb()), name
        t_np = best_of(f_np, args.repeat)
        t_nb = best_of(f_nb, args.repeat)
        print(f"{name:34s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
