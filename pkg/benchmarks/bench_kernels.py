"""Numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs both backends on the same input, checks that the outputs
agree, and prints the best wall time of each plus the speedup.  The first
numba call is timed separately (compilation or cache load).
"""

import argparse
import time

import numpy as np

from semiloc import _accel
from semiloc.constructions import matrix_algebra, path_algebra, prime_field, truncated_polynomial, upper_triangular


def _best(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def _same(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(quick):
    rng = np.random.default_rng(0)
    M2 = matrix_algebra(2, 2)
    UT = upper_triangular(prime_field(2), 3 if quick else 4)[0]
    T = truncated_polynomial(6 if quick else 9, 3)
    Q = path_algebra(2, 3, [(0, 1), (1, 2), (0, 2)], 2) if quick else path_algebra(2, 4, [(0, 1), (1, 2), (2, 3), (0, 2)], 3)
    big = 40 if quick else 120
    mats = rng.integers(0, 5, size=(big, big))
    yield "rref 120x120 mod 5" if not quick else "rref 40x40 mod 5", lambda k: k.rref_inplace(mats.copy(), 5)
    yield f"unit flags, all of {UT.name} (2^{UT.dim})", lambda k: k.unit_flags_range(UT.dim, 2, UT.const)
    yield f"unit flags, all of {T.name} (3^{T.dim})", lambda k: k.unit_flags_range(T.dim, 3, T.const)
    coords = rng.integers(0, 2, size=(20000 if quick else 200000, M2.dim))
    yield f"unit flags, {len(coords)} elements of M2(GF(2))", lambda k: k.unit_flags_coords(coords, M2.const, 2)
    for A in (UT, Q):
        units = _accel.unit_flags_range(A.dim, A.p, A.const)
        rstack = np.ascontiguousarray(A.const.transpose(1, 0, 2))
        yield (
            f"radical search, {A.name} (dim {A.dim})",
            lambda k, A=A, units=units, rstack=rstack: k.quasi_regular_search(A.dim, A.p, rstack, A.unit, units),
        )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if _accel.numba_kernels is None:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'case':48s} {'numpy s':>10s} {'numba s':>10s} {'first':>8s} {'speedup':>8s}")
    for name, run in cases(args.quick):
        t0 = time.perf_counter()
        run(_accel.numba_kernels)
        first = time.perf_counter() - t0
        ref, t_np = _best(lambda: run(_accel.numpy_kernels), args.repeat)
        got, t_nb = _best(lambda: run(_accel.numba_kernels), args.repeat)
        if not _same(ref, got):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:48s} {t_np:10.4f} {t_nb:10.4f} {first:8.2f} {t_np / max(t_nb, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
