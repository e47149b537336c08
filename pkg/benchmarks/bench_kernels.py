"""Benchmark the compiled kernels against the pure-numpy fallbacks.

Run as: python benchmarks/bench_kernels.py [--prime P]

The two backends produce identical exact results; this script just times them
on the hot loops (bracket tables, character sweeps, curve-count sweeps) at a
prime large enough for the differences to show.
"""

import argparse
import time

import numpy as np

from hgtrace._kernels import _pure
from hgtrace.field_core import build_ctx

try:
    from hgtrace._kernels import _speed
except ImportError:
    _speed = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=601)
    args = ap.parse_args()
    p = args.prime
    ctx = build_ctx(p)
    n = p - 1
    qr = np.full(p, -1, dtype=np.int64)
    qr[0] = 0
    qr[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    t = np.arange(2, p, dtype=np.int64)
    d1, d2 = ctx.dlog[t], ctx.dlog[(1 - t) % p]
    w = np.exp(2j * np.pi * np.arange(n) / n)
    dlogs = ctx.dlog[np.arange(1, p, dtype=np.int64)]
    coeffs = np.array([1, 0, 3, 5, 0, 2, 1], dtype=np.int64)
    co_im = np.zeros(7, dtype=np.int64)
    nu = next(v for v in range(2, p) if pow(v, (p - 1) // 2, p) == p - 1)

    cases = [
        ("dlog_table", (p, ctx.g)),
        ("legendre_affine_sweep", (p, qr)),
        ("bracket_table", (n, n // 2, 0, d1, d2, ctx.zeta, int(ctx.dlog[p - 1]))),
        ("chi_sweep", (w.copy(), dlogs, n, ctx.zeta)),
        ("superelliptic_sweep", (p, 6, 4, 3, 1, ctx.dlog)),
        ("genus2_count_fp", (coeffs, p, qr)),
        ("genus2_count_fp2", (coeffs, co_im, p, nu, qr)),
    ]
    print(f"p = {p}; compiled backend {'present' if _speed else 'NOT built'}")
    print(f"{'kernel':26s} {'pure (s)':>12s} {'compiled (s)':>14s} {'speedup':>9s}")
    for name, a in cases:
        tp, rp = timeit(getattr(_pure, name), *a)
        if _speed is None:
            print(f"{name:26s} {tp:12.5f} {'-':>14s} {'-':>9s}")
            continue
        tc, rc = timeit(getattr(_speed, name), *a)
        if isinstance(rp, np.ndarray):
            same = (np.allclose(rp, rc) if rp.dtype.kind == "c"
                    else bool(np.array_equal(rp, rc)))
        else:
            same = rp == rc
        flag = "" if same else "  RESULTS DIFFER!"
        print(f"{name:26s} {tp:12.5f} {tc:14.5f} {tp / tc:8.1f}x{flag}")


if __name__ == "__main__":
    main()
