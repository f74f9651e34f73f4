"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Prints one line per kernel with the best wall time of each backend and the
speedup, after checking both return identical results.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from mgl import _fallback
from mgl.chacon import ChaconModel

try:
    from mgl import _kernels
except ImportError:  # pragma: no cover
    _kernels = None


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def hull_case():
    rng = np.random.default_rng(0)
    n_nodes, n_edges = 9, 27
    src = np.repeat(np.arange(n_nodes), 3)
    dst = (3 * src + np.tile(np.arange(3), n_nodes)) % n_nodes
    f = rng.uniform(0.3, 1.0, n_edges)
    g = rng.uniform(0.3, 1.0, n_edges)
    phi = rng.uniform(-2, 2, n_edges)
    return (n_nodes, src, dst, f, phi, g, 2000, 1e-12)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--depth", type=int, default=12, help="Chacon level for the window scan")
    args = ap.parse_args(argv)
    if _kernels is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    hull_args = hull_case()
    q = ChaconModel(args.depth).ones_prefix_q()
    cases = [
        ("hull_dp_float (9 nodes, n=2000)", lambda m: m.hull_dp_float(*hull_args)),
        (f"window_discrepancy (depth {args.depth}, w=3^10)", lambda m: m.window_discrepancy(q, 3**10)),
    ]
    print(f"{'kernel':<42} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, call in cases:
        tc, rc = best_of(lambda: call(_kernels), args.repeat)
        tp, rp = best_of(lambda: call(_fallback), args.repeat)
        if isinstance(rc, tuple):
            same = np.array_equal(np.asarray(rc[0]), np.asarray(rp[0])) and rc[1] == rp[1]
        else:
            same = rc == rp
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<42} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
