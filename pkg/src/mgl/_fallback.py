"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``.

Results are bit-identical to the compiled versions: the same floating-point
operations are performed in the same order.
"""
from __future__ import annotations

import numpy as np


def _chain(pts, tol):
    # pts sorted by (x, y); returns hull vertices counter-clockwise
    if len(pts) <= 2:
        out = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        return out

    def turn(o, a, b):
        ax, ay = a[0] - o[0], a[1] - o[1]
        bx, by = b[0] - o[0], b[1] - o[1]
        cr = ax * by - ay * bx
        return cr - tol * ((abs(ax) + abs(ay)) * (abs(bx) + abs(by)))

    lower = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if not hull:
        hull = [pts[0]]
    return hull


def hull_dp_float(n_nodes, src, dst, f, phi, g, n_max, tol=1e-12):
    """Max |Phi_n| for n = 1..n_max over a weighted transition graph.

    Each node keeps the convex hull of its symmetric point cloud ``{(Phi, G)}``;
    an edge maps ``(Phi, G) -> (f*Phi + phi*G, g*G)``.  Returns
    ``(c, watermark)`` with ``c[n-1] = max |Phi_n|`` and the largest hull size.
    """
    src = [int(s) for s in src]
    dst = [int(t) for t in dst]
    f = [float(v) for v in f]
    phi = [float(v) for v in phi]
    g = [float(v) for v in g]
    hulls = [[(0.0, -1.0), (0.0, 1.0)] for _ in range(n_nodes)]
    c = np.empty(n_max, dtype=np.float64)
    watermark = 2
    for n in range(n_max):
        cand = [[] for _ in range(n_nodes)]
        for e in range(len(src)):
            fe, pe, ge = f[e], phi[e], g[e]
            bucket = cand[dst[e]]
            for x, y in hulls[src[e]]:
                bucket.append((fe * x + pe * y, ge * y))
        best = 0.0
        for v in range(n_nodes):
            pts = cand[v]
            pts.sort()
            h = _chain(pts, tol)
            hulls[v] = h
            if len(h) > watermark:
                watermark = len(h)
            for x, _ in h:
                ax = abs(x)
                if ax > best:
                    best = ax
        c[n] = best
    return c, watermark


def _sliding(q: np.ndarray, w: int, op) -> np.ndarray:
    # op-reduction of q[i : i + w + 1] (truncated at the end) for every i
    n = q.shape[0]
    span = w + 1
    if span >= n:
        span = n
    padded = np.concatenate([q, np.full(span, q[-1], dtype=q.dtype)])
    table = padded.copy()
    width = 1
    while width * 2 <= span:
        table[: padded.shape[0] - width] = op(table[: padded.shape[0] - width], table[width:])
        width *= 2
    return op(table[:n], table[span - width : span - width + n])


def window_discrepancy(q, w: int) -> int:
    """``max |q[j] - q[i]|`` over ``0 <= i < j < len(q)`` with ``j - i <= w``."""
    q = np.asarray(q, dtype=np.int64)
    if q.shape[0] < 2 or w < 1:
        return 0
    hi = _sliding(q, w, np.maximum)
    lo = _sliding(q, w, np.minimum)
    return int(max((hi - q).max(), (q - lo).max()))
