"""Growth sequences of matrix products.

``a_n`` is the largest norm of a length-n product and ``c_n`` the largest
upper-right entry in absolute value.  For triangular sets ``c_n`` is
subadditive, so ``min c_n / n`` is a rigorous upper bound for the linear
growth rate.

Two engines:

* ``enumerate_growth`` walks all products level by level (deduplicated, with
  optional entrywise-domination pruning for nonnegative triangular sets).
* ``hull_dp_growth`` runs a dynamic program over the de Bruijn graph of a
  locally constant triangular cocycle.  Multiplying ``[[F, P], [0, G]]`` on
  the left by ``[[f, phi], [0, g]]`` gives corner ``f*P + phi*G`` and lower
  diagonal ``g*G``; the upper diagonal ``F`` never feeds back.  So the state
  is only the pair ``(P, G)``.  Every later step is linear in that pair and
  the final objective ``|P|`` is a maximum of two linear functionals, which
  means only the vertices of the convex hull of ``{(P, G)} U {(-P, -G)}``
  can ever be optimal.  Pruning to those vertices is lossless whatever the
  signs of the coefficients.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import kernels
from .cocycle import CocycleSpec
from .matrix import Mat2, MatrixSet, ScalarKindError, mat_mul, op_norm_2, sum_norm
from .scalars import QuadScalar

DEFAULT_ENUM_BUDGET = 2**26
MAX_HULL_STEPS = 100_000
FLOAT_HULL_TOL = 1e-12


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class GrowthCurve:
    lengths: List[int]
    a_vals: List[Optional[object]]
    c_vals: List[object]
    watermark: Optional[int] = None
    meta: dict = field(default_factory=dict)

    @property
    def fekete_upper(self):
        return min(c / n for n, c in zip(self.lengths, self.c_vals))

    def c_at(self, n: int):
        return self.c_vals[self.lengths.index(n)]

    def a_at(self, n: int):
        return self.a_vals[self.lengths.index(n)]

    def write_csv(self, path_or_file) -> None:
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "a_n", "c_n", "c_n_over_n"])
            for n, a, c in zip(self.lengths, self.a_vals, self.c_vals):
                w.writerow([n, "" if a is None else _fmt(a), _fmt(c), _fmt(c / n)])
        finally:
            if own:
                fh.close()


def _fmt(x) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class EnumerationConfig:
    max_len: int
    prune_domination: bool = False
    norm: str = "op2"  # "op2" | "sum"
    budget: int = DEFAULT_ENUM_BUDGET

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError("max_len must be >= 1")
        if self.norm not in ("op2", "sum"):
            raise ValueError(f"unknown norm {self.norm!r}")


# ---------------------------------------------------------------------------
# enumeration


def _is_nonneg_triangular(mats: Sequence[Mat2]) -> bool:
    return all(m.e21 == 0 and m.e11 >= 0 and m.e12 >= 0 and m.e22 >= 0 for m in mats)


def _pareto_front(prods):
    """Drop triangular nonnegative products dominated entrywise by another.

    ``prods`` holds tuples ``(a, b, c)`` for ``[[a, b], [0, c]]``.
    """
    pts = sorted(set(prods), reverse=True)
    kept = []
    for p in pts:
        # predecessors have a' >= a; p is dominated iff some kept point also has b' >= b, c' >= c
        if not any(q[1] >= p[1] and q[2] >= p[2] for q in kept):
            kept.append(p)
    return kept


def _op2(a, b, c, d) -> float:
    return 0.5 * (math.hypot(a + d, c - b) + math.hypot(a - d, b + c))


def enumerate_growth(mats: MatrixSet, cfg: EnumerationConfig) -> GrowthCurve:
    """Exact per-length maxima of the product norm and the corner seminorm.

    Products are deduplicated level by level.  With ``prune_domination`` (all
    generators nonnegative upper triangular) products dominated entrywise by
    another product of the same length are dropped; every later product and
    both objectives are monotone in the entries, so the maxima are unchanged.
    """
    if cfg.prune_domination and not _is_nonneg_triangular(mats):
        raise ValueError("domination pruning needs nonnegative upper-triangular generators")
    kind = mats.kind
    if kind == "float":
        return _enumerate_float(mats, cfg)
    if kind == "rational":
        return _enumerate_scaled(mats, cfg)
    return _enumerate_generic(mats, cfg)


def _enumerate_scaled(mats: MatrixSet, cfg: EnumerationConfig) -> GrowthCurve:
    # integer matrices D*A; level-n products carry the implicit scale D^n
    den = 1
    for m in mats:
        for v in m.entries:
            den = den * v.denominator // math.gcd(den, v.denominator)
    gens = [tuple(int(v * den) for v in m.entries) for m in mats]
    tri = cfg.prune_domination
    if tri:
        gens3 = [(a, b, d) for a, b, _, d in gens]
        level = set(gens3)
    else:
        level = set(gens)
    lengths, a_vals, c_vals = [], [], []
    scale = 1
    work = 0
    for n in range(1, cfg.max_len + 1):
        scale *= den
        if n > 1:
            work += len(level) * len(gens)
            if work > cfg.budget:
                raise BudgetExceeded(f"enumeration exceeded {cfg.budget} multiplications at length {n}")
            if tri:
                level = {
                    (a * p, a * q + b * r, d * r) for (a, b, d) in gens3 for (p, q, r) in level
                }
                level = set(_pareto_front(level))
            else:
                level = {
                    (a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
                    for (a, b, c, d) in gens
                    for (p, q, r, s) in level
                }
        elif tri:
            level = set(_pareto_front(level))
        if tri:
            full = [(p, q, 0, s) for (p, q, s) in level]
        else:
            full = level
        c_max = max(abs(e[1]) for e in full)
        if cfg.norm == "sum":
            a_max = Fraction(max(abs(p) + abs(q) + abs(r) + abs(s) for p, q, r, s in full), scale)
        else:
            a_max = max(_op2(*(_ratio_float(x, scale) for x in e)) for e in full)
        lengths.append(n)
        a_vals.append(a_max)
        c_vals.append(Fraction(c_max, scale))
    return GrowthCurve(lengths, a_vals, c_vals, meta={"method": "enumerate", "norm": cfg.norm})


def _ratio_float(x: int, scale: int) -> float:
    if abs(x) < 2**1000 and scale < 2**1000:
        return x / scale
    return float(Fraction(x, scale))


def _enumerate_generic(mats: MatrixSet, cfg: EnumerationConfig) -> GrowthCurve:
    gens = list(mats)
    level = set(gens)
    if cfg.prune_domination:
        level = _prune_mats(level)
    lengths, a_vals, c_vals = [], [], []
    work = 0
    for n in range(1, cfg.max_len + 1):
        if n > 1:
            work += len(level) * len(gens)
            if work > cfg.budget:
                raise BudgetExceeded(f"enumeration exceeded {cfg.budget} multiplications at length {n}")
            level = {mat_mul(g, p) for g in gens for p in level}
            if cfg.prune_domination:
                level = _prune_mats(level)
        c_vals.append(max(abs(m.e12) for m in level))
        if cfg.norm == "sum":
            a_vals.append(max(sum_norm(m) for m in level))
        else:
            a_vals.append(max(op_norm_2(m) for m in level))
        lengths.append(n)
    return GrowthCurve(lengths, a_vals, c_vals, meta={"method": "enumerate", "norm": cfg.norm})


def _prune_mats(level):
    keyed = {(m.e11, m.e12, m.e22): m for m in level}
    return {keyed[k] for k in _pareto_front(keyed)}


def _enumerate_float(mats: MatrixSet, cfg: EnumerationConfig) -> GrowthCurve:
    gens = np.array([[float(v) for v in m.entries] for m in mats])
    level = np.unique(gens, axis=0)
    lengths, a_vals, c_vals = [], [], []
    work = 0
    for n in range(1, cfg.max_len + 1):
        if n > 1:
            work += level.shape[0] * gens.shape[0]
            if work > cfg.budget:
                raise BudgetExceeded(f"enumeration exceeded {cfg.budget} multiplications at length {n}")
            a, b, c, d = (gens[:, None, i] for i in range(4))
            p, q, r, s = (level[None, :, i] for i in range(4))
            level = np.stack([a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s], axis=-1).reshape(-1, 4)
            level = np.unique(level, axis=0)
        if cfg.prune_domination:
            front = _pareto_front([(float(x[0]), float(x[1]), float(x[3])) for x in level])
            level = np.array([(x, y, 0.0, z) for x, y, z in front])
        p, q, r, s = level[:, 0], level[:, 1], level[:, 2], level[:, 3]
        if cfg.norm == "sum":
            a_vals.append(float((np.abs(p) + np.abs(q) + np.abs(r) + np.abs(s)).max()))
        else:
            a_vals.append(float((0.5 * (np.hypot(p + s, r - q) + np.hypot(p - s, q + r))).max()))
        c_vals.append(float(np.abs(q).max()))
        lengths.append(n)
    return GrowthCurve(lengths, a_vals, c_vals, meta={"method": "enumerate", "norm": cfg.norm})


# ---------------------------------------------------------------------------
# hull dynamic program


def _hull_exact(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull_dp_exact(n_nodes, edges, n_max, reduce_content=False):
    """Exact engine; entries may be ints, Fractions or quadratic-field elements.

    With ``reduce_content`` (integer entries only) every step divides all hull
    coordinates by their common gcd, which keeps the integers short.  Returns
    ``(c_list, watermark)`` where each c is ``(numerator, content)`` in that
    mode and a plain value otherwise."""
    hulls = [[(0, -1), (0, 1)] for _ in range(n_nodes)]
    cs = []
    watermark = 2
    content = 1
    for _ in range(n_max):
        cand = [[] for _ in range(n_nodes)]
        for s, t, f, p, g in edges:
            cand[t].extend((f * x + p * y, g * y) for x, y in hulls[s])
        hulls = [_hull_exact(c) for c in cand]
        watermark = max(watermark, max(len(h) for h in hulls))
        best = max(abs(x) for h in hulls for x, _ in h)
        if reduce_content:
            d = math.gcd(*(v for h in hulls for pt in h for v in pt))
            if d > 1:
                hulls = [[(x // d, y // d) for x, y in h] for h in hulls]
                content *= d
                best //= d
            cs.append((best, content))
        else:
            cs.append(best)
    return cs, watermark


def _graph_edges(spec: CocycleSpec):
    graph = spec.graph()
    index = {u: i for i, u in enumerate(graph.nodes)}
    return len(index), [(index[u], index[v], w) for u, v, w in graph.edges()]


def _check_steps(n_max: int) -> None:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > MAX_HULL_STEPS:
        raise BudgetExceeded(f"hull DP is capped at {MAX_HULL_STEPS} steps")


def hull_dp_growth(spec: CocycleSpec, n_max: int, exact: Optional[bool] = None) -> GrowthCurve:
    """``c_n = max |Phi_n|`` over all length-(n + window - 1) words, for n = 1..n_max.

    Exact by default for rational tables (integer-scaled arithmetic), float
    (compiled kernel) otherwise.  Range checks on f, g happen in ``CocycleSpec``.
    """
    _check_steps(n_max)
    n_nodes, edges = _graph_edges(spec)
    if exact is None:
        exact = spec.is_exact
    triples = [(s, t, spec.f(w), spec.phi(w), spec.g(w)) for s, t, w in edges]
    return _run_hull_dp(n_nodes, triples, n_max, exact, meta={"method": "hull-dp", "window": spec.window})


def hull_dp_matrices(mats: MatrixSet, n_max: int, exact: Optional[bool] = None) -> GrowthCurve:
    """Hull DP for a finite set of upper-triangular matrices (window 1).

    Diagonal entries may have either sign; the symmetric hull keeps the
    pruning lossless.  Used for the corner growth of triangularized sets.
    """
    _check_steps(n_max)
    for m in mats:
        if m.e21 != 0:
            raise ValueError("hull_dp_matrices needs upper-triangular matrices")
    if exact is None:
        exact = mats.is_exact
    triples = [(0, 0, m.e11, m.e12, m.e22) for m in mats]
    return _run_hull_dp(1, triples, n_max, exact, meta={"method": "hull-dp", "window": 1})


def _run_hull_dp(n_nodes, triples, n_max, exact, meta) -> GrowthCurve:
    lengths = list(range(1, n_max + 1))
    if not exact:
        arr = np.array([[float(f), float(p), float(g)] for _, _, f, p, g in triples])
        src = np.array([s for s, *_ in triples], dtype=np.int64)
        dst = np.array([t for _, t, *_ in triples], dtype=np.int64)
        c, wm = kernels.hull_dp_float(n_nodes, src, dst, arr[:, 0], arr[:, 1], arr[:, 2], n_max, FLOAT_HULL_TOL)
        meta = dict(meta, exact=False, backend=kernels.BACKEND)
        return GrowthCurve(lengths, [None] * n_max, [float(x) for x in c], watermark=wm, meta=meta)
    values = [v for _, _, f, p, g in triples for v in (f, p, g)]
    if any(isinstance(v, float) for v in values):
        raise ScalarKindError("exact hull DP needs exact table values")
    meta = dict(meta, exact=True)
    if any(isinstance(v, QuadScalar) for v in values):
        cs, wm = _hull_dp_exact(n_nodes, triples, n_max)
        return GrowthCurve(lengths, [None] * n_max, cs, watermark=wm, meta=meta)
    den = 1
    for v in values:
        v = Fraction(v)
        den = den * v.denominator // math.gcd(den, v.denominator)
    scaled = [(s, t, int(f * den), int(p * den), int(g * den)) for s, t, f, p, g in triples]
    raw, wm = _hull_dp_exact(n_nodes, scaled, n_max, reduce_content=True)
    cs = []
    scale = 1
    for x, content in raw:
        scale *= den
        cs.append(Fraction(x * content, scale))
    return GrowthCurve(lengths, [None] * n_max, cs, watermark=wm, meta=meta)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeketeBracket:
    upper: object
    latest: object
    argmin: int
    doubling_monotone: Optional[bool]


def fekete_bracket(curve: GrowthCurve, eps: float = 1e-12) -> FeketeBracket:
    """``upper = min c_n/n`` bounds ``lim c_n/n`` from above whenever ``c`` is subadditive."""
    if not curve.lengths:
        raise ValueError("empty curve")
    ratios = [c / n for n, c in zip(curve.lengths, curve.c_vals)]
    i = min(range(len(ratios)), key=lambda k: (ratios[k], curve.lengths[k]))
    recorded = dict(zip(curve.lengths, ratios))
    checks = [recorded[2 * n] <= recorded[n] + eps for n in curve.lengths if 2 * n in recorded]
    return FeketeBracket(ratios[i], ratios[-1], curve.lengths[i], all(checks) if checks else None)


@dataclass(frozen=True)
class PeriodicBound:
    word: tuple
    rate: object


def periodic_lower_bound(mats: MatrixSet, max_word: int) -> Optional[PeriodicBound]:
    """Best ``|corner(B)| / len`` over words whose product ``B`` has equal
    diagonal entries of modulus 1 and a nonzero corner.

    ``|corner(B^k)| = k |corner(B)|`` for such B, so the rate is a certified
    lower bound for ``lim c_n / n``.  Shorter words win ties.
    """
    for m in mats:
        if m.e21 != 0:
            raise ValueError("periodic_lower_bound needs upper-triangular matrices")
    best = None
    for length in range(1, max_word + 1):
        for word in itertools.product(range(1, len(mats) + 1), repeat=length):
            b = mats.word_product(word)
            if b.e11 == b.e22 and abs(b.e11) == 1 and b.e12 != 0:
                rate = abs(b.e12) / length
                if best is None or rate > best.rate:
                    best = PeriodicBound(word, rate)
    return best


@dataclass(frozen=True)
class SandwichRow:
    n: int
    c_n: Fraction
    lower_ok: bool  # c_n <= a_n
    upper_ok: bool  # a_n <= c_n + 1


def _op2_sq_at_least(m, t) -> bool:
    # ||M||_2^2 >= t for integer entries and integer t; ||M||^2 = (S + sqrt(S^2 - 4 det^2)) / 2
    a, b, c, d = m
    s = a * a + b * b + c * c + d * d
    dt = a * d - b * c
    rhs = 2 * t - s
    return rhs <= 0 or s * s - 4 * dt * dt >= rhs * rhs


def _op2_sq_at_most(m, t) -> bool:
    a, b, c, d = m
    s = a * a + b * b + c * c + d * d
    dt = a * d - b * c
    rhs = 2 * t - s
    return rhs >= 0 and s * s - 4 * dt * dt <= rhs * rhs


def sandwich_check(spec: CocycleSpec, max_len: int) -> List[SandwichRow]:
    """Exact check of ``c_n <= a_n <= c_n + 1`` (spectral norm) by enumerating
    every admissible product of a rational triangular cocycle.

    The lower inequality is witnessed by the product attaining ``c_n``; the
    upper one is checked on every product with squared-norm comparisons in
    integer arithmetic.
    """
    if not spec.is_exact:
        raise ScalarKindError("sandwich_check needs exact tables")
    n_nodes, edges = _graph_edges(spec)
    values = [Fraction(p(w)) for _, _, w in edges for p in (spec.f, spec.phi, spec.g)]
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    steps = [(s, t, int(spec.f(w) * den), int(spec.phi(w) * den), int(spec.g(w) * den)) for s, t, w in edges]
    # level: set of (node, F, P, G) with implicit scale den^n
    level = {(v, 1, 0, 1) for v in range(n_nodes)}
    rows = []
    scale = 1
    for n in range(1, max_len + 1):
        scale *= den
        level = {
            (t, f * big_f, f * p + ph * big_g, g * big_g)
            for (s, t, f, ph, g) in steps
            for (node, big_f, p, big_g) in level
            if node == s
        }
        best = max(level, key=lambda e: abs(e[2]))
        c_int = abs(best[2])
        lower_ok = _op2_sq_at_least((best[1], best[2], 0, best[3]), c_int * c_int)
        bound = (c_int + scale) ** 2
        upper_ok = all(_op2_sq_at_most((F, P, 0, G), bound) for _, F, P, G in level)
        rows.append(SandwichRow(n, Fraction(c_int, scale), lower_ok, upper_ok))
    return rows


__all__ = [
    "BudgetExceeded",
    "EnumerationConfig",
    "FeketeBracket",
    "GrowthCurve",
    "PeriodicBound",
    "enumerate_growth",
    "fekete_bracket",
    "hull_dp_growth",
    "hull_dp_matrices",
    "periodic_lower_bound",
    "SandwichRow",
    "sandwich_check",
]
