"""Chacon substitution subshift and the Lipschitz triangular cocycle over it.

``Z`` is the orbit closure of the Chacon word (0 -> 0010, 1 -> 1), a minimal,
uniquely ergodic, weakly mixing subshift of the full 2-shift in which the
symbol 1 has frequency exactly 1/3.  Over it we take

    f(x) = g(x) = exp(-dist(x, Z)),   phi(x) = [x_0 = 1] - 1/3,

with the metric ``d(x, y) = 2^-min{|i| : x_i != y_i}``.  On ``Z`` the cocycle
is ``[[1, phi], [0, 1]]``, so its corner is a Birkhoff sum of ``phi``: the
number of 1s in a window minus a third of its length.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .growth import BudgetExceeded, GrowthCurve
from .matrix import Mat2, op_norm_2

RULE = {"0": "0010", "1": "1"}
NU1 = Fraction(1, 3)
MAX_LEVEL = 16
DEFAULT_RADIUS_CAP = 24


def prefix_length(level: int) -> int:
    return (3 ** (level + 1) - 1) // 2


def chacon_prefix(level: int, max_level: int = MAX_LEVEL) -> str:
    """``sigma^level("0")``."""
    if level < 0:
        raise ValueError("level must be >= 0")
    if level > max_level:
        raise BudgetExceeded(f"level {level} needs {prefix_length(level)} symbols (cap: level {max_level})")
    word = "0"
    for _ in range(level):
        word = word.replace("0", "\0").replace("\0", RULE["0"])
    return word


@dataclass
class ChaconModel:
    depth: int
    radius_cap: int = DEFAULT_RADIUS_CAP
    _levels: Dict[int, str] = field(default_factory=dict, repr=False)
    _factors: Dict[int, Tuple[frozenset, bool]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.prefix(self.depth)

    def prefix(self, level: Optional[int] = None) -> str:
        level = self.depth if level is None else level
        if level not in self._levels:
            below = max((k for k in self._levels if k < level), default=None)
            if below is None:
                word = chacon_prefix(level)
            else:
                word = self._levels[below]
                for _ in range(level - below):
                    word = word.replace("0", "\0").replace("\0", RULE["0"])
            if "11" in word:
                raise AssertionError(f"'11' occurs in level {level}")
            self._levels[level] = word
        return self._levels[level]

    @property
    def word(self) -> str:
        return self.prefix(self.depth)

    def ones_prefix_q(self) -> np.ndarray:
        """``q[i] = 3*(number of 1s in word[:i]) - i``; window sums of phi are ``(q[j]-q[i])/3``."""
        bits = np.frombuffer(self.word.encode(), dtype=np.uint8) - ord("0")
        q = np.empty(bits.shape[0] + 1, dtype=np.int64)
        q[0] = 0
        np.cumsum(3 * bits.astype(np.int64) - 1, out=q[1:])
        return q


def factor_set(model: ChaconModel, n: int) -> Tuple[frozenset, bool]:
    """Length-n factors of the language and whether they have stabilized.

    Factors are read off a prefix of length at least ``max(3^8, 40 n)``;
    stabilized means one more substitution level adds nothing new.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n in model._factors:
        return model._factors[n]
    need = max(3**8, 40 * n)
    level = 0
    while prefix_length(level) < need:
        level += 1
    cur = _factors_of(model.prefix(level), n)
    stable = False
    for extra in range(1, 4):
        if level + extra > MAX_LEVEL:
            break
        nxt = _factors_of(model.prefix(level + extra), n)
        if nxt == cur:
            stable = True
            break
        cur = nxt
    if not stable:
        warnings.warn(f"length-{n} factors did not stabilize by level {level + 3}", RuntimeWarning, stacklevel=2)
    result = (frozenset(cur), stable)
    model._factors[n] = result
    return result


def _factors_of(word: str, n: int) -> set:
    return {word[i : i + n] for i in range(len(word) - n + 1)}


def is_factor(model: ChaconModel, block: str) -> bool:
    return block in factor_set(model, len(block))[0]


# points of the full shift ---------------------------------------------------


@dataclass(frozen=True)
class PointSample:
    """Finite window of a point; symbols beyond it repeat the edge symbol."""

    central_word: str
    origin: int

    def __post_init__(self):
        if not 0 <= self.origin < len(self.central_word):
            raise ValueError("origin outside the window")
        if set(self.central_word) - {"0", "1"}:
            raise ValueError("symbols must be 0/1")

    def at(self, i: int) -> str:
        j = self.origin + i
        w = self.central_word
        if j < 0:
            return w[0]
        if j >= len(w):
            return w[-1]
        return w[j]

    def block(self, radius: int) -> str:
        return "".join(self.at(i) for i in range(-radius, radius + 1))

    def shift(self, k: int = 1) -> "PointSample":
        """``T^k x`` (needs the new origin inside the window)."""
        return PointSample(self.central_word, self.origin + k)


def metric(x: PointSample, y: PointSample, horizon: int = 64) -> float:
    """``2^-min{|i| : x_i != y_i}``, searched up to ``horizon``."""
    for r in range(horizon + 1):
        if x.at(r) != y.at(r) or x.at(-r) != y.at(-r):
            return 2.0**-r
    return 0.0


def kappa(model: ChaconModel, p: PointSample, cap: Optional[int] = None) -> int:
    """Largest radius k <= cap with ``x[-k..k]`` in the language (-1 if none)."""
    cap = model.radius_cap if cap is None else cap
    k = -1
    for r in range(cap + 1):
        if not is_factor(model, p.block(r)):
            break
        k = r
    return k


def dist_to_Z(model: ChaconModel, p: PointSample, cap: Optional[int] = None) -> float:
    """``2^-(kappa+1)``, or 0 when the whole radius-``cap`` block is admissible.

    For this metric the value is the exact distance to ``Z`` whenever kappa is
    below the cap (the block of radius kappa+1 occurs in no point of Z, while
    the block of radius kappa does).
    """
    cap = model.radius_cap if cap is None else cap
    r_max = min(p.origin, len(p.central_word) - 1 - p.origin)
    if r_max < cap and not _window_fails_early(model, p, r_max):
        raise ValueError(f"window of length {len(p.central_word)} cannot certify radius {cap}")
    k = kappa(model, p, cap)
    if k >= cap:
        return 0.0
    return 2.0 ** -(k + 1)


def _window_fails_early(model, p, r_max) -> bool:
    # a short window is fine if a non-factor already shows up inside it
    return kappa(model, p, r_max) < r_max


# the cocycle -----------------------------------------------------------------


@dataclass
class LipschitzCocycle:
    model: ChaconModel
    nu1: Fraction = NU1
    metric_base: Fraction = Fraction(1, 2)

    def f(self, p: PointSample) -> float:
        d = dist_to_Z(self.model, p)
        return 1.0 if d == 0 else math.exp(-d)

    g = f

    def phi(self, p: PointSample) -> Fraction:
        return (1 if p.at(0) == "1" else 0) - self.nu1

    def matrix(self, p: PointSample) -> Mat2:
        fx = self.f(p)
        if fx == 1.0:
            return Mat2(1, self.phi(p), 0, 1)
        return Mat2(fx, float(self.phi(p)), 0.0, fx)

    def phi_values(self) -> set:
        return {Fraction(1) - self.nu1, -self.nu1}


def build_cocycle(model: ChaconModel) -> LipschitzCocycle:
    return LipschitzCocycle(model)


def z_window_product(cocycle: LipschitzCocycle, start: int, n: int) -> Mat2:
    """Exact product of A along ``word[start : start + n]`` (a point of Z)."""
    word = cocycle.model.word
    if start < 0 or start + n > len(word):
        raise ValueError("window outside the cached prefix")
    acc = Mat2.identity()
    for ch in word[start : start + n]:
        acc = Mat2(1, (1 if ch == "1" else 0) - cocycle.nu1, 0, 1) @ acc
    return acc


def off_z_product(cocycle: LipschitzCocycle, p: PointSample, n: int) -> Mat2:
    """Float product ``A(T^{n-1}x) ... A(x)`` by direct evaluation."""
    acc = Mat2.identity().to_float()
    for j in range(n):
        acc = cocycle.matrix(p.shift(j)).to_float() @ acc
    return acc


# experiments -------------------------------------------------------------------


@dataclass
class DiscrepancyCurve:
    thresholds: List[int]
    values: List[Fraction]

    def write_csv(self, fh) -> None:
        fh.write("N,D\n")
        for n, d in zip(self.thresholds, self.values):
            fh.write(f"{n},{float(d)!r}\n")


def default_checkpoints(max_n: int) -> List[int]:
    pts = set()
    k = 1
    while k <= max_n:
        pts.add(k)
        k *= 3
    k = 2
    while k <= max_n:
        pts.add(k)
        k *= 2
    pts.add(max_n)
    return sorted(pts)


def birkhoff_discrepancy(model: ChaconModel, n_max: int, thresholds: Optional[Sequence[int]] = None) -> DiscrepancyCurve:
    """``D(N) = max |#1s - n/3|`` over windows of length ``n <= N`` inside the prefix."""
    word_len = len(model.word)
    if n_max > word_len:
        raise ValueError(f"prefix has {word_len} symbols, fewer than N_max = {n_max}")
    thresholds = sorted(set(thresholds)) if thresholds else default_checkpoints(n_max)
    if thresholds[-1] > n_max:
        raise ValueError("threshold above N_max")
    q = model.ones_prefix_q()
    threads = kernels.thread_count()
    if threads > 1 and len(thresholds) > 1:
        # the compiled scan releases the GIL; map keeps the order, so output is unchanged
        with ThreadPoolExecutor(threads) as pool:
            raw = list(pool.map(lambda n: kernels.window_discrepancy(q, n), thresholds))
    else:
        raw = [kernels.window_discrepancy(q, n) for n in thresholds]
    vals = [Fraction(v, 3) for v in raw]
    return DiscrepancyCurve(list(thresholds), vals)


def fixed_length_extremes(q: np.ndarray, n: int, starts: Optional[np.ndarray] = None) -> int:
    """``max |q[i+n] - q[i]|`` over the given start positions (all by default)."""
    if starts is None:
        diff = q[n:] - q[:-n]
    else:
        starts = starts[starts + n < q.shape[0]]
        diff = q[starts + n] - q[starts]
    return int(np.abs(diff).max())


def _jordan_norm(s: Fraction) -> float:
    # ||[[1, s], [0, 1]]||_2 = (|s| + sqrt(s^2 + 4)) / 2
    x = abs(float(s))
    return 0.5 * (x + math.hypot(x, 2.0))


def off_z_samples(model: ChaconModel, count: int, seed: int, margin: int) -> List[PointSample]:
    """Z-windows with the origin symbol flipped (deterministic in ``seed``)."""
    rng = random.Random(seed)
    word = model.word
    out = []
    for _ in range(count):
        start = rng.randrange(margin, len(word) - margin)
        w = word[start - margin : start + margin + 1]
        flipped = w[:margin] + ("1" if w[margin] == "0" else "0") + w[margin + 1 :]
        out.append(PointSample(flipped, margin))
    return out


def cocycle_sup_growth(
    model: ChaconModel,
    n_max: int,
    samples: Optional[int] = None,
    lengths: Optional[Sequence[int]] = None,
    off_z: int = 0,
    seed: int = 0,
) -> GrowthCurve:
    """``s_n = max ||A(T^{n-1}x)...A(x)||_2`` over sampled points.

    Z-samples are all windows of the prefix (or ``samples`` random starts);
    their products are ``[[1, S_n], [0, 1]]`` with ``S_n`` read off exactly
    from prefix sums.  ``off_z`` corrupted samples are evaluated directly and
    only for lengths up to ``4 * radius_cap`` (beyond the corruption the
    cocycle is again unipotent).

    ``a_vals`` holds ``s_n``, ``c_vals`` the exact Z corner maxima and
    ``meta["off_z_norm"]`` the off-Z maxima (0 where not evaluated).
    """
    lengths = sorted(set(lengths)) if lengths else default_checkpoints(n_max)
    q = model.ones_prefix_q()
    starts = None
    if samples is not None:
        rng = np.random.default_rng(seed)
        starts = np.sort(rng.choice(q.shape[0] - 1, size=min(samples, q.shape[0] - 1), replace=False))
    cocycle = build_cocycle(model)
    off_len = 4 * model.radius_cap
    corrupted = off_z_samples(model, off_z, seed, off_len + model.radius_cap + 1) if off_z else []
    a_vals, c_vals, off_norm = [], [], []
    for n in lengths:
        s = Fraction(fixed_length_extremes(q, n, starts), 3)
        norm = _jordan_norm(s)
        best_off = 0.0
        if corrupted and n <= off_len:
            for p in corrupted:
                best_off = max(best_off, op_norm_2(off_z_product(cocycle, p, n)))
        off_norm.append(best_off)
        a_vals.append(max(norm, best_off))
        c_vals.append(s)
    meta = {"method": "chacon", "depth": model.depth, "off_z_norm": off_norm}
    return GrowthCurve(list(lengths), a_vals, c_vals, meta=meta)
