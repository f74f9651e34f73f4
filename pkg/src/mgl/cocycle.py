"""Locally constant potentials on the full shift and triangular cocycles built from them.

A window-k potential depends on the symbols ``x_0 .. x_{k-1}``.  Words are
tuples over ``1..N``; JSON uses digit strings (``"12"``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

from .matrix import Mat2, MatrixSet
from .scalars import format_scalar, parse_scalar

Word = Tuple[int, ...]


class HypothesisError(ValueError):
    """Input violates a hypothesis of the growth formula (value range, beta != 0, ...)."""


def all_words(n_symbols: int, length: int) -> Iterator[Word]:
    return itertools.product(range(1, n_symbols + 1), repeat=length)


def parse_word(s: str, n_symbols: int) -> Word:
    if not s or not s.isdigit():
        raise ValueError(f"bad word {s!r}")
    w = tuple(int(c) for c in s)
    if any(not 1 <= c <= n_symbols for c in w):
        raise ValueError(f"word {s!r} uses symbols outside 1..{n_symbols}")
    return w


def word_str(w: Word) -> str:
    return "".join(str(c) for c in w)


@dataclass(frozen=True)
class LocallyConstantPotential:
    n_symbols: int
    window: int
    table: Mapping[Word, object]

    def __post_init__(self):
        if self.n_symbols < 1 or self.window < 1:
            raise ValueError("alphabet size and window must be >= 1")
        expected = set(all_words(self.n_symbols, self.window))
        got = set(self.table)
        if got != expected:
            missing = sorted(expected - got)[:3]
            extra = sorted(got - expected)[:3]
            raise ValueError(f"table must cover all {len(expected)} words (missing {missing}, extra {extra})")
        object.__setattr__(self, "table", dict(self.table))

    def __call__(self, w: Word):
        return self.table[w]

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.table.values())

    def map(self, fn) -> "LocallyConstantPotential":
        return LocallyConstantPotential(self.n_symbols, self.window, {w: fn(v) for w, v in self.table.items()})

    def max_abs(self):
        return max(abs(v) for v in self.table.values())

    @classmethod
    def constant(cls, n_symbols: int, window: int, value) -> "LocallyConstantPotential":
        return cls(n_symbols, window, {w: value for w in all_words(n_symbols, window)})

    @classmethod
    def from_symbols(cls, values) -> "LocallyConstantPotential":
        """Window-1 potential from a list indexed by symbol (1-based order)."""
        return cls(len(values), 1, {(i + 1,): v for i, v in enumerate(values)})

    @classmethod
    def from_json(cls, n_symbols: int, window: int, obj: Mapping[str, object]) -> "LocallyConstantPotential":
        table = {}
        for k, v in obj.items():
            w = parse_word(k, n_symbols)
            if len(w) != window:
                raise ValueError(f"word {k!r} does not have window length {window}")
            val = parse_scalar(v)
            table[w] = val
        return cls(n_symbols, window, table)

    def to_json(self) -> Dict[str, object]:
        return {word_str(w): (v if isinstance(v, float) else format_scalar(v)) for w, v in sorted(self.table.items())}


@dataclass(frozen=True)
class DeBruijnGraph:
    """Nodes: words of length k-1 (one empty node when k = 1).
    Edges: ``(u, a) -> suffix(u + a)`` carrying the window word ``u + a``."""

    n_symbols: int
    window: int

    @property
    def nodes(self) -> list:
        return list(all_words(self.n_symbols, self.window - 1))

    def edges(self):
        """Yields ``(source, target, window_word)`` in lexicographic order."""
        for u in self.nodes:
            for a in range(1, self.n_symbols + 1):
                w = u + (a,)
                yield u, w[1:], w


@dataclass(frozen=True)
class CocycleSpec:
    """Triangular cocycle ``A(x) = [[f(x), phi(x)], [0, g(x)]]``."""

    f: LocallyConstantPotential
    g: LocallyConstantPotential
    phi: LocallyConstantPotential

    def __post_init__(self):
        dims = {(p.n_symbols, p.window) for p in (self.f, self.g, self.phi)}
        if len(dims) != 1:
            raise ValueError(f"f, g, phi must share alphabet and window, got {sorted(dims)}")
        for name, p in (("f", self.f), ("g", self.g)):
            for w, v in p.table.items():
                if not (0 < v <= 1):
                    raise HypothesisError(f"{name}({word_str(w)}) = {v} is outside (0, 1]")

    @property
    def n_symbols(self) -> int:
        return self.f.n_symbols

    @property
    def window(self) -> int:
        return self.f.window

    @property
    def is_exact(self) -> bool:
        return self.f.is_exact and self.g.is_exact and self.phi.is_exact

    def graph(self) -> DeBruijnGraph:
        return DeBruijnGraph(self.n_symbols, self.window)

    def matrix(self, w: Word) -> Mat2:
        return Mat2(self.f(w), self.phi(w), 0, self.g(w))

    def matrix_set(self) -> MatrixSet:
        """Window 1 only: the finite set of values of A."""
        if self.window != 1:
            raise ValueError("matrix_set is defined for window 1 only")
        return MatrixSet([self.matrix((a,)) for a in range(1, self.n_symbols + 1)])

    @classmethod
    def from_matrix_set(cls, mats: MatrixSet) -> "CocycleSpec":
        """Window-1 cocycle whose symbol ``i`` selects ``mats[i-1]`` (upper triangular)."""
        for m in mats:
            if m.e21 != 0:
                raise ValueError("matrices must be upper triangular")
        f = LocallyConstantPotential.from_symbols([m.e11 for m in mats])
        g = LocallyConstantPotential.from_symbols([m.e22 for m in mats])
        phi = LocallyConstantPotential.from_symbols([m.e12 for m in mats])
        return cls(f, g, phi)

    @classmethod
    def from_json(cls, obj: Mapping) -> "CocycleSpec":
        try:
            n, k = int(obj["alphabet"]), int(obj["window"])
            parts = [LocallyConstantPotential.from_json(n, k, obj[key]) for key in ("f", "g", "phi")]
        except KeyError as e:
            raise ValueError(f"cocycle JSON is missing {e.args[0]!r}") from None
        return cls(*parts)

    def to_json(self) -> dict:
        return {
            "alphabet": self.n_symbols,
            "window": self.window,
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "phi": self.phi.to_json(),
        }


def phi_n_direct(spec: CocycleSpec, x: Word, n: int):
    """Upper-right entry of ``A(T^{n-1}x) ... A(x)`` from the closed-form sum.

    ``x`` must have length at least ``n + window - 1``.
    """
    k = spec.window
    win = [x[j : j + k] for j in range(n)]
    total = Fraction(0) if spec.is_exact else 0.0
    for j in range(n):
        term = spec.phi(win[j])
        for i in range(j + 1, n):
            term = term * spec.f(win[i])
        for i in range(j):
            term = term * spec.g(win[i])
        total = total + term
    return total
