"""Ergodic optimization for locally constant potentials on the full shift.

Invariant measures of the shift correspond to normalized circulations on the
de Bruijn graph, whose extreme points are cycle averages.  Hence
``beta(phi) = sup_mu int phi dmu`` is the maximum mean weight of a cycle.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .cocycle import CocycleSpec, DeBruijnGraph, HypothesisError, LocallyConstantPotential, Word, word_str
from .scalars import format_scalar

FLOAT_TOL = 1e-12


class AcyclicGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    source: Hashable
    target: Hashable
    weight: object
    label: Hashable = None


@dataclass(frozen=True)
class CycleResult:
    value: object
    cycle: Tuple[Edge, ...]

    @property
    def labels(self) -> list:
        return [e.label for e in self.cycle]


def potential_edges(potential: LocallyConstantPotential, keep=None) -> List[Edge]:
    """De Bruijn edges weighted by ``potential``; ``keep(word)`` filters edges."""
    graph = DeBruijnGraph(potential.n_symbols, potential.window)
    return [Edge(u, v, potential(w), w) for u, v, w in graph.edges() if keep is None or keep(w)]


def _is_exact(edges: Sequence[Edge]) -> bool:
    return not any(isinstance(e.weight, float) for e in edges)


def max_mean_cycle(edges: Sequence[Edge]) -> CycleResult:
    """Karp's algorithm (maximum version) plus an exact witness cycle.

    A virtual source reaches every node with weight 0, so graphs that are not
    strongly connected work too.  The witness is a cycle of the "tight"
    subgraph after subtracting the optimal mean; among those, the cycle through
    the lexicographically first node, then the shortest one, is returned.
    """
    edges = list(edges)
    nodes = sorted({e.source for e in edges} | {e.target for e in edges})
    if not nodes:
        raise AcyclicGraphError("graph has no edges")
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    exact = _is_exact(edges)
    zero = Fraction(0) if exact else 0.0
    # d[k][v] = max weight of a walk with exactly k edges ending at v (None = unreachable)
    d: List[List[Optional[object]]] = [[zero] * n]
    for k in range(1, n + 1):
        row: List[Optional[object]] = [None] * n
        prev = d[-1]
        for e in edges:
            s = prev[idx[e.source]]
            if s is None:
                continue
            cand = s + e.weight
            t = idx[e.target]
            if row[t] is None or cand > row[t]:
                row[t] = cand
        d.append(row)
    best = None
    for v in range(n):
        if d[n][v] is None:
            continue
        worst = None
        for k in range(n):
            if d[k][v] is None:
                continue
            val = (d[n][v] - d[k][v]) / (n - k)
            if worst is None or val < worst:
                worst = val
        if worst is not None and (best is None or worst > best):
            best = worst
    if best is None:
        raise AcyclicGraphError("graph has no cycle")
    return CycleResult(best, _witness(edges, nodes, best, exact))


def _witness(edges, nodes, mean, exact) -> Tuple[Edge, ...]:
    tol = 0 if exact else FLOAT_TOL * (1 + max(abs(e.weight) for e in edges))
    # longest-path potentials for w' = w - mean (no positive cycles): Bellman-Ford
    pi = {v: (Fraction(0) if exact else 0.0) for v in nodes}
    for _ in range(len(nodes)):
        changed = False
        for e in edges:
            cand = pi[e.source] + e.weight - mean
            if cand > pi[e.target] + tol:
                pi[e.target] = cand
                changed = True
        if not changed:
            break
    tight: Dict[Hashable, List[Edge]] = {v: [] for v in nodes}
    for e in sorted(edges, key=lambda e: (e.source, e.target, _label_key(e.label))):
        if abs(pi[e.source] + e.weight - mean - pi[e.target]) <= tol:
            tight[e.source].append(e)
    for start in nodes:
        cyc = _shortest_cycle_through(start, tight)
        if cyc is not None:
            return cyc
    raise AssertionError("no tight cycle found; the optimal mean is inconsistent")


def _label_key(label):
    return (label is None, label if label is not None else ())


def _shortest_cycle_through(start, tight) -> Optional[Tuple[Edge, ...]]:
    parent: Dict[Hashable, Edge] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e in tight[u]:
            if e.target == start:
                path = [e]
                node = u
                while node != start:
                    pe = parent[node]
                    path.append(pe)
                    node = pe.source
                return tuple(reversed(path))
            if e.target not in seen:
                seen.add(e.target)
                parent[e.target] = e
                queue.append(e.target)
    return None


def cycle_mean(cycle: Sequence[Edge]):
    return sum((e.weight for e in cycle), Fraction(0) if _is_exact(cycle) else 0.0) / len(cycle)


def beta(potential: LocallyConstantPotential):
    """Largest integral of the potential over shift-invariant probability measures."""
    return max_mean_cycle(potential_edges(potential)).value


def mmax_subgraph(f: LocallyConstantPotential) -> List[Edge]:
    """Edges where ``f == 1``.  With ``f <= 1``, ``beta(log f) = 0`` iff this has a cycle."""
    for w, v in f.table.items():
        if not (0 < v <= 1):
            raise HypothesisError(f"value {v} at {word_str(w)} is outside (0, 1]")
    return potential_edges(f, keep=lambda w: f(w) == 1)


def has_cycle(edges: Sequence[Edge]) -> bool:
    try:
        max_mean_cycle([Edge(e.source, e.target, Fraction(0), e.label) for e in edges])
    except AcyclicGraphError:
        return False
    return True


@dataclass(frozen=True)
class Theorem3Result:
    beta_log_f_zero: bool
    beta_log_g_zero: bool
    intersection_nonempty: bool
    limit: object
    witness_cycle: Optional[Tuple[Word, ...]]

    def to_json(self) -> dict:
        lim = self.limit
        return {
            "beta_log_f_zero": self.beta_log_f_zero,
            "beta_log_g_zero": self.beta_log_g_zero,
            "intersection_nonempty": self.intersection_nonempty,
            "limit": lim if isinstance(lim, float) else format_scalar(lim),
            "limit_float": float(lim),
            "witness_cycle": None if self.witness_cycle is None else [word_str(w) for w in self.witness_cycle],
        }


def theorem3_limit(spec: CocycleSpec) -> Theorem3Result:
    """``lim c_n / n`` for a locally constant triangular cocycle with f, g in (0, 1].

    Requires cycles on which f = 1 and on which g = 1 (i.e. beta(log f) =
    beta(log g) = 0).  The limit is the largest |mean of phi| over cycles
    inside the subgraph where f = g = 1, and 0 when that subgraph is acyclic.
    """
    f_zero = has_cycle(mmax_subgraph(spec.f))
    g_zero = has_cycle(mmax_subgraph(spec.g))
    if not f_zero:
        raise HypothesisError("beta(log f) < 0: no cycle on which f = 1")
    if not g_zero:
        raise HypothesisError("beta(log g) < 0: no cycle on which g = 1")
    z = [e for e in potential_edges(spec.phi) if spec.f(e.label) == 1 and spec.g(e.label) == 1]
    if not has_cycle(z):
        zero = Fraction(0) if spec.is_exact else 0.0
        return Theorem3Result(True, True, False, zero, None)
    up = max_mean_cycle(z)
    down = max_mean_cycle([Edge(e.source, e.target, -e.weight, e.label) for e in z])
    best = up if up.value >= down.value else down
    return Theorem3Result(True, True, True, abs(best.value), tuple(best.labels))
