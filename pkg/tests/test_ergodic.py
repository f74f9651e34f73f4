from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import small_fractions
from mgl import CocycleSpec, LocallyConstantPotential
from mgl.cocycle import HypothesisError, all_words
from mgl.ergodic import (
    AcyclicGraphError,
    Edge,
    beta,
    cycle_mean,
    has_cycle,
    max_mean_cycle,
    mmax_subgraph,
    potential_edges,
    theorem3_limit,
)
from mgl.growth import fekete_bracket, hull_dp_growth

P = LocallyConstantPotential


def sym(*vals):
    return P.from_symbols([F(v) for v in vals])


# max-mean cycle ---------------------------------------------------------------


def test_self_loop():
    r = max_mean_cycle([Edge(0, 0, F(5))])
    assert r.value == 5 and len(r.cycle) == 1


def test_two_cycle():
    r = max_mean_cycle([Edge(0, 1, F(1)), Edge(1, 0, F(3))])
    assert r.value == 2 and cycle_mean(r.cycle) == 2


def test_fixed_point_measure():
    res = max_mean_cycle(potential_edges(sym(1, 0)))
    assert res.value == 1 and res.labels == [(1,)]


def test_acyclic_rejected():
    with pytest.raises(AcyclicGraphError):
        max_mean_cycle([Edge(0, 1, F(1)), Edge(1, 2, F(1))])
    with pytest.raises(AcyclicGraphError):
        max_mean_cycle([])


def test_disconnected_components():
    edges = [Edge(0, 1, F(1)), Edge(1, 0, F(1)), Edge(2, 2, F(3, 2)), Edge(0, 2, F(-9))]
    assert max_mean_cycle(edges).value == F(3, 2)


def test_float_weights():
    r = max_mean_cycle([Edge(0, 1, 0.5), Edge(1, 0, 1.5), Edge(1, 1, 0.25)])
    assert abs(r.value - 1.0) < 1e-12 and len(r.cycle) == 2


def test_tie_break_deterministic():
    # two optimal cycles of mean 1: the one through the smallest node, shortest first
    edges = [Edge(1, 1, F(1)), Edge(0, 2, F(1)), Edge(2, 0, F(1)), Edge(0, 0, F(1))]
    for _ in range(3):
        random.Random(_).shuffle(edges)
        r = max_mean_cycle(edges)
        assert [(e.source, e.target) for e in r.cycle] == [(0, 0)]


@pytest.mark.parametrize("seed", range(40))
def test_karp_matches_simple_cycle_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    edges = [
        (u, v, F(rng.randint(-9, 9), rng.randint(1, 3)))
        for u in range(n)
        for v in range(n)
        if rng.random() < 0.45
    ]
    expected = oracles.simple_cycle_max_mean(n, edges)
    graph = [Edge(u, v, w) for u, v, w in edges]
    if expected is None:
        with pytest.raises(AcyclicGraphError):
            max_mean_cycle(graph)
        return
    r = max_mean_cycle(graph)
    assert r.value == expected
    assert cycle_mean(r.cycle) == expected
    # the witness is a closed walk
    assert all(a.target == b.source for a, b in zip(r.cycle, r.cycle[1:] + r.cycle[:1]))


# beta ---------------------------------------------------------------------------


def test_beta_examples():
    assert beta(P.constant(3, 2, F(7, 3))) == F(7, 3)
    assert beta(sym(1, -1)) == 1
    k2 = P(2, 2, {(1, 1): F(0), (1, 2): F(1), (2, 1): F(1), (2, 2): F(0)})
    assert beta(k2) == 1


def random_table(draw_vals, n, k):
    return P(n, k, dict(zip(all_words(n, k), draw_vals)))


tables = st.sampled_from([(2, 1), (3, 1), (2, 2)]).flatmap(
    lambda nk: st.tuples(
        st.just(nk),
        st.lists(small_fractions(), min_size=nk[0] ** nk[1], max_size=nk[0] ** nk[1]),
    )
)


@given(tables, small_fractions(), small_fractions(0, 3))
def test_beta_shift_and_scale(tab, c, s):
    (n, k), vals = tab
    phi = random_table(vals, n, k)
    b = beta(phi)
    assert beta(phi.map(lambda v: v + c)) == b + c
    assert beta(phi.map(lambda v: v * s)) == s * b


@given(tables)
def test_beta_between_mean_and_max(tab):
    (n, k), vals = tab
    phi = random_table(vals, n, k)
    # uniform (Parry) measure integral is at most beta; beta at most max
    assert sum(vals) / len(vals) <= beta(phi) <= max(vals)


# mmax subgraph -------------------------------------------------------------------


def test_mmax_examples():
    assert len(mmax_subgraph(P.constant(2, 1, F(1)))) == 2
    sub = mmax_subgraph(sym(1, F(1, 2)))
    assert [e.label for e in sub] == [(1,)] and has_cycle(sub)
    sub = mmax_subgraph(sym(F(1, 2), F(1, 3)))
    assert sub == [] and not has_cycle(sub)


def test_mmax_range_checked():
    with pytest.raises(HypothesisError):
        mmax_subgraph(sym(1, 2))
    with pytest.raises(HypothesisError):
        mmax_subgraph(sym(1, 0))


def test_mmax_window2_path_is_acyclic():
    # only the edge 12 has f = 1: no cycle
    f = P(2, 2, {(1, 1): F(1, 2), (1, 2): F(1), (2, 1): F(1, 2), (2, 2): F(1, 2)})
    assert not has_cycle(mmax_subgraph(f))


# linear-rate limit ---------------------------------------------------------------------


def spec(f, g, phi):
    return CocycleSpec(sym(*f), sym(*g), sym(*phi))


def test_limit_full_intersection():
    r = theorem3_limit(spec([1, 1], [1, 1], [1, -1]))
    assert r.intersection_nonempty and r.limit == 1


def test_limit_single_loop():
    r = theorem3_limit(spec([1, 1], [1, F(1, 2)], [F(7, 10), 123]))
    assert r.limit == F(7, 10) and r.witness_cycle == ((1,),)


def test_limit_empty_intersection():
    r = theorem3_limit(spec([1, F(1, 2)], [F(1, 2), 1], [1, 1]))
    assert not r.intersection_nonempty and r.limit == 0 and r.witness_cycle is None
    js = r.to_json()
    assert js["limit"] == "0" and js["witness_cycle"] is None


def test_limit_hypotheses():
    with pytest.raises(HypothesisError):
        theorem3_limit(spec([F(1, 2), F(1, 2)], [1, 1], [1, 1]))
    with pytest.raises(HypothesisError):
        theorem3_limit(spec([1, 1], [F(1, 2), F(9, 10)], [1, 1]))
    with pytest.raises(HypothesisError):
        spec([1, 2], [1, 1], [0, 0])


def test_limit_cancelling_cycle():
    # Z is the 2-cycle 12/21 with phi = +3, -3: mean 0 even though |phi| = 3
    f = P(2, 2, {(1, 1): F(1, 2), (1, 2): F(1), (2, 1): F(1), (2, 2): F(1, 2)})
    phi = P(2, 2, {(1, 1): F(5), (1, 2): F(3), (2, 1): F(-3), (2, 2): F(5)})
    r = theorem3_limit(CocycleSpec(f, f, phi))
    assert r.intersection_nonempty and r.limit == 0


def random_spec(rng, n, k):
    words = list(all_words(n, k))

    def unit():
        return F(1) if rng.random() < 0.5 else F(rng.randint(1, 5), 6)

    f = {w: unit() for w in words}
    g = {w: unit() for w in words}
    # guarantee the hypotheses through a fixed point
    f[words[0]] = g[words[0]] = F(1)
    f[words[-1]] = F(1)
    phi = {w: F(rng.randint(-8, 8), rng.randint(1, 4)) for w in words}
    return CocycleSpec(P(n, k, f), P(n, k, g), P(n, k, phi))


@pytest.mark.parametrize("seed", range(20))
def test_limit_properties(seed):
    rng = random.Random(seed)
    s = random_spec(rng, rng.choice([2, 3]), rng.choice([1, 2]))
    r = theorem3_limit(s)
    assert 0 <= r.limit <= s.phi.max_abs()
    neg = CocycleSpec(s.f, s.g, s.phi.map(lambda v: -v))
    assert theorem3_limit(neg).limit == r.limit
    if r.witness_cycle is not None:
        mean = sum(s.phi(w) for w in r.witness_cycle) / len(r.witness_cycle)
        assert abs(mean) == r.limit
        assert all(s.f(w) == 1 and s.g(w) == 1 for w in r.witness_cycle)


@pytest.mark.parametrize("seed", range(6))
def test_limit_below_fekete_upper(seed):
    rng = random.Random(50 + seed)
    s = random_spec(rng, 2, rng.choice([1, 2]))
    r = theorem3_limit(s)
    curve = hull_dp_growth(s, 256)
    assert fekete_bracket(curve).upper >= r.limit
