from __future__ import annotations

import io
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import small_fractions, unit_fractions
from mgl import CocycleSpec, LocallyConstantPotential, Mat2, MatrixSet
from mgl.growth import (
    BudgetExceeded,
    EnumerationConfig,
    GrowthCurve,
    enumerate_growth,
    fekete_bracket,
    hull_dp_growth,
    hull_dp_matrices,
    periodic_lower_bound,
    sandwich_check,
)
from suite import J, ROT90, contracting_pair

P = LocallyConstantPotential


def window1_spec(f, g, phi):
    return CocycleSpec(P.from_symbols(f), P.from_symbols(g), P.from_symbols(phi))


def random_spec(rng, n_symbols, window, signed_phi=True):
    words = list(__import__("itertools").product(range(1, n_symbols + 1), repeat=window))

    def unit():
        return F(rng.randint(1, 6), 6)

    def phi():
        return F(rng.randint(-6 if signed_phi else 0, 6), rng.randint(1, 4))

    return CocycleSpec(
        P(n_symbols, window, {w: unit() for w in words}),
        P(n_symbols, window, {w: unit() for w in words}),
        P(n_symbols, window, {w: phi() for w in words}),
    )


def tables(spec):
    return spec.f.table, spec.g.table, spec.phi.table


# enumeration ------------------------------------------------------------------


def test_jordan_enumeration_linear():
    curve = enumerate_growth(MatrixSet([J]), EnumerationConfig(1000))
    assert 0.99 <= curve.a_at(1000) / 1000 <= 1.01
    assert curve.c_at(1000) == 1000


def test_rotation_enumeration_is_isometric():
    curve = enumerate_growth(MatrixSet([ROT90]), EnumerationConfig(24))
    assert all(math.isclose(a, 1.0) for a in curve.a_vals)


def test_enumeration_matches_oracle():
    mats = [Mat2(1, 1, 0, -1), Mat2(F(1, 2), 0, F(1, 3), 1)]
    gens = [tuple(tuple(r) for r in m.rows) for m in mats]
    curve = enumerate_growth(MatrixSet(mats), EnumerationConfig(8, norm="sum"))
    for n in range(1, 9):
        assert curve.a_at(n) == max(oracles.sum_norm(p) for _, p in oracles.all_products(gens, n))
        assert curve.c_at(n) == oracles.corner_max(gens, n)


nonneg_tri = st.builds(
    lambda a, b, d: Mat2(a, b, 0, d),
    unit_fractions(),
    small_fractions(0, 2),
    unit_fractions(),
)


@settings(max_examples=25)
@given(st.lists(nonneg_tri, min_size=2, max_size=3))
def test_domination_pruning_keeps_maxima(ms):
    s = MatrixSet(ms)
    for norm in ("sum", "op2"):
        plain = enumerate_growth(s, EnumerationConfig(8, norm=norm))
        pruned = enumerate_growth(s, EnumerationConfig(8, prune_domination=True, norm=norm))
        assert plain.c_vals == pruned.c_vals
        assert plain.a_vals == pruned.a_vals


def test_pruning_needs_nonnegative_triangular():
    with pytest.raises(ValueError):
        enumerate_growth(MatrixSet([ROT90]), EnumerationConfig(3, prune_domination=True))


def test_enumeration_budget():
    s = MatrixSet([Mat2(1, 1, 0, F(1, 2)), Mat2(F(1, 3), 1, 0, 1), Mat2(F(1, 5), 0, 0, 1)])
    with pytest.raises(BudgetExceeded):
        enumerate_growth(s, EnumerationConfig(30, budget=10_000))


def test_float_enumeration_agrees_with_exact():
    s = MatrixSet(contracting_pair(F(1, 2), 1))
    exact = enumerate_growth(s, EnumerationConfig(10))
    flt = enumerate_growth(s.to_float(), EnumerationConfig(10))
    for a, b in zip(exact.c_vals, flt.c_vals):
        assert math.isclose(float(a), b, rel_tol=1e-12)


# hull DP ----------------------------------------------------------------------


def test_hull_dp_birkhoff_sum():
    spec = window1_spec([1], [1], [1])
    curve = hull_dp_growth(spec, 50)
    assert curve.c_vals == list(range(1, 51))


def test_hull_dp_jordan_cocycle():
    spec = window1_spec([1, 1], [1, 1], [1, 1])
    assert hull_dp_growth(spec, 40).c_vals == list(range(1, 41))


@pytest.mark.parametrize("seed", range(12))
def test_hull_dp_matches_brute_force_window1(seed):
    rng = random.Random(seed)
    spec = random_spec(rng, 2 + seed % 2, 1)
    curve = hull_dp_growth(spec, 8 if spec.n_symbols == 3 else 12)
    assert curve.c_vals == oracles.cocycle_corner_curve(*tables(spec), spec.n_symbols, 1, len(curve.lengths))


@pytest.mark.parametrize("seed", range(6))
def test_hull_dp_matches_brute_force_window2(seed):
    rng = random.Random(100 + seed)
    spec = random_spec(rng, 2, 2)
    curve = hull_dp_growth(spec, 10)
    assert curve.c_vals == oracles.cocycle_corner_curve(*tables(spec), 2, 2, 10)


@pytest.mark.parametrize("seed", range(6))
def test_float_hull_matches_exact(seed):
    spec = random_spec(random.Random(200 + seed), 3, 1)
    exact = hull_dp_growth(spec, 200)
    flt = hull_dp_growth(spec, 200, exact=False)
    for a, b in zip(exact.c_vals, flt.c_vals):
        assert math.isclose(float(a), b, rel_tol=1e-10)


def test_hull_dp_matrices_signed_diagonals():
    mats = MatrixSet([Mat2(1, 1, 0, -1), Mat2(1, 0, 0, -1), Mat2(F(-1, 2), F(1, 3), 0, F(2, 3))])
    gens = [tuple(tuple(r) for r in m.rows) for m in mats]
    curve = hull_dp_matrices(mats, 8)
    for n, c in zip(curve.lengths, curve.c_vals):
        assert c == oracles.corner_max(gens, n)


def test_hull_dp_rejects_non_triangular():
    with pytest.raises(ValueError):
        hull_dp_matrices(MatrixSet([ROT90]), 3)


def test_hull_dp_step_cap():
    with pytest.raises(BudgetExceeded):
        hull_dp_growth(window1_spec([1], [1], [1]), 10**6)


def test_hull_watermark_reported():
    curve = hull_dp_growth(random_spec(random.Random(5), 2, 2), 100)
    assert curve.watermark >= 2


@pytest.mark.parametrize("seed", range(5))
def test_corner_subadditive(seed):
    curve = hull_dp_growth(random_spec(random.Random(300 + seed), 2, 1), 40)
    c = dict(zip(curve.lengths, curve.c_vals))
    for n in range(1, 21):
        for m in range(1, 21):
            assert c[n + m] <= c[n] + c[m]


# fekete / periodic -----------------------------------------------------------------


def test_fekete_linear():
    curve = GrowthCurve(list(range(1, 11)), [None] * 10, [F(n) for n in range(1, 11)])
    b = fekete_bracket(curve)
    assert b.upper == 1 and b.latest == 1 and b.doubling_monotone


def test_fekete_constant():
    for n_max in (10, 100):
        curve = GrowthCurve(list(range(1, n_max + 1)), [None] * n_max, [F(7)] * n_max)
        assert fekete_bracket(curve).upper == F(7, n_max)


def test_fekete_upper_nonincreasing_in_horizon():
    spec = random_spec(random.Random(9), 2, 1)
    ups = [fekete_bracket(hull_dp_growth(spec, n)).upper for n in (10, 20, 40)]
    assert ups[0] >= ups[1] >= ups[2]


def test_periodic_examples():
    assert periodic_lower_bound(MatrixSet([J]), 3).word == (1,)
    pb = periodic_lower_bound(MatrixSet([Mat2(1, 1, 0, -1), Mat2(1, 0, 0, -1)]), 4)
    assert pb.rate == F(1, 2) and len(pb.word) == 2
    assert periodic_lower_bound(MatrixSet(contracting_pair(F(1, 2), 1)), 6) is None


def test_periodic_below_fekete():
    s = MatrixSet([Mat2(1, 1, 0, -1), Mat2(1, 0, 0, -1), Mat2(F(1, 2), 2, 0, 1)])
    pb = periodic_lower_bound(s, 4)
    assert pb.rate <= fekete_bracket(hull_dp_matrices(s, 60)).upper


# sandwich ------------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(4))
def test_sandwich_exact(seed):
    spec = random_spec(random.Random(400 + seed), 2, 1)
    rows = sandwich_check(spec, 10)
    assert all(r.lower_ok and r.upper_ok for r in rows)
    dp = hull_dp_growth(spec, 10)
    assert [r.c_n for r in rows] == dp.c_vals


def test_sandwich_float_enumeration():
    spec = window1_spec([1, F(1, 2)], [F(1, 3), 1], [F(3, 2), -2])
    curve = enumerate_growth(spec.matrix_set(), EnumerationConfig(12))
    for a, c in zip(curve.a_vals, curve.c_vals):
        assert float(c) <= a + 1e-12 and a <= float(c) + 1 + 1e-12


def test_csv_header_and_rows():
    curve = hull_dp_growth(window1_spec([1], [1], [1]), 3)
    buf = io.StringIO()
    curve.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,a_n,c_n,c_n_over_n"
    assert lines[3] == "3,,3.0,1.0"
