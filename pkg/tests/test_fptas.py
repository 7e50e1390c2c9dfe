"""Single-criterion approximation scheme: grids, staircases, estimates."""
import random
from decimal import Decimal
from fractions import Fraction
from math import inf

import pytest
from hypothesis import given, settings, strategies as st

from dagcount import (
    CountGrid,
    InvalidParameterError,
    NoPathError,
    as_fraction,
    build_staircase,
    count_at_most,
    count_rho_approx,
    enumerate_paths,
    prune_to_st,
    validate_and_sort,
)
from conftest import corpus, random_dag


def chain(*weights):
    edges = [(i, i + 1, w) for i, w in enumerate(weights)]
    return prune_to_st(validate_and_sort(len(weights) + 1, 0, len(weights), edges))


def test_grid_parameters_small_chain():
    dag = chain(1, 1, 1)
    grid = CountGrid.for_graph(dag, Fraction(1, 2))
    # need (1 + 2**-t) ** 5 <= 1.5: t = 4 is the first that fits
    assert grid.t_exp == 4
    assert grid.base == Fraction(17, 16)
    assert grid.fineness_power == 5
    assert grid.base ** grid.fineness_power <= Fraction(3, 2)
    assert (1 + Fraction(1, 8)) ** grid.fineness_power > Fraction(3, 2)


def test_grid_levels_cover_parallel_edge_count():
    # 3 parallel edges beat the 2**(n-2) = 1 simple-graph bound
    dag = prune_to_st(validate_and_sort(2, 0, 1, [(0, 1, 1)] * 3))
    grid = CountGrid.for_graph(dag, Fraction(1, 2))
    assert grid.base ** grid.s_max >= 3
    assert grid.base ** (grid.s_max - 1) < 3


def test_grid_rejects_bad_epsilon():
    dag = chain(1)
    with pytest.raises(InvalidParameterError):
        CountGrid.for_graph(dag, 0)
    with pytest.raises(InvalidParameterError):
        CountGrid.for_graph(dag, Fraction(-1, 2))
    with pytest.raises(InvalidParameterError):
        CountGrid.for_graph(dag, 0.25)


def test_single_edge_row():
    staircase = build_staircase(chain(5), Fraction(1, 2))
    row = staircase.rows[staircase.dag.t]
    assert row.values == (Fraction(5),)
    assert row.his == (0,)
    assert row.value_at(1) is inf


def test_parallel_edges_row_by_hand():
    # base 9/8 (fineness 3 at eps 1/2), two edges of weight 1 and 2:
    # one path certifies level 0 at length 1; the pair's mass 2 then
    # crosses every threshold with base**(j-1) < 2, i.e. through level 6
    dag = prune_to_st(validate_and_sort(2, 0, 1, [(0, 1, 1), (0, 1, 2)]))
    staircase = build_staircase(dag, Fraction(1, 2))
    grid = staircase.grid
    assert grid.t_exp == 3 and grid.base == Fraction(9, 8) and grid.s_max == 6
    row = staircase.rows[1]
    assert row.values == (Fraction(1), Fraction(2))
    assert row.his == (0, 6)
    assert row.materialize(6) == [1, 2, 2, 2, 2, 2, 2]


def test_staircase_prunes_input():
    dag = validate_and_sort(4, 0, 3, [(0, 3, 2), (1, 2, 1)])
    staircase = build_staircase(dag, Fraction(1, 2))
    assert staircase.dag.is_pruned
    assert staircase.dag.n == 2


def test_unreachable_graph_certifies_zero():
    dag = validate_and_sort(3, 0, 2, [(0, 1, 1)])
    staircase = build_staircase(dag, Fraction(1, 2))
    estimate = count_at_most(staircase, inf)
    assert estimate.is_zero
    assert estimate.value_fraction == 0
    assert estimate.value_decimal == "0"


def test_sandwich_on_corpus():
    checked = 0
    for i, dag in enumerate(corpus(601, 30)):
        eps = [Fraction(1, 2), Fraction(1, 4), Fraction(1)][i % 3]
        staircase = build_staircase(dag, eps)
        lengths = enumerate_paths(dag)
        grid = staircase.grid
        q = grid.base
        for v in dag.topo_order:
            pos = dag.topo_position[v]
            row = staircase.rows[v]
            for j in range(pos, grid.s_max + 1):
                value = row.value_at(j)
                lo = lengths.min_length_for_count(q ** (j - pos), v=v)
                hi = lengths.min_length_for_count(q ** j, v=v)
                assert lo <= value <= hi, (i, v, j, lo, value, hi)
                checked += 1
    assert checked > 3000


def test_ratio_on_corpus():
    for i, dag in enumerate(corpus(602, 30, halves=True)):
        eps = [Fraction(1, 2), Fraction(1, 10), Fraction(1)][i % 3]
        staircase = build_staircase(dag, eps)
        lengths = enumerate_paths(dag)
        sink_lengths = lengths.lengths[dag.t]
        limits = {Fraction(0), Fraction(-1), inf}
        for ln in sink_lengths[:8]:
            limits.add(ln)
            limits.add(ln - Fraction(1, 16))
            limits.add(ln + Fraction(1, 16))
        for limit in limits:
            exact = lengths.count_at_most(limit)
            estimate = count_at_most(staircase, limit)
            assert estimate.brackets(exact), (i, limit, exact, estimate.exponent)


def test_estimate_zero_iff_no_path_within_limit():
    dag = chain(3, 4)
    staircase = build_staircase(dag, Fraction(1, 2))
    assert count_at_most(staircase, 6).is_zero
    assert not count_at_most(staircase, 7).is_zero


def test_accumulator_modes_build_identical_rows():
    for i, dag in enumerate(corpus(603, 12, halves=True)):
        eps = [Fraction(1, 2), Fraction(1, 20)][i % 2]
        exact_rows = build_staircase(dag, eps, accumulator="exact").rows
        cert_rows = build_staircase(dag, eps, accumulator="certified").rows
        for a, b in zip(exact_rows, cert_rows):
            assert a.values == b.values
            assert a.his == b.his


def test_builds_are_deterministic():
    dag = corpus(604, 1, n_max=7)[0]
    a = build_staircase(dag, Fraction(1, 4))
    b = build_staircase(dag, Fraction(1, 4))
    assert all(x.values == y.values and x.his == y.his
               for x, y in zip(a.rows, b.rows))


def test_estimate_decimal_renderings():
    dag = prune_to_st(validate_and_sort(2, 0, 1, [(0, 1, 1), (0, 1, 2)]))
    estimate = count_at_most(build_staircase(dag, Fraction(1, 2)), 2)
    # (9/8)**6 exactly
    assert estimate.value_decimal == "2.027286529541015625"
    assert Decimal(estimate.lower_bound_decimal) <= 2 <= Decimal(estimate.upper_bound_decimal)
    d = estimate.to_json_dict()
    assert d["exponent"] == 6
    assert d["base"] == "1.125"
    assert all(isinstance(v, str) for k, v in d.items() if k != "exponent")


def test_estimate_bounds_enclose_value():
    dag = corpus(605, 1)[0]
    staircase = build_staircase(dag, Fraction(1, 3))
    estimate = count_at_most(staircase, 12)
    if not estimate.is_zero:
        assert estimate.lower_bound_fraction <= estimate.value_fraction
        assert estimate.value_fraction <= estimate.upper_bound_fraction


def test_count_limit_types():
    staircase = build_staircase(chain(3, 4), Fraction(1, 2))
    assert not count_at_most(staircase, "7").is_zero
    assert not count_at_most(staircase, Fraction(7)).is_zero
    assert not count_at_most(staircase, Decimal("7.0")).is_zero
    assert count_at_most(staircase, "13/2").is_zero
    with pytest.raises(InvalidParameterError):
        count_at_most(staircase, 7.0)


def test_rho_query_on_diamond():
    dag = prune_to_st(validate_and_sort(
        4, 0, 3, [(0, 1, 1), (1, 3, 1), (0, 2, 2), (2, 3, 1)]))
    one = count_rho_approx(dag, 1, Fraction(1, 2))
    assert one.brackets(1)
    stretched = count_rho_approx(dag, Fraction(3, 2), Fraction(1, 2))
    assert stretched.brackets(2)
    assert stretched.warnings == ()


def test_rho_flags_zero_optimum():
    dag = chain(0, 0)
    estimate = count_rho_approx(dag, 2, Fraction(1, 2))
    assert not estimate.is_zero
    assert any(w.startswith("OptIsZero") for w in estimate.warnings)


def test_rho_rejects_bad_inputs():
    dag = chain(1)
    with pytest.raises(InvalidParameterError):
        count_rho_approx(dag, Fraction(1, 2), Fraction(1, 2))
    unreachable = validate_and_sort(3, 0, 2, [(0, 1, 1)])
    with pytest.raises(NoPathError):
        count_rho_approx(unreachable, 2, Fraction(1, 2))


def test_as_fraction_conversions():
    assert as_fraction("3/7") == Fraction(3, 7)
    assert as_fraction(Decimal("0.25")) == Fraction(1, 4)
    assert as_fraction(5) == 5
    with pytest.raises(InvalidParameterError):
        as_fraction(0.25)
    with pytest.raises(InvalidParameterError):
        as_fraction("zz")
    with pytest.raises(InvalidParameterError):
        as_fraction(object())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 30), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(2)]))
def test_ratio_randomized(seed, eps):
    dag = random_dag(random.Random(seed), n_max=6)
    if dag is None:
        return
    staircase = build_staircase(dag, eps)
    lengths = enumerate_paths(dag)
    for limit in (0, 3, 9, 27, inf):
        assert count_at_most(staircase, limit).brackets(lengths.count_at_most(limit))
