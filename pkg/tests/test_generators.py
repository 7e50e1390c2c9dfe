"""Instance generators and their counting oracles.

Every generator family is checked against a brute-force computation done
here with itertools, independent of the package's own DP oracles.
"""
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dagcount import (
    DegenerateInstanceError,
    DimensionMismatchError,
    EmptyInputError,
    InvalidParameterError,
    NegativeCoefficientError,
    UnrescalableInstanceError,
    dag_to_json,
    exact_count_at_most,
    exact_count_bicriteria,
    gen_knapsack,
    gen_partition,
    gen_poly_product,
    gen_random_layered,
    knapsack_solution_count,
    polynomial_product,
    subset_sum_counts,
)


def brute_partition_balanced(values):
    total = sum(values)
    hits = 0
    for signs in itertools.product((1, -1), repeat=len(values)):
        if sum(s * v for s, v in zip(signs, values)) == 0:
            hits += 1
    return hits


def brute_knapsack(profits, weights, capacity, target):
    hits = 0
    for pick in itertools.product((0, 1), repeat=len(profits)):
        w = sum(x * wi for x, wi in zip(pick, weights))
        p = sum(x * pi for x, pi in zip(pick, profits))
        if w <= capacity and p >= target:
            hits += 1
    return hits


class TestOracles:
    def test_subset_sum_counts_small(self):
        counts = subset_sum_counts([1, 2, 2])
        # sums: 0,1,2,2,3,3,4,5
        assert counts[0] == 1 and counts[2] == 2 and counts[5] == 1
        assert sum(counts) == 8

    @given(st.lists(st.integers(min_value=1, max_value=12), min_size=0, max_size=10))
    @settings(max_examples=60, deadline=None)
    def test_subset_sum_counts_vs_itertools(self, values):
        counts = subset_sum_counts(values)
        assert sum(counts) == 2 ** len(values)
        for s, c in enumerate(counts):
            brute = sum(
                1
                for pick in itertools.product((0, 1), repeat=len(values))
                if sum(x * v for x, v in zip(pick, values)) == s
            )
            assert c == brute

    def test_knapsack_count_vs_itertools(self, rng):
        for _ in range(25):
            n = rng.randint(1, 9)
            profits = [rng.randint(0, 9) for _ in range(n)]
            weights = [rng.randint(0, 9) for _ in range(n)]
            cap = rng.randint(0, 20)
            target = rng.randint(0, 15)
            assert knapsack_solution_count(profits, weights, cap, target) == \
                brute_knapsack(profits, weights, cap, target)

    @given(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=4),
            min_size=1,
            max_size=4,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_polynomial_product_vs_expansion(self, factors):
        coeffs = polynomial_product(factors)
        expected = [1]
        for f in factors:
            nxt = [0] * (len(expected) + len(f) - 1)
            for i, a in enumerate(expected):
                for j, b in enumerate(f):
                    nxt[i + j] += a * b
            expected = nxt
        assert coeffs == expected


class TestPartitionFamily:
    def test_queries_match_brute_force(self, rng):
        for _ in range(15):
            n = rng.randint(2, 9)
            values = [rng.randint(1, 12) for _ in range(n)]
            inst = gen_partition(values)
            for q in inst.queries:
                got = exact_count_at_most(inst.dag, q.limit1)
                assert got == q.expected
            # difference of the two nested queries counts balanced splits
            exact_hits = inst.queries[0].expected - inst.queries[1].expected
            assert exact_hits == brute_partition_balanced(values)

    def test_known_balanced_set(self):
        inst = gen_partition([1, 2, 3])  # {1,2}|{3} and complement
        assert inst.queries[0].expected - inst.queries[1].expected == 2

    def test_rejects_bad_values(self):
        with pytest.raises(EmptyInputError):
            gen_partition([])
        with pytest.raises(InvalidParameterError):
            gen_partition([1, 0, 2])
        with pytest.raises(InvalidParameterError):
            gen_partition([1, -4])
        with pytest.raises(InvalidParameterError):
            gen_partition([1, 2.5])


class TestKnapsackFamily:
    def test_queries_match_brute_force(self, rng):
        for _ in range(15):
            n = rng.randint(1, 8)
            profits = [rng.randint(0, 9) for _ in range(n)]
            weights = [rng.randint(0, 9) for _ in range(n)]
            cap = rng.randint(0, 18)
            target = rng.randint(0, 12)
            inst = gen_knapsack(profits, weights, cap, target)
            q = inst.queries[0]
            got = exact_count_bicriteria(inst.dag, q.limit1, q.limit2)
            assert got == q.expected == brute_knapsack(profits, weights, cap, target)

    def test_weights_stay_nonnegative(self):
        inst = gen_knapsack([9, 1], [1, 1], 2, 0)
        for e in inst.dag.edges:
            assert e.w1 >= 0 and e.w2 >= 0

    def test_rejects_bad_input(self):
        with pytest.raises(EmptyInputError):
            gen_knapsack([], [], 3, 1)
        with pytest.raises(DimensionMismatchError):
            gen_knapsack([1, 2], [1], 3, 1)
        with pytest.raises(UnrescalableInstanceError):
            gen_knapsack([1, -2], [1, 1], 3, 1)
        with pytest.raises(UnrescalableInstanceError):
            gen_knapsack([1, 2], [1, -1], 3, 1)
        with pytest.raises(InvalidParameterError):
            gen_knapsack([1, True], [1, 1], 3, 1)
        with pytest.raises(InvalidParameterError):
            gen_knapsack([1, 2], [1, 1], -1, 1)


class TestRandomLayeredFamily:
    def test_deterministic_per_seed(self):
        a = gen_random_layered(4, 3, Fraction(3, 5), 11)
        b = gen_random_layered(4, 3, Fraction(3, 5), 11)
        assert dag_to_json(a.dag) == dag_to_json(b.dag)
        assert [q.limit1 for q in a.queries] == [q.limit1 for q in b.queries]

    def test_seed_changes_output(self):
        a = gen_random_layered(4, 3, Fraction(3, 5), 11)
        b = gen_random_layered(4, 3, Fraction(3, 5), 12)
        assert dag_to_json(a.dag) != dag_to_json(b.dag)

    def test_dense_instance_shape(self):
        inst = gen_random_layered(3, 4, 1, 0)
        dag = inst.dag
        assert dag.n == 3 * 4 + 2
        # source fans to the full first layer, sink drains the last
        assert sum(1 for e in dag.edges if e.tail == dag.s) == 4
        assert sum(1 for e in dag.edges if e.head == dag.t) == 4

    def test_queries_scale_from_shortest_path(self):
        inst = gen_random_layered(3, 3, 1, 5)
        l0 = inst.queries[0].limit1
        assert [q.limit1 for q in inst.queries] == [l0, l0 * Fraction(3, 2), l0 * 2]

    def test_second_instance_toggle(self):
        plain = gen_random_layered(3, 3, 1, 2)
        paired = gen_random_layered(3, 3, 1, 2, second_instance=True)
        assert all(e.w2 is None for e in plain.dag.edges)
        assert all(e.w2 is not None for e in paired.dag.edges)

    def test_degenerate_when_probability_zero(self):
        with pytest.raises(DegenerateInstanceError):
            gen_random_layered(3, 3, 0, 1)

    def test_rejects_bad_parameters(self):
        with pytest.raises(InvalidParameterError):
            gen_random_layered(0, 3, 1, 1)
        with pytest.raises(InvalidParameterError):
            gen_random_layered(3, 0, 1, 1)
        with pytest.raises(InvalidParameterError):
            gen_random_layered(3, 3, 2, 1)
        with pytest.raises(InvalidParameterError):
            gen_random_layered(3, 3, Fraction(-1, 2), 1)


class TestPolyProductFamily:
    def test_prefix_sums_match_convolution(self, rng):
        for _ in range(12):
            factors = [
                [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
                for _ in range(rng.randint(1, 4))
            ]
            if all(sum(f) == 0 for f in factors):
                factors[0][0] = 1
            inst = gen_poly_product(factors)
            coeffs = polynomial_product(factors)
            for q in inst.queries:
                got = exact_count_at_most(inst.dag, q.limit1)
                want = sum(coeffs[: int(q.limit1) + 1])
                assert got == q.expected == want

    def test_zero_coefficient_blocks_degree(self):
        inst = gen_poly_product([[0, 2], [0, 3]])
        # product is 6x^2: nothing below degree 2
        assert exact_count_at_most(inst.dag, 1) == 0
        assert exact_count_at_most(inst.dag, 2) == 6

    def test_high_degree_samples_are_sparse(self):
        inst = gen_poly_product([[1, 1]] * 40)
        degrees = [int(q.limit1) for q in inst.queries]
        assert len(degrees) == 5 and degrees == sorted(degrees)
        assert degrees[0] == 0 and degrees[-1] == 40

    def test_rejects_bad_factors(self):
        with pytest.raises(EmptyInputError):
            gen_poly_product([])
        with pytest.raises(EmptyInputError):
            gen_poly_product([[1], []])
        with pytest.raises(NegativeCoefficientError):
            gen_poly_product([[1, -1]])
        with pytest.raises(InvalidParameterError):
            gen_poly_product([[1, Fraction(1, 2)]])


def test_queries_json_rendering():
    inst = gen_partition([2, 3])
    rendered = inst.queries_json_dict()
    assert set(rendered) == {"queries", "notes"}
    for item in rendered["queries"]:
        assert set(item) >= {"description", "limit1", "expected"}
        assert isinstance(item["limit1"], str)
