"""Instance generators with independently computed ground truth.

Each generator returns a GeneratedInstance: the graph, a list of suggested
queries, and for the structured families the exact expected counts.  The
expected values are computed by combinatorial oracles (subset-sum tables,
coefficient convolution) that share no code with the path counters, so
they can serve as ground truth in tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateInstanceError,
    DimensionMismatchError,
    EmptyInputError,
    InvalidParameterError,
    NegativeCoefficientError,
    UnrescalableInstanceError,
)
from .graph import Dag, prune_to_st, shortest_path_length, validate_and_sort, weight_to_str


@dataclass(frozen=True)
class Query:
    """A suggested query against a generated graph.

    ``limit1`` bounds the first weight instance; ``limit2`` is present for
    bicriteria instances.  ``expected`` is the exact count when the
    generator knows it.
    """

    description: str
    limit1: Fraction
    limit2: Fraction | None = None
    expected: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "description": self.description,
            "limit1": weight_to_str(self.limit1),
            "limit2": None if self.limit2 is None else weight_to_str(self.limit2),
            "expected": None if self.expected is None else str(self.expected),
        }


@dataclass(frozen=True)
class GeneratedInstance:
    dag: Dag
    queries: tuple[Query, ...]
    notes: tuple[str, ...] = ()

    def queries_json_dict(self) -> dict:
        return {
            "queries": [q.to_json_dict() for q in self.queries],
            "notes": list(self.notes),
        }


# ---- combinatorial oracles ----


def subset_sum_counts(values: list[int]) -> list[int]:
    """counts[x] = number of subsets of ``values`` with sum exactly x."""
    total = sum(values)
    counts = [0] * (total + 1)
    counts[0] = 1
    for v in values:
        for x in range(total, v - 1, -1):
            counts[x] += counts[x - v]
    return counts


def knapsack_solution_count(profits: list[int], weights: list[int],
                            capacity: int, target: int) -> int:
    """Number of item subsets with weight <= capacity and profit >= target."""
    # profit axis clamped at target: everything above is equivalent
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    for p, w in zip(profits, weights):
        nxt = dict(states)
        for (sw, sp), cnt in states.items():
            nw = sw + w
            if nw > capacity:
                continue
            np_ = min(sp + p, target)
            key = (nw, np_)
            nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return sum(cnt for (sw, sp), cnt in states.items() if sp >= target)


def polynomial_product(factors: list[list[int]]) -> list[int]:
    """Coefficient list of the product of the given polynomials."""
    product = [1]
    for coeffs in factors:
        out = [0] * (len(product) + len(coeffs) - 1)
        for i, a in enumerate(product):
            if a:
                for k, b in enumerate(coeffs):
                    if b:
                        out[i + k] += a * b
        product = out
    return product


# ---- generators ----


def gen_partition(values: list[int]) -> GeneratedInstance:
    """Chain encoding of a number-partition instance.

    Item i contributes two parallel edges of weight M + s_i and M - s_i
    with M = max(values), so a path is a sign assignment and its length is
    n*M + (signed sum).  The count at n*M minus the count at n*M - 1 is
    exactly the number of balanced sign assignments, i.e. the number of
    subsets hitting half the total.
    """
    if not values:
        raise EmptyInputError("partition needs at least one value")
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise InvalidParameterError(
                f"partition values must be positive integers, got {v!r}"
            )
    n = len(values)
    m = max(values)
    edges = []
    for i, v in enumerate(values):
        edges.append((i, i + 1, Fraction(m + v)))
        edges.append((i, i + 1, Fraction(m - v)))
    dag = validate_and_sort(n + 1, 0, n, edges)

    total = sum(values)
    counts = subset_sum_counts(values)
    # length <= x  <=>  2 * (chosen-subset sum) <= x - n*m + total
    def at_most(x: int) -> int:
        bound = x - n * m + total
        return sum(c for s, c in enumerate(counts) if 2 * s <= bound)

    mid = n * m
    queries = (
        Query("all sign assignments up to the balance point", Fraction(mid),
              expected=at_most(mid)),
        Query("all sign assignments strictly below the balance point",
              Fraction(mid - 1), expected=at_most(mid - 1)),
    )
    balanced = counts[total // 2] if total % 2 == 0 else 0
    notes = (
        f"query count difference equals the {balanced} subsets "
        f"summing to half of {total}",
    )
    return GeneratedInstance(dag=dag, queries=queries, notes=notes)


def gen_knapsack(profits: list[int], weights: list[int], capacity: int,
                 target: int) -> GeneratedInstance:
    """Take/skip chain whose bicriteria count is a knapsack solution count.

    First-instance weights spend capacity; second-instance weights encode
    profit, flipped and shifted by a constant c so they stay nonnegative:
    taking item k costs c - (n+1)*p_k, skipping costs c.  Profit at least
    ``target`` then reads as second-instance length at most
    n*c - (n+1)*target.
    """
    if not profits:
        raise EmptyInputError("knapsack needs at least one item")
    if len(profits) != len(weights):
        raise DimensionMismatchError(
            f"{len(profits)} profits vs {len(weights)} weights"
        )
    for x in [*profits, *weights, capacity, target]:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InvalidParameterError(f"knapsack data must be integers, got {x!r}")
    if any(p < 0 for p in profits) or any(w < 0 for w in weights):
        raise UnrescalableInstanceError(
            "negative profits or weights cannot be shifted into "
            "nonnegative edge weights"
        )
    if capacity < 0 or target < 0:
        raise InvalidParameterError("capacity and target must be nonnegative")
    n = len(profits)
    shift = max(2 * target, (n + 1) * max(profits))
    edges = []
    for k, (p, w) in enumerate(zip(profits, weights)):
        edges.append((k, k + 1, Fraction(w), Fraction(shift - (n + 1) * p)))
        edges.append((k, k + 1, Fraction(0), Fraction(shift)))
    dag = validate_and_sort(n + 1, 0, n, edges)
    limit2 = Fraction(n * shift - (n + 1) * target)
    expected = knapsack_solution_count(profits, weights, capacity, target)
    queries = (
        Query(
            f"subsets with weight <= {capacity} and profit >= {target}",
            Fraction(capacity), limit2=limit2, expected=expected,
        ),
    )
    notes = (f"profit shift constant {shift}; take-edge second weight is "
             f"{shift} - {n + 1} * profit",)
    return GeneratedInstance(dag=dag, queries=queries, notes=notes)


def gen_random_layered(layers: int, width: int, edge_prob: float, seed: int,
                       *, weight_max: int = 10,
                       second_instance: bool = False) -> GeneratedInstance:
    """Random layered DAG: source, ``layers`` layers of ``width`` vertices,
    sink.

    Sampling is deterministic in ``seed`` (Mersenne Twister via
    random.Random) with a fixed draw order: for each vertex pair in layer
    order, one presence flip, then the weight draw(s) if present.  Weights
    are uniform integers in 1..weight_max.  Raises DegenerateInstanceError
    when the sampled graph has no s-t path.
    """
    if layers < 1 or width < 1:
        raise InvalidParameterError("layers and width must be >= 1")
    if not 0 <= edge_prob <= 1:
        raise InvalidParameterError(f"edge probability {edge_prob} outside [0, 1]")
    if weight_max < 1:
        raise InvalidParameterError("weight_max must be >= 1")
    rng = random.Random(seed)
    n = layers * width + 2
    source, sink = 0, n - 1
    vertex = lambda layer, i: 1 + layer * width + i

    def draw():
        w1 = Fraction(rng.randint(1, weight_max))
        if second_instance:
            return w1, Fraction(rng.randint(1, weight_max))
        return w1, None

    edges = []
    for i in range(width):
        if rng.random() < edge_prob:
            w1, w2 = draw()
            edges.append((source, vertex(0, i), w1, w2))
    for layer in range(layers - 1):
        for i in range(width):
            for j in range(width):
                if rng.random() < edge_prob:
                    w1, w2 = draw()
                    edges.append((vertex(layer, i), vertex(layer + 1, j), w1, w2))
    for i in range(width):
        if rng.random() < edge_prob:
            w1, w2 = draw()
            edges.append((vertex(layers - 1, i), sink, w1, w2))

    dag = validate_and_sort(n, source, sink, edges)
    pruned = prune_to_st(dag)
    if not pruned.reachable:
        raise DegenerateInstanceError(
            f"seed {seed} gives no path from source to sink; re-seed"
        )
    shortest = shortest_path_length(pruned, 1)
    queries = tuple(
        Query(f"length at most {factor} times the shortest path",
              shortest * factor)
        for factor in (Fraction(1), Fraction(3, 2), Fraction(2))
    )
    notes = (f"sampled with seed {seed}, edge probability {edge_prob}, "
             f"weights uniform on 0..{weight_max}",)
    return GeneratedInstance(dag=dag, queries=queries, notes=notes)


def gen_poly_product(factors: list[list[int]]) -> GeneratedInstance:
    """Chain whose path counts by length are coefficients of a product.

    Factor f with coefficient b_k at degree k becomes a chain segment with
    b_k parallel edges of weight k, so paths of total length d correspond
    one-to-one to degree-d terms of the expanded product.  Counting paths
    of length <= d therefore sums the product's coefficients up to d.
    """
    if not factors:
        raise EmptyInputError("need at least one polynomial factor")
    for coeffs in factors:
        if not coeffs:
            raise EmptyInputError("empty coefficient list")
        for b in coeffs:
            if not isinstance(b, int) or isinstance(b, bool):
                raise InvalidParameterError(f"coefficients must be integers, got {b!r}")
            if b < 0:
                raise NegativeCoefficientError(f"negative coefficient {b}")
    edges = []
    for seg, coeffs in enumerate(factors):
        for degree, count in enumerate(coeffs):
            for _ in range(count):
                edges.append((seg, seg + 1, Fraction(degree)))
    dag = validate_and_sort(len(factors) + 1, 0, len(factors), edges)

    product = polynomial_product(factors)
    prefix = []
    running = 0
    for c in product:
        running += c
        prefix.append(running)
    top = len(product) - 1
    if top <= 32:
        degrees = range(top + 1)
    else:
        degrees = sorted({0, top // 4, top // 2, (3 * top) // 4, top})
    queries = tuple(
        Query(f"coefficient sum through degree {d}", Fraction(d),
              expected=prefix[d])
        for d in degrees
    )
    notes = (f"product has degree {top} and coefficient sum {prefix[-1]}",)
    return GeneratedInstance(dag=dag, queries=queries, notes=notes)
