"""Brute-force oracles: path enumeration, order statistics, and an
independent integer-weight counting DP.

These are the ground-truth implementations the approximate counters are
tested against.  All of them work on the pruned graph; callers may pass an
unpruned Dag and it is pruned internally (vertex ids in results then refer
to the pruned relabelling).
"""
from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, inf

from .errors import (
    CapExceededError,
    InstanceTooLargeError,
    InstanceTwoAbsentError,
    InvalidParameterError,
    NonIntegerWeightsError,
)
from .graph import Dag, prune_to_st, total_path_count

DEFAULT_CAP = 10 ** 6

# refuse by-length DP tables with more than this many integer cells
_MAX_DP_CELLS = 200_000_000


def _pruned(dag: Dag) -> Dag:
    return dag if dag.is_pruned else prune_to_st(dag)


@dataclass(frozen=True)
class PathLengths:
    """Sorted multisets of s-v path lengths for every vertex of the pruned DAG.

    ``lengths[v]`` is ascending; ``pairs[v]`` (when the second weight
    instance is present) holds ``(len1, len2)`` tuples in lexicographic
    order.  The empty path gives the source the single length 0.
    """

    dag: Dag
    lengths: tuple[tuple[Fraction, ...], ...]
    pairs: tuple[tuple[tuple[Fraction, Fraction], ...], ...] | None

    def count_at_most(self, limit, v: int | None = None) -> int:
        v = self.dag.t if v is None else v
        return bisect_right(self.lengths[v], limit)

    def min_length_for_count(self, count, v: int | None = None):
        """Smallest L such that at least ``count`` s-v paths have length <= L.

        Returns -inf for count <= 0 and +inf when fewer than ceil(count)
        paths exist.
        """
        v = self.dag.t if v is None else v
        if count <= 0:
            return -inf
        k = ceil(count)
        row = self.lengths[v]
        return row[k - 1] if k <= len(row) else inf

    def count_bicriteria(self, limit1, limit2, v: int | None = None) -> int:
        v = self.dag.t if v is None else v
        if self.pairs is None:
            raise InstanceTwoAbsentError("path enumeration has no second-instance data")
        return sum(1 for a, b in self.pairs[v] if a <= limit1 and b <= limit2)

    def min_length2_for_count(self, count, budget1, v: int | None = None):
        """Smallest L2 with at least ``count`` s-v paths of len1 <= budget1
        and len2 <= L2."""
        v = self.dag.t if v is None else v
        if self.pairs is None:
            raise InstanceTwoAbsentError("path enumeration has no second-instance data")
        if count <= 0:
            return -inf
        k = ceil(count)
        qualifying = sorted(b for a, b in self.pairs[v] if a <= budget1)
        return qualifying[k - 1] if k <= len(qualifying) else inf


def enumerate_paths(dag: Dag, cap: int = DEFAULT_CAP) -> PathLengths:
    """Collect every s-v path length by dynamic programming over the topo order.

    Raises CapExceededError (with the exact total) when the s-t path count
    exceeds ``cap``; nothing is enumerated in that case.  In a pruned graph
    no vertex has more paths than t, so the cap bounds all intermediate work.
    """
    dag = _pruned(dag)
    total = total_path_count(dag)
    if total > cap:
        raise CapExceededError(total, cap)
    with_pairs = dag.has_second_instance and dag.m > 0
    zero = Fraction(0)
    lengths: list[tuple] = [()] * dag.n
    pairs: list[tuple] = [()] * dag.n
    lengths[dag.s] = (zero,)
    pairs[dag.s] = ((zero, zero),)
    for v in dag.topo_order:
        if v == dag.s:
            continue
        acc = []
        for idx in dag.in_edges[v]:
            e = dag.edges[idx]
            acc.extend(x + e.w1 for x in lengths[e.tail])
        acc.sort()
        lengths[v] = tuple(acc)
        if with_pairs:
            acc2 = []
            for idx in dag.in_edges[v]:
                e = dag.edges[idx]
                acc2.extend((a + e.w1, b + e.w2) for a, b in pairs[e.tail])
            acc2.sort()
            pairs[v] = tuple(acc2)
    return PathLengths(dag, tuple(lengths), tuple(pairs) if with_pairs else None)


def exact_count_at_most(dag: Dag, limit, cap: int = DEFAULT_CAP) -> int:
    """Number of s-t paths with first-instance length <= limit (inclusive)."""
    return enumerate_paths(dag, cap).count_at_most(limit)


def exact_count_bicriteria(dag: Dag, limit1, limit2, cap: int = DEFAULT_CAP) -> int:
    """Number of s-t paths with len1 <= limit1 and len2 <= limit2.

    ``limit1 = math.inf`` degenerates to a one-criterion count on w2.
    """
    return enumerate_paths(dag, cap).count_bicriteria(limit1, limit2)


def min_length_for_count(dag: Dag, v: int | None, count, cap: int = DEFAULT_CAP):
    """Smallest L with at least ``count`` s-v paths of length <= L (see
    :meth:`PathLengths.min_length_for_count`)."""
    return enumerate_paths(dag, cap).min_length_for_count(count, v)


def exact_count_by_length(dag: Dag, limit) -> int:
    """Second, enumeration-free oracle for integer first-instance weights.

    Counts s-t paths of length <= limit by a count-per-exact-length table.
    Raises NonIntegerWeightsError unless every w1 is an integer.
    """
    dag = _pruned(dag)
    for e in dag.edges:
        if e.w1.denominator != 1:
            raise NonIntegerWeightsError(f"w1 = {e.w1} is not an integer")
    if limit == inf:
        return total_path_count(dag)
    bound = floor(limit)
    if bound < 0:
        return 0
    if (bound + 1) * dag.n > _MAX_DP_CELLS:
        raise InstanceTooLargeError(
            f"length bound {bound} needs too large a table for n={dag.n}"
        )
    width = bound + 1
    table: list[list[int]] = [[0] * width for _ in range(dag.n)]
    table[dag.s][0] = 1
    for v in dag.topo_order:
        row = table[v]
        if not any(row):
            continue
        for idx in dag.out_edges[v]:
            e = dag.edges[idx]
            w = int(e.w1)
            dest = table[e.head]
            if w == 0:
                for ell in range(width):
                    if row[ell]:
                        dest[ell] += row[ell]
            else:
                for ell in range(width - w):
                    if row[ell]:
                        dest[ell + w] += row[ell]
    return sum(table[dag.t])


@dataclass(frozen=True)
class ReferenceStaircase:
    """Dense threshold table from the exhaustive window evaluator.

    ``rows[v][j]`` is a Fraction, or math.inf when no per-edge level
    assignment lands the rounded count inside level j's window.  Unlike the
    fast builder's compressed rows, interior entries may be infinite: at a
    vertex with several parallel paths the attainable rounded counts are
    spaced too coarsely to hit every window.  When both are finite the fast
    builder's certified length never exceeds the window evaluator's.
    """

    grid: object
    rows: tuple[tuple[object, ...], ...]

    def value(self, v: int, j: int):
        return self.rows[v][j]


def brute_force_staircase(dag: Dag, eps) -> ReferenceStaircase:
    """Literal evaluation of the rounded-count recurrence, by exhaustive
    search over per-edge grid-exponent assignments.

    Intended only as a cross-check for the fast builder on tiny inputs:
    requires in-degree <= 3 and a grid with at most 40 levels, else raises
    InstanceTooLargeError.
    """
    from .fptas import CountGrid

    dag = _pruned(dag)
    grid = CountGrid.for_graph(dag, Fraction(eps))
    if grid.s_max > 40:
        raise InstanceTooLargeError(f"grid has {grid.s_max + 1} levels, limit is 41")
    if any(len(ins) > 3 for ins in dag.in_edges):
        raise InstanceTooLargeError("reference evaluator requires in-degree <= 3")

    q = grid.base
    powers = [q ** j for j in range(grid.s_max + 1)]
    rows: list[list] = [[inf] * (grid.s_max + 1) for _ in range(dag.n)]
    rows[dag.s][0] = Fraction(0)
    if dag.s != 0 or dag.topo_order != tuple(range(dag.n)):
        raise InvalidParameterError("expected a pruned, relabelled Dag")

    for v in dag.topo_order:
        if v == dag.s:
            continue
        preds = [(rows[dag.edges[i].tail], dag.edges[i].w1) for i in dag.in_edges[v]]
        for j in range(grid.s_max + 1):
            lo = powers[j - 1] if j >= 1 else None  # need sum > q^(j-1); at j=0, sum >= 1
            hi = powers[j]
            best = inf
            # DFS over exponent choices (None = edge unused) with sum <= hi
            def explore(idx: int, total: Fraction, value) -> None:
                nonlocal best
                if value >= best:
                    return
                if idx == len(preds):
                    ok = total >= 1 if j == 0 else total > lo
                    if ok and value < best:
                        best = value
                    return
                prow, w = preds[idx]
                explore(idx + 1, total, value)
                for k in range(grid.s_max + 1):
                    if total + powers[k] > hi:
                        break
                    entry = prow[k]
                    if entry is inf:
                        continue  # later levels may still be feasible
                    explore(idx + 1, total + powers[k], max(value, entry + w))

            explore(0, Fraction(0), -inf)
            rows[v][j] = best if best != -inf else inf

    return ReferenceStaircase(grid=grid, rows=tuple(tuple(r) for r in rows))
