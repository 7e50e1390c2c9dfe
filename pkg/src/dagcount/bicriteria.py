"""Approximate path counting under two weight instances.

Queries ask for the number of s-t paths with first-instance length at most
a budget and second-instance length at most a threshold.  Exact budget
tracking is not polynomial, so the budget axis is rounded to powers of a
dyadic base r = 1 + 2**-u with r**n <= 1 + delta: each vertex carries one
count staircase (over the second instance) per rounded remaining budget,
and crossing an edge floors the remaining budget to the next grid power.

Flooring only ever shrinks the admitted path set, and n floorings lose at
most a factor r**n <= 1 + delta of budget.  The result is certified
*between budgets*: the estimate is an upper-sandwich count for budget
r**k_top >= limit1 and a lower-sandwich count for budget
r**(k_top - n) >= limit1 / (1 + delta).  No claim is made about the
exact budget limit1 itself; callers needing that must use the
pseudo-polynomial table below, which keeps integer budgets exact and
rounds only the count axis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .dyadic import (
    dyadic_base,
    floor_log_base,
    fraction_to_decimal,
    power_decimal,
    smallest_dyadic_exponent,
)
from .errors import (
    InstanceTooLargeError,
    InstanceTwoAbsentError,
    InvalidParameterError,
    NonIntegerWeightsError,
    NonPositiveBudgetError,
)
from .fptas import CountEstimate, CountGrid, as_fraction, _limit_fraction
from .graph import Dag, prune_to_st
from .staircase import SOURCE_ROW, CompressedRow, build_row

# refuse pseudo-polynomial tables with more than this many (vertex, budget)
# rows; the bicriteria grid should be used beyond that
_MAX_PSEUDO_ROWS = 2_000_000


class BudgetGrid:
    """Geometric grid of rounded first-instance budgets r**k.

    Indices run from ``k_lo`` to ``k_top``.  ``k_top`` is the smallest
    exponent with r**k_top >= limit1.  ``k_lo`` sits just below the
    smallest positive edge weight: any remaining budget under that weight
    admits exactly the zero-weight edges, so all such budgets behave
    identically and share the bottom index.
    """

    __slots__ = ("delta", "n", "u_exp", "base", "limit1", "k_top", "k_lo")

    def __init__(self, delta: Fraction, n: int, u_exp: int, limit1: Fraction,
                 k_top: int, k_lo: int):
        self.delta = delta
        self.n = n
        self.u_exp = u_exp
        self.base = dyadic_base(u_exp)
        self.limit1 = limit1
        self.k_top = k_top
        self.k_lo = k_lo

    @classmethod
    def for_graph(cls, dag: Dag, delta, limit1) -> "BudgetGrid":
        delta = as_fraction(delta, "delta")
        if delta <= 0:
            raise InvalidParameterError(f"delta must be positive, got {delta}")
        limit1 = as_fraction(limit1, "first-instance budget")
        if limit1 <= 0:
            raise NonPositiveBudgetError(
                f"first-instance budget must be positive, got {limit1}"
            )
        n = dag.n
        u_exp = smallest_dyadic_exponent(delta, n)
        k_top = -floor_log_base(u_exp, 1 / limit1)  # ceil of log_r(limit1)
        positive = [e.w1 for e in dag.edges if e.w1 > 0]
        k_min = floor_log_base(u_exp, min(positive)) - 1 if positive else 0
        return cls(delta, n, u_exp, limit1, k_top, min(k_min, k_top))

    def power(self, k: int) -> Fraction:
        from .dyadic import exact_base_power

        return exact_base_power(self.u_exp, k)

    def floor_index(self, remaining: Fraction) -> int:
        """Grid index for a nonnegative remaining budget.

        Budgets below r**k_lo are below every positive edge weight, so
        raising them to the bottom index changes nothing.
        """
        if remaining <= 0:
            return self.k_lo
        return max(self.k_lo, floor_log_base(self.u_exp, remaining))

    @property
    def indices(self) -> range:
        return range(self.k_lo, self.k_top + 1)


@dataclass(frozen=True, eq=False)
class BiTable:
    """One count staircase per (vertex, rounded remaining budget)."""

    dag: Dag
    count_grid: CountGrid
    budget_grid: BudgetGrid
    rows: dict

    def row(self, v: int, k: int) -> CompressedRow:
        if k not in self.budget_grid.indices:
            raise IndexError(
                f"budget index {k} outside "
                f"{self.budget_grid.k_lo}..{self.budget_grid.k_top}"
            )
        return self.rows[(v, k)]

    def value(self, v: int, k: int, j: int):
        if not 0 <= j <= self.count_grid.s_max:
            raise IndexError(f"level {j} outside 0..{self.count_grid.s_max}")
        return self.row(v, k).value_at(j)


def build_bi_table(dag: Dag, eps, delta, limit1, *,
                   accumulator: str = "auto") -> BiTable:
    """Build the budget-indexed staircase table for a bicriteria query.

    Requires both weight instances.  Rows are built vertex-major in
    topological order, budget-major within a vertex; rows whose usable
    in-edges resolve to the same predecessor rows are shared, which
    collapses most of the budget axis on typical instances.
    """
    dag = dag if dag.is_pruned else prune_to_st(dag)
    if not dag.has_second_instance:
        raise InstanceTwoAbsentError(
            "bicriteria counting needs a second weight on every edge"
        )
    bgrid = BudgetGrid.for_graph(dag, delta, limit1)
    cgrid = CountGrid.for_graph(dag, eps, fineness_power=dag.n)
    rows: dict = {}
    for k in bgrid.indices:
        rows[(dag.s, k)] = SOURCE_ROW
    for v in dag.topo_order:
        if v == dag.s:
            continue
        shared: dict = {}
        for k in bgrid.indices:
            budget = bgrid.power(k)
            preds = []
            signature = []
            for i in dag.in_edges[v]:
                edge = dag.edges[i]
                remaining = budget - edge.w1
                if remaining < 0:
                    continue  # edge not affordable at this budget
                prow = rows[(edge.tail, bgrid.floor_index(remaining))]
                preds.append((prow, edge.w2))
                signature.append((i, id(prow)))
            key = tuple(signature)
            row = shared.get(key)
            if row is None:
                row = build_row(preds, cgrid.t_exp, cgrid.s_max, accumulator)
                shared[key] = row
            rows[(v, k)] = row
    return BiTable(dag=dag, count_grid=cgrid, budget_grid=bgrid, rows=rows)


@dataclass(frozen=True)
class BiEstimate:
    """Count estimate certified between two first-instance budgets.

    The estimate base**exponent satisfies, with e = exact counts at the
    second-instance threshold: e(budget_low) <= estimate * (1 + epsilon)
    and e(budget_high) >= estimate / (1 + epsilon).  It does not bracket
    the count at the requested budget itself, only between the two
    reported budgets enclosing it.
    """

    exponent: int | None
    base: Fraction
    t_exp: int
    epsilon: Fraction
    delta: Fraction
    budget_low: Fraction
    budget_high: Fraction
    warnings: tuple[str, ...] = ()

    certification = "count certified between budgets"

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def value_fraction(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return self.base ** self.exponent

    @property
    def value_decimal(self) -> str:
        if self.exponent is None:
            return "0"
        return power_decimal(self.t_exp, self.exponent, Fraction(1), "nearest")

    @property
    def lower_bound_decimal(self) -> str:
        # guaranteed not to exceed the exact count at budget_high
        if self.exponent is None:
            return "0"
        return power_decimal(self.t_exp, self.exponent,
                             1 / (1 + self.epsilon), "floor")

    @property
    def upper_bound_decimal(self) -> str:
        # guaranteed not to be below the exact count at budget_low
        if self.exponent is None:
            return "0"
        return power_decimal(self.t_exp, self.exponent,
                             1 + self.epsilon, "ceiling")

    def to_json_dict(self) -> dict:
        return {
            "kind": "bicriteria_estimate",
            "certification": self.certification,
            "exponent": self.exponent,
            "base": fraction_to_decimal(self.base),
            "epsilon": fraction_to_decimal(self.epsilon),
            "delta": fraction_to_decimal(self.delta),
            "value_decimal": self.value_decimal,
            "lower_bound_at_budget_high": self.lower_bound_decimal,
            "upper_bound_at_budget_low": self.upper_bound_decimal,
            "budget_low": fraction_to_decimal(self.budget_low, rounding="floor"),
            "budget_high": fraction_to_decimal(self.budget_high, rounding="ceiling"),
        }


def count_bicriteria_approx(table: BiTable, limit2) -> BiEstimate:
    """Read the sink row at the top budget index off a built table."""
    limit2 = _limit_fraction(limit2)
    cgrid = table.count_grid
    bgrid = table.budget_grid
    k = table.rows[(table.dag.t, bgrid.k_top)].max_level_at_most(limit2)
    return BiEstimate(
        exponent=k,
        base=cgrid.base,
        t_exp=cgrid.t_exp,
        epsilon=cgrid.eps,
        delta=bgrid.delta,
        budget_low=bgrid.power(bgrid.k_top - bgrid.n),
        budget_high=bgrid.power(bgrid.k_top),
    )


# ---- pseudo-polynomial variant: exact integer budgets ----


@dataclass(frozen=True, eq=False)
class PseudoTable:
    """Count staircases indexed by exact integer remaining budget.

    Budget handling is exact, so the estimate read off this table brackets
    the exact count at the requested budget within (1 + eps); the price is
    a table linear in the budget value.
    """

    dag: Dag
    count_grid: CountGrid
    budget_top: int
    rows: dict

    def row(self, v: int, b: int) -> CompressedRow:
        if not 0 <= b <= self.budget_top:
            raise IndexError(f"budget {b} outside 0..{self.budget_top}")
        return self.rows[(v, b)]


def build_pseudo_table(dag: Dag, eps, limit1, *,
                       accumulator: str = "auto") -> PseudoTable:
    """Budget-exact table for integer first-instance weights.

    The budget axis holds every integer 0..floor(limit1); an edge is
    usable at budget b when b - w1 >= 0, spending the weight exactly.
    """
    dag = dag if dag.is_pruned else prune_to_st(dag)
    if not dag.has_second_instance:
        raise InstanceTwoAbsentError(
            "bicriteria counting needs a second weight on every edge"
        )
    limit1 = as_fraction(limit1, "first-instance budget")
    if limit1 <= 0:
        raise NonPositiveBudgetError(
            f"first-instance budget must be positive, got {limit1}"
        )
    if any(e.w1.denominator != 1 for e in dag.edges):
        raise NonIntegerWeightsError(
            "pseudo-polynomial budgets need integer first-instance weights"
        )
    budget_top = floor(limit1)
    if (budget_top + 1) * dag.n > _MAX_PSEUDO_ROWS:
        raise InstanceTooLargeError(
            f"pseudo-polynomial table would need {(budget_top + 1) * dag.n} "
            f"rows, limit is {_MAX_PSEUDO_ROWS}; use the bicriteria grid"
        )
    cgrid = CountGrid.for_graph(dag, eps, fineness_power=dag.n)
    rows: dict = {}
    for b in range(budget_top + 1):
        rows[(dag.s, b)] = SOURCE_ROW
    for v in dag.topo_order:
        if v == dag.s:
            continue
        shared: dict = {}
        for b in range(budget_top + 1):
            preds = []
            signature = []
            for i in dag.in_edges[v]:
                edge = dag.edges[i]
                remaining = b - edge.w1
                if remaining < 0:
                    continue
                prow = rows[(edge.tail, int(remaining))]
                preds.append((prow, edge.w2))
                signature.append((i, id(prow)))
            key = tuple(signature)
            row = shared.get(key)
            if row is None:
                row = build_row(preds, cgrid.t_exp, cgrid.s_max, accumulator)
                shared[key] = row
            rows[(v, b)] = row
    return PseudoTable(dag=dag, count_grid=cgrid, budget_top=budget_top,
                       rows=rows)


def count_pseudo(table: PseudoTable, limit2) -> CountEstimate:
    """Estimate at the full budget; brackets the exact bicriteria count."""
    limit2 = _limit_fraction(limit2)
    cgrid = table.count_grid
    k = table.rows[(table.dag.t, table.budget_top)].max_level_at_most(limit2)
    return CountEstimate(k, cgrid.base, cgrid.t_exp, cgrid.eps)
