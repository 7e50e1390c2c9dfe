"""Fully polynomial approximation scheme for bounded-length path counting.

The count axis is rounded to powers of a dyadic base q = 1 + 2**-t chosen
so q**(n+1) <= 1 + eps.  A staircase of length thresholds per vertex is
built bottom up; reading off the sink row turns any length bound L into a
count estimate q**k that is within a factor (1 + eps) of the exact count.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import inf

from .dyadic import (
    ceil_log_base,
    dyadic_base,
    fraction_to_decimal,
    power_decimal,
    smallest_dyadic_exponent,
)
from .errors import InvalidParameterError, NoPathError
from .graph import Dag, prune_to_st, shortest_path_length, total_path_count
from .staircase import SOURCE_ROW, CompressedRow, Staircase, build_row


def as_fraction(value, what: str = "value") -> Fraction:
    """Exact conversion accepting int, Fraction, Decimal, or numeric string.

    Binary floats are rejected: they would smuggle rounding error into a
    path that is exact everywhere else.
    """
    if isinstance(value, float):
        raise InvalidParameterError(
            f"{what} must not be a binary float; pass a string or Fraction"
        )
    if isinstance(value, (int, Fraction, Decimal, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameterError(f"cannot parse {what} {value!r}") from exc
    raise InvalidParameterError(f"{what} has unsupported type {type(value).__name__}")


@dataclass(frozen=True)
class CountGrid:
    """Geometric count grid: levels j = 0..s_max stand for base**j paths."""

    eps: Fraction
    n: int
    t_exp: int
    base: Fraction
    s_max: int
    fineness_power: int

    @classmethod
    def for_graph(cls, dag: Dag, eps, fineness_power: int | None = None) -> CountGrid:
        """Pick the largest dyadic base with base**power <= 1 + eps and a
        level count covering every possible path count of ``dag``.

        ``power`` defaults to n + 1.  The classic bound of 2**(n-2) paths
        holds for simple graphs only; with parallel edges the exact total
        count is used instead whenever it is larger.
        """
        eps = as_fraction(eps, "epsilon")
        if eps <= 0:
            raise InvalidParameterError(f"epsilon must be positive, got {eps}")
        n = dag.n
        power = fineness_power if fineness_power is not None else n + 1
        t_exp = smallest_dyadic_exponent(eps, power)
        coverage = max(1 << max(n - 2, 0), total_path_count(dag), 1)
        s_max = ceil_log_base(t_exp, coverage)
        return cls(eps, n, t_exp, dyadic_base(t_exp), s_max, power)


@dataclass(frozen=True)
class CountEstimate:
    """Approximate count base**exponent with certified relative bounds.

    ``exponent`` is None for a certified zero.  Decimal fields are rendered
    to 28 significant digits; the bound renderings round outward, so the
    printed interval always contains the exact one.
    """

    exponent: int | None
    base: Fraction
    t_exp: int
    epsilon: Fraction
    warnings: tuple[str, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def value_fraction(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return self.base ** self.exponent

    @property
    def lower_bound_fraction(self) -> Fraction:
        return self.value_fraction / (1 + self.epsilon)

    @property
    def upper_bound_fraction(self) -> Fraction:
        return self.value_fraction * (1 + self.epsilon)

    def brackets(self, count: int) -> bool:
        """True when an exact count is within the certified (1+eps) factor."""
        if self.exponent is None:
            return count == 0
        value = self.value_fraction
        return count <= value * (1 + self.epsilon) and value <= count * (1 + self.epsilon)

    def _render(self, scale: Fraction, rounding: str) -> str:
        if self.exponent is None:
            return "0"
        return power_decimal(self.t_exp, self.exponent, scale, rounding)

    @property
    def value_decimal(self) -> str:
        return self._render(Fraction(1), "nearest")

    @property
    def lower_bound_decimal(self) -> str:
        return self._render(1 / (1 + self.epsilon), "floor")

    @property
    def upper_bound_decimal(self) -> str:
        return self._render(1 + self.epsilon, "ceiling")

    def to_json_dict(self) -> dict:
        return {
            "kind": "count_estimate",
            "exponent": self.exponent,
            "base": fraction_to_decimal(self.base),
            "epsilon": fraction_to_decimal(self.epsilon),
            "value_decimal": self.value_decimal,
            "lower_bound": self.lower_bound_decimal,
            "upper_bound": self.upper_bound_decimal,
        }


def build_staircase(dag: Dag, eps, *, accumulator: str = "auto") -> Staircase:
    """Build the length-threshold staircase for the first weight instance.

    The input is pruned first if needed; the returned ``Staircase.dag`` is
    the pruned graph and its vertex ids index the rows.
    """
    dag = dag if dag.is_pruned else prune_to_st(dag)
    grid = CountGrid.for_graph(dag, eps)
    rows = _build_all_rows(dag, grid, lambda e: e.w1, accumulator)
    return Staircase(dag=dag, grid=grid, rows=rows)


def _build_all_rows(dag: Dag, grid: CountGrid, weight_of, accumulator: str):
    rows: list[CompressedRow | None] = [None] * dag.n
    rows[dag.s] = SOURCE_ROW
    for v in dag.topo_order:
        if v == dag.s:
            continue
        preds = [
            (rows[dag.edges[i].tail], weight_of(dag.edges[i]))
            for i in dag.in_edges[v]
        ]
        rows[v] = build_row(preds, grid.t_exp, grid.s_max, accumulator)
    return tuple(rows)


def count_at_most(staircase: Staircase, limit) -> CountEstimate:
    """Estimate the number of s-t paths of length <= limit from the staircase."""
    limit = _limit_fraction(limit)
    grid = staircase.grid
    k = staircase.rows[staircase.dag.t].max_level_at_most(limit)
    return CountEstimate(k, grid.base, grid.t_exp, grid.eps)


def _limit_fraction(limit):
    if limit == inf or limit == -inf:
        return limit
    return as_fraction(limit, "length limit")


def count_rho_approx(dag: Dag, rho, eps) -> CountEstimate:
    """Estimate the count of paths no longer than rho times the optimum.

    Raises NoPathError when s cannot reach t.  When the shortest path has
    length zero the multiplicative query degenerates (every rho gives the
    same threshold); the estimate is still returned, with a warning flag.
    """
    rho = as_fraction(rho, "rho")
    if rho < 1:
        raise InvalidParameterError(f"rho must be >= 1, got {rho}")
    dag = dag if dag.is_pruned else prune_to_st(dag)
    if not dag.reachable:
        raise NoPathError("sink is unreachable from source")
    opt = shortest_path_length(dag, 1)
    staircase = build_staircase(dag, eps)
    estimate = count_at_most(staircase, rho * opt)
    if opt == 0:
        estimate = CountEstimate(
            estimate.exponent, estimate.base, estimate.t_exp, estimate.epsilon,
            warnings=("OptIsZero: shortest path has length 0; "
                      "rho does not scale the threshold",),
        )
    return estimate
