"""Monotone threshold rows and the greedy builder shared by every scheme.

A row stores, for each grid level j, the smallest length threshold the
builder could certify for a rounded path count of base**j.  Rows are
nondecreasing in j with long constant stretches, so they are kept
compressed as breakpoints: ``values[i]`` holds on levels
``(his[i-1], his[i]]`` (and from level 0 for i = 0); levels past
``his[-1]`` are +inf.

The builder processes one vertex from its predecessor rows.  Conceptually
each incoming edge advances level by level through its predecessor's row,
always the edge whose next threshold-plus-weight is smallest (ties to the
smaller edge index), while an accumulator sums base**level over the edges;
whenever the accumulated mass passes a grid threshold the current maximum
is recorded.  Because every level inside one breakpoint stretch shares the
same key, the whole stretch can be consumed in one step, which is what
makes large grids tractable; the recorded values are identical to the
level-by-level procedure.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .dyadic import make_accumulator


@dataclass(frozen=True)
class CompressedRow:
    """Breakpoint form of a monotone level-to-threshold map."""

    values: tuple[Fraction, ...]
    his: tuple[int, ...]

    def value_at(self, j: int):
        """Threshold at level j (+inf beyond the last finite level)."""
        if j < 0:
            raise IndexError(f"negative level {j}")
        idx = bisect_left(self.his, j)
        return self.values[idx] if idx < len(self.values) else inf

    @property
    def last_level(self) -> int:
        """Largest finite level, -1 for an all-infinite row."""
        return self.his[-1] if self.his else -1

    def max_level_at_most(self, limit) -> int | None:
        """Largest level whose threshold is <= limit, None if there is none."""
        idx = bisect_right(self.values, limit) - 1
        return self.his[idx] if idx >= 0 else None

    def materialize(self, top_level: int) -> list:
        """Dense [value_at(0), ..., value_at(top_level)] for small rows."""
        out = []
        i = 0
        for j in range(top_level + 1):
            while i < len(self.his) and self.his[i] < j:
                i += 1
            out.append(self.values[i] if i < len(self.values) else inf)
        return out


SOURCE_ROW = CompressedRow((Fraction(0),), (0,))


def build_row(preds: list[tuple[CompressedRow, Fraction]], t_exp: int, s_max: int,
              mode: str = "auto") -> CompressedRow:
    """One greedy pass over the predecessor rows of a vertex.

    ``preds`` pairs each incoming edge's predecessor row with the edge
    weight, in edge-index order (the deterministic tie-break).
    """
    runs: list[tuple[Fraction, int, int]] = []
    for e_idx, (prow, w) in enumerate(preds):
        vals = prow.values
        his = prow.his
        for i in range(len(vals)):
            runs.append((vals[i] + w, e_idx, his[i]))
    runs.sort()
    acc = make_accumulator(t_exp, s_max, mode)
    levels: list[int | None] = [None] * len(preds)
    out_vals: list[Fraction] = []
    out_his: list[int] = []
    j_ptr = -1
    for key, e_idx, hi in runs:
        acc.update(levels[e_idx], hi)
        levels[e_idx] = hi
        crossed = acc.max_crossed(j_ptr)
        if crossed > j_ptr:
            if out_vals and out_vals[-1] == key:
                out_his[-1] = crossed
            else:
                out_vals.append(key)
                out_his.append(crossed)
            j_ptr = crossed
            if j_ptr >= s_max:
                break
    return CompressedRow(tuple(out_vals), tuple(out_his))


@dataclass(frozen=True)
class Staircase:
    """Per-vertex threshold rows on a fixed count grid.

    ``rows[v]`` belongs to vertex v of the pruned graph (ids equal topo
    positions).  Immutable; safe to share between threads.
    """

    dag: object
    grid: object
    rows: tuple[CompressedRow, ...]

    def value(self, v: int, j: int):
        if not 0 <= j <= self.grid.s_max:
            raise IndexError(f"level {j} outside 0..{self.grid.s_max}")
        return self.rows[v].value_at(j)

    def row(self, v: int) -> CompressedRow:
        return self.rows[v]
