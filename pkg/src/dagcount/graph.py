"""Edge-weighted directed acyclic multigraphs with a designated source and sink.

Vertices are integers ``0..n-1``.  Parallel edges are allowed, self loops are
not.  Each edge carries an exact nonnegative rational weight ``w1`` and an
optional second weight ``w2``.  A ``Dag`` is immutable once built; construct
one through :func:`validate_and_sort` or :func:`prune_to_st`.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .errors import (
    CyclicGraphError,
    DanglingVertexIdError,
    InstanceTwoAbsentError,
    InvalidGraphJsonError,
    InvalidParameterError,
    SelfLoopError,
    SourceEqualsSinkError,
)


@dataclass(frozen=True)
class Edge:
    """Directed edge ``tail -> head`` with one or two exact weights."""

    tail: int
    head: int
    w1: Fraction
    w2: Fraction | None = None

    def weight(self, instance: int) -> Fraction:
        if instance == 1:
            return self.w1
        if instance == 2:
            if self.w2 is None:
                raise InstanceTwoAbsentError("edge has no second-instance weight")
            return self.w2
        raise InvalidParameterError(f"instance must be 1 or 2, got {instance}")


class Dag:
    """Validated DAG with cached topological data.

    Do not mutate. ``topo_order`` lists vertices so every edge goes from an
    earlier to a later position; after :func:`prune_to_st` the vertex ids are
    the topological positions themselves, with ``s == 0`` and ``t == n - 1``.
    """

    __slots__ = (
        "n", "edges", "s", "t", "topo_order", "is_pruned", "reachable",
        "topo_position", "in_edges", "out_edges",
    )

    def __init__(self, n, edges, s, t, topo_order, is_pruned, reachable):
        self.n = n
        self.edges = tuple(edges)
        self.s = s
        self.t = t
        self.topo_order = tuple(topo_order)
        self.is_pruned = is_pruned
        self.reachable = reachable
        pos = [0] * n
        for i, v in enumerate(self.topo_order):
            pos[v] = i
        self.topo_position = tuple(pos)
        incoming: list[list[int]] = [[] for _ in range(n)]
        outgoing: list[list[int]] = [[] for _ in range(n)]
        for idx, e in enumerate(self.edges):
            incoming[e.head].append(idx)
            outgoing[e.tail].append(idx)
        self.in_edges = tuple(tuple(x) for x in incoming)
        self.out_edges = tuple(tuple(x) for x in outgoing)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def has_second_instance(self) -> bool:
        return all(e.w2 is not None for e in self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return (
            self.n == other.n and self.s == other.s and self.t == other.t
            and self.edges == other.edges and self.topo_order == other.topo_order
        )

    def __hash__(self):
        return hash((self.n, self.s, self.t, self.edges))

    def __repr__(self) -> str:
        return f"Dag(n={self.n}, m={self.m}, s={self.s}, t={self.t})"


def _check_weight(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise InvalidParameterError(
            f"{what} must not be a binary float; pass int, Fraction, or string"
        )
    try:
        value = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"cannot parse {what} {value!r}") from exc
    if value < 0:
        raise InvalidParameterError(f"{what} must be nonnegative, got {value}")
    return value


def validate_and_sort(n: int, s: int, t: int, edges) -> Dag:
    """Check structural invariants and return a Dag with a cached topo order.

    Raises CyclicGraphError, SelfLoopError, SourceEqualsSinkError, or
    DanglingVertexIdError.  The deterministic topological order is produced
    by Kahn's algorithm popping the smallest available vertex id first.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidParameterError(f"need at least 2 vertices, got n={n!r}")
    if s == t:
        raise SourceEqualsSinkError(f"source and sink coincide at {s}")
    for name, v in (("s", s), ("t", t)):
        if not isinstance(v, int) or not 0 <= v < n:
            raise DanglingVertexIdError(f"{name}={v!r} is not a vertex id in 0..{n - 1}")
    checked: list[Edge] = []
    for e in edges:
        if not isinstance(e, Edge):
            tail, head, w1 = e[0], e[1], e[2]
            w2 = e[3] if len(e) > 3 else None
            e = Edge(tail, head, _check_weight(w1, "w1"),
                     None if w2 is None else _check_weight(w2, "w2"))
        if not (isinstance(e.tail, int) and 0 <= e.tail < n):
            raise DanglingVertexIdError(f"edge tail {e.tail!r} out of range")
        if not (isinstance(e.head, int) and 0 <= e.head < n):
            raise DanglingVertexIdError(f"edge head {e.head!r} out of range")
        if e.tail == e.head:
            raise SelfLoopError(f"self loop at vertex {e.tail}")
        _check_weight(e.w1, "w1")
        if e.w2 is not None:
            _check_weight(e.w2, "w2")
        checked.append(e)

    order = _kahn_order(n, checked)
    if order is None:
        raise CyclicGraphError("graph contains a directed cycle")
    reachable = t in _forward_set(n, checked, s)
    return Dag(n, checked, s, t, order, is_pruned=False, reachable=reachable)


def _kahn_order(n: int, edges: list[Edge]) -> list[int] | None:
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        indeg[e.head] += 1
        succ[e.tail].append(e.head)
    ready = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order if len(order) == n else None


def _forward_set(n: int, edges: list[Edge], start: int) -> set[int]:
    succ: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        succ[e.tail].append(e.head)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _backward_set(n: int, edges: list[Edge], start: int) -> set[int]:
    pred: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        pred[e.head].append(e.tail)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in pred[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def prune_to_st(dag: Dag) -> Dag:
    """Restrict to vertices and edges that lie on at least one s-t path.

    Vertices are relabelled by topological position, so the result has
    ``s == 0``, ``t == n - 1`` and ``topo_order == (0, 1, ..., n - 1)``.
    Edges are sorted canonically, which also fixes the tie-breaking order
    used by the staircase builders.  When t is unreachable the result is a
    two-vertex edgeless graph with ``reachable == False``.  Idempotent.
    """
    if dag.is_pruned:
        return dag
    edges = list(dag.edges)
    fwd = _forward_set(dag.n, edges, dag.s)
    if dag.t not in fwd:
        return Dag(2, (), 0, 1, (0, 1), is_pruned=True, reachable=False)
    bwd = _backward_set(dag.n, edges, dag.t)
    keep_vertices = fwd & bwd
    kept_edges = [e for e in edges if e.tail in keep_vertices and e.head in keep_vertices]
    sub_order = _kahn_subgraph_order(sorted(keep_vertices), kept_edges)
    relabel = {old: new for new, old in enumerate(sub_order)}
    new_edges = sorted(
        (
            Edge(relabel[e.tail], relabel[e.head], e.w1, e.w2)
            for e in kept_edges
        ),
        key=lambda e: (e.tail, e.head, e.w1, e.w2 is not None, e.w2 or 0),
    )
    n2 = len(sub_order)
    return Dag(
        n2, new_edges, relabel[dag.s], relabel[dag.t],
        tuple(range(n2)), is_pruned=True, reachable=True,
    )


def _kahn_subgraph_order(vertices: list[int], edges: list[Edge]) -> list[int]:
    indeg = {v: 0 for v in vertices}
    succ: dict[int, list[int]] = {v: [] for v in vertices}
    for e in edges:
        indeg[e.head] += 1
        succ[e.tail].append(e.head)
    ready = [v for v in vertices if indeg[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return order


def shortest_path_length(dag: Dag, instance: int = 1):
    """Exact shortest s-t path length, or +inf when no path exists."""
    if instance == 2 and not dag.has_second_instance:
        raise InstanceTwoAbsentError("not every edge carries a second-instance weight")
    best: list = [inf] * dag.n
    best[dag.s] = Fraction(0)
    for v in dag.topo_order:
        if best[v] is inf:
            continue
        for idx in dag.out_edges[v]:
            e = dag.edges[idx]
            cand = best[v] + e.weight(instance)
            if cand < best[e.head]:
                best[e.head] = cand
    return best[dag.t]


def total_path_count(dag: Dag) -> int:
    """Number of distinct s-t paths (exact big integer)."""
    count = [0] * dag.n
    count[dag.s] = 1
    for v in dag.topo_order:
        if count[v]:
            for idx in dag.out_edges[v]:
                count[dag.edges[idx].head] += count[v]
    return count[dag.t]


# ---- JSON interchange ----

def _weight_from_json(value, what: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidGraphJsonError(
            f"{what} must be a decimal string or integer, not a binary float: {value!r}"
        )
    if isinstance(value, int):
        w = Fraction(value)
    elif isinstance(value, str):
        try:
            w = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidGraphJsonError(f"cannot parse {what} value {value!r}") from exc
    else:
        raise InvalidGraphJsonError(f"{what} has unsupported type {type(value).__name__}")
    if w < 0:
        raise InvalidGraphJsonError(f"{what} must be nonnegative, got {value!r}")
    return w


def weight_to_str(w: Fraction) -> str:
    """Render a rational exactly: a decimal string when the denominator is
    10-smooth, otherwise ``p/q`` (both parse back via ``Fraction``)."""
    den = w.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    k = max(twos, fives)
    scaled = w.numerator * 10 ** k // w.denominator
    if k == 0:
        return str(scaled)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(k + 1, "0")
    out = f"{sign}{digits[:-k]}.{digits[-k:]}".rstrip("0").rstrip(".")
    return out if out not in ("", "-") else "0"


def dag_from_json(source) -> Dag:
    """Build a validated Dag from a JSON string or an already-parsed dict."""
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise InvalidGraphJsonError(f"not valid JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, dict):
        raise InvalidGraphJsonError("graph JSON must be an object")
    for key in ("n", "s", "t", "edges"):
        if key not in obj:
            raise InvalidGraphJsonError(f"graph JSON missing key {key!r}")
    n, s, t = obj["n"], obj["s"], obj["t"]
    for name, v in (("n", n), ("s", s), ("t", t)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidGraphJsonError(f"{name} must be an integer, got {v!r}")
    raw_edges = obj["edges"]
    if not isinstance(raw_edges, list):
        raise InvalidGraphJsonError("edges must be an array")
    edges = []
    for i, re in enumerate(raw_edges):
        if not isinstance(re, dict):
            raise InvalidGraphJsonError(f"edge #{i} must be an object")
        for key in ("tail", "head"):
            if key not in re:
                raise InvalidGraphJsonError(f"edge #{i} missing key {key!r}")
            if isinstance(re[key], bool) or not isinstance(re[key], int):
                raise InvalidGraphJsonError(f"edge #{i} {key} must be an integer")
        if "w1" not in re:
            raise InvalidGraphJsonError(f"edge #{i} missing key 'w1'")
        w1 = _weight_from_json(re["w1"], f"edge #{i} w1")
        w2 = None
        if re.get("w2") is not None:
            w2 = _weight_from_json(re["w2"], f"edge #{i} w2")
        edges.append(Edge(re["tail"], re["head"], w1, w2))
    return validate_and_sort(n, s, t, edges)


def dag_to_json_dict(dag: Dag) -> dict:
    edges = []
    for e in dag.edges:
        entry: dict = {"tail": e.tail, "head": e.head, "w1": weight_to_str(e.w1)}
        if e.w2 is not None:
            entry["w2"] = weight_to_str(e.w2)
        edges.append(entry)
    return {"n": dag.n, "s": dag.s, "t": dag.t, "edges": edges}


def dag_to_json(dag: Dag) -> str:
    """Canonical JSON text: sorted keys, no whitespace, trailing newline."""
    return json.dumps(dag_to_json_dict(dag), sort_keys=True, separators=(",", ":")) + "\n"
