"""Command line interface.

Every successful invocation prints one JSON envelope to stdout:

    {"command": ..., "input_digest": ..., "parameters": ...,
     "result": ..., "timing_ms": ..., "warnings": [...]}

All numeric values inside ``result`` are decimal strings (or ``p/q``
rationals), never floats.  Diagnostics go to stderr only; on error no
partial envelope is written.  Exit codes: 0 success, 2 invalid input,
3 valid input outside a documented capability limit, 1 unexpected
failure or a selftest violation.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from fractions import Fraction
from math import inf

from .bicriteria import (
    build_bi_table,
    build_pseudo_table,
    count_bicriteria_approx,
    count_pseudo,
)
from .errors import (
    CapabilityError,
    DagCountError,
    InputError,
    InvalidParameterError,
)
from .exact import (
    DEFAULT_CAP,
    enumerate_paths,
    exact_count_at_most,
    exact_count_bicriteria,
    exact_count_by_length,
)
from .fptas import as_fraction, build_staircase, count_at_most, count_rho_approx
from .generators import (
    gen_knapsack,
    gen_partition,
    gen_poly_product,
    gen_random_layered,
)
from .graph import (
    dag_from_json,
    dag_to_json,
    prune_to_st,
    total_path_count,
    weight_to_str,
)


def _parse_bound(text: str, what: str):
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return inf
    return as_fraction(text, what)


def _load_graph(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InvalidParameterError(f"cannot read graph file {path}: {exc}") from exc
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    return dag_from_json(raw.decode("utf-8")), digest


def _params_digest(parameters: dict) -> str:
    blob = json.dumps(parameters, sort_keys=True).encode("utf-8")
    return "sha256:" + hashlib.sha256(blob).hexdigest()


# ---- count subcommands ----


def _cmd_count_exact(args):
    dag, digest = _load_graph(args.graph)
    limit = _parse_bound(args.max_length, "max length")
    params = {"max_length": args.max_length, "cap": str(args.cap)}
    count = exact_count_at_most(dag, limit, cap=args.cap)
    return digest, params, {"kind": "exact_count", "count": str(count)}, []


def _cmd_count_dp_length(args):
    dag, digest = _load_graph(args.graph)
    limit = _parse_bound(args.max_length, "max length")
    params = {"max_length": args.max_length}
    count = exact_count_by_length(dag, limit)
    return digest, params, {"kind": "exact_count", "count": str(count)}, []


def _cmd_count_total(args):
    dag, digest = _load_graph(args.graph)
    count = total_path_count(prune_to_st(dag))
    return digest, {}, {"kind": "exact_count", "count": str(count)}, []


def _cmd_count_fptas(args):
    dag, digest = _load_graph(args.graph)
    limit = _parse_bound(args.max_length, "max length")
    params = {"max_length": args.max_length, "epsilon": args.epsilon}
    staircase = build_staircase(dag, as_fraction(args.epsilon, "epsilon"))
    estimate = count_at_most(staircase, limit)
    return digest, params, estimate.to_json_dict(), list(estimate.warnings)


def _cmd_count_rho(args):
    dag, digest = _load_graph(args.graph)
    params = {"rho": args.rho, "epsilon": args.epsilon}
    estimate = count_rho_approx(dag, as_fraction(args.rho, "rho"),
                                as_fraction(args.epsilon, "epsilon"))
    return digest, params, estimate.to_json_dict(), list(estimate.warnings)


def _cmd_count_bicriteria(args):
    dag, digest = _load_graph(args.graph)
    params = {"l1": args.l1, "l2": args.l2,
              "epsilon": args.epsilon, "delta": args.delta}
    table = build_bi_table(dag, as_fraction(args.epsilon, "epsilon"),
                           as_fraction(args.delta, "delta"),
                           as_fraction(args.l1, "l1"))
    estimate = count_bicriteria_approx(table, _parse_bound(args.l2, "l2"))
    return digest, params, estimate.to_json_dict(), list(estimate.warnings)


def _cmd_count_bicriteria_pseudo(args):
    dag, digest = _load_graph(args.graph)
    params = {"l1": args.l1, "l2": args.l2, "epsilon": args.epsilon}
    table = build_pseudo_table(dag, as_fraction(args.epsilon, "epsilon"),
                               as_fraction(args.l1, "l1"))
    estimate = count_pseudo(table, _parse_bound(args.l2, "l2"))
    result = estimate.to_json_dict()
    result["kind"] = "pseudo_polynomial_estimate"
    result["budget"] = str(table.budget_top)
    return digest, params, result, list(estimate.warnings)


def _cmd_count_bicriteria_exact(args):
    dag, digest = _load_graph(args.graph)
    params = {"l1": args.l1, "l2": args.l2, "cap": str(args.cap)}
    count = exact_count_bicriteria(dag, _parse_bound(args.l1, "l1"),
                                   _parse_bound(args.l2, "l2"), cap=args.cap)
    return digest, params, {"kind": "exact_count", "count": str(count)}, []


# ---- other subcommands ----


def _cmd_validate(args):
    dag, digest = _load_graph(args.graph)
    pruned = prune_to_st(dag)
    result = {
        "kind": "validation",
        "n": str(dag.n),
        "m": str(dag.m),
        "source": str(dag.s),
        "sink": str(dag.t),
        "reachable": pruned.reachable,
        "has_second_instance": dag.has_second_instance,
        "pruned_n": str(pruned.n),
        "pruned_m": str(pruned.m),
        "total_paths": str(total_path_count(pruned)),
    }
    return digest, {}, result, []


def _cmd_report(args):
    from .report import render_staircase_report

    dag, digest = _load_graph(args.graph)
    params = {"epsilon": args.epsilon, "out_dir": args.out_dir}
    staircase = build_staircase(dag, as_fraction(args.epsilon, "epsilon"))
    result = render_staircase_report(staircase, args.out_dir)
    return digest, params, result, []


def _cmd_gen(args):
    if args.family == "partition":
        values = _int_list(args.values, "values")
        instance = gen_partition(values)
        params = {"family": "partition", "values": args.values}
    elif args.family == "knapsack":
        instance = gen_knapsack(
            _int_list(args.profits, "profits"),
            _int_list(args.weights, "weights"),
            args.capacity, args.target,
        )
        params = {
            "family": "knapsack", "profits": args.profits,
            "weights": args.weights, "capacity": str(args.capacity),
            "target": str(args.target),
        }
    elif args.family == "random":
        instance = gen_random_layered(
            args.layers, args.width, args.p, args.seed,
            weight_max=args.weight_max, second_instance=args.bi,
        )
        params = {
            "family": "random", "layers": str(args.layers),
            "width": str(args.width), "p": str(args.p),
            "seed": str(args.seed), "weight_max": str(args.weight_max),
            "bi": args.bi,
        }
    else:
        factors = [
            _int_list(part, "factor") for part in args.factors.split(";") if part
        ]
        instance = gen_poly_product(factors)
        params = {"family": "poly", "factors": args.factors}

    graph_text = dag_to_json(instance.dag)
    with open(args.graph_out, "w", encoding="utf-8") as fh:
        fh.write(graph_text)
    result = {
        "kind": "generated_instance",
        "graph_file": args.graph_out,
        "n": str(instance.dag.n),
        "m": str(instance.dag.m),
        "queries": [q.to_json_dict() for q in instance.queries],
        "notes": list(instance.notes),
    }
    if args.queries_out:
        with open(args.queries_out, "w", encoding="utf-8") as fh:
            json.dump(instance.queries_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        result["queries_file"] = args.queries_out
    return _params_digest(params), params, result, []


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise InvalidParameterError(f"{what} must be comma-separated integers") from exc


def _cmd_selftest(args):
    rng = random.Random(args.seed)
    checks = violations = 0
    details: list[str] = []
    for trial in range(args.trials):
        dag = _random_selftest_dag(rng)
        if dag is None:
            continue
        eps = rng.choice([Fraction(1, 4), Fraction(1, 2), Fraction(1)])
        staircase = build_staircase(dag, eps)
        pruned = staircase.dag
        lengths = enumerate_paths(pruned, cap=DEFAULT_CAP)
        grid = staircase.grid
        q = grid.base
        for v in pruned.topo_order:
            pos = pruned.topo_position[v]
            row = staircase.rows[v]
            for j in range(pos, grid.s_max + 1):
                value = row.value_at(j)
                lo = lengths.min_length_for_count(q ** (j - pos), v=v)
                hi = lengths.min_length_for_count(q ** j, v=v)
                checks += 1
                if not (lo <= value and (value is inf or value <= hi)):
                    violations += 1
                    details.append(f"trial {trial}: sandwich broken at v={v} j={j}")
        for _ in range(3):
            limit = Fraction(rng.randint(0, 40))
            exact = lengths.count_at_most(limit)
            estimate = count_at_most(staircase, limit)
            checks += 1
            if not estimate.brackets(exact):
                violations += 1
                details.append(f"trial {trial}: ratio broken at limit {limit}")
    for line in details:
        print(line, file=sys.stderr)
    params = {"trials": str(args.trials), "seed": str(args.seed)}
    result = {
        "kind": "selftest",
        "trials": str(args.trials),
        "checks": str(checks),
        "violations": str(violations),
    }
    return _params_digest(params), params, result, []


def _random_selftest_dag(rng):
    n = rng.randint(3, 6)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            for _ in range(rng.randint(0, 2)):
                if rng.random() < 0.6:
                    edges.append((a, b, Fraction(rng.randint(0, 9))))
    from .graph import validate_and_sort

    try:
        dag = prune_to_st(validate_and_sort(n, 0, n - 1, edges))
    except DagCountError:
        return None
    return dag if dag.reachable else None


# ---- parser ----


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dagcount",
        description="Exact and approximate counting of bounded-length "
                    "s-t paths in weighted DAGs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="count s-t paths under length bounds")
    modes = count.add_subparsers(dest="mode", required=True)

    def count_mode(name, help_, **flags):
        p = modes.add_parser(name, help=help_)
        p.add_argument("--graph", required=True, help="graph JSON file")
        for flag, (required, default, help_text) in flags.items():
            p.add_argument(flag, required=required, default=default,
                           help=help_text)
        return p

    p = count_mode("exact", "enumerate paths up to a length bound",
                   **{"--max-length": (True, None, "length bound (or 'inf')")})
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help=f"refuse to enumerate more paths than this "
                        f"(default {DEFAULT_CAP})")
    p.set_defaults(func=_cmd_count_exact)

    p = count_mode("dp-length", "integer-weight counting DP by length",
                   **{"--max-length": (True, None, "length bound")})
    p.set_defaults(func=_cmd_count_dp_length)

    p = count_mode("total", "total number of s-t paths")
    p.set_defaults(func=_cmd_count_total)

    p = count_mode("fptas", "certified (1+eps) estimate at a length bound",
                   **{"--max-length": (True, None, "length bound (or 'inf')"),
                      "--epsilon": (True, None, "relative accuracy, e.g. 0.25")})
    p.set_defaults(func=_cmd_count_fptas)

    p = count_mode("rho", "estimate at rho times the shortest path length",
                   **{"--rho": (True, None, "stretch factor >= 1"),
                      "--epsilon": (True, None, "relative accuracy")})
    p.set_defaults(func=_cmd_count_rho)

    p = count_mode("bicriteria", "two-budget estimate on the rounded grid",
                   **{"--l1": (True, None, "first-instance budget"),
                      "--l2": (True, None, "second-instance bound (or 'inf')"),
                      "--epsilon": (True, None, "count accuracy"),
                      "--delta": (True, None, "budget accuracy")})
    p.set_defaults(func=_cmd_count_bicriteria)

    p = count_mode("bicriteria-pseudo",
                   "budget-exact estimate for integer first-instance weights",
                   **{"--l1": (True, None, "integer first-instance budget"),
                      "--l2": (True, None, "second-instance bound (or 'inf')"),
                      "--epsilon": (True, None, "count accuracy")})
    p.set_defaults(func=_cmd_count_bicriteria_pseudo)

    p = count_mode("bicriteria-exact", "enumerate paths under both bounds",
                   **{"--l1": (True, None, "first-instance budget (or 'inf')"),
                      "--l2": (True, None, "second-instance bound (or 'inf')")})
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="enumeration cap")
    p.set_defaults(func=_cmd_count_bicriteria_exact)

    gen = sub.add_parser("gen", help="generate benchmark instances")
    fams = gen.add_subparsers(dest="family", required=True)

    def gen_family(name, help_):
        p = fams.add_parser(name, help=help_)
        p.add_argument("--graph-out", required=True, help="graph JSON output path")
        p.add_argument("--queries-out", default=None,
                       help="optional queries JSON output path")
        return p

    p = gen_family("partition", "sign-assignment chain from a value multiset")
    p.add_argument("--values", required=True,
                   help="comma-separated positive integers")

    p = gen_family("knapsack", "take/skip chain with profit as second instance")
    p.add_argument("--profits", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--target", type=int, required=True)

    p = gen_family("random", "random layered DAG")
    p.add_argument("--layers", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--p", type=float, required=True, help="edge probability")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--weight-max", type=int, default=10)
    p.add_argument("--bi", action="store_true",
                   help="also sample second-instance weights")

    p = gen_family("poly", "chain encoding a polynomial product")
    p.add_argument("--factors", required=True,
                   help="semicolon-separated coefficient lists, e.g. '1,2;0,1,3'")
    for fam in fams.choices.values():
        fam.set_defaults(func=_cmd_gen)

    p = sub.add_parser("validate", help="check a graph file and report its shape")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("selftest",
                       help="random sweep checking certified guarantees; "
                            "exits 1 on any violation")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_selftest)

    p = sub.add_parser("report",
                       help="write staircase breakpoints as CSV plus a figure")
    p.add_argument("--graph", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_report)

    parser.add_argument("--out", default=None,
                        help="also write the result envelope to this file")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        digest, params, result, warnings = args.func(args)
    except InputError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except CapabilityError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except DagCountError as exc:  # pragma: no cover - family catch-all
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report, never traceback to stdout
        print(f"error[Internal]: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    command = args.command
    for extra in ("mode", "family"):
        part = getattr(args, extra, None)
        if part:
            command += f" {part}"
    envelope = {
        "command": command,
        "input_digest": digest,
        "parameters": params,
        "result": result,
        "timing_ms": int((time.monotonic() - started) * 1000),
        "warnings": warnings,
    }
    text = json.dumps(envelope, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if command == "selftest" and result.get("violations") != "0":
        return 1
    return 0
