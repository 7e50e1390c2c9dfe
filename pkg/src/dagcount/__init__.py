"""Exact and approximate counting of bounded-length s-t paths in DAGs.

The package counts directed s-t paths whose weighted length stays under a
bound, in edge-weighted directed acyclic multigraphs.  Exact counters
(enumeration and an integer-weight DP) sit next to a certified
approximation scheme built on a geometric count grid, a bicriteria
extension with a second weight instance, instance generators with
independent ground truth, and a command line front end.
"""
from .bicriteria import (
    BiEstimate,
    BiTable,
    BudgetGrid,
    PseudoTable,
    build_bi_table,
    build_pseudo_table,
    count_bicriteria_approx,
    count_pseudo,
)
from .errors import (
    CapExceededError,
    CapabilityError,
    CyclicGraphError,
    DagCountError,
    DanglingVertexIdError,
    DegenerateInstanceError,
    DimensionMismatchError,
    EmptyInputError,
    InputError,
    InstanceTooLargeError,
    InstanceTwoAbsentError,
    InvalidGraphJsonError,
    InvalidParameterError,
    NegativeCoefficientError,
    NoPathError,
    NonIntegerWeightsError,
    NonPositiveBudgetError,
    SelfLoopError,
    SourceEqualsSinkError,
    UnrescalableInstanceError,
)
from .exact import (
    DEFAULT_CAP,
    PathLengths,
    ReferenceStaircase,
    brute_force_staircase,
    enumerate_paths,
    exact_count_at_most,
    exact_count_bicriteria,
    exact_count_by_length,
    min_length_for_count,
)
from .fptas import (
    CountEstimate,
    CountGrid,
    as_fraction,
    build_staircase,
    count_at_most,
    count_rho_approx,
)
from .generators import (
    GeneratedInstance,
    Query,
    gen_knapsack,
    gen_partition,
    gen_poly_product,
    gen_random_layered,
    knapsack_solution_count,
    polynomial_product,
    subset_sum_counts,
)
from .graph import (
    Dag,
    Edge,
    dag_from_json,
    dag_to_json,
    prune_to_st,
    shortest_path_length,
    total_path_count,
    validate_and_sort,
    weight_to_str,
)
from .staircase import SOURCE_ROW, CompressedRow, Staircase, build_row

__version__ = "0.1.0"

__all__ = [
    "BiEstimate",
    "BiTable",
    "BudgetGrid",
    "CapExceededError",
    "CapabilityError",
    "CompressedRow",
    "CountEstimate",
    "CountGrid",
    "CyclicGraphError",
    "DEFAULT_CAP",
    "Dag",
    "DagCountError",
    "DanglingVertexIdError",
    "DegenerateInstanceError",
    "DimensionMismatchError",
    "Edge",
    "EmptyInputError",
    "GeneratedInstance",
    "InputError",
    "InstanceTooLargeError",
    "InstanceTwoAbsentError",
    "InvalidGraphJsonError",
    "InvalidParameterError",
    "NegativeCoefficientError",
    "NoPathError",
    "NonIntegerWeightsError",
    "NonPositiveBudgetError",
    "PathLengths",
    "PseudoTable",
    "Query",
    "ReferenceStaircase",
    "SOURCE_ROW",
    "SelfLoopError",
    "SourceEqualsSinkError",
    "Staircase",
    "UnrescalableInstanceError",
    "as_fraction",
    "brute_force_staircase",
    "build_bi_table",
    "build_pseudo_table",
    "build_row",
    "build_staircase",
    "count_at_most",
    "count_bicriteria_approx",
    "count_pseudo",
    "count_rho_approx",
    "dag_from_json",
    "dag_to_json",
    "enumerate_paths",
    "exact_count_at_most",
    "exact_count_bicriteria",
    "exact_count_by_length",
    "gen_knapsack",
    "gen_partition",
    "gen_poly_product",
    "gen_random_layered",
    "knapsack_solution_count",
    "min_length_for_count",
    "polynomial_product",
    "prune_to_st",
    "shortest_path_length",
    "subset_sum_counts",
    "total_path_count",
    "validate_and_sort",
    "weight_to_str",
]
