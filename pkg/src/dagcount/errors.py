"""Exception hierarchy shared across the package.

Every error carries a stable ``code`` string so the CLI can report it
uniformly.  Two broad families matter for exit codes: problems with the
input itself (bad graphs, bad parameters) and problems of capability
(the request is well formed but outside what this build will compute).
"""
from __future__ import annotations


class DagCountError(Exception):
    """Base class for all errors raised by this package."""

    code = "DagCountError"


class InputError(DagCountError):
    """The input graph, query, or parameter set is invalid."""

    code = "InputError"


class CapabilityError(DagCountError):
    """The request is valid but exceeds a documented limit."""

    code = "CapabilityError"


# ---- graph validation ----

class CyclicGraphError(InputError):
    code = "CyclicGraph"


class SelfLoopError(InputError):
    code = "SelfLoop"


class SourceEqualsSinkError(InputError):
    code = "SourceEqualsSink"


class DanglingVertexIdError(InputError):
    code = "DanglingVertexId"


class InvalidGraphJsonError(InputError):
    code = "InvalidGraphJson"


# ---- queries and parameters ----

class NoPathError(InputError):
    code = "NoPath"


class NonPositiveBudgetError(InputError):
    # first-instance budget L1 must be positive
    code = "NonPositiveL1"


class InvalidParameterError(InputError):
    code = "InvalidParameter"


class EmptyInputError(InputError):
    code = "EmptyInput"


class DimensionMismatchError(InputError):
    code = "DimensionMismatch"


class UnrescalableInstanceError(InputError):
    code = "UnrescalableInstance"


class DegenerateInstanceError(InputError):
    code = "DegenerateInstance"


class NegativeCoefficientError(InputError):
    code = "NegativeCoefficient"


# ---- capability limits ----

class CapExceededError(CapabilityError):
    """Enumeration would produce more paths than the configured cap."""

    code = "CapExceeded"

    def __init__(self, total: int, cap: int):
        self.total = total
        self.cap = cap
        super().__init__(
            f"path count {total} exceeds enumeration cap {cap}; "
            f"raise the cap or use an approximate counter"
        )


class NonIntegerWeightsError(CapabilityError):
    code = "NonIntegerWeights"


class InstanceTwoAbsentError(CapabilityError):
    code = "InstanceTwoAbsent"


class InstanceTooLargeError(CapabilityError):
    code = "InstanceTooLarge"
