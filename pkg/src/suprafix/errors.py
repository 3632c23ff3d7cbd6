"""Exception types shared across the package."""


class SupraError(Exception):
    """Base class for all package-specific errors."""


class EvaluationError(SupraError):
    """A distance or comparison-function evaluation produced a non-finite value.

    Carries the offending operands so reports can point at the exact input.
    """

    def __init__(self, message, operands=None):
        super().__init__(message)
        self.operands = operands


class DomainEscapeError(SupraError):
    """A self-map produced a point outside the analytic domain box."""

    def __init__(self, message, iteration=None, point=None):
        super().__init__(message)
        self.iteration = iteration
        self.point = point


class DegenerateSampleError(SupraError):
    """A sample contained no usable triples (or points) for the requested fit."""


class SpaceFormatError(SupraError):
    """A finite-space file is unreadable or structurally malformed."""


class SemimetricFileError(SupraError):
    """A finite-space file parses but violates semi-metric validation.

    ``witnesses`` is a list of (kind, i, j, value, counter_value) tuples,
    where kind is one of "symmetry", "diagonal", "negative".
    """

    def __init__(self, message, witnesses):
        super().__init__(message)
        self.witnesses = witnesses
