"""Exception hierarchy shared by all modules."""


class CosetCodeError(ValueError):
    """Base class for all package errors."""


class FieldMismatchError(CosetCodeError):
    """Operands live in different fields or ambient spaces."""


class InfeasibleParametersError(CosetCodeError):
    """Parameters outside the supported or mathematically valid range."""


class ShapeError(CosetCodeError):
    """Matrix shapes do not fit the requested operation."""


class BlueprintError(CosetCodeError):
    """A coset blueprint violates one of its invariants.

    ``witness`` carries the offending indices/objects when available.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class OracleGapError(CosetCodeError):
    """An A_q(n, d; k) value is required but unknown to the oracle."""

    def __init__(self, q: int, n: int, d: int, k: int):
        super().__init__(f"A_{q}({n},{d};{k}) is not known to the oracle")
        self.key = (q, n, d, k)


class BudgetExceededError(CosetCodeError):
    """An enumeration or search exceeded its configured budget."""

    def __init__(self, message: str, incumbent=None, bound=None):
        super().__init__(message)
        self.incumbent = incumbent
        self.bound = bound


class ParseError(CosetCodeError):
    """Malformed code file, manifest or table."""
