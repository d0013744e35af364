"""Exception types shared across the toolkit."""


class SecrecyToolkitError(Exception):
    """Base class for all toolkit errors."""


class InputShapeError(SecrecyToolkitError):
    """A bit word or table has the wrong length/shape for the operation."""


class InfeasibleCodeError(SecrecyToolkitError):
    """The requested rate pair lies outside the achievable region."""


class GeometryError(SecrecyToolkitError):
    """A received word is too short for the code layout (invalid code)."""


class EnumerationBudgetError(SecrecyToolkitError):
    """Exhaustive enumeration would exceed the configured bit budget."""


class SchemaError(SecrecyToolkitError):
    """Unknown variable/parameter name or malformed input document."""


class HypothesisError(SecrecyToolkitError):
    """A channel-ordering hypothesis required by the formula is violated."""


class UnsupportedShapeError(SecrecyToolkitError):
    """min/max appears in a disjunctive position and cannot be expanded."""


class AlphabetBudgetError(SecrecyToolkitError):
    """A derived finite alphabet would exceed the configured size budget."""
