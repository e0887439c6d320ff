"""Exception hierarchy shared by every module."""


class GraphProductError(Exception):
    """Base class for all library errors."""


class InputError(GraphProductError, ValueError):
    """A caller supplied malformed or out-of-contract input."""


class BudgetExceeded(GraphProductError):
    """An enumeration or search exceeded its configured cap."""


class InvalidDiagram(GraphProductError):
    """A disk diagram failed an internal consistency requirement."""
