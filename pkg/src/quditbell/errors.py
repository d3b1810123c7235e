"""Exception types raised across the toolkit."""


class DimensionLimitError(ValueError):
    """A dense operator or state would exceed the configured dimension cap."""


class EnumerationLimitError(ValueError):
    """An exhaustive LHV search would exceed the strategy-count cap."""


class HermiticityError(ValueError):
    """Matrix handed to a Hermitian solver is not Hermitian within tolerance."""
