"""Shared exception types."""


class DimensionError(ValueError):
    """Operands or states with incompatible qubit counts / dimensions."""


class ResourceLimitError(RuntimeError):
    """Dense realization or simulation beyond the configured qubit cap."""


class AngleDomainError(ValueError):
    """An arcsin argument left [-1, 1] beyond numerical tolerance."""


class PlanningError(RuntimeError):
    """No valid weight-<=2 Z-mask decomposition found for a target string."""

    def __init__(self, message: str, offending_string: str | None = None):
        super().__init__(message)
        self.offending_string = offending_string
