"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class RegionError(DomainError):
    """A linear-law evaluation was requested outside the linear region."""


class ConfigurationError(ValueError):
    """A band, wheel, or machine description is incomplete or inconsistent."""


class PlanningError(ValueError):
    """No wheel configuration can reach the requested boundary."""

    def __init__(self, message, envelope=None):
        super().__init__(message)
        self.envelope = envelope


class InfeasibleLimitError(ValueError):
    """Even the smallest control-percent granule over-drives the band."""
