"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class SupnormError(Exception):
    exit_code = 1


class CapabilityError(SupnormError, ValueError):
    """Requested family or size is outside the supported range."""

    exit_code = 2


class ContractError(SupnormError, ValueError):
    """An input violates an operation's precondition."""

    exit_code = 2


class ResourceError(SupnormError):
    """An enumeration exceeded its configured cap."""

    exit_code = 4


class ExhaustionError(SupnormError):
    """A bounded search found no admissible candidate."""

    exit_code = 3


class InternalError(SupnormError):
    exit_code = 1
