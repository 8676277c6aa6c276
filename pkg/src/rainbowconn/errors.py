"""Exception types shared across the package."""


class RainbowError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(RainbowError, ValueError):
    """Malformed argument: bad vertex id, self-loop, odd point count, ..."""


class DisconnectedGraphError(RainbowError):
    """An operation requiring a connected (sub)graph received a disconnected one."""


class OddDegreeError(RainbowError):
    """Euler circuit requested on a multigraph with odd-degree vertices."""


class EnumerationCapError(RainbowError):
    """Exact enumeration requested beyond the configured size cap."""


class RetriesExhaustedError(RainbowError):
    """A Las Vegas / rejection loop hit its attempt limit.

    ``best`` carries the best attempt seen, when the caller tracks one.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class BoundViolationError(RainbowError):
    """A constructed object violates a bound the construction guarantees."""


class CertificateError(RainbowError):
    """A colouring certificate is missing or structurally inconsistent."""


class SplitConditionError(RainbowError):
    """A vertex/edge split violates one of its defining conditions.

    ``condition`` names the violated condition (1..4 for vertex splits).
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ConfigError(RainbowError, ValueError):
    """An experiment configuration field is missing or invalid."""
