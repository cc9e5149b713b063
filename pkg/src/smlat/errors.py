"""Exception types shared across the package."""


class SmlatError(Exception):
    """Base class for all package errors."""


class ParseError(SmlatError):
    """Malformed instance or matching text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SmlatError):
    """Structurally well-formed input that violates an invariant."""


class NotAMatching(SmlatError):
    """A worker-wise combination failed to be a bijection."""


class SizeMismatch(SmlatError):
    """Instances defined over different numbers of agents."""


class WorkerListsDiffer(SmlatError):
    """Compound construction requires identical worker lists."""


class NotOneN(SmlatError):
    """Operation requires at most one worker list to vary."""


class NotZeroN(SmlatError):
    """Operation requires all worker lists to agree."""


class NotExposed(SmlatError):
    """Rotation is not exposed in the given matching."""


class NotASublattice(SmlatError):
    """Membership set is not closed under meet/join; carries a witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CapExceeded(SmlatError):
    """Brute-force enumeration refused: n above the configured cap."""


class BoundaryTheta(SmlatError):
    """Rounding parameter hit a subinterval breakpoint; retry with another value."""


class FixtureMismatch(SmlatError):
    """A bundled worked example failed to reproduce."""


class InvariantViolation(SmlatError):
    """A randomized trial violated a module invariant; message carries the seed."""
