"""Exception and warning types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class RegimeError(ValueError):
    """An asymptotic or restricted-range formula was used outside its regime."""


class NonConvergence(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget."""


class StepTooLarge(RuntimeError):
    """Finite-difference estimates at step h and h/2 disagree."""


class ConfigError(ValueError):
    """A scenario configuration is malformed; the message names the key."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class TruncationWarning(UserWarning):
    """The truncated Matsubara tail exceeds the requested tolerance."""


class RegimeWarning(UserWarning):
    """A computation is close to the edge of its validated range."""
