"""Package-wide exception types."""


class OamBanditError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(OamBanditError):
    """A run configuration is malformed or references unknown entities."""


class DegenerateStateError(OamBanditError):
    """The separation probability collapsed and post-selection cannot proceed.

    Carries the offending probability and, when raised from a running trial,
    the step at which the collapse happened.
    """

    def __init__(self, p_sep: float, step: int | None = None):
        self.p_sep = p_sep
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(
            f"separation probability {p_sep:.3e}{where} is too small; "
            "the encoded states have effectively shut the system down"
        )
