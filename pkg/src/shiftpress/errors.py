"""Exception types shared across the library."""


class ShiftPressError(Exception):
    """Base class for all library errors."""


class AlphabetMismatchError(ShiftPressError):
    """Two objects over different alphabets were combined."""


class NotAdmissibleError(ShiftPressError):
    """A word was used where an admissible word was required."""


class EmptyShiftError(ShiftPressError):
    """An operation that needs a nonempty shift received an empty one."""


class NotStronglyConnectedError(ShiftPressError):
    """A strongly connected graph was required."""


class ZeroMatrixError(ShiftPressError):
    """A nonnegative matrix with at least one positive entry was required."""


class MembershipError(ShiftPressError):
    """Periodic-orbit membership evidence was missing or invalid."""


class StreamExhaustedError(ShiftPressError):
    """A finite generator stream ran out of generators."""


class PrecisionExhaustedError(ShiftPressError):
    """A certified decision could not be made at the precision cap.

    Raised by digit computations when the quantity being floored sits on
    (or provably at) an integer; deciding it would require either exact
    knowledge the input oracle cannot provide or marks the expansion as
    terminating/eventually periodic.
    """


class ExpansionIsEventuallyPeriodicError(ShiftPressError):
    """The greedy expansion terminated or became periodic.

    Carries the preperiod and period digit blocks so the caller can build
    a finite labeled-graph presentation instead of the coded one.
    """

    def __init__(self, preperiod, period):
        self.preperiod = tuple(preperiod)
        self.period = tuple(period)
        super().__init__(
            f"expansion is eventually periodic: preperiod={self.preperiod}, "
            f"period={self.period}"
        )


class WitnessError(ShiftPressError):
    """The discontinuity-witness construction could not be completed."""


class ParseError(ShiftPressError):
    """A shift-spec or potential file failed to parse."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")
