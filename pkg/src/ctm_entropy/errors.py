"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class TruncationError(ArithmeticError):
    """A series hit its term cap before reaching the requested tolerance."""


class TailTooHeavyError(ArithmeticError):
    """The truncated CTM spectrum misses too much probability mass."""


class NegativeEntropyError(ArithmeticError):
    """A full entropy came out negative beyond its error estimate."""


class SeriesError(ArithmeticError):
    """A q-product series could not be expanded with integer coefficients."""


class IllConditionedError(ValueError):
    """Regression or extrapolation inputs are too close together to fit."""
