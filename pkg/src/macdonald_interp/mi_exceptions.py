"""Exceptions raised by macdonald_interp."""


class MIError(RuntimeError):
    """Base class for all library errors."""

    def __init__(self, message: str) -> None:
        """Initialize an MIError.

        Args:
            message (str): The message of the exception.

        Returns:
            None
        """
        super().__init__(message)


class MIDivisionByZero(MIError, ZeroDivisionError):
    """Division by an exact zero, or evaluation at a pole."""


class MIInvalidPartition(MIError, ValueError):
    """A sequence that is not a partition, or a malformed partition string."""


class MINotHorizontalStrip(MIError):
    """A pair of partitions that does not form a horizontal strip."""

    def __init__(self, outer: object, inner: object) -> None:
        """Initialize a NotHorizontalStrip exception.

        Args:
            outer: The larger partition.
            inner: The smaller partition.

        Returns:
            None
        """
        super().__init__(f"{outer}/{inner} is not a horizontal strip")


class MIBoxNotInPartition(MIError):
    """A box lying outside the diagram it is measured against."""


class MIDimensionMismatch(MIError):
    """Variable counts of two operands disagree."""


class MIDegreeMismatch(MIError):
    """Symmetric functions with incompatible degree bounds."""


class MIDenominatorNotCleared(MIError):
    """A result expected to be polynomial kept a denominator."""


class MIEvaluationFailed(MIError):
    """Seeded evaluation could not find a point off the pole set."""


class MIInvalidParameter(MIError):
    """A parameter outside its admissible range."""


class MIAlgebraError(MIError):
    """An algebraic precondition failed (non-symmetric input, unbalanced factors, ...)."""
