from typing import Optional


class QotpError(Exception):
    """
    Base class for every error raised by qotp.

    A rejected signature or a ``⊥`` program output is *not* an error; those are
    ordinary return values. Exceptions are reserved for calls that violate a
    precondition (wrong shapes, exhausted capacity, reused tokens, bad config).

    :ivar message: The complete error message.
    :vartype message: str
    """

    def __init__(self, message: str):
        """
        Initializes the QotpError.

        :param message: Human readable description of the failure.
        :type message: str
        """
        self.message: str = message
        super().__init__(self.message)

    def __str__(self) -> str:
        """
        Returns the string representation of the exception.

        :return: The detailed error message.
        :rtype: str
        """
        return self.message


class DimensionMismatchError(QotpError):
    """
    Raised when two objects that must share a dimension do not.

    :ivar what: What was being compared (e.g. ``"row length"``).
    :vartype what: str
    :ivar expected: The dimension required by the receiving object.
    :vartype expected: int
    :ivar actual: The dimension that was supplied.
    :vartype actual: int
    """

    def __init__(self, what: str, expected: int, actual: int):
        self.what: str = what
        self.expected: int = expected
        self.actual: int = actual
        super().__init__(f"Dimension mismatch in {what}: expected {expected}, got {actual}")


class InvalidDimensionError(QotpError):
    """Raised when a requested subspace dimension is outside ``0..ambient``."""


class CapacityError(QotpError):
    """
    Raised when a brute-force or dense computation would exceed its size guard.

    :ivar what: The resource that would overflow.
    :vartype what: str
    :ivar requested: The requested size.
    :vartype requested: int
    :ivar limit: The configured maximum.
    :vartype limit: int
    """

    def __init__(self, what: str, requested: int, limit: int):
        self.what: str = what
        self.requested: int = requested
        self.limit: int = limit
        super().__init__(f"Capacity exceeded for {what}: requested {requested}, limit is {limit}")


class ParameterError(QotpError):
    """Raised for invalid scheme or experiment parameters (odd lambda, zero trials, ...)."""


class LayoutError(QotpError):
    """Raised for overlapping, unknown or non-covering register layouts."""


class QuantumStateError(QotpError):
    """Raised when a state or density matrix violates its physical invariants."""


class ProbabilitySumError(QotpError):
    """
    Raised when ensemble probabilities are negative or do not sum to one.

    :ivar total: The observed probability mass.
    :vartype total: float
    """

    def __init__(self, total: float):
        self.total: float = total
        super().__init__(f"Ensemble probabilities must be nonnegative and sum to 1, got total {total!r}")


class UnknownOperationError(QotpError):
    """Raised by ``apply_inverse`` for operations it does not know how to undo."""


class OutOfDomainError(QotpError):
    """Raised when an oracle is queried outside its declared domain."""


class OneTimeViolationError(QotpError):
    """
    Raised when a consumed one-time token is used again.

    :ivar token_id: Identifier of the token, when known.
    :vartype token_id: Optional[str]
    """

    def __init__(self, token_id: Optional[str] = None, message: str = "token already consumed"):
        self.token_id: Optional[str] = token_id
        prefix = f"Token '{token_id}'" if token_id else "Token"
        super().__init__(f"{prefix}: one-time violation, {message}")


class StructuralError(QotpError):
    """Raised when a signature or program input has the wrong shape (distinct from rejection)."""


class BudgetExceededError(QotpError):
    """
    Raised when an adversary exceeds its declared oracle-query budget.

    :ivar oracle: Name of the counted oracle.
    :vartype oracle: str
    :ivar budget: The budget that was exceeded.
    :vartype budget: int
    """

    def __init__(self, oracle: str, budget: int):
        self.oracle: str = oracle
        self.budget: int = budget
        super().__init__(f"Query budget of {budget} exhausted on oracle '{oracle}'")


class ConfigError(QotpError):
    """Raised for invalid experiment configuration. The CLI maps it to exit code 1."""


class TableFormatError(QotpError):
    """
    Raised when a truth-table file cannot be parsed.

    :ivar path: The offending file, when loading from disk.
    :vartype path: Optional[str]
    """

    def __init__(self, message: str, path: Optional[str] = None):
        self.path: Optional[str] = path
        where = f"{path}: " if path else ""
        super().__init__(f"{where}{message}")
