"""Exception hierarchy shared by all fcalogic modules."""


class FcaError(Exception):
    """Base class for all library errors."""


class MalformedInputError(FcaError):
    """Unknown ids, duplicate ids, or ill-formed input files."""


class SortError(FcaError):
    """A formula or set was used with the wrong sort."""


class ParseError(FcaError):
    """Concrete-syntax error; carries the 0-based offset of the failure."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class TranslationError(FcaError):
    """Input outside the domain of a formula translation."""


class BudgetExceededError(FcaError):
    """A brute-force enumeration exceeded its configured budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration needs {needed} cases, budget is {budget}")
        self.needed = needed
        self.budget = budget


class UnsupportedCombinationError(FcaError):
    """Semantics undefined for this model/operator combination."""


class ParamRangeError(FcaError):
    """Counterexample parameters outside the construction's valid range."""


class ClosureViolationError(FcaError):
    """An algebra's idempotent part is not closed under its operations."""


class DuplicateNameError(FcaError):
    """Workspace already holds an entry of this kind under this name."""
