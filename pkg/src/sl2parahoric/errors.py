class DomainError(ValueError):
    """An argument lies outside the set an operation is defined on."""


class ResourceBudgetError(RuntimeError):
    """A configured element or word budget would be exceeded."""

    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what}: requires {required}, budget is {budget}")
        self.required = required
        self.budget = budget


class VerificationError(AssertionError):
    """A machine-checked identity failed."""


class TableError(RuntimeError):
    """Character table construction hit an internal inconsistency."""
