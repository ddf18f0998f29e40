"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad table, mixed rings, composite modulus, ...)."""


class InfeasibleSize(RuntimeError):
    """A table, tuple space or candidate space exceeds the configured guard rail."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"infeasible size: {what} needs {size} > bound {bound}")
        self.what = what
        self.size = size
        self.bound = bound
