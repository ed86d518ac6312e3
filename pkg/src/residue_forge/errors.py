"""Exception hierarchy shared by the engine, the HTTP service, and the CLI.

Process exit codes / HTTP statuses are derived from these classes in one
place (cli.py / api.py) so the mapping cannot drift.
"""


class ResidueForgeError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(ResidueForgeError):
    """Rejected input text. Carries a byte offset and the expected tokens."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.message = message
        self.position = position
        self.expected = expected

    def __str__(self) -> str:
        s = f"{self.message} at position {self.position}"
        if self.expected:
            s += " (expected " + ", ".join(self.expected) + ")"
        return s


class InputValidationError(ResidueForgeError):
    """Input is well-formed but outside the engine's domain.

    Examples: gradient not vanishing at the origin, non-isolated critical
    point, quotient supported away from the origin.
    """


class UsageError(ResidueForgeError):
    """A programmatic caller broke an API contract (mismatched variable
    sets, mixed denominator families, out-of-range truncation order)."""


class InternalInvariantError(ResidueForgeError):
    """An identity the engine re-checks while computing came out false.

    Raised instead of returning a value because every downstream result
    would silently be wrong.
    """
