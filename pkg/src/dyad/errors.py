__all__ = [
    "DyadError",
    "DomainError",
    "QuadratureError",
    "OracleError",
]


class DyadError(Exception):
    """Base class for every error raised by the dyad package."""


class DomainError(DyadError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class QuadratureError(DyadError, ArithmeticError):
    """A quadrature failed to converge or was run on an under-resolved grid.

    Attributes:
        achieved: Relative change between the last two refinements
        tolerance: Relative tolerance that was requested
        context: Free-form diagnostics (refinement level, grid point, ...)
    """

    def __init__(
        self,
        message: str,
        *,
        achieved: float | None = None,
        tolerance: float | None = None,
        context: dict[str, object] | None = None,
    ) -> None:
        super().__init__(message)
        self.achieved = achieved
        self.tolerance = tolerance
        self.context = dict(context or {})

    def with_context(self, **context: object) -> "QuadratureError":
        """Return a copy with extra diagnostics merged into the context."""
        details = ", ".join(f"{key}={value}" for key, value in context.items())
        return QuadratureError(
            f"{self} ({details})",
            achieved=self.achieved,
            tolerance=self.tolerance,
            context={**self.context, **context},
        )


class OracleError(DyadError, RuntimeError):
    """An independent verification routine could not produce a result."""
