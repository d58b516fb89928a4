"""Exception types shared across the package."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to reach its accuracy target.

    Raised by the adaptive integrator when it exhausts its panel budget, by
    the contour quadrature when the truncation criterion cannot be met, and
    by the Schur iterations when they do not converge.  ``context`` carries
    whatever identifies the failing case (seed, sample index, parameters).
    """

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context

    def __str__(self):
        base = super().__str__()
        if not self.context:
            return base
        extra = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
        return f"{base} ({extra})"
