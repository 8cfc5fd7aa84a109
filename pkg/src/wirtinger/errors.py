"""Library-wide exception types."""


class ParamsError(ValueError):
    """Exponent triple violates every admissibility class.

    The message names the violated constraint; the CLI maps this to exit
    code 2.
    """


class ConvergenceError(RuntimeError):
    """A numerical routine failed to meet its tolerance.

    Raised for quadrature that exhausts max_level, root refinement that
    exhausts its iteration budget, and profile inversion on a non-monotone
    table.  The CLI maps this to exit code 3.
    """
