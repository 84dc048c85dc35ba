"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A constructor was called with parameters outside its admissible range."""


class ChartExitError(ValueError):
    """A group flow was evaluated outside its coordinate chart (1 + a*eps*t^a <= 0)."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge within its subdivision budget."""


class SingularityError(ArithmeticError):
    """A transformation became singular (kappa = 0, X_x = 0 or det F = 0)."""


class ConfigError(ValueError):
    """A run configuration is malformed or inconsistent."""
