"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A parameter file or override is malformed (unknown key, bad value)."""


class MonotonicityViolated(RuntimeError):
    """The phase derivative d(psi)/d(rho) is not positive on the working
    lattice: the cap half-width r is too large for the given parameters."""


class NoConvergence(RuntimeError):
    """The hybrid Newton/bisection inversion failed, typically because the
    requested value lies outside the invertible branch."""


class GridUnresolved(RuntimeError):
    """A norm computed on a refined grid moved by more than the declared
    tolerance; the integration grid does not resolve the integrand."""
