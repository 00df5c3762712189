class DscError(Exception):
    pass


class ConfigError(DscError, ValueError):
    """Invalid input or violated precondition; the CLI reports it with exit status 2."""


class ExcludedPointError(ConfigError):
    pass


class SymbolClassError(ConfigError):
    pass


class NumericalError(DscError):
    """A numerical procedure did not settle; the CLI reports it with exit status 3."""


class ContourUnresolvedError(NumericalError):
    pass


class NoZeroFreeEdgeError(NumericalError):
    pass


class RhsDivergentError(NumericalError):
    pass
