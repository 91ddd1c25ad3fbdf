"""Exception hierarchy shared by all modules."""


class WignerError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(WignerError, ValueError):
    pass


class UnsupportedDimension(ConfigError):
    pass


class UnsupportedLevel(ConfigError):
    pass


class BoundaryError(WignerError):
    """A state (or its image under a frame change) reaches the window edge."""


class GridMismatch(WignerError, ValueError):
    pass


class DegenerateState(WignerError, ValueError):
    pass


class DegenerateSymbol(WignerError, ValueError):
    pass


class NumericalError(WignerError, ArithmeticError):
    """A numerical self-check failed; usually a sign or centering bug."""


class FrameInconsistent(WignerError, ValueError):
    pass


class InternalError(WignerError, RuntimeError):
    pass
