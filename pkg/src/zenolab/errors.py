"""Exception types shared across the package."""


class ZenoLabError(Exception):
    """Base class for package-specific failures."""


class ConfigError(ZenoLabError):
    """Invalid configuration document or parameter set. CLI exit code 1."""


class NumericalError(ZenoLabError):
    """A numerical routine violated its accuracy contract. CLI exit code 2."""
