"""Exception and warning types raised by the dlbf package."""


class InvalidParamsError(ValueError):
    """Filter or model dimensions violate a structural constraint."""


class RegionCountWarning(UserWarning):
    """Fewer regions than hash indices; the analytical deletability model is a poor fit."""


class FilterFormatError(ValueError):
    """Base class for failures while decoding a serialized filter."""


class BadMagicError(FilterFormatError):
    pass


class VersionMismatchError(FilterFormatError):
    pass


class UnknownHashSchemeError(FilterFormatError):
    pass


class TruncatedPayloadError(FilterFormatError):
    pass


class DimensionMismatchError(FilterFormatError):
    pass


class ConfigurationError(ValueError):
    """An experiment configuration or element source cannot be used."""
