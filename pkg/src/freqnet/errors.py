"""Exception types shared across the package."""


class FreqNetError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(FreqNetError):
    """Invalid or internally inconsistent run configuration."""


class DatasetError(FreqNetError):
    """Dataset cannot be read or is unusable."""


class DecodeError(DatasetError):
    """File exists but is not a supported raster format."""


class EmptyDatasetError(DatasetError):
    """No class directory contains a single image."""


class CheckpointError(FreqNetError):
    """Model checkpoint is missing, corrupt, or incompatible."""
