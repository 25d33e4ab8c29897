"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all momliq errors."""


class PanelLoadError(EngineError):
    """Raised when panel input rows fail validation (bad value, duplicate, malformed)."""


class MissingDataError(EngineError):
    """A required (asset, date) record is absent."""

    def __init__(self, asset: str, date=None, detail: str = ""):
        self.asset = asset
        self.date = date
        msg = f"missing data for {asset}"
        if date is not None:
            msg += f" on {date}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InsufficientVolumeDataError(EngineError):
    """Too few positive-volume days with computable returns in the lookback window."""


class EmptyInputError(EngineError):
    """An operation that needs at least one element received none."""


class EmptyPortfolioError(EngineError):
    """Weight construction was asked for an empty member set."""


class AxisMismatchError(EngineError):
    """Two series that must share a date axis do not."""


class TooFewSamplesError(EngineError):
    """A statistic needs more observations than were supplied."""


class ZeroVarianceError(EngineError):
    """A statistic is undefined because the sample has zero dispersion."""


class ZeroTrackingError(EngineError):
    """Information ratio is undefined: portfolio and benchmark differences have zero variance."""


class WindowTooShortError(EngineError):
    """No rebalance date in [start, end] admits a non-empty universe."""


class IncompleteGridError(EngineError):
    """A report grid is missing required cells."""


class ConfigError(EngineError):
    """Run configuration is invalid or unreadable."""
