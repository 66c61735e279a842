"""Exception hierarchy shared by all modules."""


class SheetsError(Exception):
    """Base class for errors raised by reductive_sheets."""


class SpecError(SheetsError, ValueError):
    """Invalid group specification, label or argument."""


class CapabilityError(SheetsError):
    """The requested computation needs data or algorithms that are not available."""


class ResourceError(SheetsError):
    """A configured resource budget (e.g. orbit size) was exceeded."""
