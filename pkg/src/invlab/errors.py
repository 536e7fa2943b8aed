"""Exception types shared across the library, mapped to CLI exit codes."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad graph, bad family, bad partition)."""


class ModeError(InputError):
    """Operation invoked with an unsupported size mode (e.g. odd p)."""


class UnsupportedRangeError(Exception):
    """Parameters outside the range where the method applies (e.g. n < p + 2)."""


class CapacityError(Exception):
    """Instance exceeds a configured exhaustive-search limit."""
