"""Exceptions shared across the package.

Exit-status contract for the CLI: pass = 0, fail = 1, InputError = 2,
PreconditionError (refused) = 3.
"""


class InputError(Exception):
    """Malformed input: bad file, bad rational, dimension mismatch, unknown name."""


class PreconditionError(Exception):
    """A guarded construction or check refused to run; carries the gate report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
