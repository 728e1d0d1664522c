"""Shared exception types.

The CLI maps these onto exit codes: InputError -> 2, RefusedError -> 3.
TerminalContractionError signals a logic error in the caller and is not
translated; it should never escape a correct pipeline.
"""


class InputError(ValueError):
    """Malformed or inconsistent input (bad file, unknown vertex, bad params)."""


class FieldTooSmallError(InputError):
    """The prime modulus is too small for the requested construction."""


class RefusedError(RuntimeError):
    """Work refused because a desk-scale ceiling would be exceeded.

    The message names the ceiling and the offending size so the caller can
    lower parameters or raise the ceiling explicitly.
    """


class MarkingRefusedError(RefusedError):
    """Marking tensor dimension above the configured ceiling."""


class TerminalContractionError(RuntimeError):
    """Contraction would merge two terminal identities."""
