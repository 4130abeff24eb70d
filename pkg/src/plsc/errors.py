"""Error taxonomy shared by the library and the CLI.

``InputError``   — malformed user input (files, literals, argument shapes).
``PreconditionError`` — structurally valid input that violates a documented
mathematical precondition (non-generic diagram where genericity is required,
a landscape that is not the landscape of any diagram, a failed
reconstruction verification, ...).

The CLI maps these to exit codes 1 and 2 respectively; plain ``OSError``
maps to 3.
"""


class InputError(ValueError):
    """Raised when user-supplied text or arguments cannot be interpreted."""


class PreconditionError(ValueError):
    """Raised when an operation's mathematical precondition is violated."""
