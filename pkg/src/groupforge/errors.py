"""Exception hierarchy shared by all groupforge modules.

Three classes of failure are distinguished, mirroring the CLI exit codes:
parse errors and domain errors (bad input, exit 1) and resource-limit
errors (a configured cap was hit, exit 2).
"""


class ForgeError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ParseError(ForgeError):
    """Malformed input document; the message names the offending location."""


class DomainError(ForgeError):
    """Input violates a mathematical precondition of the operation."""


class ResourceLimitError(ForgeError):
    """A configured resource cap was exceeded.

    ``limit`` names the cap that was hit (e.g. ``"max_spairs"``,
    ``"degree_cap"``) so callers can report it without string matching.
    """

    def __init__(self, limit: str, message: str):
        super().__init__(f"resource limit exceeded: {limit}: {message}")
        self.limit = limit
