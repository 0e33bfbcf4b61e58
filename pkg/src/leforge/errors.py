"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its documented exit statuses without a lookup table.
"""

from __future__ import annotations


class LeforgeError(Exception):
    exit_code = 1
    kind = "error"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class ParseError(LeforgeError, ValueError):
    """Malformed expression or job document."""

    exit_code = 3
    kind = "parse"

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)

    def to_dict(self) -> dict:
        d = super().to_dict()
        if self.position is not None:
            d["position"] = self.position
        return d


class UnknownVariableError(ParseError):
    kind = "unknown-variable"


class PreconditionError(LeforgeError):
    """An input violates a mathematical precondition (not IPA, wrong shape, ...)."""

    exit_code = 2
    kind = "precondition"


class ResourceCapError(LeforgeError):
    """A configured degree, basis-size or truncation cap was exceeded."""

    exit_code = 4
    kind = "resource-cap"


class StabilizationError(ResourceCapError):
    """The m-adic colength sequence did not settle inside the truncation window."""

    kind = "stabilization-window"


class SamplingError(LeforgeError):
    """Seeded generic sampling kept hitting special values."""

    exit_code = 2
    kind = "sampling"


class DecompositionError(LeforgeError):
    """A cycle decomposition produced an impossible value, e.g. a negative Lê number."""

    exit_code = 1
    kind = "decomposition"
