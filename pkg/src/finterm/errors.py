"""Exception types shared across the package."""

from __future__ import annotations


class FintermError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""

    code = "error"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class ParseError(FintermError, ValueError):
    code = "parse-error"

    def __init__(self, message, position=None, unknown=None):
        super().__init__(message if position is None else f"{message} at position {position}")
        self.position = position
        self.unknown = unknown

    def to_dict(self):
        return {"code": self.code, "message": str(self), "position": self.position}


class TowerError(FintermError):
    """Invalid tower description or a failed layer validation."""

    code = "tower-invalid"

    def __init__(self, message, code=None, layer=None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.layer = layer

    def to_dict(self):
        return {"code": self.code, "message": str(self), "layer": self.layer}


class CertificateError(FintermError):
    code = "certificate-invalid"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DescentError(FintermError):
    """A descent precondition or a structural assertion failed.

    ``code`` is one of the documented diagnostic codes (see README); the
    partially filled :class:`~finterm.descent.DescentReport` is attached as
    ``report`` when available.
    """

    def __init__(self, code, message, layer=None, diagnostic=None):
        super().__init__(message)
        self.code = code
        self.layer = layer
        self.diagnostic = diagnostic or {}
        self.report = None

    def to_dict(self):
        return {
            "code": self.code,
            "message": str(self),
            "layer": self.layer,
            "diagnostic": self.diagnostic,
        }


class TruncationError(FintermError):
    """A Laurent computation could not certify an order at the given truncation."""

    code = "truncation-insufficient"
