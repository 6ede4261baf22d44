"""Exception hierarchy shared across the package.

Every error carries a stable machine-readable ``code`` so transport layers
(HTTP, CLI) can surface the same vocabulary the library raises.
"""

from __future__ import annotations


class KgSelectError(Exception):
    """Base class for all package errors."""

    code = "Error"


class InputSyntaxError(KgSelectError):
    """Malformed input that could not be parsed at all (bad JSON, bad zip)."""

    code = "SyntaxError"


class SchemaError(KgSelectError):
    """Structurally parseable input that violates the document schema."""

    code = "SchemaError"


class IntegrityError(KgSelectError):
    """A catalog with outstanding validation violations was used."""

    code = "IntegrityError"


class InvalidCatalogError(KgSelectError):
    code = "InvalidCatalog"


class UnknownNodeError(KgSelectError):
    code = "UnknownNode"


class NotFoundError(KgSelectError):
    """Lookup of an unknown catalog, session, stage or snapshot."""

    code = "NotFound"


class ConfigError(KgSelectError):
    """A selection config with out-of-range fields."""

    code = "ConfigError"


class IllegalTransitionError(KgSelectError):
    """Decision not legal for the session's current stage."""

    code = "IllegalTransition"


class SessionClosedError(KgSelectError):
    code = "SessionClosed"


class EmptyScheduleError(KgSelectError):
    """Restart requested but no threshold schedule entry remains."""

    code = "EmptySchedule"


class NotRemovedError(KgSelectError):
    """Re-introduction asked for an enabler that is not currently removed."""

    code = "NotRemoved"


class EmptyGapSetError(KgSelectError):
    """Candidate ranking requested although coverage has no gaps."""

    code = "EmptyGapSet"


class IncompatibleFormatError(KgSelectError):
    """Export format does not apply to the given target object."""

    code = "IncompatibleFormat"


class ReplayMismatchError(KgSelectError):
    """Replaying a session log did not reproduce the recorded snapshots."""

    code = "ReplayMismatch"
