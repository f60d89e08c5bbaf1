"""Exception hierarchy shared by all engine modules.

Every error carries a stable ``code`` (its class name) so the CLI and the
HTTP service can report machine-readable failures without string matching.
"""

from __future__ import annotations

from collections.abc import Sequence


class SafetraceError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(SafetraceError):
    """A document could not be read as its declared format."""


class SchemaError(SafetraceError):
    """A traceability model violates its own structural rules."""


class ValidationError(SafetraceError):
    """Semantic violations in ingested data; collects every violation found.

    Attributes:
        violations: all violation messages, in discovery order.
    """

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        count = len(self.violations)
        summary = "; ".join(self.violations)
        super().__init__(f"{count} violation(s): {summary}")


class StructureError(SafetraceError):
    """A safety asset violates a structural invariant; collects every violation.

    Attributes:
        violations: all violation messages, each naming the offending node.
    """

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        count = len(self.violations)
        summary = "; ".join(self.violations)
        super().__init__(f"{count} violation(s): {summary}")


class UnknownRoot(SafetraceError):
    """The requested tree root does not exist in the snapshot."""


class NotFound(SafetraceError):
    """A workspace lookup (snapshot label, asset id, decision id) missed."""


class RootMismatch(SafetraceError):
    """Baseline and current trees were built from different roots."""


class DanglingLink(SafetraceError):
    """A horizontal link names an id that does not resolve."""


class PendingRationales(SafetraceError):
    """A review cannot close while changed artifacts lack rationales.

    Attributes:
        missing: subject ids still awaiting a rationale, ascending.
    """

    def __init__(self, missing: Sequence[str]):
        self.missing = sorted(missing)
        super().__init__("rationales pending for: " + ", ".join(self.missing))


class AlreadyClosed(SafetraceError):
    """The review decision was closed earlier and is immutable."""
