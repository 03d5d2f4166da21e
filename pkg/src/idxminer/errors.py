"""Exception hierarchy shared across the package."""

from __future__ import annotations


class IdxminerError(Exception):
    """Base class for all errors raised by this package."""


class CatalogError(IdxminerError):
    """Malformed catalog file or inconsistent table metadata."""


class SqlError(IdxminerError):
    """Base class for SQL parsing problems."""


class SqlSyntaxError(SqlError):
    """Statement text violates the supported grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedConstructError(SqlSyntaxError):
    """Statement uses SQL outside the supported dialect."""

    def __init__(self, construct: str, position: int):
        super().__init__(f"unsupported construct: {construct}", position)
        self.construct = construct


class ResolutionError(IdxminerError):
    """A column or table reference cannot be matched to the catalog."""


class UnknownColumnError(ResolutionError):
    pass


class AmbiguousColumnError(ResolutionError):
    pass


class UnknownTableError(ResolutionError):
    pass


class WorkloadError(IdxminerError):
    """A statement in a workload file failed analysis.

    Carries the query label (Q1, Q2, ...) so callers can point at the
    offending statement.
    """

    def __init__(self, query_id: str, cause: Exception):
        super().__init__(f"{query_id}: {cause}")
        self.query_id = query_id
        self.cause = cause


class ContextError(IdxminerError):
    """Malformed context export or inconsistent matrix dimensions."""


class OracleGuardError(IdxminerError):
    """Exhaustive-enumeration guard tripped (context too wide)."""


class StrategyError(IdxminerError):
    """Invalid strategy parameters (e.g. missing or bad band bounds)."""


class ProtocolError(IdxminerError):
    """Invalid measurement-protocol parameters or sweep grid."""


class SweepError(ProtocolError):
    """A sweep stage failed; message names the failing minsup."""
